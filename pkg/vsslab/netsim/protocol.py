"""Protocol state machine interfaces

A party never touches the network directly. It calls send / broadcast /
acast, which queue Outgoing requests; the engine drains them, numbers them
and routes them. Corrupt parties run the same code, and the adversary
rewrites whatever they queue.

- SyncParty: lists one handler per round for a phase. Handler k receives
  the inbox of round k-1 and queues the round-k messages; conclude() gets
  the last round's inbox.
- AsyncParty: start() plus handlers for point-to-point messages and for
  messages delivered by reliable broadcast.
- HybridParty: a SyncParty for the synchronous prefix that continues as an
  AsyncParty via begin_async().
"""

from typing import Any, Callable, Dict, Iterable, List, Optional, Sequence, Tuple

from vsslab.algebra.field import FieldParams
from vsslab.netsim.acast import BrachaBroadcast
from vsslab.netsim.messages import AcastFrame, Envelope, Kind, Message, Outgoing
from vsslab.utils.rng import RandomSource

Handler = Callable[["Inbox"], None]


class _Bottom:
    """The default output of a failed reconstruction"""

    __slots__ = ()

    def __repr__(self) -> str:
        return "⊥"

    def __reduce__(self) -> str:
        return "BOTTOM"


BOTTOM = _Bottom()


class Inbox:
    """Messages delivered to one party in one synchronous round."""

    def __init__(self, envelopes: Iterable[Envelope] = ()):
        self.envelopes: List[Envelope] = []
        self._first: Dict[Tuple[int, str, Tuple], Message] = {}
        for env in envelopes:
            self.add(env)

    def add(self, env: Envelope) -> None:
        self.envelopes.append(env)
        payload = env.payload
        if isinstance(payload, Message):
            key = (env.sender, payload.msgtype, payload.instance)
            self._first.setdefault(key, payload)

    def get(self, sender: int, msgtype: str, instance: Tuple = ()) -> Optional[Message]:
        """First message of msgtype from sender, or None"""
        return self._first.get((sender, msgtype, instance))

    def from_all(self, msgtype: str, instance: Tuple = ()) -> Dict[int, Message]:
        return {
            sender: msg
            for (sender, kind, inst), msg in self._first.items()
            if kind == msgtype and inst == instance
        }

    def __len__(self) -> int:
        return len(self.envelopes)


class Party:
    """Common state of a simulated party."""

    def __init__(self, pid: int, params: FieldParams, t: int, rng: RandomSource):
        self.pid = pid
        self.params = params
        self.n = params.n
        self.t = t
        self.p = params.p
        self.rng = rng
        self.corruption: Any = None  # strategy, set by the engine on corrupt parties
        self.output: Any = None
        self.terminated = False
        self._outbox: List[Outgoing] = []

    @property
    def parties(self) -> range:
        return self.params.parties

    def alpha(self, party: int) -> int:
        return self.params.alpha(party)

    def send(self, to: int, msg: Message) -> None:
        self._outbox.append(Outgoing(self.pid, Kind.P2P, to, msg))

    def send_all(self, msg: Message) -> None:
        for j in self.parties:
            self.send(j, msg)

    def broadcast(self, msg: Message) -> None:
        self._outbox.append(Outgoing(self.pid, Kind.BROADCAST, None, msg))

    def drain(self) -> List[Outgoing]:
        out = list(self._outbox)
        self._outbox.clear()
        return out

    def dealing_index(self, receiver: int) -> int:
        """Which of a corrupt dealer's prepared dealings receiver gets"""
        if self.corruption is None:
            return 0
        return self.corruption.dealing_index(self.pid, receiver, self.n)

    def splits_dealing(self) -> bool:
        return self.corruption is not None and getattr(self.corruption, "splits_dealing", False)

    def __repr__(self) -> str:
        return f"{type(self).__name__}(P{self.pid})"


class SyncParty(Party):
    def schedule(self, phase: str) -> Sequence[Handler]:
        raise NotImplementedError

    def conclude(self, phase: str, inbox: Inbox) -> None:
        raise NotImplementedError


class AsyncParty(Party):
    def __init__(self, pid: int, params: FieldParams, t: int, rng: RandomSource):
        super().__init__(pid, params, t, rng)
        self.acast_layer = BrachaBroadcast(pid, params.n, t, self._outbox)

    def acast(self, msg: Message, tag: Tuple = ()) -> None:
        """Reliably broadcast msg; the instance key is (self, instance, msgtype, tag)"""
        self.acast_layer.start(msg, (msg.instance, msg.msgtype) + tuple(tag))

    def start(self) -> None:
        pass

    def handle(self, env: Envelope) -> None:
        payload = env.payload
        if isinstance(payload, AcastFrame):
            for origin, msg in self.acast_layer.handle(env.sender, payload):
                self.on_acast(origin, msg)
        else:
            self.on_message(env.sender, payload)

    def on_message(self, sender: int, msg: Message) -> None:
        pass

    def on_acast(self, origin: int, msg: Message) -> None:
        pass


class HybridParty(AsyncParty, SyncParty):
    def begin_async(self, inbox: Inbox) -> None:
        """Consume the last synchronous round and start the asynchronous phase"""
        raise NotImplementedError
