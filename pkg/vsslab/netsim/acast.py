"""Bracha reliable broadcast on the asynchronous engine

Every party runs one BrachaBroadcast layer that multiplexes all broadcast
instances, keyed by (origin, tag):

- the origin sends init(m) to everybody;
- a party echoes the first init it gets from the origin;
- it sends ready(m) after ceil((n+t+1)/2) echoes or t+1 readys for m;
- it delivers m after 2t+1 readys for m.

For n > 3t an honest origin's message reaches every honest party, and no two
honest parties deliver different messages for the same key.

Usage:
    layer = BrachaBroadcast(pid, n, t, outbox)
    layer.start(msg, tag)
    for origin, msg in layer.handle(sender, frame):
        ...
"""

import logging
from collections import Counter
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Set, Tuple

from vsslab.netsim.messages import AcastFrame, Kind, Message, Outgoing

logger = logging.getLogger(__name__)

Key = Tuple[int, Tuple]


@dataclass
class _Instance:
    echoed: bool = False
    ready_sent: bool = False
    delivered: Optional[Message] = None
    echo_from: Dict[int, Message] = field(default_factory=dict)
    ready_from: Dict[int, Message] = field(default_factory=dict)


class BrachaBroadcast:
    def __init__(self, pid: int, n: int, t: int, outbox: List[Outgoing]):
        self.pid = pid
        self.n = n
        self.t = t
        self.outbox = outbox
        self.instances: Dict[Key, _Instance] = {}
        self.echo_threshold = (n + t + 2) // 2  # ceil((n+t+1)/2)

    def _send_all(self, frame: AcastFrame) -> None:
        for j in range(1, self.n + 1):
            self.outbox.append(Outgoing(self.pid, Kind.ACAST, j, frame))

    def _instance(self, key: Key) -> _Instance:
        return self.instances.setdefault(key, _Instance())

    def start(self, message: Message, tag: Tuple) -> None:
        self._send_all(AcastFrame("init", self.pid, tag, message))

    def delivered(self, origin: int, tag: Tuple) -> Optional[Message]:
        inst = self.instances.get((origin, tag))
        return inst.delivered if inst else None

    def handle(self, sender: int, frame: AcastFrame) -> List[Tuple[int, Message]]:
        """Process one frame; returns the (origin, message) pairs delivered now"""
        if not isinstance(frame, AcastFrame) or not 1 <= frame.origin <= self.n:
            return []
        key = (frame.origin, frame.tag)
        inst = self._instance(key)

        if frame.step == "init":
            if sender != frame.origin or inst.echoed:
                return []
            inst.echoed = True
            self._send_all(AcastFrame("echo", frame.origin, frame.tag, frame.message))
        elif frame.step == "echo":
            inst.echo_from.setdefault(sender, frame.message)
        elif frame.step == "ready":
            inst.ready_from.setdefault(sender, frame.message)
        else:
            return []

        echoes = Counter(inst.echo_from.values())
        readys = Counter(inst.ready_from.values())

        if not inst.ready_sent:
            candidate = self._reached(echoes, self.echo_threshold) or self._reached(readys, self.t + 1)
            if candidate is not None:
                inst.ready_sent = True
                self._send_all(AcastFrame("ready", frame.origin, frame.tag, candidate))
                readys = Counter(inst.ready_from.values())

        if inst.delivered is None:
            final = self._reached(readys, 2 * self.t + 1)
            if final is not None:
                inst.delivered = final
                logger.debug(f"P{self.pid} delivered acast {key}")
                return [(frame.origin, final)]
        return []

    @staticmethod
    def _reached(counts: Counter, threshold: int) -> Optional[Message]:
        for message, count in counts.items():
            if count >= threshold:
                return message
        return None

    def instance_keys(self) -> Set[Key]:
        return set(self.instances)
