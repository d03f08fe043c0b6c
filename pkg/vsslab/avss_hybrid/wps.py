"""Weak polynomial sharing with one synchronous round

Synchronous round: the dealer embeds its degree-t polynomial f in a random
symmetric F with F(0, y) = f and sends each P_i its row f_i; every P_i sends
a pad r_ij to every P_j and registers the list of sent pads with the dealer.

Asynchronous part:

- P_i reports the pads it received; the dealer answers with the parties C_i
  whose registered and received pads disagree;
- P_i reliably broadcasts a_ij = f_i(alpha_j) + r_ij and b_ij, which is
  f_i(alpha_j) in clear for P_j in C_i and f_i(alpha_j) + r'_ji otherwise;
- the dealer collects the parties whose public values match F and its
  registered pads into W and broadcasts W once it has 2t+1 members;
- a party accepts W when all members' values are delivered and pairwise
  consistent. Members output f_i(0); the others interpolate their row from
  the public values of W and output f_i(0), or BOTTOM if it is not of
  degree t.

Usage:
    from vsslab.avss_hybrid.runner import run_wps

    outcome = run_wps(cfg, UniPoly((1, 2), 97))
"""

import logging
from dataclasses import dataclass
from typing import Any, Callable, Dict, FrozenSet, List, Mapping, Optional, Sequence, Set, Tuple

from vsslab.algebra.bivariate import BiPoly, EmbedMode, embed_bivariate
from vsslab.algebra.field import FieldParams
from vsslab.algebra.poly import UniPoly, interpolate, sample_sharing_poly
from vsslab.dealer import DealerRole, build_dealings, pick_dealing
from vsslab.errors import ConfigBound
from vsslab.netsim.messages import Message, Phase, as_poly, as_value, meta_parties, value_list
from vsslab.netsim.protocol import BOTTOM, Handler, HybridParty, Inbox
from vsslab.utils.rng import RandomSource

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PublicValues:
    """(A_j, B_j, C_j) of one party as delivered by reliable broadcast"""

    a: Tuple[int, ...]
    b: Tuple[int, ...]
    conflicts: FrozenSet[int]
    extra: Tuple[Any, ...] = ()


def pairwise_consistent(public: Mapping[int, PublicValues], members: Sequence[int]) -> bool:
    """Every pair of members agrees on its common value, padded or in clear"""
    members = sorted(members)
    for x, j in enumerate(members):
        vj = public[j]
        for k in members[x + 1 :]:
            vk = public[k]
            a_jk, a_kj = vj.a[k - 1], vk.a[j - 1]
            b_jk, b_kj = vj.b[k - 1], vk.b[j - 1]
            j_in_ck, k_in_cj = j in vk.conflicts, k in vj.conflicts
            if j_in_ck and k_in_cj:
                ok = b_jk == b_kj
            elif j_in_ck:
                ok = a_kj == b_jk
            elif k_in_cj:
                ok = a_jk == b_kj
            else:
                ok = a_jk == b_kj and a_kj == b_jk
            if not ok:
                return False
    return True


class WpsInstance:
    """
    One WPS instance as seen by one party.

    announces: the dealer broadcasts W itself (stand-alone WPS); inside the
    hybrid AVSS the outer dealer certifies instead and only uses `correct`.

    grows: the dealer re-announces W every time its correct set grows, one
    broadcast per size, and parties keep every version they verify. A later
    certificate may then name a W that contains all honest parties.
    """

    def __init__(
        self,
        host: "HybridVssParty",
        dealer: int,
        tag: Tuple = (),
        announces: bool = True,
        grows: bool = False,
    ):
        self.host = host
        self.dealer = dealer
        self.tag = tag
        self.announces = announces
        self.grows = grows
        p = host.p
        self.dealings: List[BiPoly] = []
        self.row = UniPoly.zero(p)
        self.pads_out: Dict[int, int] = {}  # r_ij sent to P_j
        self.pads_in: Dict[int, int] = {}  # r'_ji received from P_j
        self.extra: Callable[[], Tuple] = lambda: ()
        # dealer side
        self.sent_lists: Dict[int, List[int]] = {}  # P_i's registered r_i1..r_in
        self.recv_lists: Dict[int, List[int]] = {}  # P_i's reported r'_1i..r'_ni
        self.conflicts_sent: Dict[int, FrozenSet[int]] = {}
        self.correct: Set[int] = set()
        self.announced: Set[int] = set()  # sizes of the W versions broadcast
        # party side
        self.conflicts: Optional[FrozenSet[int]] = None
        self.participating = False
        self.published = False
        self.public: Dict[int, PublicValues] = {}
        self.announcements: List[FrozenSet[int]] = []
        self.verified: List[FrozenSet[int]] = []
        self.outputs: Dict[FrozenSet[int], Any] = {}
        self.accepted: Optional[FrozenSet[int]] = None  # first verified W
        self.output: Any = None
        self.used_clear: Set[int] = set()  # parties j whose b_ji was used in clear
        self.done = False

    def __repr__(self) -> str:
        return f"WpsInstance(dealer=P{self.dealer}, host=P{self.host.pid}, tag={self.tag})"

    @property
    def is_dealer(self) -> bool:
        return self.host.pid == self.dealer

    def _msg(self, msgtype: str, meta: Tuple = (), elems: Tuple = (), phase: Phase = Phase.SHARE) -> Message:
        return Message(msgtype, meta=meta, elems=elems, phase=phase, instance=self.tag)

    # synchronous round

    def deal(self, f: UniPoly) -> None:
        """Embed f in a symmetric F; a splitting dealer also prepares one for f + 1"""
        host = self.host

        def build(offset: int) -> BiPoly:
            q = f + UniPoly.constant(offset, host.p)
            return embed_bivariate(q, EmbedMode.SYMMETRIC_X0, (host.t, host.t), host.rng)

        self.dealings = build_dealings(host, build, 0)

    def round1(self, inbox: Inbox) -> None:
        host = self.host
        if self.is_dealer and self.dealings:
            for j in host.parties:
                F = pick_dealing(host, self.dealings, j)
                host.send(j, self._msg("wps-row", elems=(F.row(host.alpha(j)),), phase=Phase.DEAL))
        for j in host.parties:
            r = host.rng.element(host.p)
            self.pads_out[j] = r
            host.send(j, self._msg("wps-pad", elems=(r,), phase=Phase.PAD))
        pads = tuple(self.pads_out[j] for j in host.parties)
        host.send(self.dealer, self._msg("wps-sent-pads", elems=pads, phase=Phase.PAD_REPORT))

    def begin_async(self, inbox: Inbox) -> None:
        host = self.host
        p, n = host.p, host.n
        self.row = as_poly(inbox.get(self.dealer, "wps-row", self.tag), 0, host.t, p)
        self.pads_in = {j: as_value(inbox.get(j, "wps-pad", self.tag), 0, p) for j in host.parties}
        if self.is_dealer:
            self.sent_lists = {
                i: value_list(inbox.get(i, "wps-sent-pads", self.tag), n, p) for i in host.parties
            }

    # asynchronous part

    def participate(self) -> None:
        """Report received pads to the dealer; publish once C_i arrives"""
        if self.participating:
            return
        self.participating = True
        host = self.host
        pads = tuple(self.pads_in[j] for j in host.parties)
        host.send(self.dealer, self._msg("wps-recv-pads", elems=pads, phase=Phase.PAD_REPORT))
        self._publish()

    def _publish(self) -> None:
        if self.published or not self.participating or self.conflicts is None:
            return
        self.published = True
        host = self.host
        p = host.p
        common = {j: self.row(host.alpha(j)) for j in host.parties}
        a = tuple((common[j] + self.pads_out[j]) % p for j in host.parties)
        b = tuple(
            common[j] if j in self.conflicts else (common[j] + self.pads_in[j]) % p for j in host.parties
        )
        meta = (tuple(sorted(self.conflicts)),)
        host.acast(self._msg("wps-values", meta=meta, elems=a + b + self.extra()))

    def on_message(self, sender: int, msg: Message) -> None:
        host = self.host
        p, n = host.p, host.n
        if msg.msgtype == "wps-recv-pads" and self.is_dealer and sender not in self.recv_lists:
            received = value_list(msg, n, p)
            self.recv_lists[sender] = received
            conflicts = frozenset(
                j for j in host.parties if received[j - 1] != self._registered(j)[sender - 1]
            )
            self.conflicts_sent[sender] = conflicts
            host.send(sender, self._msg("wps-conflicts", meta=(tuple(sorted(conflicts)),)))
            self._mark(sender)
        elif msg.msgtype == "wps-conflicts" and sender == self.dealer and self.conflicts is None:
            self.conflicts = frozenset(meta_parties(msg, n))
            self._publish()

    def _registered(self, j: int) -> List[int]:
        return self.sent_lists.get(j) or [0] * self.host.n

    def on_acast(self, origin: int, msg: Message) -> None:
        host = self.host
        n = host.n
        if msg.msgtype == "wps-values" and origin not in self.public:
            self.public[origin] = PublicValues(
                a=tuple(value_list(msg, n, host.p)),
                b=tuple(value_list(msg, n, host.p, offset=n)),
                conflicts=frozenset(meta_parties(msg, n)),
                extra=tuple(msg.elems[2 * n :]),
            )
            if self.is_dealer:
                self._mark(origin)
            host.values_delivered(self, origin)
            self.try_accept()
        elif msg.msgtype == "wps-W" and origin == self.dealer:
            W = frozenset(meta_parties(msg, n))
            if W in self.announcements or (self.announcements and not self.grows):
                return
            self.announcements.append(W)
            self.try_accept()

    def _mark(self, i: int) -> None:
        """Dealer: P_i is correct if its public values match F and the registered pads"""
        if not self.dealings or i in self.correct or i not in self.public or i not in self.conflicts_sent:
            return
        host = self.host
        F, p = self.dealings[0], host.p
        pv = self.public[i]
        if pv.conflicts != self.conflicts_sent[i]:
            return
        sent = self._registered(i)
        received = self.recv_lists[i]
        for j in host.parties:
            expected = F(host.alpha(j), host.alpha(i))
            if (pv.a[j - 1] - sent[j - 1]) % p != expected:
                return
            pad = 0 if j in pv.conflicts else received[j - 1]
            if (pv.b[j - 1] - pad) % p != expected:
                return
        self.correct.add(i)
        if self.announces and len(self.correct) >= 2 * host.t + 1 and (self.grows or not self.announced):
            self._announce()
        host.correct_changed(self)

    def _announce(self) -> None:
        W = tuple(sorted(self.correct))
        self.announced.add(len(W))
        logger.debug(f"P{self.host.pid} announces W={list(W)} in {self.tag or 'wps'}")
        tag = (len(W),) if self.grows else ()
        self.host.acast(self._msg("wps-W", meta=(W,)), tag=tag)

    @property
    def latest(self) -> Optional[FrozenSet[int]]:
        """The largest verified W, or None"""
        return max(self.verified, key=len) if self.verified else None

    def try_accept(self) -> None:
        for W in list(self.announcements):
            if W in self.verified or not self.verifies(W):
                continue
            self.verified.append(W)
            if self.accepted is None:
                self.accepted = W
                self.output = self.output_for(W)
                self.done = True
                self.host.wps_done(self)
            else:
                self.host.wps_grew(self)

    def verifies(self, W: FrozenSet[int]) -> bool:
        """W is large enough, all its members' values are delivered and pairwise consistent"""
        if len(W) < 2 * self.host.t + 1 or any(j not in self.public for j in W):
            return False
        return pairwise_consistent(self.public, sorted(W))

    def output_for(self, W: FrozenSet[int]) -> Any:
        """This party's output under a verified W"""
        if W not in self.outputs:
            self.outputs[W] = self._output(W)
        return self.outputs[W]

    def _output(self, W: FrozenSet[int]) -> Any:
        host = self.host
        i, p = host.pid, host.p
        if i in W:
            return self.row(0)
        points = []
        for j in sorted(W):
            b_ji = self.public[j].b[i - 1]
            if i in self.public[j].conflicts:
                self.used_clear.add(j)
                points.append((host.alpha(j), b_ji))
            else:
                points.append((host.alpha(j), (b_ji - self.pads_out[j]) % p))
        row = interpolate(points, p)
        if row.degree > host.t:
            logger.info(f"P{i}: public values of W do not lie on a degree-{host.t} row")
            return BOTTOM
        return row(0)


class HybridVssParty(DealerRole, HybridParty):
    """Base of the hybrid-model parties; hooks called by WpsInstance."""

    scheme_id = ""
    guarantee = ""
    bound = "n > 3t"

    def __init__(
        self,
        pid: int,
        params: FieldParams,
        t: int,
        rng: RandomSource,
        dealer: int = 1,
        secret: Any = None,
    ):
        super().__init__(pid, params, t, rng)
        self.dealer = dealer
        self.secret = secret
        self.dealings: List[Any] = []
        self.phase = "share"
        self.share: Any = None
        self.record: Dict[str, Any] = {}

    @classmethod
    def check_bounds(cls, n: int, t: int) -> None:
        if t < 0 or n <= 3 * t:
            raise ConfigBound(f"{cls.scheme_id} needs n > 3t, got n={n}, t={t}")

    def schedule(self, phase: str) -> Sequence[Handler]:
        if phase != "share":
            raise ValueError(f"only the sharing phase has synchronous rounds, got '{phase}'")
        return [self.sync_round]

    def sync_round(self, inbox: Inbox) -> None:
        raise NotImplementedError

    def values_delivered(self, instance: WpsInstance, origin: int) -> None:
        pass

    def correct_changed(self, instance: WpsInstance) -> None:
        pass

    def wps_done(self, instance: WpsInstance) -> None:
        pass

    def wps_grew(self, instance: WpsInstance) -> None:
        pass


class WpsParty(HybridVssParty):
    """Stand-alone WPS; the dealer's input is a degree-t polynomial."""

    scheme_id = "WPS"
    guarantee = "WPS"

    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        self.instance = WpsInstance(self, self.dealer)
        self.dealt: Optional[UniPoly] = None

    def dealer_poly(self) -> UniPoly:
        """The given polynomial, or a random degree-t one through the secret value"""
        if isinstance(self.secret, UniPoly):
            return self.secret
        return sample_sharing_poly(self.secret_value, self.t, self.rng, self.p)

    def sync_round(self, inbox: Inbox) -> None:
        if self.is_dealer:
            self.dealt = self.dealer_poly()
            self.instance.deal(self.dealt)
        self.instance.round1(inbox)

    def begin_async(self, inbox: Inbox) -> None:
        self.instance.begin_async(inbox)
        self.instance.participate()

    def on_message(self, sender: int, msg: Message) -> None:
        if msg.instance == self.instance.tag:
            self.instance.on_message(sender, msg)

    def on_acast(self, origin: int, msg: Message) -> None:
        if msg.instance == self.instance.tag:
            self.instance.on_acast(origin, msg)

    def wps_done(self, instance: WpsInstance) -> None:
        self.share = instance.output
        self.output = instance.output
        self.terminated = True
        self.record["W"] = sorted(instance.accepted)
        self.record["clear_values_used"] = sorted(instance.used_clear)

    @classmethod
    def committed_value(cls, honest: Mapping[int, "WpsParty"]):
        """(f*(0), f*) through the honest non-BOTTOM outputs, or (None, None)"""
        points = [
            (party.params.alpha(pid), party.output)
            for pid, party in sorted(honest.items())
            if party.terminated and isinstance(party.output, int)
        ]
        if not points:
            return None, None
        any_party = next(iter(honest.values()))
        f = interpolate(points, any_party.p)
        if f.degree > any_party.t:
            return None, None
        return f(0), f
