"""Shared machinery of the asynchronous AVSS schemes

Every scheme shares a bivariate polynomial the same way:

1. the dealer sends P_i its row f_i(x) = F(x, alpha_i) and column
   g_i(y) = F(alpha_i, y);
2. P_i sends (f_i(alpha_j), g_i(alpha_j)) to every P_j and reliably
   broadcasts ("ok", j) once P_j's pair matches its own polynomials;
3. P_i's consistency graph gets the edge (j, k) once both ("ok", k) from P_j
   and ("ok", j) from P_k are delivered;
4. the dealer searches its own graph for a certificate and broadcasts it;
   every party re-checks the certificate in its own graph after each update
   and completes its share once it holds.

A BivariateSharing is one such sharing inside a party; an AsyncVssParty hosts
one or more of them (CHP runs one per batch) and reconstructs with online
error correction.

Usage:
    from vsslab.avss_async.base import AsyncVssParty, BivariateSharing
"""

import logging
from typing import Any, Dict, List, Mapping, Optional, Sequence, Set, Tuple

from vsslab.algebra.bivariate import BiPoly
from vsslab.algebra.field import FieldParams
from vsslab.algebra.poly import UniPoly
from vsslab.codes.oec import OecState, oec_feed
from vsslab.dealer import DealerRole, pick_dealing
from vsslab.errors import ConfigBound
from vsslab.graphs.consistency import ConsistencyGraph
from vsslab.netsim.messages import Message, Phase, as_poly, as_value
from vsslab.netsim.protocol import AsyncParty
from vsslab.utils.rng import RandomSource
from vsslab.vss_sync.base import Commitment, shamir_commitment

logger = logging.getLogger(__name__)


def feed(st: Optional[OecState], party: int, value: int, params: FieldParams) -> Optional[OecState]:
    """oec_feed that skips parties outside the source and repeated senders"""
    if st is None or party not in st.source or party in st.fed_parties():
        return st
    return oec_feed(st, party, value, params)


class BivariateSharing:
    """
    One dealer's bivariate sharing as seen by one party.

    Subclasses name the certificate message and implement parse(), valid(),
    search() (dealer side) and on_accept(); they call finish() with the
    polynomial the party ends up holding.
    """

    certificate_msg = ""

    def __init__(self, host: "AsyncVssParty", degrees: Tuple[int, int], tag: Tuple = ()):
        self.host = host
        self.tag = tag
        self.l, self.m = degrees  # x- and y-degree of F
        self.dealings: List[BiPoly] = []
        self.row: Optional[UniPoly] = None
        self.col: Optional[UniPoly] = None
        self.cross: Dict[int, Tuple[int, int]] = {}  # j -> (f_j(alpha_i), g_j(alpha_i))
        self.ok_sent: Set[int] = set()
        self.ok_from: Set[Tuple[int, int]] = set()
        self.G = ConsistencyGraph(host.n)
        self.certificate: Optional[Message] = None
        self.accepted: Any = None
        self.cert_sent = False
        self.oec: Optional[OecState] = None
        self.oec_component = 0
        self.done = False
        self.result: Optional[UniPoly] = None

    def __repr__(self) -> str:
        return f"{type(self).__name__}(host=P{self.host.pid}, tag={self.tag})"

    @property
    def is_dealer(self) -> bool:
        return self.host.pid == self.host.dealer

    def _msg(self, msgtype: str, meta: Tuple = (), elems: Tuple = (), phase: Phase = Phase.SHARE) -> Message:
        return Message(msgtype, meta=meta, elems=elems, phase=phase, instance=self.tag)

    # dealer

    def deal(self, dealings: Sequence[BiPoly]) -> None:
        host = self.host
        self.dealings = list(dealings)
        for j in host.parties:
            F = pick_dealing(host, self.dealings, j)
            a = host.alpha(j)
            host.send(j, self._msg("poly", elems=(F.row(a), F.col(a)), phase=Phase.DEAL))

    def announce(self, meta: Tuple) -> None:
        """Broadcast the certificate once"""
        if self.cert_sent:
            return
        self.cert_sent = True
        logger.debug(f"P{self.host.pid} certifies {meta} in {self.tag or 'sharing'}")
        self.host.acast(self._msg(self.certificate_msg, meta=meta))

    # pairwise consistency

    def on_message(self, sender: int, msg: Message) -> None:
        host = self.host
        p = host.p
        if msg.msgtype == "poly" and sender == host.dealer and self.row is None:
            self.row = as_poly(msg, 0, self.l, p)
            self.col = as_poly(msg, 1, self.m, p)
            for j in host.parties:
                a = host.alpha(j)
                host.send(j, self._msg("cross", elems=(self.row(a), self.col(a))))
            for j in sorted(self.cross):
                self._check(j)
        elif msg.msgtype == "cross" and sender not in self.cross:
            self.cross[sender] = (as_value(msg, 0, p), as_value(msg, 1, p))
            self._check(sender)
            self.on_cross(sender)

    def _check(self, j: int) -> None:
        host = self.host
        if self.row is None or j == host.pid or j in self.ok_sent:
            return
        f_ji, g_ji = self.cross[j]
        a = host.alpha(j)
        if f_ji == self.col(a) and g_ji == self.row(a):
            self.ok_sent.add(j)
            host.acast(self._msg("ok", meta=(j,)), tag=(j,))

    def on_acast(self, origin: int, msg: Message) -> None:
        host = self.host
        if msg.msgtype == "ok":
            k = msg.meta[0] if msg.meta else None
            if not isinstance(k, int) or isinstance(k, bool) or not 1 <= k <= host.n:
                return
            self.ok_from.add((origin, k))
            if (k, origin) in self.ok_from and self.G.add_edge(origin, k):
                self.graph_changed()
        elif msg.msgtype == self.certificate_msg and origin == host.dealer and self.certificate is None:
            self.certificate = msg
            self.try_accept()

    def graph_changed(self) -> None:
        if self.is_dealer and not self.cert_sent:
            self.search()
        self.try_accept()

    def try_accept(self) -> None:
        if self.accepted is not None or self.certificate is None:
            return
        cert = self.parse(self.certificate)
        if cert is None or not self.valid(cert):
            return
        self.accepted = cert
        logger.debug(f"P{self.host.pid} accepts {cert}")
        self.on_accept()

    # share completion

    def complete_by_oec(self, source: Sequence[int], component: int) -> None:
        """Recover the missing polynomial from cross values of source, degree t"""
        self.oec = OecState.start(source, self.host.t, self.host.t)
        self.oec_component = component
        for j in sorted(self.cross):
            self._feed_cross(j)

    def on_cross(self, j: int) -> None:
        if self.oec is not None:
            self._feed_cross(j)

    def _feed_cross(self, j: int) -> None:
        if self.oec.done:
            return
        self.oec = feed(self.oec, j, self.cross[j][self.oec_component], self.host.params)
        if self.oec.done:
            self.recovered(self.oec.result)

    def recovered(self, poly: UniPoly) -> None:
        """The polynomial obtained by OEC; subclasses may continue from here"""
        self.finish(poly)

    def finish(self, poly: UniPoly) -> None:
        if self.done:
            return
        self.result = poly
        self.done = True
        self.host.instance_done(self)

    # subclass hooks

    def parse(self, msg: Message) -> Any:
        raise NotImplementedError

    def valid(self, cert: Any) -> bool:
        raise NotImplementedError

    def search(self) -> None:
        raise NotImplementedError

    def on_accept(self) -> None:
        raise NotImplementedError


class OecReconstruction:
    """
    Reconstruction of a finished sharing by online error correction.

    Hosts set phase, share, rec_degree and secret_count. After
    begin_reconstruction() the host's start() calls send_rec_share(); every
    party then runs OEC(P, rec_degree) once per secret.
    """

    rec_states: List[OecState]

    def share_values(self) -> List[int]:
        if self.share is None:
            return []
        if isinstance(self.share, (list, tuple)):
            return [int(v) for v in self.share]
        return [int(self.share)]

    def begin_reconstruction(self) -> None:
        self.phase = "rec"
        self.terminated = False
        self.output = None
        self.rec_states = [OecState.start(self.parties, self.rec_degree, self.t) for _ in range(self.secret_count)]

    def send_rec_share(self) -> None:
        values = self.share_values()
        if values:
            self.send_all(Message("rec-share", elems=tuple(values), phase=Phase.REC))

    def on_rec_share(self, sender: int, msg: Message) -> None:
        if self.phase != "rec" or self.terminated:
            return
        self.rec_states = [
            feed(st, sender, as_value(msg, k, self.p), self.params) for k, st in enumerate(self.rec_states)
        ]
        if all(st.done for st in self.rec_states):
            values = [st.result(0) for st in self.rec_states]
            self.output = values[0] if self.secret_count == 1 else values
            self.terminated = True
            logger.debug(f"P{self.pid} reconstructed {self.output}")


class AsyncVssParty(OecReconstruction, DealerRole, AsyncParty):
    """
    A party of an asynchronous AVSS scheme.

    phase is "share" until begin_reconstruction(); start() then sends this
    party's shares and reconstruction runs OEC(P, rec_degree) per secret.
    """

    scheme_id = ""
    guarantee = "Type-II VSS"
    bound = "n > 4t"

    def __init__(
        self,
        pid: int,
        params: FieldParams,
        t: int,
        rng: RandomSource,
        dealer: int = 1,
        secret: Any = None,
        d: Optional[int] = None,
        L: Optional[int] = None,
    ):
        super().__init__(pid, params, t, rng)
        self.dealer = dealer
        self.secret = secret
        self.d = t if d is None else d
        self.L = self.default_L(params.n, t) if L is None else L
        self.dealings: List[BiPoly] = []
        self.phase = "share"
        self.share: Any = None
        self.record: Dict[str, Any] = {}
        self.instances: Dict[Tuple, BivariateSharing] = {inst.tag: inst for inst in self.build_instances()}
        self.rec_states: List[OecState] = []

    @classmethod
    def check_bounds(cls, n: int, t: int, d: Optional[int] = None, L: Optional[int] = None) -> None:
        """Raise ConfigBound unless sharing runs at (n, t)"""
        if t < 0 or n <= 4 * t:
            raise ConfigBound(f"{cls.scheme_id} needs n > 4t, got n={n}, t={t}")

    @classmethod
    def check_field(cls, params: FieldParams, t: int, L: Optional[int] = None) -> None:
        """Raise FieldTooSmall if params lack points the scheme needs"""

    @property
    def rec_degree(self) -> int:
        return self.t

    @property
    def secret_count(self) -> int:
        return 1

    @classmethod
    def default_L(cls, n: int, t: int) -> int:
        """Number of secrets shared when L is not given"""
        return 1

    def build_instances(self) -> Sequence[BivariateSharing]:
        raise NotImplementedError

    def deal(self) -> None:
        raise NotImplementedError

    def share_from(self, results: Mapping[Tuple, UniPoly]) -> Any:
        raise NotImplementedError

    # event plumbing

    def start(self) -> None:
        if self.phase == "share":
            if self.is_dealer:
                self.deal()
        else:
            self.send_rec_share()

    def on_message(self, sender: int, msg: Message) -> None:
        if msg.msgtype == "rec-share":
            self.on_rec_share(sender, msg)
            return
        instance = self.instances.get(msg.instance)
        if instance is not None:
            instance.on_message(sender, msg)

    def on_acast(self, origin: int, msg: Message) -> None:
        instance = self.instances.get(msg.instance)
        if instance is not None:
            instance.on_acast(origin, msg)

    def instance_done(self, instance: BivariateSharing) -> None:
        if self.phase != "share" or self.share is not None:
            return
        if not all(inst.done for inst in self.instances.values()):
            return
        self.share = self.share_from({tag: inst.result for tag, inst in self.instances.items()})
        self.output = self.share
        self.terminated = True
        logger.debug(f"P{self.pid} terminated sharing")

    # oracle

    @classmethod
    def committed_value(cls, honest: Mapping[int, "AsyncVssParty"]) -> Commitment:
        """(s*, q*) interpolated from the shares of the honest parties that terminated"""
        done = {pid: party for pid, party in honest.items() if party.terminated or party.share is not None}
        if not done:
            return None, None
        degree = next(iter(done.values())).rec_degree
        return shamir_commitment(done, degree)
