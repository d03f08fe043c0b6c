"""Hybrid AVSS at n > 3t from n + 1 parallel WPS instances

Synchronous round: the dealer's main WPS instance for its symmetric F with
F(0, y) = q, and one WPS instance per party P_j sharing a random degree-t
blinding polynomial r_j, all in the same round.

Asynchronous part:

- with its public values of the main instance P_i also broadcasts
  d_i = r_i + f_i;
- P_i takes part in P_j's WPS only if d_j(alpha_i) = r_j(alpha_i) + f_i(alpha_j);
- each P_j re-announces W_j in its WPS whenever it grows; the dealer starts V
  from the main instance's correct parties with a verified W_j, takes the
  largest W_j of each, drops every P_j with |V & W_j| < 2t+1 until nothing
  changes and broadcasts (V, W_j for P_j in V) once |V| >= 2t+1, recomputing
  on every new W_j;
- every party re-checks the certificate on each event: V pairwise consistent
  in the main instance, W_j a version it verified in P_j's WPS, the size
  conditions;
- P_i in V outputs f_i(0); any other party interpolates f_i through
  d_j(alpha_i) - r_j(alpha_i) for the P_j in V whose WPS gave it a value.

Reconstruction is online error correction over all parties at degree t.
"""

import logging
from typing import Dict, FrozenSet, Mapping, Optional, Set, Tuple

from vsslab.algebra.poly import UniPoly, interpolate
from vsslab.avss_async.base import OecReconstruction
from vsslab.avss_hybrid.wps import HybridVssParty, WpsInstance, pairwise_consistent
from vsslab.netsim.messages import Message, coerce_poly, meta_parties
from vsslab.netsim.protocol import BOTTOM, Inbox
from vsslab.vss_sync.base import Commitment, shamir_commitment

logger = logging.getLogger(__name__)

MAIN = ("main",)


def blind_tag(j: int) -> Tuple:
    return ("wps", j)


class PrParty(OecReconstruction, HybridVssParty):
    scheme_id = "PR"
    guarantee = "Type-II VSS"

    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        self.main = WpsInstance(self, self.dealer, MAIN, announces=False)
        self.main.extra = self._masked
        self.blinds: Dict[int, WpsInstance] = {
            j: WpsInstance(self, j, blind_tag(j), grows=True) for j in self.parties
        }
        self.instances: Dict[Tuple, WpsInstance] = {MAIN: self.main}
        self.instances.update({inst.tag: inst for inst in self.blinds.values()})
        self.blinding = UniPoly.zero(self.p)
        self.gated: Set[int] = set()  # P_j whose WPS this party took part in
        self.v_sent = False
        self.certificate: Optional[Message] = None
        self.accepted: Optional[FrozenSet[int]] = None
        self.rec_states = []

    @property
    def rec_degree(self) -> int:
        return self.t

    @property
    def secret_count(self) -> int:
        return 1

    # synchronous round

    def sync_round(self, inbox: Inbox) -> None:
        if self.is_dealer:
            self.main.deal(UniPoly.random(self.t, self.rng, self.p, constant=self.secret_value))
        self.blinding = UniPoly.random(self.t, self.rng, self.p)
        self.blinds[self.pid].deal(self.blinding)
        for instance in self.instances.values():
            instance.round1(inbox)

    def begin_async(self, inbox: Inbox) -> None:
        for instance in self.instances.values():
            instance.begin_async(inbox)
        self.main.participate()

    def _masked(self) -> Tuple[UniPoly]:
        return (self.blinding + self.main.row,)

    # event plumbing

    def start(self) -> None:
        if self.phase == "rec":
            self.send_rec_share()

    def on_message(self, sender: int, msg: Message) -> None:
        if msg.msgtype == "rec-share":
            self.on_rec_share(sender, msg)
            return
        instance = self.instances.get(msg.instance)
        if instance is not None:
            instance.on_message(sender, msg)

    def on_acast(self, origin: int, msg: Message) -> None:
        if msg.msgtype == "pr-V":
            if origin == self.dealer and self.certificate is None:
                self.certificate = msg
                self.try_accept()
            return
        instance = self.instances.get(msg.instance)
        if instance is not None:
            instance.on_acast(origin, msg)

    # hooks from the WPS instances

    def masked_poly(self, j: int) -> Optional[UniPoly]:
        """d_j as published by P_j in the main instance"""
        values = self.main.public.get(j)
        if values is None or not values.extra:
            return None
        return coerce_poly(values.extra[0], self.t, self.p)

    def values_delivered(self, instance: WpsInstance, origin: int) -> None:
        if instance is self.main and self.phase == "share":
            self._gate(origin)
        self.try_accept()

    def _gate(self, j: int) -> None:
        """Join P_j's WPS once d_j agrees with this party's row and blinding share"""
        blind = self.blinds[j]
        if j in self.gated:
            return
        d_j = self.masked_poly(j)
        if d_j is None:
            return
        if d_j(self.alpha(self.pid)) != (blind.row(0) + self.main.row(self.alpha(j))) % self.p:
            logger.debug(f"P{self.pid} stays out of P{j}'s WPS")
            return
        self.gated.add(j)
        blind.participate()

    def correct_changed(self, instance: WpsInstance) -> None:
        if self.is_dealer:
            self._compute_v()

    def wps_done(self, instance: WpsInstance) -> None:
        if self.is_dealer:
            self._compute_v()
        self.try_accept()

    def wps_grew(self, instance: WpsInstance) -> None:
        self.wps_done(instance)

    # dealer: V

    def _compute_v(self) -> None:
        if self.v_sent:
            return
        t = self.t
        latest = {j: self.blinds[j].latest for j in self.main.correct}
        V = {j for j, W_j in latest.items() if W_j is not None}
        changed = True
        while changed:
            changed = False
            for j in sorted(V):
                if len(V & latest[j]) < 2 * t + 1:
                    V.discard(j)
                    changed = True
        if len(V) < 2 * t + 1:
            return
        self.v_sent = True
        order = sorted(V)
        meta = (tuple(order), tuple(tuple(sorted(latest[j])) for j in order))
        logger.debug(f"P{self.pid} broadcasts V={order}")
        self.acast(Message("pr-V", meta=meta, instance=MAIN))

    # every party: accept V

    def parse_certificate(self) -> Optional[Tuple[FrozenSet[int], Dict[int, FrozenSet[int]]]]:
        msg = self.certificate
        V = meta_parties(msg, self.n)
        raw = msg.meta[1] if len(msg.meta) > 1 else ()
        if not V or not isinstance(raw, (tuple, list)) or len(raw) != len(V):
            return None
        W = {}
        for j, members in zip(sorted(V), raw):
            members = members if isinstance(members, (tuple, list)) else ()
            W[j] = frozenset(k for k in members if isinstance(k, int) and 1 <= k <= self.n)
        return frozenset(V), W

    def try_accept(self) -> None:
        if self.accepted is not None or self.certificate is None:
            return
        cert = self.parse_certificate()
        if cert is None:
            return
        V, W = cert
        t = self.t
        if len(V) < 2 * t + 1:
            return
        if any(j not in self.main.public or self.masked_poly(j) is None for j in V):
            return
        for j in V:
            if W[j] not in self.blinds[j].verified or len(V & W[j]) < 2 * t + 1:
                return
        if not pairwise_consistent(self.main.public, sorted(V)):
            return
        self.accepted = V
        self.record["V"] = sorted(V)
        self.record["W"] = {j: sorted(W[j]) for j in sorted(V)}
        self._complete(V, W)

    def _complete(self, V: FrozenSet[int], W: Dict[int, FrozenSet[int]]) -> None:
        if self.pid in V:
            self.share = self.main.row(0)
        else:
            self.share = self._row_from_masks(V, W)
        self.output = self.share
        self.terminated = True
        logger.debug(f"P{self.pid} terminated sharing")

    def _row_from_masks(self, V: FrozenSet[int], W: Dict[int, FrozenSet[int]]) -> Optional[int]:
        """f_i(alpha_j) = d_j(alpha_i) - r_j(alpha_i) for every P_j in V with a WPS output"""
        a_i, p = self.alpha(self.pid), self.p
        points = []
        for j in sorted(V):
            r_ji = self.blinds[j].output_for(W[j])
            if r_ji is BOTTOM or r_ji is None:
                continue
            points.append((self.alpha(j), (self.masked_poly(j)(a_i) - r_ji) % p))
        self.record["mask_points"] = len(points)
        if len(points) < self.t + 1:
            logger.warning(f"P{self.pid}: only {len(points)} unmasked points, no share")
            return None
        f_i = interpolate(points, p)
        if f_i.degree > self.t:
            logger.warning(f"P{self.pid}: unmasked points do not lie on a degree-{self.t} row")
            return None
        return f_i(0)

    @classmethod
    def committed_value(cls, honest: Mapping[int, "PrParty"]) -> Commitment:
        done = {pid: party for pid, party in honest.items() if party.terminated}
        return shamir_commitment(done) if done else (None, None)
