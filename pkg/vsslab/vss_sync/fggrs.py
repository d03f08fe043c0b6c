"""Three-round VSS from WSS-blinded rows

Every party P_j deals its own WSS of a random blinding polynomial r_j and
broadcasts its row masked as A_j = f_j + r_j. Whoever holds a WSS-share of
r_j can check A_j against its own column point without learning f_j. The
local step after the last round shrinks two kinds of sets:

- V, the parties whose row is trusted (everyone outside the unhappy set to
  begin with),
- W_j, the parties whose check of A_j passed inside P_j's WSS,

until every j in V keeps at least n - t supporters in V. Fewer than n - t
parties in V discard the dealer.

BlindedVss carries the instances and the pruning; Fggrs reconstructs by
revealing the blinding polynomials of V, while Kkk and Akp reach Type-II
shares and reuse Shamir reconstruction.
"""

import logging
from typing import Dict, Iterable, List, Mapping, Sequence, Set, Tuple

from vsslab.algebra.poly import UniPoly, interpolate
from vsslab.netsim.messages import Message, Phase, as_poly, value_list
from vsslab.netsim.protocol import BOTTOM, Handler, Inbox
from vsslab.vss_sync.base import (
    Commitment,
    SyncVssParty,
    keyed_message,
    keyed_values,
    shamir_commitment,
    unhappy_from_disputes,
)
from vsslab.vss_sync.wss import WssInstance

logger = logging.getLogger(__name__)


def prune_supported(V: Iterable[int], W: Mapping[int, Set[int]], quorum: int) -> Set[int]:
    """Drop j from V while |V ∩ W_j| < quorum; the fixpoint does not depend on order"""
    alive = set(V)
    changed = True
    while changed:
        changed = False
        for j in sorted(alive):
            if len(alive & W.get(j, set())) < quorum:
                alive.discard(j)
                changed = True
    return alive


class BlindedVss(SyncVssParty):
    wss_flavour = "fggrs"
    symmetric = False

    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        self.blinding = UniPoly.zero(self.p)
        self.wss: Dict[int, WssInstance] = {
            j: WssInstance(self, j, self.wss_flavour, ("wss", j)) for j in self.parties
        }
        self.row = UniPoly.zero(self.p)
        self.col = UniPoly.zero(self.p)
        self.masked: Dict[int, UniPoly] = {}
        self.V: Set[int] = set()
        self.W: Dict[int, Set[int]] = {}
        self.unhappy: Set[int] = set()

    def _instances(self) -> List[WssInstance]:
        return [self.wss[j] for j in self.parties]

    def wss_share_of(self, j: int) -> int:
        """r'_ji: our WSS-share of P_j's blinding polynomial"""
        return self.wss[j].wss_share

    def _deal_and_blind(self, inbox: Inbox) -> None:
        """Dealer sends rows (and columns unless symmetric); everyone starts its own WSS"""
        if self.is_dealer:
            self.prepare_dealings(lambda s: self.shamir_bivariate(s, symmetric=self.symmetric))
            for j in self.parties:
                F = self.dealing_for(j)
                a = self.alpha(j)
                elems = (F.row(a),) if self.symmetric else (F.row(a), F.col(a))
                self.send(j, Message("poly", elems=elems, phase=Phase.DEAL))
        self.blinding = UniPoly.random(self.t, self.rng, self.p)
        self.wss[self.pid].deal(self.blinding)
        for instance in self._instances():
            instance.round1(inbox)

    def _receive_polys(self, inbox: Inbox) -> None:
        msg = inbox.get(self.dealer, "poly")
        self.row = as_poly(msg, 0, self.t, self.p)
        self.col = self.row if self.symmetric else as_poly(msg, 1, self.t, self.p)

    def _read_masked(self, inbox: Inbox, msgtype: str = "blinded") -> Dict[int, List[int]]:
        """Record every A_j; return the masked column points b_j. when present"""
        points = {}
        for j in self.parties:
            msg = inbox.get(j, msgtype)
            self.masked[j] = as_poly(msg, 0, self.t, self.p)
            points[j] = value_list(msg, self.n, self.p, offset=1)
        return points

    def _finish_instances(self, inbox: Inbox) -> None:
        for instance in self._instances():
            instance.finish(inbox)
        self.W = {j: set(self.wss[j].happy) for j in self.parties}

    def _settle(self) -> None:
        """Prune V against the W_j and discard if fewer than n - t remain"""
        quorum = self.n - self.t
        self.V = prune_supported(self.V, self.W, quorum)
        self.record["unhappy"] = sorted(self.unhappy)
        self.record["V"] = sorted(self.V)
        self.record["W"] = {j: sorted(w) for j, w in self.W.items()}
        if len(self.V) < quorum:
            logger.info(f"P{self.pid}: |V| = {len(self.V)} < {quorum}; discarding dealer")
            self.discarded = True

    def complete_from_subshares(self) -> None:
        """
        Shares for parties outside V.

        P_i interpolates A_j(alpha_i) - r'_ji over the j in V whose W_j
        contains it; those values are points of its own row.
        """
        if self.pid in self.V:
            self.share = self.row(0)
            return
        support = [j for j in sorted(self.V) if self.pid in self.W.get(j, set())]
        self.record["support"] = support
        a = self.alpha(self.pid)
        points = [(self.alpha(j), (self.masked[j](a) - self.wss_share_of(j)) % self.p) for j in support]
        if len(points) < self.t + 1:
            logger.warning(f"P{self.pid}: only {len(points)} sub-shares; cannot complete share")
            self.share = None
            return
        row = interpolate(points, self.p)
        if row.degree > self.t:
            logger.warning(f"P{self.pid}: sub-shares lie on degree {row.degree}; cannot complete share")
            self.share = None
            return
        self.row = row
        self.share = row(0)


class Fggrs(BlindedVss):
    scheme_id = "3FGGRS"
    signature = (3, 2)
    guarantee = "Type-I VSS"

    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        self.conflicts: List[Tuple[int, int]] = []
        self.b: Dict[int, List[int]] = {}

    def sharing_rounds(self) -> Sequence[Handler]:
        return [self._round1, self._round2, self._round3]

    def _round1(self, inbox: Inbox) -> None:
        self._deal_and_blind(inbox)

    def _round2(self, inbox: Inbox) -> None:
        self._receive_polys(inbox)
        for instance in self._instances():
            instance.round2(inbox)
        A = self.row + self.blinding
        b = tuple((self.col(self.alpha(j)) + self.wss_share_of(j)) % self.p for j in self.parties)
        self.broadcast(Message("blinded", elems=(A,) + b))

    def _round3(self, inbox: Inbox) -> None:
        self.b = self._read_masked(inbox)
        # A_i(alpha_j) must equal b_ji = g_j(alpha_i) + r'_ij
        self.conflicts = [
            (i, j)
            for i in self.parties
            for j in self.parties
            if self.masked[i](self.alpha(j)) != self.b[j][i - 1]
        ]
        if self.is_dealer:
            F = self.F
            self.broadcast(
                keyed_message("resolve", {(i, j): F(self.alpha(j), self.alpha(i)) for i, j in self.conflicts})
            )
        claims: Dict[Tuple, int] = {}
        for i, j in self.conflicts:
            if i == self.pid:
                claims[(i, j, 0)] = self.row(self.alpha(j))
            if j == self.pid:
                claims[(i, j, 1)] = self.col(self.alpha(i))
        self.broadcast(keyed_message("dispute", claims))
        for instance in self._instances():
            instance.round3(inbox)

    def finish_sharing(self, inbox: Inbox) -> None:
        dealer_values = keyed_values(inbox.get(self.dealer, "resolve"), self.p)
        first, second = {}, {}
        for i, j in self.conflicts:
            first[(i, j)] = keyed_values(inbox.get(i, "dispute"), self.p).get((i, j, 0), 0)
            second[(i, j)] = keyed_values(inbox.get(j, "dispute"), self.p).get((i, j, 1), 0)
        self.unhappy = unhappy_from_disputes(self.conflicts, dealer_values, first, second)
        self._finish_instances(inbox)
        for j in self.parties:
            # P_i leaves W_j when A_j fails its masked check
            self.W[j] -= {i for i in self.parties if self.masked[j](self.alpha(i)) != self.b[i][j - 1]}
        self.V = set(self.parties) - self.unhappy
        self._settle()
        if not self.discarded:
            self.share = self.row(0) if self.pid in self.V else None

    def reconstruction_rounds(self) -> Sequence[Handler]:
        return [self._reveal_blindings]

    def _reveal_blindings(self, inbox: Inbox) -> None:
        if self.discarded:
            return
        for j in sorted(self.V):
            self.wss[j].reveal(self.W[j])

    def finish_reconstruction(self, inbox: Inbox) -> None:
        if self.discarded:
            self.output = 0
            return
        points = []
        for j in sorted(self.V):
            r_j = self.wss[j].reconstruct(inbox, self.W[j])
            if r_j is BOTTOM:
                logger.debug(f"P{self.pid}: blinding of P{j} did not reconstruct; dropping it")
                continue
            f_j = self.masked[j] - r_j
            points.append((self.alpha(j), f_j(0)))
        if len(points) < self.t + 1:
            self.output = BOTTOM
            return
        q = interpolate(points, self.p)
        if q.degree > self.t:
            logger.info(f"P{self.pid}: recovered shares lie on degree {q.degree}; output is bottom")
            self.output = BOTTOM
            return
        self.output = q(0)

    @classmethod
    def committed_value(cls, honest: Mapping[int, SyncVssParty]) -> Commitment:
        return shamir_commitment(honest)
