"""Pad-masked VSS schemes with few broadcast rounds

Gikr4 runs the pad exchange of the fggrs WSS and adds the public-row round
of the five-round scheme. Gikr2 needs n > 4t: it skips disputes entirely,
finds a star in the graph of matching masked values, and lets parties
outside the star decode their row from the star's masked columns. Gikr1 is
the one-round scheme for n = 5, t = 1.
"""

import logging
from typing import Mapping, Sequence

from vsslab.algebra.poly import sample_sharing_poly
from vsslab.codes.reed_solomon import rs_decode
from vsslab.errors import ConfigBound, DecodeFail
from vsslab.graphs.consistency import ConsistencyGraph
from vsslab.graphs.star import find_star
from vsslab.netsim.messages import Message, Phase, as_value
from vsslab.netsim.protocol import BOTTOM, Handler, Inbox
from vsslab.vss_sync.base import (
    Commitment,
    ShamirReconstruction,
    SyncVssParty,
    broadcast_unhappy_resolution,
    resolve_unhappy,
)
from vsslab.vss_sync.wss import WssInstance

logger = logging.getLogger(__name__)


class PaddedDealing(SyncVssParty):
    """Hosts the pad-exchange rounds of the fggrs WSS on the party's own sharing."""

    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        self.pads = WssInstance(self, self.dealer, "fggrs")

    def _deal(self, inbox: Inbox) -> None:
        if self.is_dealer:
            self.pads.deal_secret(self.secret_value)
            self.dealings = self.pads.dealings
        self.pads.round1(inbox)


class Gikr4(ShamirReconstruction, PaddedDealing):
    scheme_id = "4GIKR"
    signature = (4, 3)

    def sharing_rounds(self) -> Sequence[Handler]:
        return [self._deal, self.pads.round2, self.pads.round3, self._resolution]

    def _resolution(self, inbox: Inbox) -> None:
        self.pads.finish(inbox)
        self.discarded = self.pads.discarded
        self.record["unhappy"] = sorted(self.pads.unhappy)
        broadcast_unhappy_resolution(self, self.pads)

    def finish_sharing(self, inbox: Inbox) -> None:
        if self.discarded:
            return
        if not resolve_unhappy(self, self.pads, inbox):
            self.discarded = True
            return
        self.share = self.pads.row(0)


class Gikr2(ShamirReconstruction, PaddedDealing):
    scheme_id = "2GIKR"
    signature = (2, 1)

    @classmethod
    def check_bounds(cls, n: int, t: int) -> None:
        if t < 0 or n <= 4 * t:
            raise ConfigBound(f"{cls.scheme_id} needs n > 4t, got n={n}, t={t}")

    def sharing_rounds(self) -> Sequence[Handler]:
        return [self._deal, self.pads.round2]

    def finish_sharing(self, inbox: Inbox) -> None:
        tables = self.pads.masked_tables(inbox)
        G = ConsistencyGraph(self.n)
        for l in self.parties:
            for m in self.parties:
                if l >= m:
                    continue
                if tables[l][0][m - 1] == tables[m][1][l - 1] and tables[m][0][l - 1] == tables[l][1][m - 1]:
                    G.add_edge(l, m)
        star = find_star(G, self.n, self.t)
        if star is None:
            logger.info(f"P{self.pid}: no star in the masked-value graph; discarding dealer")
            self.discarded = True
            return
        self.record["star"] = (sorted(star.C), sorted(star.D))
        if self.pid in star.C:
            self.share = self.pads.row(0)
            return
        # b_ji - r_ij = g_j(alpha_i) = f_i(alpha_j) for every honest j in D
        points = {j: (tables[j][1][self.pid - 1] - self.pads.pads_out[j]) % self.p for j in star.D}
        try:
            f_i = rs_decode(self.t, self.t, points, self.params)
        except DecodeFail as exc:
            logger.warning(f"P{self.pid}: could not decode own row from the star ({exc})")
            self.share = 0
            return
        self.share = f_i(0)


class Gikr1(SyncVssParty):
    """One-round sharing for five parties, one of them possibly corrupt; the dealer holds no share."""

    scheme_id = "1GIKR"
    signature = (1, 0)
    guarantee = "Type-I VSS"
    dealer_holds_share = False

    @classmethod
    def check_bounds(cls, n: int, t: int) -> None:
        if (n, t) != (5, 1):
            raise ConfigBound(f"{cls.scheme_id} runs only at n=5, t=1, got n={n}, t={t}")

    @property
    def receivers(self):
        return [j for j in self.parties if j != self.dealer]

    def sharing_rounds(self) -> Sequence[Handler]:
        return [self._deal]

    def _deal(self, inbox: Inbox) -> None:
        if not self.is_dealer:
            return
        self.prepare_dealings(lambda s: sample_sharing_poly(s, self.t, self.rng, self.p))
        for j in self.receivers:
            q = self.dealing_for(j)
            self.send(j, Message("share", elems=(q(self.alpha(j)),), phase=Phase.DEAL))

    def finish_sharing(self, inbox: Inbox) -> None:
        if not self.is_dealer:
            self.share = as_value(inbox.get(self.dealer, "share"), 0, self.p)

    def default_share(self):
        return None if self.is_dealer else 0

    def reconstruction_rounds(self) -> Sequence[Handler]:
        return [self._exchange]

    def _exchange(self, inbox: Inbox) -> None:
        if self.is_dealer:
            return
        for j in self.receivers:
            self.send(j, Message("share", elems=(self.share,), phase=Phase.REC))

    def finish_reconstruction(self, inbox: Inbox) -> None:
        if self.is_dealer:
            return
        W = {j: as_value(inbox.get(j, "share"), 0, self.p) for j in self.receivers}
        try:
            self.output = rs_decode(self.t, self.t, W, self.params)(0)
        except DecodeFail:
            logger.info(f"P{self.pid}: shares do not decode; output is bottom")
            self.output = BOTTOM

    @classmethod
    def committed_value(cls, honest: Mapping[int, SyncVssParty]) -> Commitment:
        """Decode the honest receivers' shares; BOTTOM when they do not decode"""
        if not honest:
            return None, None
        any_party = next(iter(honest.values()))
        params, t = any_party.params, any_party.t
        W = {pid: party.share for pid, party in honest.items() if not party.is_dealer}
        try:
            errors = t if len(W) >= 3 * t + 1 else 0
            q = rs_decode(t, errors, W, params)
        except DecodeFail:
            return BOTTOM, None
        return q(0), q
