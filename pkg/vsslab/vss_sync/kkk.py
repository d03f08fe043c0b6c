"""Three-round VSS with a single broadcast round

The dealer uses a symmetric F, so a row is also a column and parties only
ever receive f_i. Pads are the blinding polynomials themselves: every party
reports its blinding r_i to the dealer in round 1 and its WSS-shares of all
blindings in round 2, and the dealer's EQ/NEQ verdicts in round 3 reuse the
same rule as the kkk-flavoured WSS.

Parties left outside V rebuild their row from the masked rows of the V
parties that still count them in W_j, so every honest party ends with a
share and reconstruction is plain Reed-Solomon decoding.
"""

import logging
from typing import Dict, Sequence

from vsslab.algebra.poly import UniPoly
from vsslab.netsim.messages import Message, Phase, as_poly, as_value, value_list
from vsslab.netsim.protocol import Handler, Inbox
from vsslab.vss_sync.base import ShamirReconstruction, keyed_message, keyed_values
from vsslab.vss_sync.fggrs import BlindedVss
from vsslab.vss_sync.wss import (
    AGREE_COL,
    DISAGREE_COL,
    DISAGREE_COL_PAD,
    DISAGREE_ROW,
    DISAGREE_ROW_PAD,
    EQ,
    NEQ,
    unhappy_from_verdicts,
)

logger = logging.getLogger(__name__)


class Kkk(ShamirReconstruction, BlindedVss):
    scheme_id = "3KKK"
    signature = (3, 1)
    wss_flavour = "kkk"
    symmetric = True

    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        self.blindings: Dict[int, UniPoly] = {}  # dealer only

    def sharing_rounds(self) -> Sequence[Handler]:
        return [self._round1, self._round2, self._round3]

    def _round1(self, inbox: Inbox) -> None:
        self._deal_and_blind(inbox)
        self.send(self.dealer, Message("blinding", elems=(self.blinding,), phase=Phase.PAD_REPORT))

    def _round2(self, inbox: Inbox) -> None:
        self._receive_polys(inbox)
        for instance in self._instances():
            instance.round2(inbox)
        for j in self.parties:
            self.send(j, Message("common", elems=(self.row(self.alpha(j)),)))
        shares = tuple(self.wss_share_of(j) for j in self.parties)
        self.send(self.dealer, Message("wss-shares", elems=shares, phase=Phase.PAD_REPORT))
        if self.is_dealer:
            self.blindings = {j: as_poly(inbox.get(j, "blinding"), 0, self.t, self.p) for j in self.parties}

    def _round3(self, inbox: Inbox) -> None:
        p = self.p
        self.broadcast(Message("masked-row", elems=(self.row + self.blinding,)))
        statements: Dict[tuple, int] = {}
        for j in self.parties:
            a = self.alpha(j)
            mine = self.row(a)
            if as_value(inbox.get(j, "common"), 0, p) != mine:
                statements[(DISAGREE_ROW, j)] = mine
                statements[(DISAGREE_ROW_PAD, j)] = self.blinding(a)
                statements[(DISAGREE_COL, j)] = mine
                statements[(DISAGREE_COL_PAD, j)] = self.wss_share_of(j)
            else:
                statements[(AGREE_COL, j)] = (mine + self.wss_share_of(j)) % p
        self.broadcast(keyed_message("statement", statements))
        if self.is_dealer:
            self.broadcast(keyed_message("verdict", self._verdicts(inbox)))
        for instance in self._instances():
            instance.round3(inbox)

    def _verdicts(self, inbox: Inbox) -> Dict[tuple, int]:
        F = self.F
        reported = {k: value_list(inbox.get(k, "wss-shares"), self.n, self.p) for k in self.parties}
        verdicts: Dict[tuple, int] = {}
        for j in self.parties:
            r_j = self.blindings.get(j, UniPoly.zero(self.p))
            for k in self.parties:
                value = F(self.alpha(k), self.alpha(j))
                sent, seen = r_j(self.alpha(k)), reported[k][j - 1]
                if sent != seen:
                    verdicts[(NEQ, j, k)] = value
                else:
                    verdicts[(EQ, j, k)] = (value + sent) % self.p
        return verdicts

    def finish_sharing(self, inbox: Inbox) -> None:
        p = self.p
        stmts = {j: keyed_values(inbox.get(j, "statement"), p) for j in self.parties}
        verdicts = keyed_values(inbox.get(self.dealer, "verdict"), p)
        self._read_masked(inbox, "masked-row")
        self.unhappy = unhappy_from_verdicts(self.parties, stmts, verdicts, p)
        self._finish_instances(inbox)

        self.V = set(self.parties) - self.unhappy
        for j in self.parties:
            A_j = self.masked[j]
            if len(self.W[j]) < self.n - self.t:
                self.V.discard(j)
            for i in self.parties:
                ai = self.alpha(i)
                claimed = stmts[j].get((DISAGREE_ROW, i))
                if claimed is not None and A_j(ai) != (claimed + stmts[j].get((DISAGREE_ROW_PAD, i), 0)) % p:
                    self.V.discard(j)
                agreed = stmts[i].get((AGREE_COL, j))
                if agreed is not None and agreed != A_j(ai):
                    self.W[j].discard(i)
                if claimed is not None:
                    answered_pad = stmts[i].get((DISAGREE_COL_PAD, j))
                    disagreed = (DISAGREE_COL, j) in stmts[i]
                    if agreed is not None or (disagreed and answered_pad != stmts[j].get((DISAGREE_ROW_PAD, i), 0)):
                        self.W[j].discard(i)
        self._settle()
        if not self.discarded:
            self.complete_from_subshares()
