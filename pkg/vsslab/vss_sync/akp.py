"""Three-round VSS whose shares are known early

Like the blinded-row scheme but with a symmetric F: parties receive only
f_i and broadcast b_ij = f_i(alpha_j) + r'_ji next to A_i. At the end of
round 2 every party already holds a tentative share f_i(0) and tentative
sub-shares A_j(alpha_i) - r'_ji; round 3 only decides which of them stand.
"""

import logging
from typing import Dict, List, Sequence, Tuple

from vsslab.netsim.messages import Message
from vsslab.netsim.protocol import Handler, Inbox
from vsslab.vss_sync.base import ShamirReconstruction, keyed_message, keyed_values, unhappy_from_disputes
from vsslab.vss_sync.fggrs import BlindedVss

logger = logging.getLogger(__name__)

# dispute keys are (i, j, slot)
ROW_VALUE, COL_VALUE, ROW_PAD, COL_PAD = 0, 1, 2, 3


class Akp(ShamirReconstruction, BlindedVss):
    scheme_id = "3AKP"
    signature = (3, 2)
    symmetric = True

    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        self.b: Dict[int, List[int]] = {}
        self.conflicts: List[Tuple[int, int]] = []

    def sharing_rounds(self) -> Sequence[Handler]:
        return [self._round1, self._round2, self._round3]

    def _round1(self, inbox: Inbox) -> None:
        self._deal_and_blind(inbox)

    def _round2(self, inbox: Inbox) -> None:
        self._receive_polys(inbox)
        for instance in self._instances():
            instance.round2(inbox)
        b = tuple((self.row(self.alpha(j)) + self.wss_share_of(j)) % self.p for j in self.parties)
        self.broadcast(Message("blinded", elems=(self.row + self.blinding,) + b))

    def _round3(self, inbox: Inbox) -> None:
        self.b = self._read_masked(inbox)
        a = self.alpha(self.pid)
        self.record["tentative_share"] = self.row(0)
        self.record["tentative_subshares"] = {
            j: (self.masked[j](a) - self.wss_share_of(j)) % self.p for j in self.parties
        }
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
                claims[(i, j, ROW_VALUE)] = self.row(self.alpha(j))
                claims[(i, j, ROW_PAD)] = self.blinding(self.alpha(j))
            if j == self.pid:
                claims[(i, j, COL_VALUE)] = self.row(self.alpha(i))
                claims[(i, j, COL_PAD)] = self.wss_share_of(i)
        self.broadcast(keyed_message("dispute", claims))
        for instance in self._instances():
            instance.round3(inbox)

    def finish_sharing(self, inbox: Inbox) -> None:
        p = self.p
        disputes = {j: keyed_values(inbox.get(j, "dispute"), p) for j in self.parties}
        dealer_values = keyed_values(inbox.get(self.dealer, "resolve"), p)
        first = {(i, j): disputes[i].get((i, j, ROW_VALUE), 0) for i, j in self.conflicts}
        second = {(i, j): disputes[j].get((i, j, COL_VALUE), 0) for i, j in self.conflicts}
        self.unhappy = unhappy_from_disputes(self.conflicts, dealer_values, first, second)
        self._finish_instances(inbox)

        self.V = set(self.parties) - self.unhappy
        for j, i in self.conflicts:
            # P_j's row claim against its own masked row
            value = disputes[j].get((j, i, ROW_VALUE), 0)
            pad = disputes[j].get((j, i, ROW_PAD), 0)
            if self.masked[j](self.alpha(i)) != (value + pad) % p:
                self.V.discard(j)
            if pad != disputes[i].get((j, i, COL_PAD), 0):
                self.W[j].discard(i)
        self._settle()
        if not self.discarded:
            self.complete_from_subshares()
