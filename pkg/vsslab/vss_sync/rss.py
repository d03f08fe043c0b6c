"""Replicated secret sharing with a three-round pairwise check

The secret is split into K = C(n, t) additive pieces v^(1..K) over GF(p).
Piece k goes to every member of G_k = P minus the k-th t-subset A_k
(subsets in lexicographic order), so any t parties miss at least one piece.

Inside each group every pair of members compares its piece in public under
fresh pads. A group with any mismatch is conflicted and the dealer makes
its piece public. Nobody is ever discarded: the pieces are fixed once the
sharing ends.

Reconstruction: members send their piece to everyone outside the group;
a receiver takes the value sent by at least t + 1 members of the group.
"""

import logging
from collections import Counter
from itertools import combinations
from typing import Dict, List, Mapping, Sequence, Set, Tuple

from vsslab.errors import ConfigBound
from vsslab.netsim.messages import Phase
from vsslab.netsim.protocol import Handler, Inbox
from vsslab.vss_sync.base import Commitment, SyncVssParty, keyed_message, keyed_values

logger = logging.getLogger(__name__)

MAX_PARTIES = 8


def groups_for(n: int, t: int) -> List[Tuple[int, ...]]:
    """G_1..G_K, the complements of all t-subsets of 1..n in lexicographic order"""
    parties = range(1, n + 1)
    return [tuple(j for j in parties if j not in excluded) for excluded in combinations(parties, t)]


class Gikr3(SyncVssParty):
    scheme_id = "3GIKR"
    signature = (3, 2)

    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        self.groups = groups_for(self.n, self.t)
        self.member_of = [k for k, G in enumerate(self.groups) if self.pid in G]
        self.pieces: Dict[int, int] = {}
        self.pads_out: Dict[Tuple[int, int], int] = {}  # (k, j) -> r_ij^(k), i < j
        self.conflicted: Set[int] = set()

    @classmethod
    def check_bounds(cls, n: int, t: int) -> None:
        super().check_bounds(n, t)
        if n > MAX_PARTIES:
            raise ConfigBound(f"{cls.scheme_id} enumerates C(n, t) groups; n={n} exceeds {MAX_PARTIES}")

    def sharing_rounds(self) -> Sequence[Handler]:
        return [self._deal, self._compare, self._publish_conflicted]

    def _split(self, s: int) -> List[int]:
        pieces = [self.rng.element(self.p) for _ in range(len(self.groups) - 1)]
        pieces.append((s - sum(pieces)) % self.p)
        return pieces

    def _deal(self, inbox: Inbox) -> None:
        if self.is_dealer:
            self.prepare_dealings(self._split)
            for j in self.parties:
                pieces = self.dealing_for(j)
                mine = {k: pieces[k] for k, G in enumerate(self.groups) if j in G}
                self.send(j, keyed_message("pieces", mine, phase=Phase.DEAL))
        for k in self.member_of:
            for j in self.groups[k]:
                if j > self.pid:
                    self.pads_out[(k, j)] = self.rng.element(self.p)
        for j in self.parties:
            pads = {k: r for (k, to), r in self.pads_out.items() if to == j}
            if pads:
                self.send(j, keyed_message("pads", pads, phase=Phase.PAD))

    def _compare(self, inbox: Inbox) -> None:
        received = keyed_values(inbox.get(self.dealer, "pieces"), self.p)
        self.pieces = {k: received.get(k, 0) for k in self.member_of}
        masked: Dict[Tuple[int, int, int], int] = {}
        for k in self.member_of:
            for j in self.groups[k]:
                if j > self.pid:
                    masked[(k, self.pid, j)] = (self.pieces[k] + self.pads_out[(k, j)]) % self.p
                elif j < self.pid:
                    pad = keyed_values(inbox.get(j, "pads"), self.p).get(k, 0)
                    masked[(k, j, self.pid)] = (self.pieces[k] + pad) % self.p
        self.broadcast(keyed_message("masked", masked))

    def _publish_conflicted(self, inbox: Inbox) -> None:
        published = {i: keyed_values(inbox.get(i, "masked"), self.p) for i in self.parties}
        self.conflicted = set()
        for k, G in enumerate(self.groups):
            for i, j in combinations(G, 2):
                if published[i].get((k, i, j), 0) != published[j].get((k, i, j), 0):
                    self.conflicted.add(k)
                    break
        self.record["conflicted"] = sorted(self.conflicted)
        if self.is_dealer:
            pieces = self.dealings[0]
            self.broadcast(keyed_message("public-pieces", {k: pieces[k] for k in self.conflicted}))

    def finish_sharing(self, inbox: Inbox) -> None:
        public = keyed_values(inbox.get(self.dealer, "public-pieces"), self.p)
        for k in self.member_of:
            if k in self.conflicted:
                self.pieces[k] = public.get(k, 0)
        self.share = dict(self.pieces)

    def default_share(self) -> Dict[int, int]:
        return {k: 0 for k in self.member_of}

    def reconstruction_rounds(self) -> Sequence[Handler]:
        return [self._send_pieces]

    def _send_pieces(self, inbox: Inbox) -> None:
        for j in self.parties:
            outside = {k: self.pieces.get(k, 0) for k in self.member_of if j not in self.groups[k]}
            if outside:
                self.send(j, keyed_message("piece", outside, phase=Phase.REC))

    def finish_reconstruction(self, inbox: Inbox) -> None:
        total = sum(self.pieces.get(k, 0) for k in self.member_of)
        for k, G in enumerate(self.groups):
            if self.pid in G:
                continue
            votes = Counter()
            for j in G:
                values = keyed_values(inbox.get(j, "piece"), self.p)
                if k in values:
                    votes[values[k]] += 1
            value, count = votes.most_common(1)[0] if votes else (0, 0)
            if count < self.t + 1:
                logger.warning(f"P{self.pid}: no piece of group {k} has {self.t + 1} votes; using 0")
                value = 0
            total += value
        self.output = total % self.p

    @classmethod
    def committed_value(cls, honest: Mapping[int, SyncVssParty]) -> Commitment:
        """Sum of the pieces if the honest members of every group agree, else None"""
        if not honest:
            return None, None
        any_party = next(iter(honest.values()))
        total = 0
        for k in range(len(any_party.groups)):
            held = {party.share[k] for party in honest.values() if k in party.share}
            if len(held) != 1:
                return None, None
            total += held.pop()
        return total % any_party.p, None
