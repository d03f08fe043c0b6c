"""Bivariate VSS with public complaints

Bgw7 is the classic seven-round scheme: complaints, dealer answers,
accusations, public reveal of accusers' polynomials, second accusations.
Bgw5 resolves complaints by letting the dealer and the accused party both
answer in public, which fixes the unhappy set one round earlier.

Both reconstruct by Reed-Solomon decoding of the n shares.
"""

import logging
from typing import Dict, List, Sequence, Set, Tuple

from vsslab.algebra.poly import UniPoly
from vsslab.netsim.messages import Message, Phase, as_poly, as_value, meta_flag, meta_parties
from vsslab.netsim.protocol import Handler, Inbox
from vsslab.vss_sync.base import (
    ShamirReconstruction,
    SyncVssParty,
    broadcast_unhappy_resolution,
    keyed_message,
    keyed_values,
    pair_key,
    resolve_unhappy,
    unhappy_from_disputes,
)

logger = logging.getLogger(__name__)


class BivariateDealing(SyncVssParty):
    """Round 1 and 2 shared by the BGW variants: deal rows and columns, exchange points."""

    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        self.row = UniPoly.zero(self.p)
        self.col = UniPoly.zero(self.p)

    def _deal(self, inbox: Inbox) -> None:
        if not self.is_dealer:
            return
        self.prepare_dealings(self.shamir_bivariate)
        for j in self.parties:
            F = self.dealing_for(j)
            a = self.alpha(j)
            self.send(j, Message("poly", elems=(F.row(a), F.col(a)), phase=Phase.DEAL))

    def _exchange(self, inbox: Inbox) -> None:
        msg = inbox.get(self.dealer, "poly")
        self.row = as_poly(msg, 0, self.t, self.p)
        self.col = as_poly(msg, 1, self.t, self.p)
        for j in self.parties:
            self.send(j, Message("f-point", elems=(self.row(self.alpha(j)),)))

    def _mismatches(self, inbox: Inbox) -> List[int]:
        """Parties j whose f_j(alpha_i) differs from our g_i(alpha_j)"""
        return [
            j
            for j in self.parties
            if as_value(inbox.get(j, "f-point"), 0, self.p) != self.col(self.alpha(j))
        ]


class Bgw7(ShamirReconstruction, BivariateDealing):
    scheme_id = "7BGW"
    signature = (7, 5)

    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        self.complaint_lists: Dict[int, List[int]] = {}
        self.first_accusers: Set[int] = set()

    def sharing_rounds(self) -> Sequence[Handler]:
        return [
            self._deal,
            self._exchange,
            self._complain,
            self._answer_complaints,
            self._accuse,
            self._reveal_accusers,
            self._accuse_again,
        ]

    def _complain(self, inbox: Inbox) -> None:
        self.broadcast(Message("complaints", meta=(tuple(self._mismatches(inbox)),)))

    def _answer_complaints(self, inbox: Inbox) -> None:
        self.complaint_lists = {i: meta_parties(inbox.get(i, "complaints"), self.n) for i in self.parties}
        if not self.is_dealer:
            return
        F = self.F
        answers = {
            (i, j): F(self.alpha(i), self.alpha(j))
            for i, lst in self.complaint_lists.items()
            for j in lst
        }
        self.broadcast(keyed_message("answers", answers))

    def _accuse(self, inbox: Inbox) -> None:
        answers = keyed_values(inbox.get(self.dealer, "answers"), self.p)
        mine = self.complaint_lists.get(self.pid, [])
        accuse = len(mine) > self.t or self.pid in mine
        # the dealer's answer to P_k's complaint about us must match our row
        for k, lst in self.complaint_lists.items():
            if self.pid in lst and answers.get((k, self.pid), 0) != self.row(self.alpha(k)):
                accuse = True
        for j in mine:
            if answers.get((self.pid, j), 0) != self.col(self.alpha(j)):
                accuse = True
        self.broadcast(Message("accuse", meta=(accuse,)))

    def _reveal_accusers(self, inbox: Inbox) -> None:
        self.first_accusers = {i for i in self.parties if meta_flag(inbox.get(i, "accuse"))}
        if not self.is_dealer:
            return
        accusers = sorted(self.first_accusers)
        elems = []
        for i in accusers:
            elems += [self.F.row(self.alpha(i)), self.F.col(self.alpha(i))]
        self.broadcast(Message("reveal", meta=(tuple(accusers),), elems=tuple(elems)))

    def _accuse_again(self, inbox: Inbox) -> None:
        msg = inbox.get(self.dealer, "reveal")
        revealed: Dict[int, Tuple[UniPoly, UniPoly]] = {}
        for k, i in enumerate(sorted(self.first_accusers)):
            revealed[i] = (as_poly(msg, 2 * k, self.t, self.p), as_poly(msg, 2 * k + 1, self.t, self.p))
        if self.pid in revealed:
            self.row, self.col = revealed[self.pid]
        accuse = False
        me = self.alpha(self.pid)
        for j, (f_j, g_j) in revealed.items():
            if j == self.pid:
                continue
            aj = self.alpha(j)
            if f_j(me) != self.col(aj) or g_j(me) != self.row(aj):
                accuse = True
        self.broadcast(Message("accuse-again", meta=(accuse,)))

    def finish_sharing(self, inbox: Inbox) -> None:
        second = {i for i in self.parties if meta_flag(inbox.get(i, "accuse-again"))}
        accusers = self.first_accusers | second
        self.record["accusers"] = sorted(accusers)
        if len(accusers) > self.t:
            logger.info(f"P{self.pid}: {len(accusers)} accusers; discarding dealer")
            self.discarded = True
            return
        self.share = self.row(0)


class Bgw5(ShamirReconstruction, BivariateDealing):
    scheme_id = "5BGW"
    signature = (5, 3)

    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        self.conflicts: List[Tuple[int, int]] = []
        self.complaint_values: Dict[Tuple[int, int], int] = {}
        self.unhappy: Set[int] = set()

    def sharing_rounds(self) -> Sequence[Handler]:
        return [self._deal, self._exchange, self._complain, self._answer, self._resolution]

    def _complain(self, inbox: Inbox) -> None:
        complaints = {(self.pid, j): self.col(self.alpha(j)) for j in self._mismatches(inbox)}
        self.broadcast(keyed_message("complaint", complaints))

    def _answer(self, inbox: Inbox) -> None:
        self.conflicts = []
        self.complaint_values = {}
        for i in self.parties:
            for key, value in keyed_values(inbox.get(i, "complaint"), self.p).items():
                if pair_key(key, self.n) and len(key) == 2 and key[0] == i:
                    self.conflicts.append(key)
                    self.complaint_values[key] = value
        self.conflicts.sort()
        if self.is_dealer:
            F = self.F
            self.broadcast(
                keyed_message("resolve", {(i, j): F(self.alpha(i), self.alpha(j)) for i, j in self.conflicts})
            )
        # the accused P_j answers with f_j(alpha_i)
        answers = {(i, j): self.row(self.alpha(i)) for i, j in self.conflicts if j == self.pid}
        self.broadcast(keyed_message("dispute", answers))

    def _resolution(self, inbox: Inbox) -> None:
        dealer_values = keyed_values(inbox.get(self.dealer, "resolve"), self.p)
        answers = {}
        for i, j in self.conflicts:
            answers[(i, j)] = keyed_values(inbox.get(j, "dispute"), self.p).get((i, j), 0)
        self.unhappy = unhappy_from_disputes(self.conflicts, dealer_values, self.complaint_values, answers)
        self.record["unhappy"] = sorted(self.unhappy)
        if len(self.unhappy) > self.t:
            logger.info(f"P{self.pid}: {len(self.unhappy)} unhappy parties; discarding dealer")
            self.discarded = True
        # the round is a broadcast round either way
        broadcast_unhappy_resolution(self, self)

    def finish_sharing(self, inbox: Inbox) -> None:
        if self.discarded:
            return
        if not resolve_unhappy(self, self, inbox):
            self.discarded = True
            return
        self.share = self.row(0)
