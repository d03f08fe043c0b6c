"""Three-round weak secret sharing

A WssInstance is one execution of the three-round WSS with a given dealer.
It is hosted by a SyncVssParty: the host forwards each sharing round to the
instance, which sends and broadcasts on the host's behalf under its own
instance tag. The VSS schemes that blind their rows run one instance per
party (tag ("wss", dealer)); the stand-alone WSS schemes run a single one
with tag ().

Two flavours share the reconstruction:

- "fggrs": the pairwise pads of the first three rounds of 4GIKR. Conflicting
  masked values are disputed in public and the dealer's verdict makes
  parties unhappy.
- "kkk": parties exchange their common values in private, report their pads
  to the dealer, and the dealer's broadcast is an EQ/NEQ verdict per pair of
  pads, so round 3 is the only broadcast round.

Reconstruction: happy parties broadcast their polynomials; the consistency
graph among them is pruned to closed degree n - t; at least n - t survivors
give q by interpolation of their row constants, otherwise BOTTOM.

Usage:
    instance = WssInstance(host, dealer=j, flavour="fggrs", tag=("wss", j))
    instance.deal(r)            # dealer, before round1
    instance.round1(inbox)
"""

import logging
from typing import Any, Dict, List, Sequence, Set, Tuple, Union

from vsslab.algebra.bivariate import BiPoly, EmbedMode, embed_bivariate
from vsslab.algebra.poly import UniPoly, interpolate, sample_sharing_poly
from vsslab.dealer import build_dealings, pick_dealing
from vsslab.graphs.consistency import ConsistencyGraph
from vsslab.graphs.star import prune_low_degree
from vsslab.netsim.messages import Message, Phase, as_poly, as_value, value_list
from vsslab.netsim.protocol import BOTTOM, Handler, Inbox
from vsslab.vss_sync.base import (
    Commitment,
    SyncVssParty,
    keyed_message,
    keyed_values,
    shamir_commitment,
    unhappy_from_disputes,
)

logger = logging.getLogger(__name__)

FLAVOURS = ("fggrs", "kkk")

# KKK statement kinds; keys are (kind, other party)
AGREE_COL = 0
DISAGREE_ROW = 1
DISAGREE_ROW_PAD = 2
DISAGREE_COL = 3
DISAGREE_COL_PAD = 4
# KKK dealer verdicts; keys are (verdict, j, k)
EQ = 0
NEQ = 1


class WssInstance:
    def __init__(self, host: SyncVssParty, dealer: int, flavour: str = "fggrs", tag: Tuple = ()):
        if flavour not in FLAVOURS:
            raise ValueError(f"unknown WSS flavour '{flavour}'")
        self.host = host
        self.dealer = dealer
        self.flavour = flavour
        self.tag = tag
        p = host.p
        self.dealings: List[BiPoly] = []
        self.row = UniPoly.zero(p)
        self.col = UniPoly.zero(p)
        self.pads_out: Dict[int, int] = {}  # r_ij sent to P_j
        self.pads_in: Dict[int, int] = {}  # r'_ji received from P_j
        self.masked: Dict[int, Tuple[List[int], List[int]]] = {}
        self.conflicts: List[Tuple[int, int]] = []
        self.unhappy: Set[int] = set()
        self.discarded = False
        # dealer side of the kkk flavour
        self.pad_lists: Dict[int, List[int]] = {}
        self.pad_confirms: Dict[int, List[int]] = {}

    def __repr__(self) -> str:
        return f"WssInstance({self.flavour}, dealer=P{self.dealer}, host=P{self.host.pid})"

    @property
    def is_dealer(self) -> bool:
        return self.host.pid == self.dealer

    @property
    def happy(self) -> Set[int]:
        if self.discarded:
            return set()
        return set(self.host.parties) - self.unhappy

    @property
    def wss_share(self) -> int:
        """The constant term of the row received from the dealer"""
        return self.row(0)

    def _msg(self, msgtype: str, meta: Tuple = (), elems: Tuple = (), phase: Phase = Phase.SHARE) -> Message:
        return Message(msgtype, meta=meta, elems=elems, phase=phase, instance=self.tag)

    # dealing

    def deal(self, q: UniPoly) -> None:
        """Embed q as F(0, y) and keep a second dealing for q + 1 if the dealer splits"""
        host = self.host
        shape = (host.t, host.t)

        def build(offset: int) -> BiPoly:
            return embed_bivariate(q + UniPoly.constant(offset, host.p), EmbedMode.AT_X0, shape, host.rng)

        self.dealings = build_dealings(host, build, 0)

    def deal_secret(self, s: int) -> None:
        self.deal(sample_sharing_poly(s, self.host.t, self.host.rng, self.host.p))

    # sharing rounds

    def round1(self, inbox: Inbox) -> None:
        host = self.host
        if self.is_dealer and self.dealings:
            for j in host.parties:
                F = pick_dealing(host, self.dealings, j)
                a = host.alpha(j)
                host.send(j, self._msg("wss-poly", elems=(F.row(a), F.col(a)), phase=Phase.DEAL))
        for j in host.parties:
            r = host.rng.element(host.p)
            self.pads_out[j] = r
            host.send(j, self._msg("wss-pad", elems=(r,), phase=Phase.PAD))
        if self.flavour == "kkk":
            pads = tuple(self.pads_out[j] for j in host.parties)
            host.send(self.dealer, self._msg("wss-padlist", elems=pads, phase=Phase.PAD_REPORT))

    def round2(self, inbox: Inbox) -> None:
        host = self.host
        t, p = host.t, host.p
        msg = inbox.get(self.dealer, "wss-poly", self.tag)
        self.row = as_poly(msg, 0, t, p)
        self.col = as_poly(msg, 1, t, p)
        for j in host.parties:
            self.pads_in[j] = as_value(inbox.get(j, "wss-pad", self.tag), 0, p)

        if self.flavour == "fggrs":
            a = tuple((self.row(host.alpha(j)) + self.pads_out[j]) % p for j in host.parties)
            b = tuple((self.col(host.alpha(j)) + self.pads_in[j]) % p for j in host.parties)
            host.broadcast(self._msg("wss-masked", elems=a + b))
            return

        for j in host.parties:
            a = host.alpha(j)
            host.send(j, self._msg("wss-common", elems=(self.row(a), self.col(a))))
        received = tuple(self.pads_in[j] for j in host.parties)
        host.send(self.dealer, self._msg("wss-padconfirm", elems=received, phase=Phase.PAD_REPORT))
        if self.is_dealer:
            for j in host.parties:
                self.pad_lists[j] = value_list(inbox.get(j, "wss-padlist", self.tag), host.n, p)

    def round3(self, inbox: Inbox) -> None:
        if self.flavour == "fggrs":
            self._dispute_round(inbox)
        else:
            self._statement_round(inbox)

    def finish(self, inbox: Inbox) -> None:
        if self.flavour == "fggrs":
            self.unhappy = self._unhappy_from_disputes(inbox)
        else:
            self.unhappy = self._unhappy_from_verdicts(inbox)
        if len(self.unhappy) > self.host.t:
            logger.info(f"{self!r}: {len(self.unhappy)} unhappy parties; discarding dealer")
            self.discarded = True

    # fggrs flavour

    def masked_tables(self, inbox: Inbox) -> Dict[int, Tuple[List[int], List[int]]]:
        """party -> (a_j., b_j.) from the round-2 masked broadcasts"""
        host = self.host
        n, p = host.n, host.p
        tables = {}
        for j in host.parties:
            msg = inbox.get(j, "wss-masked", self.tag)
            tables[j] = (value_list(msg, n, p), value_list(msg, n, p, offset=n))
        return tables

    def _dispute_round(self, inbox: Inbox) -> None:
        host = self.host
        self.masked = self.masked_tables(inbox)
        # a_ij (masked f_i(alpha_j)) must equal b_ji (masked g_j(alpha_i))
        self.conflicts = [
            (i, j)
            for i in host.parties
            for j in host.parties
            if self.masked[i][0][j - 1] != self.masked[j][1][i - 1]
        ]
        if self.is_dealer:
            F = self.dealings[0]
            host.broadcast(
                keyed_message(
                    "wss-resolve",
                    {(i, j): F(host.alpha(j), host.alpha(i)) for i, j in self.conflicts},
                    self.tag,
                )
            )
        claims: Dict[Tuple, int] = {}
        for i, j in self.conflicts:
            if i == host.pid:
                claims[(i, j, 0)] = self.row(host.alpha(j))
            if j == host.pid:
                claims[(i, j, 1)] = self.col(host.alpha(i))
        host.broadcast(keyed_message("wss-dispute", claims, self.tag))

    def _unhappy_from_disputes(self, inbox: Inbox) -> Set[int]:
        host = self.host
        dealer_values = keyed_values(inbox.get(self.dealer, "wss-resolve", self.tag), host.p)
        first, second = {}, {}
        for i, j in self.conflicts:
            first[(i, j)] = keyed_values(inbox.get(i, "wss-dispute", self.tag), host.p).get((i, j, 0), 0)
            second[(i, j)] = keyed_values(inbox.get(j, "wss-dispute", self.tag), host.p).get((i, j, 1), 0)
        return unhappy_from_disputes(self.conflicts, dealer_values, first, second)

    # kkk flavour

    def _statement_round(self, inbox: Inbox) -> None:
        host = self.host
        p = host.p
        statements: Dict[Tuple, int] = {}
        for j in host.parties:
            msg = inbox.get(j, "wss-common", self.tag)
            f_ji, g_ji = as_value(msg, 0, p), as_value(msg, 1, p)
            a = host.alpha(j)
            # P_j's column value at i must equal our row value at j, and vice versa
            if g_ji != self.row(a):
                statements[(DISAGREE_ROW, j)] = self.row(a)
                statements[(DISAGREE_ROW_PAD, j)] = self.pads_out[j]
            if f_ji != self.col(a):
                statements[(DISAGREE_COL, j)] = self.col(a)
                statements[(DISAGREE_COL_PAD, j)] = self.pads_in[j]
            else:
                statements[(AGREE_COL, j)] = (self.col(a) + self.pads_in[j]) % p
        host.broadcast(keyed_message("wss-statement", statements, self.tag))

        if self.is_dealer:
            for k in host.parties:
                self.pad_confirms[k] = value_list(inbox.get(k, "wss-padconfirm", self.tag), host.n, p)
            host.broadcast(keyed_message("wss-verdict", self.dealer_verdicts(), self.tag))

    def dealer_verdicts(self) -> Dict[Tuple, int]:
        """EQ/NEQ verdict on F(alpha_k, alpha_j) for each ordered pair (j, k)"""
        host = self.host
        F = self.dealings[0]
        verdicts: Dict[Tuple, int] = {}
        for j in host.parties:
            for k in host.parties:
                sent = self.pad_lists.get(j, [0] * host.n)[k - 1]
                seen = self.pad_confirms.get(k, [0] * host.n)[j - 1]
                value = F(host.alpha(k), host.alpha(j))
                if sent != seen:
                    verdicts[(NEQ, j, k)] = value
                else:
                    verdicts[(EQ, j, k)] = (value + sent) % host.p
        return verdicts

    def _unhappy_from_verdicts(self, inbox: Inbox) -> Set[int]:
        host = self.host
        p = host.p
        stmts = {j: keyed_values(inbox.get(j, "wss-statement", self.tag), p) for j in host.parties}
        verdicts = keyed_values(inbox.get(self.dealer, "wss-verdict", self.tag), p)
        return unhappy_from_verdicts(host.parties, stmts, verdicts, p)

    # reconstruction

    def reveal(self, allowed: Set[int]) -> None:
        """Broadcast f_i, g_i if the host is among the parties allowed to reveal"""
        if self.host.pid in allowed:
            self.host.broadcast(self._msg("wss-reveal", elems=(self.row, self.col), phase=Phase.REC))

    def reconstruct(self, inbox: Inbox, allowed: Set[int]) -> Union[UniPoly, Any]:
        """The dealer's polynomial q from the reveals of `allowed`, or BOTTOM"""
        host = self.host
        t, p = host.t, host.p
        rows: Dict[int, UniPoly] = {}
        cols: Dict[int, UniPoly] = {}
        for j in sorted(allowed):
            msg = inbox.get(j, "wss-reveal", self.tag)
            rows[j], cols[j] = as_poly(msg, 0, t, p), as_poly(msg, 1, t, p)
        return interpolate_revealed(rows, cols, host.params, t)


def unhappy_from_verdicts(
    parties: Sequence[int], stmts: Dict[int, Dict[Any, int]], verdicts: Dict[Any, int], p: int
) -> Set[int]:
    """
    Unhappy set from KKK statements and dealer verdicts.

    A pair (i, j) is examined when P_i disagrees on its row towards P_j,
    P_j disagrees on its column towards P_i, and both quote the same pad.
    A missing verdict counts as NEQ with value 0.
    """
    unhappy: Set[int] = set()
    for i in parties:
        for j in parties:
            if (DISAGREE_ROW, j) not in stmts[i] or (DISAGREE_COL, i) not in stmts[j]:
                continue
            pad = stmts[i].get((DISAGREE_ROW_PAD, j), 0)
            if pad != stmts[j].get((DISAGREE_COL_PAD, i), 0):
                continue
            claim_i = stmts[i][(DISAGREE_ROW, j)]
            claim_j = stmts[j][(DISAGREE_COL, i)]
            if (EQ, i, j) in verdicts:
                d = verdicts[(EQ, i, j)]
                claim_i, claim_j = (claim_i + pad) % p, (claim_j + pad) % p
            else:
                d = verdicts.get((NEQ, i, j), 0)
            if claim_i != d:
                unhappy.add(i)
            if claim_j != d:
                unhappy.add(j)
    return unhappy


def interpolate_revealed(rows: Dict[int, UniPoly], cols: Dict[int, UniPoly], params, t: int):
    """
    Prune the revealed polynomials to a consistent core and interpolate.

    Two parties are consistent when f_j(alpha_k) = g_k(alpha_j) and
    g_j(alpha_k) = f_k(alpha_j). Parties with fewer than n - t consistent
    parties (self included) are dropped until none is left to drop.

    Returns:
        q with q(alpha_j) = f_j(0) over the survivors, or BOTTOM if fewer than
        n - t survive or q has degree above t
    """
    n = params.n
    G = ConsistencyGraph(n)
    revealed = sorted(rows)
    for x, j in enumerate(revealed):
        for k in revealed[x + 1:]:
            aj, ak = params.alpha(j), params.alpha(k)
            if rows[j](ak) == cols[k](aj) and cols[j](ak) == rows[k](aj):
                G.add_edge(j, k)
    alive = prune_low_degree(G, n - t, revealed)
    if len(alive) < n - t:
        logger.info(f"only {len(alive)} consistent reveals; output is bottom")
        return BOTTOM
    q = interpolate([(params.alpha(j), rows[j](0)) for j in sorted(alive)], params.p)
    if q.degree > t:
        logger.info(f"revealed constants lie on degree {q.degree} > {t}; output is bottom")
        return BOTTOM
    return q


class WssScheme(SyncVssParty):
    """Stand-alone WSS: one instance whose dealer is the scheme's dealer."""

    flavour = "fggrs"
    guarantee = "WSS"

    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        self.instance = WssInstance(self, self.dealer, self.flavour)

    def sharing_rounds(self) -> Sequence[Handler]:
        return [self._round1, self.instance.round2, self.instance.round3]

    def _round1(self, inbox: Inbox) -> None:
        if self.is_dealer:
            self.instance.deal_secret(self.secret_value)
        self.instance.round1(inbox)

    def finish_sharing(self, inbox: Inbox) -> None:
        self.instance.finish(inbox)
        self.discarded = self.instance.discarded
        self.record["unhappy"] = sorted(self.instance.unhappy)
        self.share = self.instance.wss_share if self.pid in self.instance.happy else None

    def reconstruction_rounds(self) -> Sequence[Handler]:
        return [self._reveal]

    def _reveal(self, inbox: Inbox) -> None:
        self.instance.reveal(self.instance.happy)

    def finish_reconstruction(self, inbox: Inbox) -> None:
        if self.discarded:
            self.output = 0
            return
        q = self.instance.reconstruct(inbox, self.instance.happy)
        self.output = BOTTOM if q is BOTTOM else q(0)

    @classmethod
    def committed_value(cls, honest) -> Commitment:
        return shamir_commitment(honest)


class FggrsWss(WssScheme):
    scheme_id = "3FGGRS-WSS"
    signature = (3, 2)
    flavour = "fggrs"


class KkkWss(WssScheme):
    scheme_id = "3KKK-WSS"
    signature = (3, 1)
    flavour = "kkk"
