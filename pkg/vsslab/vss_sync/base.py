"""Shared machinery of the synchronous VSS schemes

Every scheme is a SyncVssParty subclass. The dealer is an ordinary party
whose pid equals `dealer`; corrupt parties run the same code and the
adversary rewrites what they send.

A scheme declares:

- `sharing_rounds()` / `finish_sharing(inbox)`: the sharing schedule. Every
  round that the scheme lists as a broadcast round makes the responsible
  parties broadcast, even if the payload is empty, so measured round counts
  match the scheme's signature.
- `reconstruction_rounds()` / `finish_reconstruction(inbox)`.
- `committed_value(honest)`: the value fixed by the honest joint view, read
  out of band for test assertions.

Usage:
    from vsslab.vss_sync.base import SyncVssParty, ShamirReconstruction
"""

import logging
from typing import Any, Dict, Iterable, List, Mapping, Optional, Sequence, Set, Tuple

from vsslab.algebra.bivariate import BiPoly, EmbedMode, embed_bivariate
from vsslab.algebra.field import FieldParams
from vsslab.algebra.poly import UniPoly, interpolate, sample_sharing_poly
from vsslab.codes.reed_solomon import rs_decode
from vsslab.dealer import DealerRole
from vsslab.errors import ConfigBound, DecodeFail
from vsslab.netsim.messages import Message, Phase, as_poly, as_value
from vsslab.netsim.protocol import BOTTOM, Handler, Inbox, SyncParty
from vsslab.utils.rng import RandomSource

logger = logging.getLogger(__name__)

Commitment = Tuple[Any, Optional[UniPoly]]


class SyncVssParty(DealerRole, SyncParty):
    scheme_id = ""
    signature: Tuple[int, int] = (0, 0)  # (rounds, rounds using broadcast) of sharing
    guarantee = "Type-II VSS"
    dealer_holds_share = True

    def __init__(
        self,
        pid: int,
        params: FieldParams,
        t: int,
        rng: RandomSource,
        dealer: int = 1,
        secret: Optional[int] = None,
    ):
        super().__init__(pid, params, t, rng)
        self.dealer = dealer
        self.secret = secret
        self.dealings: List[BiPoly] = []
        self.share: Any = None
        self.discarded = False
        self.record: Dict[str, Any] = {}

    @classmethod
    def check_bounds(cls, n: int, t: int) -> None:
        """Raise ConfigBound unless the scheme runs at (n, t)"""
        if t < 0 or n <= 3 * t:
            raise ConfigBound(f"{cls.scheme_id} needs n > 3t, got n={n}, t={t}")

    # schedule plumbing

    def schedule(self, phase: str) -> Sequence[Handler]:
        if phase == "share":
            return self.sharing_rounds()
        if phase == "rec":
            return self.reconstruction_rounds()
        raise ValueError(f"unknown phase '{phase}'")

    def conclude(self, phase: str, inbox: Inbox) -> None:
        if phase == "share":
            self.finish_sharing(inbox)
            if self.discarded:
                self.share = self.default_share()
            self.output = self.share
        else:
            self.finish_reconstruction(inbox)
        self.terminated = True

    def sharing_rounds(self) -> Sequence[Handler]:
        raise NotImplementedError

    def finish_sharing(self, inbox: Inbox) -> None:
        raise NotImplementedError

    def reconstruction_rounds(self) -> Sequence[Handler]:
        raise NotImplementedError

    def finish_reconstruction(self, inbox: Inbox) -> None:
        raise NotImplementedError

    def default_share(self) -> Any:
        """This party's share in the default sharing of 0"""
        return 0

    # dealing

    def shamir_bivariate(self, s: int, symmetric: bool = False) -> BiPoly:
        """Random degree-(t, t) F with F(0, y) = q for a fresh sharing polynomial q of s"""
        q = sample_sharing_poly(s, self.t, self.rng, self.p)
        mode = EmbedMode.SYMMETRIC_X0 if symmetric else EmbedMode.AT_X0
        return embed_bivariate(q, mode, (self.t, self.t), self.rng)

    # oracle

    @classmethod
    def committed_value(cls, honest: Mapping[int, "SyncVssParty"]) -> Commitment:
        """(s*, q*) defined by the honest parties' shares"""
        return shamir_commitment(honest)


class ShamirReconstruction:
    """Reconstruction by Reed-Solomon decoding of all n shares: RS-Dec(t, t)."""

    def reconstruction_rounds(self) -> Sequence[Handler]:
        return [self._send_share]

    def _send_share(self, inbox: Inbox) -> None:
        self.send_all(Message("share", elems=(int(self.share or 0),), phase=Phase.REC))

    def finish_reconstruction(self, inbox: Inbox) -> None:
        W = {j: as_value(inbox.get(j, "share"), 0, self.p) for j in self.parties}
        try:
            q = rs_decode(self.t, self.t, W, self.params)
        except DecodeFail as exc:
            logger.info(f"P{self.pid}: reconstruction failed ({exc})")
            self.output = BOTTOM
            return
        self.output = q(0)


def shamir_commitment(honest: Mapping[int, SyncVssParty], degree: Optional[int] = None) -> Commitment:
    """
    Interpolate the honest parties' integer shares.

    Returns:
        (q*(0), q*) when they lie on one polynomial of degree <= degree,
        otherwise (None, None)
    """
    if not honest:
        return None, None
    any_party = next(iter(honest.values()))
    params, t = any_party.params, any_party.t
    degree = t if degree is None else degree
    points = [
        (params.alpha(pid), party.share)
        for pid, party in sorted(honest.items())
        if isinstance(party.share, int)
    ]
    if not points:
        return None, None
    q = interpolate(points, params.p)
    if q.degree > degree:
        return None, None
    return q(0), q


def keyed_values(msg: Optional[Message], p: int) -> Dict[Any, int]:
    """meta[k] -> elems[k] for a message that labels each value; first label wins"""
    if msg is None:
        return {}
    out: Dict[Any, int] = {}
    for k, key in enumerate(msg.meta):
        if k >= len(msg.elems):
            break
        try:
            if key in out:
                continue
        except TypeError:
            continue
        out[key] = as_value(msg, k, p)
    return out


def keyed_message(
    msgtype: str, values: Mapping[Any, int], instance: Tuple = (), phase: Phase = Phase.SHARE
) -> Message:
    keys = sorted(values)
    return Message(msgtype, meta=tuple(keys), elems=tuple(values[k] for k in keys), phase=phase, instance=instance)


def unhappy_from_disputes(
    conflicts: Iterable[Tuple[int, int]],
    dealer_values: Mapping[Tuple[int, int], int],
    first_values: Mapping[Tuple[int, int], int],
    second_values: Mapping[Tuple[int, int], int],
) -> Set[int]:
    """
    Decide who the dealer sides against in each public dispute (i, j).

    The first party of a pair joins the unhappy set if its claimed value
    differs from the dealer's, and likewise for the second. Missing values
    count as 0.
    """
    unhappy: Set[int] = set()
    for pair in conflicts:
        i, j = pair
        d = dealer_values.get(pair, 0)
        if first_values.get(pair, 0) != d:
            unhappy.add(i)
        if second_values.get(pair, 0) != d:
            unhappy.add(j)
    return unhappy


def broadcast_unhappy_resolution(host: SyncVssParty, state: Any) -> None:
    """
    Final round of the four- and five-round schemes.

    The dealer broadcasts f_i for every unhappy P_i; every happy P_j
    broadcasts g_j(alpha_i). `state` carries row, col, unhappy and, at the
    dealer, dealings.
    """
    unhappy = sorted(state.unhappy)
    if host.is_dealer:
        F = state.dealings[0]
        host.broadcast(
            Message("uh-rows", meta=(tuple(unhappy),), elems=tuple(F.row(host.alpha(i)) for i in unhappy))
        )
    if host.pid not in state.unhappy:
        host.broadcast(
            Message("uh-points", meta=(tuple(unhappy),), elems=tuple(state.col(host.alpha(i)) for i in unhappy))
        )


def resolve_unhappy(host: SyncVssParty, state: Any, inbox: Inbox) -> bool:
    """
    Check the public rows of the unhappy parties.

    Returns:
        False if some public row matches at most 2t happy parties' points
        (the dealer is discarded); otherwise True, and an unhappy host adopts
        its public row
    """
    unhappy = sorted(state.unhappy)
    rows_msg = inbox.get(host.dealer, "uh-rows")
    points = {j: inbox.get(j, "uh-points") for j in host.parties if j not in state.unhappy}
    public_rows: Dict[int, UniPoly] = {}
    for k, i in enumerate(unhappy):
        f_i = as_poly(rows_msg, k, host.t, host.p)
        matches = sum(1 for j, msg in points.items() if f_i(host.alpha(j)) == as_value(msg, k, host.p))
        if matches <= 2 * host.t:
            logger.info(f"P{host.pid}: public row of P{i} matches only {matches} parties; discarding dealer")
            return False
        public_rows[i] = f_i
    if host.pid in public_rows:
        state.row = public_rows[host.pid]
    return True


def pair_key(key: Any, n: int, size: int = 2) -> bool:
    """Whether key is a tuple whose first `size` entries are party ids"""
    if not isinstance(key, tuple) or len(key) < size:
        return False
    return all(isinstance(v, int) and not isinstance(v, bool) and 1 <= v <= n for v in key[:size])
