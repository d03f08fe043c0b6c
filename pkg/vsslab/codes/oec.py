"""Online error correction

Asynchronous reconstruction cannot wait for every share. A party feeds shares
into an OecState as they arrive and stops at the first moment the fed set
decodes to a degree-d polynomial agreeing with at least d + t + 1 of them.
With at most t corrupt entries among |source| > d + 2t parties, that
polynomial is the honest one.

The state is an immutable value; oec_feed returns the successor state.

Usage:
    from vsslab.codes.oec import OecState, oec_feed

    st = OecState.start(source=range(1, 6), d=1, t=1)
    st = oec_feed(st, 3, share, params)
    if st.done:
        value = st.result(0)
"""

from dataclasses import dataclass
from typing import FrozenSet, Iterable, Optional, Tuple

from vsslab.algebra.field import FieldParams
from vsslab.algebra.poly import UniPoly
from vsslab.codes.reed_solomon import ShareSet, agreement, rs_decode
from vsslab.errors import DecodeFail, DuplicateFeed, ForeignParty


@dataclass(frozen=True)
class OecState:
    source: FrozenSet[int]
    d: int
    t: int
    fed: Tuple[Tuple[int, int], ...] = ()
    result: Optional[UniPoly] = None

    @classmethod
    def start(cls, source: Iterable[int], d: int, t: int) -> "OecState":
        source = frozenset(source)
        if d >= len(source) - 2 * t:
            raise ValueError(f"OEC needs d < |source| - 2t, got d={d}, |source|={len(source)}, t={t}")
        return cls(source=source, d=d, t=t)

    @property
    def done(self) -> bool:
        return self.result is not None

    @property
    def status(self) -> str:
        return "done" if self.done else "pending"

    def fed_parties(self) -> FrozenSet[int]:
        return frozenset(party for party, _ in self.fed)


def oec_feed(st: OecState, party: int, share: int, params: FieldParams) -> OecState:
    """
    Add one share and try to finish.

    Args:
        st: Current state
        party: Sender of the share, must be in st.source
        share: Claimed share value
        params: Field and evaluation points

    Returns:
        Successor state; done once a decoded polynomial agrees with
        d + t + 1 fed shares. A finished state keeps its result.

    Raises:
        ForeignParty: if party is not in the source set
        DuplicateFeed: if party was already fed
    """
    if party not in st.source:
        raise ForeignParty(f"party {party} not in OEC source {sorted(st.source)}")
    if party in st.fed_parties():
        raise DuplicateFeed(f"party {party} already fed")

    fed = st.fed + ((party, int(share) % params.p),)
    if st.done:
        return OecState(st.source, st.d, st.t, fed, st.result)

    k = len(fed)
    if k < st.d + st.t + 1:
        return OecState(st.source, st.d, st.t, fed)

    r = min(st.t, (k - st.d - 1) // 2)
    shares = ShareSet.of(fed)
    try:
        q = rs_decode(st.d, r, shares, params)
    except DecodeFail:
        return OecState(st.source, st.d, st.t, fed)
    if agreement(q, shares.points(params)) >= st.d + st.t + 1:
        return OecState(st.source, st.d, st.t, fed, q)
    return OecState(st.source, st.d, st.t, fed)
