"""Reed-Solomon decoding of Shamir shares

A d-sharing held by parties at distinct points is a Reed-Solomon codeword.
rs_decode recovers the sharing polynomial from a set W of claimed shares when
|W| >= d + 2r + 1 and at most r claims are wrong (Berlekamp-Welch).
brute_force_candidates is the exhaustive reference decoder used by tests.

Usage:
    from vsslab.codes.reed_solomon import ShareSet, rs_decode

    shares = ShareSet()
    for party, value in received.items():
        shares.add(party, value)
    q = rs_decode(d=1, r=1, W=shares, params=params)
"""

import itertools
import logging
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Mapping, Optional, Tuple, Union

from vsslab.algebra.field import FieldParams
from vsslab.algebra.poly import UniPoly, interpolate
from vsslab.errors import DecodeFail, DuplicateFeed

logger = logging.getLogger(__name__)


@dataclass
class ShareSet:
    """Claimed shares keyed by party, with arrival order."""

    entries: Dict[int, int] = field(default_factory=dict)
    order: List[int] = field(default_factory=list)

    @classmethod
    def of(cls, shares: Union[Mapping[int, int], Iterable[Tuple[int, int]]]) -> "ShareSet":
        items = shares.items() if isinstance(shares, Mapping) else shares
        out = cls()
        for party, value in items:
            out.add(party, value)
        return out

    def add(self, party: int, value: int) -> None:
        if party in self.entries:
            raise DuplicateFeed(f"party {party} already has an entry")
        self.entries[party] = int(value)
        self.order.append(party)

    def __len__(self) -> int:
        return len(self.entries)

    def __contains__(self, party: int) -> bool:
        return party in self.entries

    def points(self, params: FieldParams) -> List[Tuple[int, int]]:
        """(alpha, share) pairs sorted by party id"""
        return [(params.alpha(i), self.entries[i] % params.p) for i in sorted(self.entries)]


def solve_linear(rows: List[List[int]], rhs: List[int], p: int) -> Optional[List[int]]:
    """One solution of rows * x = rhs over GF(p), free variables set to 0; None if inconsistent."""
    width = len(rows[0]) if rows else 0
    aug = [[c % p for c in row] + [b % p] for row, b in zip(rows, rhs)]
    pivots: List[int] = []
    r = 0
    for c in range(width):
        pivot = next((i for i in range(r, len(aug)) if aug[i][c]), None)
        if pivot is None:
            continue
        aug[r], aug[pivot] = aug[pivot], aug[r]
        inv = pow(aug[r][c], p - 2, p)
        aug[r] = [v * inv % p for v in aug[r]]
        for i in range(len(aug)):
            if i != r and aug[i][c]:
                factor = aug[i][c]
                aug[i] = [(a - factor * b) % p for a, b in zip(aug[i], aug[r])]
        pivots.append(c)
        r += 1
        if r == len(aug):
            break
    if any(row[-1] for row in aug[r:]):
        return None
    solution = [0] * width
    for i, c in enumerate(pivots):
        solution[c] = aug[i][-1]
    return solution


def agreement(q: UniPoly, points: Iterable[Tuple[int, int]]) -> int:
    return sum(1 for x, y in points if q(x) == y)


def rs_decode(d: int, r: int, W: Union[ShareSet, Mapping[int, int]], params: FieldParams) -> UniPoly:
    """
    Berlekamp-Welch decoding.

    Args:
        d: Degree of the sharing polynomial
        r: Maximum number of wrong entries to correct
        W: Claimed shares
        params: Field and evaluation points

    Returns:
        The unique degree-<=d polynomial that disagrees with at most r entries

    Raises:
        DecodeFail: if |W| < d + 2r + 1 or no such polynomial exists
    """
    shares = W if isinstance(W, ShareSet) else ShareSet.of(W)
    points = shares.points(params)
    p = params.p
    if len(points) < d + 2 * r + 1:
        raise DecodeFail(f"|W| = {len(points)} < d + 2r + 1 = {d + 2 * r + 1}")

    # Unknowns: E = e_0..e_{r-1} (monic x^r), Q = q_0..q_{d+r}
    rows, rhs = [], []
    for x, y in points:
        q_part = [pow(x, k, p) for k in range(d + r + 1)]
        e_part = [-y * pow(x, k, p) % p for k in range(r)]
        rows.append(q_part + e_part)
        rhs.append(y * pow(x, r, p) % p)
    solution = solve_linear(rows, rhs, p)
    if solution is None:
        raise DecodeFail("error-locator system is inconsistent")

    Q = UniPoly(tuple(solution[: d + r + 1]), p)
    E = UniPoly(tuple(solution[d + r + 1 :]) + (1,), p)
    q, remainder = divmod(Q, E)
    if not remainder.is_zero() or q.degree > d:
        raise DecodeFail("error locator does not divide the codeword polynomial")
    if agreement(q, points) < len(points) - r:
        raise DecodeFail(f"decoded polynomial has more than {r} disagreements")
    return q


def brute_force_candidates(
    d: int, r: int, W: Union[ShareSet, Mapping[int, int]], params: FieldParams
) -> List[UniPoly]:
    """Every degree-<=d polynomial through d+1 entries that disagrees with at most r entries"""
    shares = W if isinstance(W, ShareSet) else ShareSet.of(W)
    points = shares.points(params)
    found: List[UniPoly] = []
    if len(points) <= d:
        return found
    for subset in itertools.combinations(points, d + 1):
        q = interpolate(list(subset), params.p)
        if q not in found and agreement(q, points) >= len(points) - r:
            found.append(q)
    return found


def brute_force_decode(
    d: int, r: int, W: Union[ShareSet, Mapping[int, int]], params: FieldParams
) -> UniPoly:
    """Reference decoder: succeeds iff exactly one candidate exists"""
    candidates = brute_force_candidates(d, r, W, params)
    if len(candidates) != 1:
        raise DecodeFail(f"{len(candidates)} candidate polynomials")
    return candidates[0]
