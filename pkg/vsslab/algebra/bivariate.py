"""Bivariate sharing polynomials

F(x, y) = sum r[i][j] x^i y^j with deg_x F <= l and deg_y F <= m. Party i
holds the row polynomial f_i(x) = F(x, alpha_i) and the column polynomial
g_i(y) = F(alpha_i, y), so f_i(alpha_j) = g_j(alpha_i) = F(alpha_j, alpha_i)
for every pair of parties.

Usage:
    from vsslab.algebra.bivariate import embed_bivariate, EmbedMode

    F = embed_bivariate(q, EmbedMode.AT_X0, (t, t), rng)
    f_3 = F.row(params.alpha(3))
"""

from dataclasses import dataclass
from enum import Enum
from typing import Dict, List, Mapping, Optional, Sequence, Tuple, Union

from vsslab.algebra.field import FieldParams
from vsslab.algebra.poly import UniPoly, interpolate
from vsslab.errors import DegreeMismatch, InsufficientPolynomials
from vsslab.utils.rng import RandomSource


class EmbedMode(str, Enum):
    AT_X0 = "at_x0"  # F(0, y) = q
    AT_Y0 = "at_y0"  # F(x, 0) = q
    SYMMETRIC_X0 = "symmetric_x0"  # symmetric, F(0, y) = q
    MULTI_BETA = "multi_beta"  # F(beta_k, y) = q_k


@dataclass(frozen=True)
class BiPoly:
    """Coefficient matrix coeffs[i][j] of x^i y^j, reduced mod p."""

    coeffs: Tuple[Tuple[int, ...], ...]
    p: int
    symmetric: bool = False

    def __post_init__(self):
        rows = tuple(tuple(c % self.p for c in row) for row in self.coeffs)
        if not rows or not rows[0] or len({len(r) for r in rows}) != 1:
            raise ValueError("bivariate coefficients must form a non-empty rectangle")
        object.__setattr__(self, "coeffs", rows)
        if self.symmetric:
            size = len(rows)
            if size != len(rows[0]) or any(
                rows[i][j] != rows[j][i] for i in range(size) for j in range(size)
            ):
                raise DegreeMismatch("symmetric flag set on a non-symmetric matrix")

    @property
    def degrees(self) -> Tuple[int, int]:
        """(l, m) = (bound on x-degree, bound on y-degree)"""
        return len(self.coeffs) - 1, len(self.coeffs[0]) - 1

    @classmethod
    def random(cls, degrees: Tuple[int, int], rng: RandomSource, p: int) -> "BiPoly":
        l, m = degrees
        return cls(tuple(tuple(rng.element(p) for _ in range(m + 1)) for _ in range(l + 1)), p)

    def __call__(self, x: int, y: int) -> int:
        p = self.p
        total = 0
        xp = 1
        for row in self.coeffs:
            yp = 1
            acc = 0
            for c in row:
                acc += c * yp
                yp = yp * y % p
            total += acc * xp
            xp = xp * x % p
        return total % p

    def row(self, alpha: int) -> UniPoly:
        """f(x) = F(x, alpha)"""
        p = self.p
        powers = [pow(alpha, j, p) for j in range(len(self.coeffs[0]))]
        return UniPoly(tuple(sum(c * a for c, a in zip(r, powers)) for r in self.coeffs), p)

    def col(self, alpha: int) -> UniPoly:
        """g(y) = F(alpha, y)"""
        p = self.p
        l, m = self.degrees
        powers = [pow(alpha, i, p) for i in range(l + 1)]
        return UniPoly(
            tuple(sum(self.coeffs[i][j] * powers[i] for i in range(l + 1)) for j in range(m + 1)),
            p,
        )

    def x0(self) -> UniPoly:
        """F(0, y)"""
        return UniPoly(self.coeffs[0], self.p)

    def y0(self) -> UniPoly:
        """F(x, 0)"""
        return UniPoly(tuple(r[0] for r in self.coeffs), self.p)


def _padded(q: UniPoly, size: int, what: str) -> List[int]:
    if q.degree >= size:
        raise DegreeMismatch(f"{what} has degree {q.degree}, bound is {size - 1}")
    return [q.coefficient(j) for j in range(size)]


def embed_bivariate(
    q: Union[UniPoly, Sequence[UniPoly]],
    mode: Union[EmbedMode, str],
    degrees: Tuple[int, int],
    rng: RandomSource,
    betas: Sequence[int] = (),
) -> BiPoly:
    """
    Random bivariate polynomial carrying q on a fixed slice.

    Coefficients not pinned by the constraint are drawn uniformly, in a fixed
    order, from rng.

    Args:
        q: Polynomial to embed, or the list of polynomials for multi_beta
        mode: Which slice carries q
        degrees: (l, m) bounds on the x- and y-degree
        rng: Randomness for the free coefficients
        betas: Points beta_1..beta_L (multi_beta only)

    Returns:
        BiPoly satisfying the slice constraint; symmetric iff mode is symmetric_x0

    Raises:
        DegreeMismatch: if q does not fit the requested slice
    """
    mode = EmbedMode(mode)
    l, m = degrees

    if mode is EmbedMode.MULTI_BETA:
        return _embed_multi_beta(list(q), degrees, rng, betas)

    p = q.p
    if mode is EmbedMode.AT_X0:
        first = _padded(q, m + 1, "q")
        rest = [[rng.element(p) for _ in range(m + 1)] for _ in range(l)]
        return BiPoly(tuple(map(tuple, [first] + rest)), p)

    if mode is EmbedMode.AT_Y0:
        column = _padded(q, l + 1, "q")
        rows = [[column[i]] + [rng.element(p) for _ in range(m)] for i in range(l + 1)]
        return BiPoly(tuple(map(tuple, rows)), p)

    # symmetric_x0
    if l != m:
        raise DegreeMismatch(f"symmetric embedding needs l = m, got {degrees}")
    first = _padded(q, m + 1, "q")
    matrix = [[0] * (m + 1) for _ in range(m + 1)]
    for j in range(m + 1):
        matrix[0][j] = matrix[j][0] = first[j]
    for i in range(1, m + 1):
        for j in range(i, m + 1):
            matrix[i][j] = matrix[j][i] = rng.element(p)
    return BiPoly(tuple(map(tuple, matrix)), p, symmetric=True)


def _embed_multi_beta(
    qs: List[UniPoly], degrees: Tuple[int, int], rng: RandomSource, betas: Sequence[int]
) -> BiPoly:
    l, m = degrees
    if not qs:
        raise DegreeMismatch("multi_beta needs at least one polynomial")
    if len(qs) > l + 1:
        raise DegreeMismatch(f"{len(qs)} polynomials do not fit x-degree {l}")
    if len(betas) < len(qs):
        raise DegreeMismatch(f"{len(qs)} polynomials but only {len(betas)} beta points")
    p = qs[0].p
    fixed = [_padded(q, m + 1, f"q[{k}]") for k, q in enumerate(qs)]
    used = {b % p for b in betas[: len(qs)]}
    # Free anchors: smallest field points not among the betas
    anchors: List[int] = []
    x = 0
    while len(anchors) < l + 1 - len(qs):
        if x not in used:
            anchors.append(x)
        x += 1
    free = [[rng.element(p) for _ in range(m + 1)] for _ in anchors]

    matrix = [[0] * (m + 1) for _ in range(l + 1)]
    for j in range(m + 1):
        points = [(b, fixed[k][j]) for k, b in enumerate(betas[: len(qs)])]
        points += [(a, free[k][j]) for k, a in enumerate(anchors)]
        h = interpolate(points, p)
        for i in range(l + 1):
            matrix[i][j] = h.coefficient(i)
    return BiPoly(tuple(map(tuple, matrix)), p)


def bipoly_from_rows(rows: Mapping[int, UniPoly], degrees: Tuple[int, int], params: FieldParams) -> BiPoly:
    """The F with F(x, alpha_i) = rows[i], using the first m+1 rows"""
    l, m = degrees
    p = params.p
    chosen = sorted(rows)[: m + 1]
    xs = [params.alpha(i) for i in chosen]
    # F(x, y) = sum_k rows[k](x) * L_k(y)
    basis = [
        interpolate([(x, 1 if x == xk else 0) for x in xs], p) for xk in xs
    ]
    matrix = [[0] * (m + 1) for _ in range(l + 1)]
    for party, lk in zip(chosen, basis):
        fk = rows[party]
        for i in range(l + 1):
            ci = fk.coefficient(i)
            if ci:
                for j in range(m + 1):
                    matrix[i][j] = (matrix[i][j] + ci * lk.coefficient(j)) % p
    return BiPoly(tuple(map(tuple, matrix)), p)


def check_pairwise_fit(
    rows: Mapping[int, UniPoly],
    cols: Mapping[int, UniPoly],
    degrees: Tuple[int, int],
    params: FieldParams,
) -> Optional[BiPoly]:
    """
    Recover the bivariate polynomial behind pairwise-consistent rows and columns.

    Args:
        rows: party -> f_i(x) = F(x, alpha_i), degree <= l
        cols: party -> g_j(y) = F(alpha_j, y), degree <= m
        degrees: (l, m)
        params: Field and evaluation points

    Returns:
        The unique F* on which every input lies, or None when some pair
        f_i(alpha_j) != g_j(alpha_i) or a degree bound is broken

    Raises:
        InsufficientPolynomials: if |rows| <= m or |cols| <= l
    """
    l, m = degrees
    if len(rows) < m + 1 or len(cols) < l + 1:
        raise InsufficientPolynomials(
            f"need {m + 1} rows and {l + 1} columns, got {len(rows)} and {len(cols)}"
        )
    if any(f.degree > l for f in rows.values()) or any(g.degree > m for g in cols.values()):
        return None
    for i, f in rows.items():
        for j, g in cols.items():
            if f(params.alpha(j)) != g(params.alpha(i)):
                return None

    F = bipoly_from_rows(rows, degrees, params)
    if any(F.row(params.alpha(i)) != f for i, f in rows.items()):
        return None
    if any(F.col(params.alpha(j)) != g for j, g in cols.items()):
        return None
    return F


def rows_of(F: BiPoly, params: FieldParams) -> Dict[int, UniPoly]:
    return {i: F.row(params.alpha(i)) for i in params.parties}


def cols_of(F: BiPoly, params: FieldParams) -> Dict[int, UniPoly]:
    return {i: F.col(params.alpha(i)) for i in params.parties}
