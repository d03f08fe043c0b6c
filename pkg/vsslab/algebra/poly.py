"""Univariate polynomials over GF(p)

UniPoly is an immutable coefficient tuple (low to high) with trailing zeros
trimmed, so two polynomials are equal iff their canonical tuples are. The
zero polynomial has no coefficients and degree -1.

Usage:
    from vsslab.algebra.poly import UniPoly, interpolate, sample_sharing_poly

    q = interpolate([(1, 3), (2, 5)], p=7)    # 2x + 1
    q(4)                                      # 2
    share = sample_sharing_poly(s=2, d=1, rng=rng, p=7)
"""

from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence, Tuple, Union

from vsslab.algebra.field import FieldElement
from vsslab.errors import DuplicateAbscissa
from vsslab.utils.rng import RandomSource

Number = Union[int, FieldElement]


def _trim(coeffs: Iterable[int], p: int) -> Tuple[int, ...]:
    reduced = [c % p for c in coeffs]
    while reduced and reduced[-1] == 0:
        reduced.pop()
    return tuple(reduced)


@dataclass(frozen=True)
class UniPoly:
    """Polynomial with coefficients in GF(p), lowest degree first."""

    coeffs: Tuple[int, ...]
    p: int

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _trim(self.coeffs, self.p))

    # Constructors

    @classmethod
    def zero(cls, p: int) -> "UniPoly":
        return cls((), p)

    @classmethod
    def constant(cls, c: int, p: int) -> "UniPoly":
        return cls((int(c),), p)

    @classmethod
    def random(
        cls, degree: int, rng: RandomSource, p: int, constant: Optional[int] = None
    ) -> "UniPoly":
        """Uniform polynomial of degree <= degree, optionally with a fixed constant term"""
        head = [int(constant)] if constant is not None else [rng.element(p)]
        return cls(tuple(head + [rng.element(p) for _ in range(degree)]), p)

    # Inspection

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def coefficient(self, i: int) -> int:
        return self.coeffs[i] if i < len(self.coeffs) else 0

    def __call__(self, x: Number) -> int:
        x = int(x) % self.p
        acc = 0
        for c in reversed(self.coeffs):
            acc = (acc * x + c) % self.p
        return acc

    def evaluate(self, x: Number) -> int:
        return self(x)

    # Arithmetic

    def _check(self, other: "UniPoly") -> None:
        if other.p != self.p:
            raise ValueError(f"mixing GF({self.p}) and GF({other.p}) polynomials")

    def __add__(self, other: "UniPoly") -> "UniPoly":
        self._check(other)
        size = max(len(self.coeffs), len(other.coeffs))
        return UniPoly(
            tuple(self.coefficient(i) + other.coefficient(i) for i in range(size)), self.p
        )

    def __neg__(self) -> "UniPoly":
        return UniPoly(tuple(-c for c in self.coeffs), self.p)

    def __sub__(self, other: "UniPoly") -> "UniPoly":
        return self + (-other)

    def scale(self, c: int) -> "UniPoly":
        return UniPoly(tuple(c * a for a in self.coeffs), self.p)

    def __mul__(self, other: Union["UniPoly", int]) -> "UniPoly":
        if isinstance(other, int):
            return self.scale(other)
        self._check(other)
        if self.is_zero() or other.is_zero():
            return UniPoly.zero(self.p)
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return UniPoly(tuple(out), self.p)

    __rmul__ = __mul__

    def __divmod__(self, divisor: "UniPoly") -> Tuple["UniPoly", "UniPoly"]:
        self._check(divisor)
        if divisor.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        p = self.p
        remainder = list(self.coeffs)
        lead_inv = pow(divisor.coeffs[-1], p - 2, p)
        dd = divisor.degree
        quotient = [0] * max(len(remainder) - dd, 0)
        for k in range(len(remainder) - dd - 1, -1, -1):
            coef = remainder[k + dd] * lead_inv % p
            quotient[k] = coef
            if coef:
                for j, b in enumerate(divisor.coeffs):
                    remainder[k + j] = (remainder[k + j] - coef * b) % p
        return UniPoly(tuple(quotient), p), UniPoly(tuple(remainder[:dd]), p)

    def __repr__(self) -> str:
        if self.is_zero():
            return f"UniPoly(0 mod {self.p})"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            terms.append(str(c) if i == 0 else f"{c}x" if i == 1 else f"{c}x^{i}")
        return f"UniPoly({' + '.join(terms)} mod {self.p})"


def _point(point: Sequence) -> Tuple[int, int, Optional[int]]:
    x, y = point
    p = getattr(x, "p", None) or getattr(y, "p", None)
    return int(x), int(y), p


def vanishing_poly(xs: Sequence[int], p: int) -> UniPoly:
    """Product of (x - x_k) over xs"""
    root = UniPoly.constant(1, p)
    for x in xs:
        root = root * UniPoly((-x, 1), p)
    return root


def interpolate(points: Sequence, p: Optional[int] = None) -> UniPoly:
    """
    Lagrange interpolation through points.

    Points are (x, y) pairs of ints or FieldElements. When only ints are given
    the modulus must be passed.

    Args:
        points: (x, y) pairs with distinct x
        p: Field modulus if points carry plain ints

    Returns:
        The unique polynomial of degree <= len(points) - 1 through the points

    Raises:
        DuplicateAbscissa: if two x values coincide modulo p
    """
    parsed = [_point(pt) for pt in points]
    if p is None:
        p = next((q for _, _, q in parsed if q is not None), None)
        if p is None:
            raise ValueError("field modulus required for integer points")
    xs = [x % p for x, _, _ in parsed]
    ys = [y % p for _, y, _ in parsed]
    if len(set(xs)) != len(xs):
        raise DuplicateAbscissa(f"repeated x value among {xs}")
    if not xs:
        return UniPoly.zero(p)

    # Master numerator, divided back by each (x - x_k)
    root = vanishing_poly(xs, p)
    result = [0] * len(xs)
    for xk, yk in zip(xs, ys):
        num, _ = divmod(root, UniPoly((-xk, 1), p))
        denom = num(xk)
        factor = yk * pow(denom, p - 2, p) % p
        for i, c in enumerate(num.coeffs):
            result[i] += factor * c
    return UniPoly(tuple(result), p)


def sample_sharing_poly(s: Number, d: int, rng: RandomSource, p: int) -> UniPoly:
    """
    Random degree-d sharing polynomial with constant term s.

    Args:
        s: Secret
        d: Degree bound (>= 0)
        rng: Source of the d non-constant coefficients
        p: Field modulus

    Returns:
        q with q(0) = s and coefficients 1..d uniform
    """
    if d < 0:
        raise ValueError(f"degree must be non-negative, got {d}")
    return UniPoly.random(d, rng, p, constant=int(s))


def shares_of(q: UniPoly, points: Sequence[int]) -> List[int]:
    return [q(x) for x in points]
