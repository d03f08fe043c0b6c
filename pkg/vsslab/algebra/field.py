"""Prime-field arithmetic

Field elements travel through the protocols as plain Python ints reduced
mod p; PrimeField bundles the arithmetic on them. FieldElement is a small
value type for callers who prefer operator syntax, and FieldParams fixes the
field together with the public evaluation points of a run.

Usage:
    from vsslab.algebra.field import FieldParams, PrimeField

    params = FieldParams.default(n=4, p=7)
    gf = PrimeField(params.p)
    gf.div(3, params.alpha(2))
"""

from dataclasses import dataclass
from typing import Optional, Tuple

from vsslab.errors import ConfigInvalid, FieldTooSmall

DEFAULT_PRIME = 2**31 - 1

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(p: int) -> bool:
    """Deterministic Miller-Rabin for p < 3.3e24"""
    if p < 2:
        return False
    for b in _MR_BASES:
        if p % b == 0:
            return p == b
    d, s = p - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, p)
        if x in (1, p - 1):
            continue
        for _ in range(s - 1):
            x = x * x % p
            if x == p - 1:
                break
        else:
            return False
    return True


class PrimeField:
    """Arithmetic on ints modulo a prime"""

    def __init__(self, modulus: int):
        if not is_prime(modulus):
            raise ConfigInvalid(f"field modulus {modulus} is not prime")
        self.modulus = modulus

    def add(self, x: int, y: int) -> int:
        return (x + y) % self.modulus

    def sub(self, x: int, y: int) -> int:
        return (x - y) % self.modulus

    def neg(self, x: int) -> int:
        return -x % self.modulus

    def mul(self, x: int, y: int) -> int:
        return (x * y) % self.modulus

    def inv(self, a: int) -> int:
        a %= self.modulus
        if a == 0:
            raise ZeroDivisionError("zero has no inverse")
        return pow(a, self.modulus - 2, self.modulus)

    def div(self, x: int, y: int) -> int:
        return self.mul(x, self.inv(y))

    def element(self, value: int) -> "FieldElement":
        return FieldElement(value % self.modulus, self.modulus)


@dataclass(frozen=True)
class FieldElement:
    """An element of GF(p) with operator syntax."""

    value: int
    p: int

    def __post_init__(self):
        object.__setattr__(self, "value", self.value % self.p)

    def _coerce(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.p != self.p:
                raise ValueError(f"mixing GF({self.p}) and GF({other.p})")
            return other.value
        return int(other)

    def __add__(self, other) -> "FieldElement":
        return FieldElement(self.value + self._coerce(other), self.p)

    __radd__ = __add__

    def __sub__(self, other) -> "FieldElement":
        return FieldElement(self.value - self._coerce(other), self.p)

    def __rsub__(self, other) -> "FieldElement":
        return FieldElement(self._coerce(other) - self.value, self.p)

    def __mul__(self, other) -> "FieldElement":
        return FieldElement(self.value * self._coerce(other), self.p)

    __rmul__ = __mul__

    def __neg__(self) -> "FieldElement":
        return FieldElement(-self.value, self.p)

    def inverse(self) -> "FieldElement":
        if self.value == 0:
            raise ZeroDivisionError("zero has no inverse")
        return FieldElement(pow(self.value, self.p - 2, self.p), self.p)

    def __truediv__(self, other) -> "FieldElement":
        return self * FieldElement(self._coerce(other), self.p).inverse()

    def __eq__(self, other) -> bool:
        if isinstance(other, FieldElement):
            return self.p == other.p and self.value == other.value
        if isinstance(other, int):
            return self.value == other % self.p
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.value, self.p))

    def __int__(self) -> int:
        return self.value

    def __index__(self) -> int:
        return self.value

    def __repr__(self) -> str:
        return f"{self.value} (mod {self.p})"


@dataclass(frozen=True)
class FieldParams:
    """
    Field modulus and public evaluation points of a run.

    Party i (1-based) is evaluated at alphas[i-1]; CHP additionally embeds its
    secrets at betas.
    """

    p: int
    n: int
    alphas: Tuple[int, ...]
    betas: Tuple[int, ...] = ()

    def __post_init__(self):
        if not is_prime(self.p):
            raise ConfigInvalid(f"field modulus {self.p} is not prime")
        if self.p <= self.n:
            raise FieldTooSmall(f"need p > n, got p={self.p}, n={self.n}")
        if len(self.alphas) != self.n:
            raise ConfigInvalid(f"expected {self.n} evaluation points, got {len(self.alphas)}")
        points = [x % self.p for x in self.alphas + self.betas]
        if 0 in points:
            raise ConfigInvalid("evaluation points must be non-zero")
        if len(set(points)) != len(points):
            raise FieldTooSmall(
                f"evaluation points collide modulo {self.p}; a larger field is needed"
            )

    @classmethod
    def default(cls, n: int, p: int = DEFAULT_PRIME, L: int = 0) -> "FieldParams":
        """alphas = 1..n, betas = n+1..n+L"""
        if p <= n + L:
            raise FieldTooSmall(f"need p > n + L = {n + L}, got p={p}")
        return cls(
            p=p,
            n=n,
            alphas=tuple(range(1, n + 1)),
            betas=tuple(range(n + 1, n + L + 1)),
        )

    @property
    def parties(self) -> range:
        return range(1, self.n + 1)

    def alpha(self, party: int) -> int:
        return self.alphas[party - 1]

    def beta(self, k: int) -> int:
        """Auxiliary point of secret k (1-based)"""
        return self.betas[k - 1]

    def party_at(self, x: int) -> Optional[int]:
        try:
            return self.alphas.index(x) + 1
        except ValueError:
            return None
