"""Seeded randomness for simulated parties

Every random choice a party makes (polynomial coefficients, pads, blinding
polynomials) is drawn from a RandomSource. Three sources exist:

- SeededRng: counter-based generator keyed by (seed, stream); the i-th draw
  is a hash of (seed, stream, i), so runs replay exactly and every stream is
  independent of how many draws other streams made.
- TapeRng: replays a fixed list of values; the privacy oracle uses it to walk
  every possible randomness assignment.
- CountingRng: wraps another source and counts draws.

Usage:
    from vsslab.utils.rng import SeededRng

    rng = SeededRng(seed=1, stream=("party", 3))
    coefficient = rng.element(97)
"""

import hashlib
from typing import Optional, Protocol, Sequence

from vsslab.errors import TapeExhausted


class RandomSource(Protocol):
    def below(self, bound: int) -> int:
        """Uniform integer in [0, bound)"""
        ...

    def element(self, p: int) -> int:
        """Uniform element of GF(p)"""
        ...


class SeededRng:
    """Counter-based deterministic generator."""

    def __init__(self, seed: int, stream: object = ()):
        self.seed = seed
        self.stream = stream
        self.counter = 0

    def below(self, bound: int) -> int:
        if bound <= 0:
            raise ValueError(f"bound must be positive, got {bound}")
        key = f"{self.seed}|{self.stream!r}|{self.counter}".encode()
        self.counter += 1
        # 256 bits keep the modulo bias far below anything observable
        digest = hashlib.blake2b(key, digest_size=32).digest()
        return int.from_bytes(digest, "big") % bound

    def element(self, p: int) -> int:
        return self.below(p)

    def spawn(self, label: object) -> "SeededRng":
        """Independent child stream"""
        return SeededRng(self.seed, (self.stream, label))

    def choice(self, items: Sequence):
        return items[self.below(len(items))]


class TapeRng:
    """Replays a fixed sequence of field elements."""

    def __init__(self, tape: Sequence[int]):
        self.tape = list(tape)
        self.position = 0

    def below(self, bound: int) -> int:
        if self.position >= len(self.tape):
            raise TapeExhausted(f"tape of length {len(self.tape)} exhausted")
        value = self.tape[self.position] % bound
        self.position += 1
        return value

    def element(self, p: int) -> int:
        return self.below(p)


class CountingRng:
    """Delegates to an inner source and counts draws."""

    def __init__(self, inner: Optional[RandomSource] = None, seed: int = 0):
        self.inner = inner if inner is not None else SeededRng(seed, "counting")
        self.draws = 0

    def below(self, bound: int) -> int:
        self.draws += 1
        return self.inner.below(bound)

    def element(self, p: int) -> int:
        return self.below(p)
