"""Per-run engine settings shared by all protocol families"""

from dataclasses import dataclass
from typing import Callable, Optional

from vsslab.algebra.field import FieldParams
from vsslab.utils.rng import RandomSource, SeededRng


@dataclass
class EngineConfig:
    params: FieldParams
    t: int
    seed: int = 1
    dealer: int = 1
    timing: str = "sync"  # sync | async | hybrid
    sync_rounds: int = 1
    fairness_bound: Optional[int] = None
    step_budget: Optional[int] = None
    max_rounds: Optional[int] = None
    rng_factory: Optional[Callable[[int], RandomSource]] = None

    @property
    def n(self) -> int:
        return self.params.n

    def rng_for(self, pid: int) -> RandomSource:
        if self.rng_factory is not None:
            return self.rng_factory(pid)
        return SeededRng(self.seed, ("party", pid))
