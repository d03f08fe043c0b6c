"""Adversarial delivery schedulers for the asynchronous engine

A scheduler picks which pending envelope is delivered next. The engine
overrides the pick when waiting longer would break an envelope's delivery
deadline, so every scheduler stays fair.
"""

from dataclasses import dataclass
from typing import FrozenSet, Optional, Sequence

from vsslab.errors import ConfigInvalid
from vsslab.netsim.messages import Envelope
from vsslab.utils.rng import SeededRng


@dataclass
class ScheduleContext:
    step: int
    corrupt: FrozenSet[int]
    n: int


class Scheduler:
    name = "fifo"

    def select(self, pending: Sequence[Envelope], ctx: ScheduleContext) -> int:
        """Index into pending (ordered by envelope id)"""
        return 0


class Fifo(Scheduler):
    name = "fifo"


class Lifo(Scheduler):
    name = "lifo"

    def select(self, pending: Sequence[Envelope], ctx: ScheduleContext) -> int:
        return len(pending) - 1


class CorruptFirst(Scheduler):
    """Deliver corrupt parties' traffic first, then traffic to them."""

    name = "corrupt-first"

    def select(self, pending: Sequence[Envelope], ctx: ScheduleContext) -> int:
        for k, env in enumerate(pending):
            if env.sender in ctx.corrupt:
                return k
        for k, env in enumerate(pending):
            if env.receiver in ctx.corrupt:
                return k
        return 0


class HonestLast(Scheduler):
    """Hold back everything addressed to one honest victim."""

    name = "honest-last"

    def __init__(self, victim: Optional[int] = None):
        self.victim = victim

    def select(self, pending: Sequence[Envelope], ctx: ScheduleContext) -> int:
        victim = self.victim
        if victim is None:
            honest = [i for i in range(1, ctx.n + 1) if i not in ctx.corrupt]
            victim = honest[-1] if honest else None
        for k, env in enumerate(pending):
            if env.receiver != victim:
                return k
        return 0


class SeededRandom(Scheduler):
    name = "random"

    def __init__(self, seed: int = 0):
        self.rng = SeededRng(seed, "scheduler")

    def select(self, pending: Sequence[Envelope], ctx: ScheduleContext) -> int:
        return self.rng.below(len(pending))


SCHEDULERS = ("fifo", "lifo", "corrupt-first", "honest-last", "random")


def make_scheduler(name: str, seed: int = 0, victim: Optional[int] = None) -> Scheduler:
    if name == "fifo":
        return Fifo()
    if name == "lifo":
        return Lifo()
    if name == "corrupt-first":
        return CorruptFirst()
    if name == "honest-last":
        return HonestLast(victim)
    if name in ("random", "seeded-random"):
        return SeededRandom(seed)
    raise ConfigInvalid(f"unknown scheduler '{name}'; choose from {', '.join(SCHEDULERS)}")
