"""Static Byzantine adversary

The adversary fixes its corrupt set before the run starts. It sees every
envelope delivered to a corrupt party (including, in synchronous rounds, the
honest messages of the current round before its own parties speak) and
decides what the corrupt parties send through a Strategy.

Usage:
    from vsslab.adversary.base import Adversary
    from vsslab.adversary.strategies import make_strategy

    adversary = Adversary({4}, make_strategy("garble", seed=7))
"""

import logging
from dataclasses import dataclass, field
from typing import Any, Dict, FrozenSet, Iterable, List, Optional

from vsslab.errors import ConfigInvalid, OriginViolation
from vsslab.netsim.messages import Envelope, Kind, Outgoing

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CorruptionSpec:
    corrupt: FrozenSet[int]
    strategy: str = "passive"
    params: Dict[str, Any] = field(default_factory=dict, hash=False)

    def validate(self, n: int, t: int) -> None:
        if len(self.corrupt) > t:
            raise ConfigInvalid(f"{len(self.corrupt)} corrupt parties exceed t = {t}")
        bad = [i for i in self.corrupt if not 1 <= i <= n]
        if bad:
            raise ConfigInvalid(f"corrupt ids {bad} outside 1..{n}")


@dataclass
class AdversaryView:
    """Everything the corrupt parties have received so far."""

    corrupt: FrozenSet[int]
    received: List[Envelope] = field(default_factory=list)
    rushing: List[Envelope] = field(default_factory=list)

    def observe(self, env: Envelope) -> None:
        self.received.append(env)

    def observe_rushing(self, env: Envelope) -> None:
        self.rushing.append(env)

    def next_round(self) -> None:
        self.rushing = []

    def reaches_corrupt(self, env: Envelope) -> bool:
        return env.kind is Kind.BROADCAST or env.receiver in self.corrupt


class Strategy:
    """Rewrites the messages corrupt parties were prescribed to send."""

    name = "passive"
    splits_dealing = False

    def emit(self, view: AdversaryView, prescription: List[Outgoing], clock: int) -> List[Outgoing]:
        return list(prescription)

    def dealing_index(self, dealer: int, receiver: int, n: int) -> int:
        return 0


class Adversary:
    def __init__(self, corrupt: Iterable[int] = (), strategy: Optional[Strategy] = None):
        self.corrupt = frozenset(corrupt)
        self.strategy = strategy or Strategy()
        self.view = AdversaryView(self.corrupt)

    def is_corrupt(self, party: int) -> bool:
        return party in self.corrupt

    def attach(self, parties: Dict[int, Any]) -> None:
        """Hand the strategy to the corrupt parties' state machines"""
        for pid in self.corrupt:
            if pid in parties:
                parties[pid].corruption = self.strategy

    def emit(self, prescription: List[Outgoing], clock: int) -> List[Outgoing]:
        out = self.strategy.emit(self.view, prescription, clock)
        for request in out:
            if request.sender not in self.corrupt:
                raise OriginViolation(
                    f"strategy {self.strategy.name} forged a message from honest P{request.sender}"
                )
        return out

    def observe(self, env: Envelope) -> None:
        if self.view.reaches_corrupt(env):
            self.view.observe(env)
