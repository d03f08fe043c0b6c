"""Built-in Byzantine strategies

Every strategy is a deterministic function of the adversary's view, the
prescribed messages and its seed, so failing runs replay exactly.

    passive              send what the protocol prescribes
    crash                send nothing from clock >= trigger
    garble               replace every field element by a seeded random one
    inconsistent-dealer  a corrupt dealer deals from two polynomials, split
                         across the honest receivers
    wrong-share-at-rec   garble reconstruction-phase messages only
    pad-mismatch         garble pad reports sent to the dealer only
"""

import logging
from dataclasses import replace
from typing import Any, Dict, List, Optional, Set

from vsslab.adversary.base import AdversaryView, Strategy
from vsslab.algebra.poly import UniPoly
from vsslab.errors import ConfigInvalid
from vsslab.netsim.messages import AcastFrame, Message, Outgoing, Phase
from vsslab.utils.rng import SeededRng

logger = logging.getLogger(__name__)


class Passive(Strategy):
    name = "passive"


class Crash(Strategy):
    name = "crash"

    def __init__(self, trigger: int = 0):
        self.trigger = trigger

    def emit(self, view: AdversaryView, prescription: List[Outgoing], clock: int) -> List[Outgoing]:
        return [] if clock >= self.trigger else list(prescription)


class Garble(Strategy):
    """Replaces field elements of selected phases with seeded-random values."""

    name = "garble"
    phases: Optional[Set[Phase]] = None  # None = every phase

    def __init__(self, p: int, seed: int = 0, rate: float = 1.0):
        self.p = p
        self.rng = SeededRng(seed, self.name)
        self.rate = rate

    def _garble_message(self, msg: Message) -> Message:
        if self.phases is not None and msg.phase not in self.phases:
            return msg
        if self.rate < 1.0 and self.rng.below(1_000_000) >= self.rate * 1_000_000:
            return msg
        elems = []
        for e in msg.elems:
            if isinstance(e, UniPoly):
                size = max(len(e.coeffs), 1)
                elems.append(UniPoly(tuple(self.rng.element(self.p) for _ in range(size)), self.p))
            else:
                elems.append(self.rng.element(self.p))
        return msg.with_elems(elems)

    def emit(self, view: AdversaryView, prescription: List[Outgoing], clock: int) -> List[Outgoing]:
        out = []
        for request in prescription:
            payload = request.payload
            if isinstance(payload, AcastFrame):
                payload = replace(payload, message=self._garble_message(payload.message))
            else:
                payload = self._garble_message(payload)
            out.append(replace(request, payload=payload))
        return out


class WrongShareAtRec(Garble):
    name = "wrong-share-at-rec"
    phases = {Phase.REC}


class PadMismatch(Garble):
    name = "pad-mismatch"
    phases = {Phase.PAD_REPORT}


class InconsistentDealer(Strategy):
    """
    A corrupt dealer prepares a second dealing and hands it to the upper half
    of the other parties; all other behaviour is prescribed.
    """

    name = "inconsistent-dealer"
    splits_dealing = True

    def __init__(self, split: Optional[int] = None):
        self.split = split

    def dealing_index(self, dealer: int, receiver: int, n: int) -> int:
        others = [j for j in range(1, n + 1) if j != dealer]
        cut = self.split if self.split is not None else len(others) // 2
        return 1 if receiver in others[cut:] else 0


STRATEGIES = (
    "passive",
    "crash",
    "garble",
    "inconsistent-dealer",
    "wrong-share-at-rec",
    "pad-mismatch",
)

# Strategies whose point is a misbehaving dealer
DEALER_STRATEGIES = ("inconsistent-dealer",)


def make_strategy(name: str, p: int, seed: int = 0, params: Optional[Dict[str, Any]] = None) -> Strategy:
    """
    Build a strategy from its id.

    Args:
        name: One of STRATEGIES
        p: Field modulus (garbling strategies draw field elements)
        seed: Strategy randomness
        params: Extra keyword arguments (crash: trigger; garble: rate;
            inconsistent-dealer: split)

    Raises:
        ConfigInvalid: on an unknown strategy id
    """
    params = dict(params or {})
    if name == "passive":
        return Passive()
    if name == "crash":
        return Crash(trigger=int(params.get("trigger", 0)))
    if name == "garble":
        return Garble(p, seed, rate=float(params.get("rate", 1.0)))
    if name == "wrong-share-at-rec":
        return WrongShareAtRec(p, seed)
    if name == "pad-mismatch":
        return PadMismatch(p, seed)
    if name == "inconsistent-dealer":
        split = params.get("split")
        return InconsistentDealer(int(split) if split is not None else None)
    raise ConfigInvalid(f"unknown adversary strategy '{name}'; choose from {', '.join(STRATEGIES)}")
