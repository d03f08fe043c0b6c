"""Transcripts and communication metrics

The Transcript numbers every envelope, accounts its size and records each
delivery. It serialises to one line per delivery:

    step|round|kind|sender|receiver|msgtype|bits

Broadcast-channel envelopes appear once with receiver '*'.
"""

import logging
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional, Set, Tuple

from vsslab.netsim.messages import AcastFrame, Envelope, Kind, Outgoing, size_of

logger = logging.getLogger(__name__)


@dataclass
class Metrics:
    p2p_bits: int = 0
    bc_bits: int = 0
    acast_bits: int = 0
    p2p_elements: int = 0
    bc_elements: int = 0
    rounds_total: int = 0
    rounds_with_broadcast: int = 0
    async_steps: int = 0
    max_pending_age: int = 0
    fairness_bound: int = 0
    fairness_overrides: int = 0

    def to_dict(self) -> Dict[str, int]:
        return asdict(self)

    def __add__(self, other: "Metrics") -> "Metrics":
        merged = Metrics()
        for name in asdict(self):
            if name in ("max_pending_age", "fairness_bound"):
                setattr(merged, name, max(getattr(self, name), getattr(other, name)))
            else:
                setattr(merged, name, getattr(self, name) + getattr(other, name))
        return merged


@dataclass
class DeliveryEvent:
    step: int
    round: Optional[int]
    envelope: Envelope
    target: Optional[int]

    def line(self) -> str:
        env = self.envelope
        receiver = "*" if self.target is None else str(self.target)
        rnd = "-" if self.round is None else str(self.round)
        return f"{self.step}|{rnd}|{env.kind.value}|{env.sender}|{receiver}|{env.msgtype}|{env.size_bits}"


@dataclass
class Transcript:
    p: int
    n: int
    events: List[DeliveryEvent] = field(default_factory=list)
    outputs: Dict[int, Any] = field(default_factory=dict)
    metrics: Metrics = field(default_factory=Metrics)
    _next_id: int = 0
    _acast_seen: Set[Tuple] = field(default_factory=set)

    def envelope(self, out: Outgoing, round: Optional[int] = None) -> Envelope:
        """Number and size a send request, charging it to the metrics"""
        bits, elements = size_of(out.payload, self.p, self.n)
        self._next_id += 1
        env = Envelope(
            id=self._next_id,
            kind=out.kind,
            sender=out.sender,
            receiver=out.receiver,
            round=round,
            payload=out.payload,
            size_bits=bits,
            field_elements=elements,
        )
        if out.kind is Kind.P2P:
            self.metrics.p2p_bits += bits
            self.metrics.p2p_elements += elements
        elif out.kind is Kind.BROADCAST:
            self.metrics.bc_bits += bits
            self.metrics.bc_elements += elements
        else:
            self.metrics.acast_bits += bits
            frame = out.payload
            if isinstance(frame, AcastFrame) and frame.step == "init" and out.sender == frame.origin:
                key = (frame.origin, frame.tag)
                # the broadcast payload is charged once per instance
                if key not in self._acast_seen:
                    self._acast_seen.add(key)
                    self.metrics.bc_bits += bits
                    self.metrics.bc_elements += elements
        return env

    def record(self, step: int, env: Envelope, target: Optional[int]) -> None:
        self.events.append(DeliveryEvent(step, env.round, env, target))

    def lines(self) -> List[str]:
        return [event.line() for event in self.events]

    def write(self, path: Path) -> Path:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text("\n".join(self.lines()) + "\n")
        logger.info(f"wrote {len(self.events)} transcript lines to {path}")
        return path

    def delivered_to(self, party: int) -> List[Envelope]:
        return [
            e.envelope for e in self.events if e.target == party or (e.target is None and e.envelope.kind is Kind.BROADCAST)
        ]
