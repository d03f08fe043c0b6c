"""Result of a sharing phase, common to every protocol family

A SharingOutcome keeps the party state machines alive so the reconstruction
phase can run on them afterwards, together with the adversary that
controlled the sharing.

Usage:
    outcome = run_sharing("7BGW", cfg, secret=3)
    outcome.committed      # s* read from the honest parties' joint state
    outcome.shares[2]      # P2's share
"""

from dataclasses import dataclass, field
from typing import Any, Dict, Optional

from vsslab.algebra.poly import UniPoly
from vsslab.netsim.engine_config import EngineConfig
from vsslab.netsim.transcript import Metrics, Transcript

SHARED = "shared"
DISCARDED = "dealer-discarded"
INCOMPLETE = "incomplete"  # asynchronous runs where no honest party terminated


@dataclass
class SharingOutcome:
    scheme: str
    status: str
    shares: Dict[int, Any]
    committed: Any  # value, BOTTOM, or None when the honest state fixes no unique value
    committed_poly: Optional[UniPoly]
    transcript: Transcript
    parties: Dict[int, Any]
    honest: Dict[int, Any]
    config: EngineConfig
    adversary: Any = None
    secret: Any = None
    records: Dict[int, Dict[str, Any]] = field(default_factory=dict)
    rec_transcript: Optional[Transcript] = None

    @property
    def metrics(self) -> Metrics:
        return self.transcript.metrics

    @property
    def discarded(self) -> bool:
        return self.status == DISCARDED

    @property
    def signature(self):
        """(rounds_total, rounds_with_broadcast) measured in the sharing phase"""
        m = self.transcript.metrics
        return m.rounds_total, m.rounds_with_broadcast
