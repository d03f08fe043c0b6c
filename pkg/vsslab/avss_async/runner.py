"""Run an asynchronous AVSS scheme's sharing and reconstruction

Usage:
    from vsslab.avss_async.runner import AvssConfig, run_avss_sharing, run_avss_reconstruction

    cfg = AvssConfig(FieldParams.default(n=5, p=97), t=1, scheme="PCR", d=2)
    outcome = run_avss_sharing(cfg, secret=3, scheduler=make_scheduler("corrupt-first"))
    outputs = run_avss_reconstruction(outcome)
"""

import logging
from dataclasses import dataclass
from typing import Any, Dict, Optional

from vsslab.adversary.base import Adversary
from vsslab.adversary.schedulers import Scheduler, make_scheduler
from vsslab.avss_async.registry import avss_class
from vsslab.netsim.asynchronous import AsyncEngine, run_async
from vsslab.netsim.engine_config import EngineConfig
from vsslab.netsim.transcript import Transcript
from vsslab.outcome import INCOMPLETE, SHARED, SharingOutcome

logger = logging.getLogger(__name__)


@dataclass
class AvssConfig(EngineConfig):
    scheme: str = "BCG"
    d: Optional[int] = None  # PCR sharing degree, default t
    L: Optional[int] = None  # CHP secret count, default n - 3t

    def validate(self) -> None:
        """Raise ConfigBound / FieldTooSmall unless the scheme runs with these parameters"""
        cls = avss_class(self.scheme)
        cls.check_bounds(self.params.n, self.t, self.d, self.L)
        cls.check_field(self.params, self.t, self.L)


def run_avss_sharing(
    cfg: AvssConfig,
    secret: Any = 0,
    adversary: Optional[Adversary] = None,
    scheduler: Optional[Scheduler] = None,
) -> SharingOutcome:
    """
    Execute a scheme's sharing phase on the asynchronous engine.

    Args:
        cfg: Scheme, parameters and engine settings
        secret: The dealer's secret (a list of L secrets for CHP)
        adversary: Controls the corrupt parties (default: nobody corrupt)
        scheduler: Delivery order (default: fifo)

    Returns:
        SharingOutcome; status is incomplete when no honest party terminated

    Raises:
        ConfigBound: if the parameters are outside the scheme's bounds
        Livelock: if the step budget runs out
    """
    cfg.validate()
    cls = avss_class(cfg.scheme)
    params, t = cfg.params, cfg.t
    adversary = adversary or Adversary()
    scheduler = scheduler or make_scheduler("fifo")

    parties = {
        pid: cls(
            pid,
            params,
            t,
            cfg.rng_for(pid),
            dealer=cfg.dealer,
            secret=secret if pid == cfg.dealer else None,
            d=cfg.d,
            L=cfg.L,
        )
        for pid in params.parties
    }
    transcript = run_async(parties, adversary, scheduler, params, cfg.fairness_bound, cfg.step_budget)
    honest = {pid: party for pid, party in parties.items() if not adversary.is_corrupt(pid)}

    finished = [pid for pid, party in honest.items() if party.terminated]
    if finished:
        committed, committed_poly = cls.committed_value(honest)
    else:
        committed, committed_poly = None, None
        logger.info(f"{cfg.scheme}: no honest party terminated sharing")
    return SharingOutcome(
        scheme=cfg.scheme,
        status=SHARED if finished else INCOMPLETE,
        shares={pid: party.share for pid, party in honest.items()},
        committed=committed,
        committed_poly=committed_poly,
        transcript=transcript,
        parties=parties,
        honest=honest,
        config=cfg,
        adversary=adversary,
        secret=secret,
        records={pid: {**party.record, "terminated": party.terminated} for pid, party in honest.items()},
    )


def run_avss_reconstruction(
    outcome: SharingOutcome,
    adversary: Optional[Adversary] = None,
    scheduler: Optional[Scheduler] = None,
) -> Dict[int, Any]:
    """
    Reconstruct with OEC on a fresh asynchronous run over the same parties.

    Returns:
        pid -> output for every honest party (None if it never finished)
    """
    adversary = adversary or outcome.adversary or Adversary()
    scheduler = scheduler or make_scheduler("fifo")
    cfg = outcome.config
    params = cfg.params
    for party in outcome.parties.values():
        party.begin_reconstruction()
    transcript = Transcript(params.p, params.n)
    engine = AsyncEngine(
        outcome.parties, adversary, scheduler, params, cfg.fairness_bound, cfg.step_budget, transcript
    )
    engine.run()
    outcome.rec_transcript = transcript
    return {pid: outcome.parties[pid].output for pid in outcome.honest}
