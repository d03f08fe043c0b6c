"""Run the hybrid-model schemes: one synchronous round, then asynchrony

Usage:
    from vsslab.avss_hybrid.runner import run_pr_reconstruction, run_pr_sharing, run_wps

    cfg = EngineConfig(FieldParams.default(n=4, p=97), t=1, timing="hybrid")
    outcome = run_wps(cfg, UniPoly((1, 2), 97))
    outcome = run_pr_sharing(cfg, 5)
    outputs = run_pr_reconstruction(outcome)
"""

import logging
from typing import Any, Dict, Optional, Type

from vsslab.adversary.base import Adversary
from vsslab.adversary.schedulers import Scheduler, make_scheduler
from vsslab.algebra.poly import UniPoly
from vsslab.avss_hybrid.pr import PrParty
from vsslab.avss_hybrid.wps import HybridVssParty, WpsParty
from vsslab.netsim.asynchronous import AsyncEngine
from vsslab.netsim.engine_config import EngineConfig
from vsslab.netsim.hybrid import run_hybrid
from vsslab.netsim.transcript import Transcript
from vsslab.outcome import INCOMPLETE, SHARED, SharingOutcome

logger = logging.getLogger(__name__)


def run_hybrid_sharing(
    cls: Type[HybridVssParty],
    cfg: EngineConfig,
    secret: Any,
    adversary: Optional[Adversary] = None,
    scheduler: Optional[Scheduler] = None,
) -> SharingOutcome:
    """
    Execute a hybrid scheme's sharing phase.

    Raises:
        ConfigBound: unless n > 3t
        Livelock: if the step budget runs out
    """
    params, t = cfg.params, cfg.t
    cls.check_bounds(params.n, t)
    adversary = adversary or Adversary()
    scheduler = scheduler or make_scheduler("fifo")

    parties = {
        pid: cls(pid, params, t, cfg.rng_for(pid), dealer=cfg.dealer, secret=secret if pid == cfg.dealer else None)
        for pid in params.parties
    }
    transcript = run_hybrid(
        parties,
        adversary,
        scheduler,
        params,
        sync_rounds=1,
        fairness_bound=cfg.fairness_bound,
        step_budget=cfg.step_budget,
    )
    honest = {pid: party for pid, party in parties.items() if not adversary.is_corrupt(pid)}

    finished = [pid for pid, party in honest.items() if party.terminated]
    if finished:
        committed, committed_poly = cls.committed_value(honest)
    else:
        committed, committed_poly = None, None
        logger.info(f"{cls.scheme_id}: no honest party terminated sharing")
    return SharingOutcome(
        scheme=cls.scheme_id,
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


def run_wps(
    cfg: EngineConfig,
    dealer_poly: UniPoly,
    adversary: Optional[Adversary] = None,
    scheduler: Optional[Scheduler] = None,
) -> SharingOutcome:
    """
    Run WPS for the dealer's degree-t polynomial.

    Returns:
        SharingOutcome whose shares are f*(alpha_i) or BOTTOM; committed is
        (f*(0), f*) through the honest non-BOTTOM outputs
    """
    return run_hybrid_sharing(WpsParty, cfg, dealer_poly, adversary, scheduler)


def run_pr_sharing(
    cfg: EngineConfig,
    secret: int,
    adversary: Optional[Adversary] = None,
    scheduler: Optional[Scheduler] = None,
) -> SharingOutcome:
    """Run the hybrid AVSS sharing of secret; shares form a degree-t sharing"""
    return run_hybrid_sharing(PrParty, cfg, secret, adversary, scheduler)


def run_pr_reconstruction(
    outcome: SharingOutcome,
    adversary: Optional[Adversary] = None,
    scheduler: Optional[Scheduler] = None,
) -> Dict[int, Any]:
    """
    Reconstruct a hybrid sharing with OEC on a fresh asynchronous run.

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
