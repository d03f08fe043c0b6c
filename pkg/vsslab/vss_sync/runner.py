"""Run a synchronous scheme's sharing and reconstruction phases

Usage:
    from vsslab.vss_sync.runner import run_sharing, run_reconstruction

    cfg = EngineConfig(FieldParams.default(n=4, p=97), t=1, seed=7)
    outcome = run_sharing("5BGW", cfg, secret=3)
    outputs = run_reconstruction(outcome)
"""

import logging
from typing import Any, Dict, Optional

from vsslab.adversary.base import Adversary
from vsslab.netsim.engine_config import EngineConfig
from vsslab.netsim.sync import run_sync
from vsslab.netsim.transcript import Transcript
from vsslab.outcome import DISCARDED, SHARED, SharingOutcome
from vsslab.vss_sync.registry import scheme_class

logger = logging.getLogger(__name__)


def run_sharing(
    scheme: str,
    cfg: EngineConfig,
    secret: Any = 0,
    adversary: Optional[Adversary] = None,
) -> SharingOutcome:
    """
    Execute a scheme's sharing phase on the synchronous engine.

    Args:
        scheme: Scheme id, e.g. "7BGW"
        cfg: Field, threshold, dealer and randomness of the run
        secret: The dealer's secret
        adversary: Controls the corrupt parties (default: nobody corrupt)

    Returns:
        SharingOutcome with honest shares, the committed value and metrics

    Raises:
        ConfigBound: if (n, t) is outside the scheme's resilience bound
    """
    cls = scheme_class(scheme)
    params, t = cfg.params, cfg.t
    cls.check_bounds(params.n, t)
    adversary = adversary or Adversary()

    parties = {
        pid: cls(pid, params, t, cfg.rng_for(pid), dealer=cfg.dealer, secret=secret if pid == cfg.dealer else None)
        for pid in params.parties
    }
    transcript = run_sync(parties, adversary, "share", params, cfg.max_rounds)
    honest = {pid: party for pid, party in parties.items() if not adversary.is_corrupt(pid)}

    discarded = any(party.discarded for party in honest.values())
    if discarded:
        committed, committed_poly = 0, None
        logger.info(f"{scheme}: dealer P{cfg.dealer} discarded")
    else:
        committed, committed_poly = cls.committed_value(honest)
    return SharingOutcome(
        scheme=scheme,
        status=DISCARDED if discarded else SHARED,
        shares={pid: party.share for pid, party in honest.items()},
        committed=committed,
        committed_poly=committed_poly,
        transcript=transcript,
        parties=parties,
        honest=honest,
        config=cfg,
        adversary=adversary,
        secret=secret,
        records={pid: party.record for pid, party in honest.items()},
    )


def run_reconstruction(outcome: SharingOutcome, adversary: Optional[Adversary] = None) -> Dict[int, Any]:
    """
    Execute the reconstruction phase on the parties of a finished sharing.

    Returns:
        pid -> output for every honest party (BOTTOM on a failed reconstruction)
    """
    adversary = adversary or outcome.adversary or Adversary()
    params = outcome.config.params
    transcript = Transcript(params.p, params.n)
    run_sync(outcome.parties, adversary, "rec", params, outcome.config.max_rounds, transcript)
    outcome.rec_transcript = transcript
    return {pid: outcome.parties[pid].output for pid in outcome.honest}
