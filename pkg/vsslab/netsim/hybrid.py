"""Hybrid engine: synchronous rounds followed by asynchrony

The first R rounds run on the synchronous engine. Messages of round R are
delivered at the boundary, before any asynchronous event, through each
party's begin_async(); from then on the asynchronous engine takes over on
the same transcript.
"""

import logging
from typing import Mapping, Optional

from vsslab.adversary.schedulers import Scheduler
from vsslab.algebra.field import FieldParams
from vsslab.errors import ConfigInvalid
from vsslab.netsim.asynchronous import AsyncEngine
from vsslab.netsim.protocol import HybridParty
from vsslab.netsim.sync import run_rounds
from vsslab.netsim.transcript import Transcript

logger = logging.getLogger(__name__)


def run_hybrid(
    parties: Mapping[int, HybridParty],
    adversary,
    scheduler: Scheduler,
    params: FieldParams,
    sync_rounds: int = 1,
    phase: str = "share",
    fairness_bound: Optional[int] = None,
    step_budget: Optional[int] = None,
) -> Transcript:
    """
    Run a protocol whose first sync_rounds rounds are synchronous.

    Args:
        parties: pid -> hybrid state machine
        adversary: Adversary controlling the corrupt parties
        scheduler: Delivery-order policy for the asynchronous part
        params: Field parameters
        sync_rounds: Number R >= 1 of synchronous rounds
        phase: Phase name for the synchronous schedule

    Returns:
        One transcript spanning both parts
    """
    if sync_rounds < 1:
        raise ConfigInvalid(f"hybrid runs need R >= 1, got {sync_rounds}")
    transcript = Transcript(params.p, params.n)
    inboxes = run_rounds(parties, adversary, phase, transcript, max_rounds=sync_rounds)

    engine = AsyncEngine(parties, adversary, scheduler, params, fairness_bound, step_budget, transcript)
    order = sorted(parties)
    honest_first = [pid for pid in order if not adversary.is_corrupt(pid)]
    honest_first += [pid for pid in order if adversary.is_corrupt(pid)]
    for pid in honest_first:
        parties[pid].begin_async(inboxes[pid])
        engine.collect(pid)
    logger.debug(f"hybrid boundary after {sync_rounds} synchronous rounds")
    return engine.run(started=True)
