"""Synchronous round engine

Round k of a phase:

1. every honest party runs its round-k handler on the round k-1 inbox;
2. the adversary sees the honest round-k messages addressed to corrupt
   parties (rushing), then the corrupt parties' prescriptions pass through
   the strategy;
3. all round-k envelopes are delivered before round k+1 starts; broadcast
   envelopes reach every party unchanged.

After the last round every party concludes on the final inbox. A round counts
toward rounds_total if any envelope was sent in it, and toward
rounds_with_broadcast if any broadcast envelope was.

Usage:
    from vsslab.netsim.sync import run_sync

    transcript = run_sync(parties, adversary, phase="share", params=params)
"""

import logging
from typing import Dict, List, Mapping, Optional

from vsslab.algebra.field import FieldParams
from vsslab.errors import RoundOverrun
from vsslab.netsim.messages import Envelope, Kind
from vsslab.netsim.protocol import Inbox, SyncParty
from vsslab.netsim.transcript import Transcript
from vsslab.utils.config import CONFIG

logger = logging.getLogger(__name__)


def run_rounds(
    parties: Mapping[int, SyncParty],
    adversary,
    phase: str,
    transcript: Transcript,
    max_rounds: Optional[int] = None,
) -> Dict[int, Inbox]:
    """
    Execute every round of phase and return the final inboxes.

    Raises:
        RoundOverrun: if the phase needs more than max_rounds rounds
    """
    max_rounds = max_rounds or CONFIG["network"]["max_rounds"]
    order = sorted(parties)
    honest = [pid for pid in order if not adversary.is_corrupt(pid)]
    corrupt = [pid for pid in order if adversary.is_corrupt(pid)]
    adversary.attach(parties)

    schedules = {pid: parties[pid].schedule(phase) for pid in order}
    rounds = len(schedules[order[0]])
    if rounds > max_rounds:
        raise RoundOverrun(f"phase '{phase}' needs {rounds} rounds, limit is {max_rounds}")

    inboxes: Dict[int, Inbox] = {pid: Inbox() for pid in order}
    for rnd in range(1, rounds + 1):
        emitted: List[Envelope] = []
        for pid in honest:
            schedules[pid][rnd - 1](inboxes[pid])
            emitted += [transcript.envelope(out, rnd) for out in parties[pid].drain()]

        adversary.view.next_round()
        for env in emitted:
            if adversary.view.reaches_corrupt(env):
                adversary.view.observe_rushing(env)

        for pid in corrupt:
            schedules[pid][rnd - 1](inboxes[pid])
            requests = adversary.emit(parties[pid].drain(), clock=rnd)
            emitted += [transcript.envelope(out, rnd) for out in requests]

        next_inboxes = {pid: Inbox() for pid in order}
        for env in emitted:
            if env.kind is Kind.BROADCAST:
                for pid in order:
                    next_inboxes[pid].add(env)
                transcript.record(rnd, env, None)
            elif env.receiver in next_inboxes:
                next_inboxes[env.receiver].add(env)
                transcript.record(rnd, env, env.receiver)
            adversary.observe(env)

        if emitted:
            transcript.metrics.rounds_total += 1
        if any(env.kind is Kind.BROADCAST for env in emitted):
            transcript.metrics.rounds_with_broadcast += 1
        logger.debug(f"{phase} round {rnd}: {len(emitted)} envelopes")
        inboxes = next_inboxes

    return inboxes


def run_sync(
    parties: Mapping[int, SyncParty],
    adversary,
    phase: str,
    params: FieldParams,
    max_rounds: Optional[int] = None,
    transcript: Optional[Transcript] = None,
) -> Transcript:
    """
    Run one phase of a synchronous protocol to completion.

    Args:
        parties: pid -> state machine; all share one round schedule
        adversary: Adversary controlling the corrupt parties
        phase: Phase name passed to schedule() / conclude()
        params: Field parameters (for size accounting)
        max_rounds: Round limit (default: network.max_rounds)
        transcript: Transcript to append to (default: a fresh one)

    Returns:
        Transcript with deliveries, per-party outputs and metrics
    """
    transcript = transcript or Transcript(params.p, params.n)
    inboxes = run_rounds(parties, adversary, phase, transcript, max_rounds)
    for pid in sorted(parties):
        parties[pid].conclude(phase, inboxes[pid])
        transcript.outputs[pid] = parties[pid].output
    return transcript
