"""Asynchronous event engine

Envelopes wait in a pending queue ordered by id. At each step the scheduler
picks one to deliver, except when that would make some envelope miss its
deadline (enqueue step + fairness bound); then the oldest envelope goes
first. The default bound is four times the largest queue seen so far, which
keeps earliest-deadline delivery always feasible.

The run ends when every honest party has terminated or nothing is pending.
Running past the step budget raises Livelock.

Usage:
    from vsslab.netsim.asynchronous import AsyncEngine

    engine = AsyncEngine(parties, adversary, scheduler, params)
    transcript = engine.run()
"""

import logging
from dataclasses import dataclass
from typing import Callable, List, Mapping, Optional

from vsslab.adversary.schedulers import ScheduleContext, Scheduler
from vsslab.algebra.field import FieldParams
from vsslab.errors import FairnessViolation, Livelock
from vsslab.netsim.messages import Envelope, Kind
from vsslab.netsim.protocol import AsyncParty
from vsslab.netsim.transcript import Transcript
from vsslab.utils.config import CONFIG

logger = logging.getLogger(__name__)


@dataclass
class _Pending:
    envelope: Envelope
    enqueued: int
    deadline: int


class AsyncEngine:
    def __init__(
        self,
        parties: Mapping[int, AsyncParty],
        adversary,
        scheduler: Scheduler,
        params: FieldParams,
        fairness_bound: Optional[int] = None,
        step_budget: Optional[int] = None,
        transcript: Optional[Transcript] = None,
        until: Optional[Callable[[], bool]] = None,
    ):
        network = CONFIG["network"]
        self.parties = parties
        self.adversary = adversary
        self.scheduler = scheduler
        self.params = params
        self.fixed_bound = fairness_bound if fairness_bound is not None else network["fairness_bound"]
        self.step_budget = step_budget or network["step_budget"]
        self.transcript = transcript or Transcript(params.p, params.n)
        self.order = sorted(parties)
        self.honest = [pid for pid in self.order if not adversary.is_corrupt(pid)]
        self.until = until or self._honest_terminated
        self.pending: List[_Pending] = []
        self.step = 0
        self.high_water = 0
        adversary.attach(parties)

    def _honest_terminated(self) -> bool:
        return all(self.parties[pid].terminated for pid in self.honest)

    def _bound(self) -> int:
        if self.fixed_bound:
            return int(self.fixed_bound)
        return max(4 * self.high_water, 4)

    def collect(self, pid: int) -> None:
        """Move a party's queued sends into the pending queue"""
        requests = self.parties[pid].drain()
        if self.adversary.is_corrupt(pid):
            requests = self.adversary.emit(requests, clock=self.step)
        for out in requests:
            if out.kind is Kind.BROADCAST or out.receiver not in self.parties:
                logger.debug(f"dropping unroutable {out.kind.value} from P{pid}")
                continue
            env = self.transcript.envelope(out)
            self.high_water = max(self.high_water, len(self.pending) + 1)
            bound = self._bound()
            self.transcript.metrics.fairness_bound = max(self.transcript.metrics.fairness_bound, bound)
            self.pending.append(_Pending(env, self.step, self.step + bound))

    def start(self) -> None:
        honest_first = self.honest + [pid for pid in self.order if pid not in self.honest]
        for pid in honest_first:
            self.parties[pid].start()
            self.collect(pid)

    def _check_choice(self, index: int) -> None:
        """Raise FairnessViolation if delivering pending[index] now starves someone"""
        if index == 0:
            return
        size = len(self.pending)
        for k, item in enumerate(self.pending):
            if item.deadline - self.step >= size:
                return
            if self.step + k + 1 > item.deadline:
                raise FairnessViolation(f"envelope {item.envelope.id} would miss step {item.deadline}")

    def _choose(self) -> int:
        ctx = ScheduleContext(self.step, self.adversary.corrupt, self.params.n)
        index = self.scheduler.select([item.envelope for item in self.pending], ctx)
        if not 0 <= index < len(self.pending):
            index = 0
        try:
            self._check_choice(index)
        except FairnessViolation as exc:
            logger.debug(f"step {self.step}: {exc}; delivering oldest")
            self.transcript.metrics.fairness_overrides += 1
            index = 0
        return index

    def run(self, started: bool = False) -> Transcript:
        if not started:
            self.start()
        metrics = self.transcript.metrics
        while not self.until() and self.pending:
            self.step += 1
            if self.step > self.step_budget:
                raise Livelock(f"no termination after {self.step_budget} steps")
            item = self.pending.pop(self._choose())
            env = item.envelope
            metrics.max_pending_age = max(metrics.max_pending_age, self.step - item.enqueued)
            self.transcript.record(self.step, env, env.receiver)
            self.adversary.observe(env)
            self.parties[env.receiver].handle(env)
            self.collect(env.receiver)

        metrics.async_steps += self.step
        if self.pending:
            logger.debug(f"stopped with {len(self.pending)} envelopes pending after {self.step} steps")
        else:
            logger.debug(f"quiescent after {self.step} steps")
        for pid in self.order:
            self.transcript.outputs[pid] = self.parties[pid].output
        return self.transcript


def run_async(
    parties: Mapping[int, AsyncParty],
    adversary,
    scheduler: Scheduler,
    params: FieldParams,
    fairness_bound: Optional[int] = None,
    step_budget: Optional[int] = None,
    transcript: Optional[Transcript] = None,
) -> Transcript:
    """
    Run an asynchronous protocol until all honest parties terminate.

    Args:
        parties: pid -> state machine
        adversary: Adversary controlling the corrupt parties
        scheduler: Delivery-order policy
        params: Field parameters
        fairness_bound: Maximum steps an envelope may wait (default: dynamic)
        step_budget: Livelock guard (default: network.step_budget)
        transcript: Transcript to append to

    Returns:
        Transcript with deliveries, outputs and metrics

    Raises:
        Livelock: if the step budget is exhausted
    """
    engine = AsyncEngine(parties, adversary, scheduler, params, fairness_bound, step_budget, transcript)
    return engine.run()
