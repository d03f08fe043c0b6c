"""Reliable broadcast under adversarial schedules and equivocating senders"""

from dataclasses import replace

import pytest

from vsslab.adversary.base import Adversary, Strategy
from vsslab.adversary.schedulers import make_scheduler
from vsslab.adversary.strategies import Crash, Garble
from vsslab.algebra.field import FieldParams
from vsslab.netsim.asynchronous import run_async
from vsslab.netsim.messages import AcastFrame, Message
from vsslab.netsim.protocol import AsyncParty
from vsslab.utils.rng import SeededRng

P = 97
SETTINGS = [(4, 1), (7, 2)]
SCHEDULES = ["fifo", "lifo", "corrupt-first", "honest-last"] + [f"random:{k}" for k in range(100)]


class Announcer(AsyncParty):
    """Reliably broadcasts one value when it is the origin; terminates on delivery."""

    def __init__(self, pid, params, t, rng, origin=1, value=None):
        super().__init__(pid, params, t, rng)
        self.origin = origin
        self.value = value

    def start(self):
        if self.pid == self.origin:
            self.acast(Message("value", elems=(self.value,)))

    def on_acast(self, origin, msg):
        self.output = msg.elems[0]
        self.terminated = True


class Equivocate(Strategy):
    """The origin sends init(value + 1) to the upper half of the parties."""

    name = "equivocate"

    def __init__(self, n):
        self.n = n

    def emit(self, view, prescription, clock):
        out = []
        for request in prescription:
            frame = request.payload
            if (
                isinstance(frame, AcastFrame)
                and frame.step == "init"
                and request.receiver > self.n // 2
            ):
                message = frame.message.with_elems([(frame.message.elems[0] + 1) % P])
                request = replace(request, payload=replace(frame, message=message))
            out.append(request)
        return out


def scheduler_for(name):
    if name.startswith("random:"):
        return make_scheduler("random", seed=int(name.split(":")[1]))
    return make_scheduler(name)


def run(n, t, corrupt, strategy, schedule, origin=1, value=42):
    params = FieldParams.default(n, P)
    parties = {
        pid: Announcer(pid, params, t, SeededRng(0, pid), origin=origin, value=value) for pid in params.parties
    }
    run_async(parties, Adversary(corrupt, strategy), scheduler_for(schedule), params)
    return {pid: parties[pid].output for pid in params.parties if pid not in corrupt}


@pytest.mark.parametrize("n, t", SETTINGS)
class TestHonestSender:
    @pytest.mark.parametrize("schedule", SCHEDULES)
    def test_totality_with_garbling_relays(self, n, t, schedule):
        corrupt = set(range(n - t + 1, n + 1))
        outputs = run(n, t, corrupt, Garble(P, seed=3), schedule)
        assert set(outputs.values()) == {42}

    def test_totality_with_crashed_relays(self, n, t):
        corrupt = set(range(n - t + 1, n + 1))
        outputs = run(n, t, corrupt, Crash(), "lifo")
        assert set(outputs.values()) == {42}


@pytest.mark.parametrize("n, t", SETTINGS)
class TestCorruptSender:
    @pytest.mark.parametrize("schedule", SCHEDULES)
    def test_agreement_under_equivocation(self, n, t, schedule):
        outputs = run(n, t, {1}, Equivocate(n), schedule)
        delivered = {v for v in outputs.values() if v is not None}
        assert len(delivered) <= 1
        # once one honest party delivers, every honest party does
        if delivered:
            assert None not in outputs.values()

    def test_silent_sender(self, n, t):
        outputs = run(n, t, {1}, Crash(), "fifo")
        assert set(outputs.values()) == {None}
