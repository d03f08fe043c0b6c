"""Synchronous, asynchronous and hybrid engines on toy protocols"""

from dataclasses import replace

import pytest

from vsslab.adversary.base import Adversary, CorruptionSpec, Strategy
from vsslab.adversary.schedulers import make_scheduler
from vsslab.adversary.strategies import Crash
from vsslab.algebra.field import FieldParams
from vsslab.errors import ConfigInvalid, Livelock, OriginViolation, RoundOverrun
from vsslab.netsim.asynchronous import AsyncEngine, run_async
from vsslab.netsim.hybrid import run_hybrid
from vsslab.netsim.messages import Kind, Message, element_bits
from vsslab.netsim.protocol import AsyncParty, HybridParty, SyncParty
from vsslab.netsim.sync import run_sync
from vsslab.utils.rng import SeededRng

P = 97
PARAMS = FieldParams.default(4, P)


class Summer(SyncParty):
    """Round 1: send pid to all; round 2: broadcast the sum; conclude reads the sums."""

    def schedule(self, phase):
        return [self._send, self._announce]

    def _send(self, inbox):
        self.send_all(Message("value", elems=(self.pid,)))

    def _announce(self, inbox):
        total = sum(msg.elems[0] for msg in inbox.from_all("value").values())
        self.broadcast(Message("sum", elems=(total,)))

    def conclude(self, phase, inbox):
        self.output = {j: msg.elems[0] for j, msg in inbox.from_all("sum").items()}


class Forge(Strategy):
    name = "forge"

    def emit(self, view, prescription, clock):
        return [replace(out, sender=2) for out in prescription]


class PingPong(AsyncParty):
    def start(self):
        if self.pid == 1:
            self.send(2, Message("ping"))

    def on_message(self, sender, msg):
        self.send(sender, Message("ping"))


class Flood(AsyncParty):
    """Every party sends a burst to everyone and terminates after n bursts."""

    def start(self):
        for _ in range(5):
            self.send_all(Message("burst", elems=(self.pid,)))

    def on_message(self, sender, msg):
        self.output = (self.output or 0) + 1
        if self.output >= 5 * self.n:
            self.terminated = True


class TwoPhase(HybridParty):
    """One synchronous round of values, then an asynchronous echo."""

    def schedule(self, phase):
        return [lambda inbox: self.send_all(Message("value", elems=(self.pid,)))]

    def begin_async(self, inbox):
        self.seen = sorted(inbox.from_all("value"))
        self.send_all(Message("echo"))
        self.count = 0

    def on_message(self, sender, msg):
        self.count += 1
        if self.count == self.n:
            self.output = self.seen
            self.terminated = True


def summers():
    return {pid: Summer(pid, PARAMS, 1, SeededRng(0, pid)) for pid in PARAMS.parties}


class TestSyncEngine:
    def test_round_accounting(self):
        assert len(summers()[1].schedule("share")) == 2
        transcript = run_sync(summers(), Adversary(), "share", PARAMS)
        m = transcript.metrics
        assert (m.rounds_total, m.rounds_with_broadcast) == (2, 1)
        assert m.p2p_elements == 16
        assert m.bc_elements == 4
        assert m.p2p_bits == 16 * element_bits(P)

    def test_broadcast_reaches_everyone(self):
        parties = summers()
        run_sync(parties, Adversary(), "share", PARAMS)
        for party in parties.values():
            assert party.output == {j: 10 for j in PARAMS.parties}

    def test_adversary_view(self):
        adversary = Adversary({4})
        run_sync(summers(), adversary, "share", PARAMS)
        # four values to P4 plus four broadcasts
        assert len(adversary.view.received) == 8

    def test_crash_changes_honest_view(self):
        parties = summers()
        run_sync(parties, Adversary({4}, Crash()), "share", PARAMS)
        assert parties[1].output == {1: 6, 2: 6, 3: 6}

    def test_round_overrun(self):
        with pytest.raises(RoundOverrun):
            run_sync(summers(), Adversary(), "share", PARAMS, max_rounds=1)

    def test_forgery_rejected(self):
        with pytest.raises(OriginViolation):
            run_sync(summers(), Adversary({4}, Forge()), "share", PARAMS)

    def test_transcript_lines(self, tmp_path):
        transcript = run_sync(summers(), Adversary(), "share", PARAMS)
        lines = transcript.lines()
        assert len(lines) == 20
        assert lines[0].split("|")[:6] == ["1", "1", "p2p", "1", "1", "value"]
        assert any(line.split("|")[4] == "*" for line in lines)
        path = transcript.write(tmp_path / "run" / "transcript.log")
        assert path.read_text().splitlines() == lines

    def test_deterministic(self):
        first = run_sync(summers(), Adversary(), "share", PARAMS).lines()
        assert run_sync(summers(), Adversary(), "share", PARAMS).lines() == first


class TestAsyncEngine:
    def test_livelock(self):
        parties = {pid: PingPong(pid, PARAMS, 1, SeededRng(0, pid)) for pid in PARAMS.parties}
        with pytest.raises(Livelock):
            run_async(parties, Adversary(), make_scheduler("fifo"), PARAMS, step_budget=50)

    @pytest.mark.parametrize("scheduler", ["fifo", "lifo", "corrupt-first", "honest-last", "random"])
    def test_eventual_delivery(self, scheduler):
        parties = {pid: Flood(pid, PARAMS, 1, SeededRng(0, pid)) for pid in PARAMS.parties}
        transcript = run_async(parties, Adversary({4}), make_scheduler(scheduler, seed=5), PARAMS)
        assert all(parties[pid].terminated for pid in (1, 2, 3))
        m = transcript.metrics
        assert m.max_pending_age <= m.fairness_bound
        assert m.async_steps == len(transcript.events)

    def test_fixed_fairness_bound_overrides_lifo(self):
        parties = {pid: Flood(pid, PARAMS, 1, SeededRng(0, pid)) for pid in PARAMS.parties}
        transcript = run_async(parties, Adversary(), make_scheduler("lifo"), PARAMS, fairness_bound=20)
        assert transcript.metrics.fairness_overrides > 0

    def test_stops_when_honest_terminate(self):
        parties = {pid: Flood(pid, PARAMS, 1, SeededRng(0, pid)) for pid in PARAMS.parties}
        engine = AsyncEngine(parties, Adversary(), make_scheduler("fifo"), PARAMS, until=lambda: True)
        transcript = engine.run()
        assert transcript.metrics.async_steps == 0
        assert len(engine.pending) == 80

    def test_broadcast_not_routed(self):
        class Shouter(AsyncParty):
            def start(self):
                self.broadcast(Message("loud"))

        parties = {pid: Shouter(pid, PARAMS, 1, SeededRng(0, pid)) for pid in PARAMS.parties}
        transcript = run_async(parties, Adversary(), make_scheduler("fifo"), PARAMS)
        assert not transcript.events
        assert all(env.kind is not Kind.BROADCAST for env in transcript.delivered_to(1))


class TestHybridEngine:
    def test_sync_then_async(self):
        parties = {pid: TwoPhase(pid, PARAMS, 1, SeededRng(0, pid)) for pid in PARAMS.parties}
        transcript = run_hybrid(parties, Adversary(), make_scheduler("lifo"), PARAMS)
        assert transcript.metrics.rounds_total == 1
        assert transcript.metrics.async_steps > 0
        assert all(party.output == [1, 2, 3, 4] for party in parties.values())

    def test_needs_a_synchronous_round(self):
        parties = {pid: TwoPhase(pid, PARAMS, 1, SeededRng(0, pid)) for pid in PARAMS.parties}
        with pytest.raises(ConfigInvalid):
            run_hybrid(parties, Adversary(), make_scheduler("fifo"), PARAMS, sync_rounds=0)


class TestCorruptionSpec:
    def test_too_many_corrupt(self):
        with pytest.raises(ConfigInvalid):
            CorruptionSpec(frozenset({2, 3}), "garble", {}).validate(4, 1)

    def test_out_of_range(self):
        with pytest.raises(ConfigInvalid):
            CorruptionSpec(frozenset({5}), "garble", {}).validate(4, 1)
