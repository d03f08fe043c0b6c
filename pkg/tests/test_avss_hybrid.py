"""Hybrid-model WPS and AVSS: one synchronous round, then asynchrony"""

import pytest

from vsslab.adversary.base import Adversary
from vsslab.adversary.schedulers import make_scheduler
from vsslab.adversary.strategies import make_strategy
from vsslab.algebra.field import FieldParams
from vsslab.algebra.poly import UniPoly
from vsslab.avss_hybrid.registry import hybrid_class
from vsslab.avss_hybrid.runner import run_pr_reconstruction, run_pr_sharing, run_wps
from vsslab.errors import ConfigBound, ConfigInvalid
from vsslab.netsim.engine_config import EngineConfig
from vsslab.netsim.protocol import BOTTOM
from vsslab.outcome import SHARED

P = 2**31 - 1
SCHEDULERS = ["fifo", "lifo", "corrupt-first", "honest-last", "random"]


def hybrid_config(n=4, t=1, seed=1, dealer=1):
    return EngineConfig(params=FieldParams.default(n, P), t=t, seed=seed, dealer=dealer, timing="hybrid")


class TestWps:
    @pytest.mark.parametrize("scheduler", SCHEDULERS)
    def test_honest_dealer(self, scheduler):
        f = UniPoly((12, 5), P)
        cfg = hybrid_config()
        outcome = run_wps(cfg, f, scheduler=make_scheduler(scheduler, seed=2))
        assert outcome.status == SHARED
        for pid, share in outcome.shares.items():
            assert share == f(cfg.params.alpha(pid))
        assert outcome.committed == 12
        assert outcome.committed_poly == f

    def test_one_synchronous_round(self):
        outcome = run_wps(hybrid_config(), UniPoly((1, 1), P))
        assert outcome.metrics.rounds_total == 1
        assert outcome.metrics.async_steps > 0

    @pytest.mark.parametrize("strategy", ["crash", "garble", "pad-mismatch"])
    def test_corrupt_party(self, strategy):
        f = UniPoly((3, 9), P)
        cfg = hybrid_config()
        adversary = Adversary({4}, make_strategy(strategy, P, seed=5))
        outcome = run_wps(cfg, f, adversary, make_scheduler("corrupt-first"))
        assert outcome.status == SHARED
        for pid, share in outcome.shares.items():
            assert share == f(cfg.params.alpha(pid))
        assert all(len(record["W"]) >= 3 for record in outcome.records.values())

    @pytest.mark.parametrize("scheduler", SCHEDULERS)
    def test_corrupt_dealer_weak_commitment(self, scheduler):
        adversary = Adversary({1}, make_strategy("inconsistent-dealer", P))
        outcome = run_wps(hybrid_config(), UniPoly((3, 9), P), adversary, make_scheduler(scheduler, seed=1))
        values = [v for v in outcome.shares.values() if v is not None and v is not BOTTOM]
        if values and outcome.committed_poly is not None:
            params = outcome.config.params
            for pid, share in outcome.shares.items():
                assert share is BOTTOM or share is None or share == outcome.committed_poly(params.alpha(pid))

    def test_dealer_announces_once(self):
        outcome = run_wps(hybrid_config(), UniPoly((4, 4), P))
        assert outcome.parties[1].instance.announced == {3}

    def test_bounds(self):
        with pytest.raises(ConfigBound):
            run_wps(hybrid_config(n=3, t=1), UniPoly((1,), P))


class TestPr:
    @pytest.mark.parametrize("scheduler", SCHEDULERS)
    def test_share_and_reconstruct(self, scheduler):
        outcome = run_pr_sharing(hybrid_config(), 21, scheduler=make_scheduler(scheduler, seed=4))
        assert outcome.status == SHARED
        assert outcome.committed == 21
        assert outcome.committed_poly.degree <= 1
        outputs = run_pr_reconstruction(outcome, scheduler=make_scheduler(scheduler, seed=4))
        assert set(outputs.values()) == {21}

    @pytest.mark.parametrize("strategy", ["crash", "garble", "wrong-share-at-rec"])
    def test_corrupt_party(self, strategy):
        adversary = Adversary({3}, make_strategy(strategy, P, seed=2))
        outcome = run_pr_sharing(hybrid_config(), 8, adversary, make_scheduler("corrupt-first"))
        assert outcome.status == SHARED
        outputs = run_pr_reconstruction(outcome)
        assert set(outputs.values()) == {8}

    @pytest.mark.parametrize("scheduler", ["lifo", "corrupt-first", "fifo"])
    @pytest.mark.parametrize("seed", [1, 2, 3])
    def test_party_splitting_its_blinding_poly(self, scheduler, seed):
        # P4 is honest in every other WPS but splits its own
        adversary = Adversary({4}, make_strategy("inconsistent-dealer", P))
        cfg = hybrid_config(seed=seed)
        outcome = run_pr_sharing(cfg, 13, adversary, make_scheduler(scheduler, seed=seed))
        assert outcome.status == SHARED
        assert all(record["terminated"] for record in outcome.records.values())
        assert outcome.committed == 13
        for pid, record in outcome.records.items():
            assert record["V"] == [1, 2, 3]
            assert all({1, 2, 3} <= set(record["W"][j]) for j in record["V"])
            assert outcome.shares[pid] == outcome.committed_poly(cfg.params.alpha(pid))
        outputs = run_pr_reconstruction(outcome, scheduler=make_scheduler(scheduler, seed=seed))
        assert set(outputs.values()) == {13}

    def test_blinding_wps_reannounces(self):
        adversary = Adversary({4}, make_strategy("inconsistent-dealer", P))
        outcome = run_pr_sharing(hybrid_config(), 13, adversary, make_scheduler("lifo", seed=1))
        dealer = outcome.parties[1]
        assert dealer.blinds[4].latest is None
        for j in (1, 2, 3):
            own = outcome.parties[j].blinds[j]
            assert min(own.announced) == 3
            assert {1, 2, 3} <= dealer.blinds[j].latest
            assert all(len(W) >= 3 for W in dealer.blinds[j].verified)

    def test_certificate_recorded(self):
        outcome = run_pr_sharing(hybrid_config(), 5)
        for record in outcome.records.values():
            V = record["V"]
            assert len(V) >= 3
            assert all(len(set(V) & set(record["W"][j])) >= 3 for j in V)

    def test_corrupt_dealer_all_or_nothing(self):
        adversary = Adversary({1}, make_strategy("inconsistent-dealer", P))
        outcome = run_pr_sharing(hybrid_config(), 5, adversary, make_scheduler("lifo"))
        terminated = {record["terminated"] for record in outcome.records.values()}
        assert len(terminated) == 1
        if terminated == {True}:
            outputs = run_pr_reconstruction(outcome)
            assert set(outputs.values()) == {outcome.committed}

    def test_unknown_scheme(self):
        with pytest.raises(ConfigInvalid):
            hybrid_class("XYZ")
