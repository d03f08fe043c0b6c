"""Asynchronous AVSS schemes under adversarial schedules"""

import pytest

from vsslab.adversary.base import Adversary
from vsslab.adversary.schedulers import make_scheduler
from vsslab.adversary.strategies import make_strategy
from vsslab.algebra.field import FieldParams
from vsslab.avss_async.chp import batch_sizes
from vsslab.avss_async.registry import avss_class
from vsslab.avss_async.runner import AvssConfig, run_avss_reconstruction, run_avss_sharing
from vsslab.errors import ConfigBound, ConfigInvalid, FieldTooSmall
from vsslab.outcome import SHARED

P = 2**31 - 1
SCHEDULERS = ["fifo", "lifo", "corrupt-first", "honest-last", "random"]


def avss_config(scheme, n=5, t=1, seed=1, d=None, L=None, p=P):
    betas = L if L is not None else (n - 3 * t if scheme == "CHP" else 0)
    params = FieldParams.default(n, p, betas)
    return AvssConfig(params=params, t=t, seed=seed, scheme=scheme, d=d, L=L)


def share_and_open(cfg, secret, adversary=None, scheduler="fifo", seed=0):
    outcome = run_avss_sharing(cfg, secret, adversary, make_scheduler(scheduler, seed=seed))
    outputs = run_avss_reconstruction(outcome, scheduler=make_scheduler(scheduler, seed=seed))
    return outcome, outputs


class TestHonestDealer:
    @pytest.mark.parametrize("scheme", ["BCG", "PCR", "CHP"])
    @pytest.mark.parametrize("scheduler", SCHEDULERS)
    def test_all_honest_terminate(self, scheme, scheduler):
        outcome, outputs = share_and_open(avss_config(scheme), 17, scheduler=scheduler, seed=3)
        assert outcome.status == SHARED
        assert all(record["terminated"] for record in outcome.records.values())
        expected = [17, 0] if scheme == "CHP" else 17
        assert all(v == expected for v in outputs.values())

    @pytest.mark.parametrize("scheme", ["BCG", "PCR"])
    @pytest.mark.parametrize("strategy", ["crash", "garble", "wrong-share-at-rec"])
    def test_corrupt_party_cannot_block(self, scheme, strategy):
        for seed in range(1, 4):
            adversary = Adversary({5}, make_strategy(strategy, P, seed=seed))
            outcome, outputs = share_and_open(
                avss_config(scheme, seed=seed), 9, adversary, scheduler="corrupt-first"
            )
            assert outcome.status == SHARED
            assert set(outputs.values()) == {9}

    def test_victim_held_back(self):
        scheduler = make_scheduler("honest-last", victim=2)
        outcome = run_avss_sharing(avss_config("BCG"), 4, Adversary({5}, make_strategy("crash", P)), scheduler)
        assert outcome.records[2]["terminated"]
        assert outcome.committed == 4

    def test_shares_lie_on_degree_d(self):
        n, t, d = 9, 2, 4
        outcome = run_avss_sharing(avss_config("PCR", n, t, d=d), 6)
        assert outcome.committed == 6
        assert outcome.committed_poly.degree <= d
        params = outcome.config.params
        for pid, share in outcome.shares.items():
            assert share == outcome.committed_poly(params.alpha(pid))

    def test_pcr_default_degree_is_t(self):
        outcome = run_avss_sharing(avss_config("PCR"), 6)
        assert outcome.committed_poly.degree <= 1


class TestCorruptDealer:
    @pytest.mark.parametrize("scheme", ["BCG", "PCR", "CHP"])
    @pytest.mark.parametrize("scheduler", SCHEDULERS)
    def test_all_or_nothing(self, scheme, scheduler):
        adversary = Adversary({1}, make_strategy("inconsistent-dealer", P))
        outcome, outputs = share_and_open(avss_config(scheme), 3, adversary, scheduler=scheduler, seed=1)
        terminated = {record["terminated"] for record in outcome.records.values()}
        assert len(terminated) == 1
        if terminated == {True}:
            assert outcome.committed is not None
            assert all(v == outcome.committed for v in outputs.values())


class TestBatched:
    def test_batch_sizes(self):
        assert batch_sizes(5, 1, 2) == [2]
        assert batch_sizes(5, 1, 5) == [2, 2, 1]
        assert batch_sizes(9, 2, 3) == [3]

    def test_several_batches(self):
        secrets = [1, 2, 3, 4, 5]
        outcome, outputs = share_and_open(avss_config("CHP", L=5), secrets)
        assert outcome.records[2]["batches"] == 3
        assert outcome.committed == secrets
        assert all(v == secrets for v in outputs.values())

    def test_single_secret(self):
        _, outputs = share_and_open(avss_config("CHP", L=1), [8])
        assert set(outputs.values()) == {8}

    def test_broadcast_cost_independent_of_batch_fill(self):
        one = run_avss_sharing(avss_config("CHP", L=1), [7]).metrics
        full = run_avss_sharing(avss_config("CHP", L=2), [7, 8]).metrics
        assert one.bc_bits == full.bc_bits
        assert one.bc_elements == full.bc_elements

    def test_missing_betas(self):
        cfg = AvssConfig(params=FieldParams.default(5, P), t=1, scheme="CHP")
        with pytest.raises(FieldTooSmall):
            run_avss_sharing(cfg, [1, 2])

    def test_empty_batch(self):
        with pytest.raises(ConfigBound):
            avss_config("CHP", L=0).validate()


class TestBounds:
    @pytest.mark.parametrize("scheme", ["BCG", "PCR", "CHP"])
    def test_four_t(self, scheme):
        cfg = AvssConfig(params=FieldParams.default(4, P, 1), t=1, scheme=scheme)
        with pytest.raises(ConfigBound):
            cfg.validate()

    @pytest.mark.parametrize("d", [0, 3])
    def test_degree_range(self, d):
        with pytest.raises(ConfigBound):
            avss_config("PCR", d=d).validate()

    def test_unknown_scheme(self):
        with pytest.raises(ConfigInvalid):
            avss_class("XYZ")
