"""Synchronous VSS schemes: round signatures, correctness, commitment"""

import pytest

from vsslab.adversary.base import Adversary
from vsslab.adversary.strategies import make_strategy
from vsslab.algebra.field import FieldParams
from vsslab.algebra.poly import interpolate
from vsslab.errors import ConfigBound, ConfigInvalid
from vsslab.netsim.engine_config import EngineConfig
from vsslab.netsim.protocol import BOTTOM
from vsslab.outcome import SHARED
from vsslab.vss_sync.registry import SYNC_SCHEMES, scheme_class
from vsslab.vss_sync.rss import groups_for
from vsslab.vss_sync.runner import run_reconstruction, run_sharing

P = 2**31 - 1

# smallest (n, t) each scheme runs at
SMALLEST = {
    "7BGW": (4, 1),
    "5BGW": (4, 1),
    "4GIKR": (4, 1),
    "3GIKR": (4, 1),
    "3FGGRS-WSS": (4, 1),
    "3FGGRS": (4, 1),
    "3KKK-WSS": (4, 1),
    "3KKK": (4, 1),
    "3AKP": (4, 1),
    "2GIKR": (5, 1),
    "1GIKR": (5, 1),
}

SIGNATURES = {
    "7BGW": (7, 5),
    "5BGW": (5, 3),
    "4GIKR": (4, 3),
    "3GIKR": (3, 2),
    "3FGGRS": (3, 2),
    "3KKK": (3, 1),
    "3AKP": (3, 2),
    "2GIKR": (2, 1),
    "1GIKR": (1, 0),
    "3FGGRS-WSS": (3, 2),
    "3KKK-WSS": (3, 1),
}

VSS = [s for s in SMALLEST if SYNC_SCHEMES[s].guarantee != "WSS"]
WSS = [s for s in SMALLEST if SYNC_SCHEMES[s].guarantee == "WSS"]


def config(n, t, seed=1, dealer=1, p=P):
    return EngineConfig(params=FieldParams.default(n, p), t=t, seed=seed, dealer=dealer)


def share_and_open(scheme, n, t, secret, seed=1, dealer=1, adversary=None):
    outcome = run_sharing(scheme, config(n, t, seed, dealer), secret, adversary)
    outputs = run_reconstruction(outcome)
    if not scheme_class(scheme).dealer_holds_share:
        outputs.pop(dealer, None)
    return outcome, outputs


class TestRoundSignatures:
    @pytest.mark.parametrize("scheme", sorted(SIGNATURES))
    def test_measured_signature(self, scheme):
        n, t = SMALLEST[scheme]
        outcome = run_sharing(scheme, config(n, t), secret=3)
        assert outcome.signature == SIGNATURES[scheme]
        assert SYNC_SCHEMES[scheme].signature == SIGNATURES[scheme]

    @pytest.mark.parametrize("scheme", ["7BGW", "3KKK", "3AKP"])
    def test_signature_independent_of_size(self, scheme):
        outcome = run_sharing(scheme, config(7, 2), secret=3)
        assert outcome.signature == SIGNATURES[scheme]


class TestHonestDealer:
    @pytest.mark.parametrize("scheme", sorted(SMALLEST))
    @pytest.mark.parametrize("seed", [1, 2, 3])
    def test_outputs_secret(self, scheme, seed):
        n, t = SMALLEST[scheme]
        outcome, outputs = share_and_open(scheme, n, t, secret=123456, seed=seed)
        assert outcome.status == SHARED
        assert outcome.committed == 123456
        assert set(outputs.values()) == {123456}

    @pytest.mark.parametrize("scheme", ["7BGW", "5BGW", "4GIKR", "3FGGRS", "3KKK", "3AKP"])
    def test_seven_parties(self, scheme):
        outcome, outputs = share_and_open(scheme, 7, 2, secret=77)
        assert set(outputs.values()) == {77}
        # Type-II: the shares lie on one degree-t polynomial
        if SYNC_SCHEMES[scheme].guarantee == "Type-II VSS":
            assert outcome.committed_poly is not None
            assert outcome.committed_poly.degree <= 2
            assert outcome.committed_poly(0) == 77

    def test_other_dealer(self):
        outcome, outputs = share_and_open("7BGW", 4, 1, secret=9, dealer=3)
        assert set(outputs.values()) == {9}

    def test_secret_reduced_mod_p(self):
        _, outputs = share_and_open("5BGW", 4, 1, secret=P + 5)
        assert set(outputs.values()) == {5}

    def test_dealer_holds_no_share_in_one_round_scheme(self):
        outcome, outputs = share_and_open("1GIKR", 5, 1, secret=4)
        assert 1 not in outputs
        assert outcome.shares[1] is None


class TestBounds:
    @pytest.mark.parametrize("scheme", ["7BGW", "3KKK", "3GIKR"])
    def test_three_t(self, scheme):
        with pytest.raises(ConfigBound):
            run_sharing(scheme, config(3, 1))

    def test_two_round_needs_four_t(self):
        with pytest.raises(ConfigBound):
            run_sharing("2GIKR", config(4, 1))

    def test_one_round_only_five_parties(self):
        with pytest.raises(ConfigBound):
            run_sharing("1GIKR", config(6, 1))

    def test_unknown_scheme(self):
        with pytest.raises(ConfigInvalid):
            scheme_class("9XYZ")

    def test_replicated_sharing_party_limit(self):
        with pytest.raises(ConfigBound):
            run_sharing("3GIKR", config(9, 2))


class TestCommitment:
    @pytest.mark.parametrize("scheme", VSS)
    @pytest.mark.parametrize("strategy", ["inconsistent-dealer", "garble", "crash"])
    def test_corrupt_dealer_outputs_agree(self, scheme, strategy):
        n, t = SMALLEST[scheme]
        for seed in range(1, 4):
            adversary = Adversary({1}, make_strategy(strategy, P, seed=seed))
            outcome, outputs = share_and_open(scheme, n, t, secret=5, seed=seed, adversary=adversary)
            assert len(set(map(repr, outputs.values()))) == 1
            if not outcome.discarded and outcome.committed is not None:
                assert set(outputs.values()) == {outcome.committed}

    @pytest.mark.parametrize("scheme", WSS)
    def test_weak_commitment(self, scheme):
        n, t = SMALLEST[scheme]
        for seed in range(1, 4):
            adversary = Adversary({1}, make_strategy("inconsistent-dealer", P, seed=seed))
            outcome, outputs = share_and_open(scheme, n, t, secret=5, seed=seed, adversary=adversary)
            assert all(v is BOTTOM or v == outcome.committed for v in outputs.values())

    @pytest.mark.parametrize("scheme", sorted(SMALLEST))
    def test_wrong_shares_at_reconstruction(self, scheme):
        n, t = SMALLEST[scheme]
        adversary = Adversary({n}, make_strategy("wrong-share-at-rec", P, seed=4))
        _, outputs = share_and_open(scheme, n, t, secret=31, adversary=adversary)
        assert set(outputs.values()) == {31}

    def test_inconsistent_dealer_discard_or_commit(self):
        adversary = Adversary({1}, make_strategy("inconsistent-dealer", P))
        outcome, outputs = share_and_open("7BGW", 7, 2, secret=5, adversary=adversary)
        values = set(outputs.values())
        assert len(values) == 1
        if outcome.discarded:
            assert values == {0}


class TestSchemeRecords:
    def test_akp_tentative_shares(self):
        outcome = run_sharing("3AKP", config(4, 1), secret=8)
        params = outcome.config.params
        for pid, record in outcome.records.items():
            assert record["tentative_share"] == outcome.shares[pid]
            subshares = record["tentative_subshares"]
            row = interpolate([(params.alpha(j), v) for j, v in subshares.items()], params.p)
            assert row.degree <= 1
            assert row(0) == outcome.shares[pid]

    def test_replicated_pieces(self):
        n, t = 4, 1
        outcome = run_sharing("3GIKR", config(n, t), secret=10)
        groups = groups_for(n, t)
        pieces = {}
        for pid, share in outcome.shares.items():
            assert set(share) == {k for k, G in enumerate(groups) if pid in G}
            pieces.update(share)
        assert len(pieces) == len(groups)
        assert sum(pieces.values()) % P == 10
        assert all(record["conflicted"] == [] for record in outcome.records.values())

    def test_two_round_star(self):
        outcome = run_sharing("2GIKR", config(5, 1), secret=2)
        for record in outcome.records.values():
            C, D = record["star"]
            assert len(C) >= 3 and len(D) >= 4

    def test_no_accusations_with_honest_dealer(self):
        outcome = run_sharing("7BGW", config(4, 1), secret=2)
        assert all(record["accusers"] == [] for record in outcome.records.values())


class TestCommunication:
    def test_seven_round_scaling(self):
        small = run_sharing("7BGW", config(4, 1), secret=3).metrics
        large = run_sharing("7BGW", config(8, 2), secret=3).metrics
        assert large.p2p_elements / small.p2p_elements <= 5.0
        assert large.p2p_bits / small.p2p_bits <= 5.0

    def test_one_round_uses_no_broadcast(self):
        metrics = run_sharing("1GIKR", config(5, 1), secret=3).metrics
        assert metrics.bc_bits == 0
        assert metrics.p2p_elements == 4
