"""Exact privacy oracle on tiny fields"""

import itertools
from collections import Counter

import pytest

from vsslab.algebra.poly import sample_sharing_poly
from vsslab.errors import ConfigInvalid, EnumerationTooLarge
from vsslab.harness.privacy import (
    DISTINGUISHABLE,
    EQUAL,
    privacy_all_singletons,
    privacy_exhaustive_check,
)
from vsslab.netsim.messages import Message, Phase
from vsslab.utils.rng import TapeRng
from vsslab.vss_sync.gikr import Gikr1


class LeakyOneRound(Gikr1):
    """Deals like the one-round scheme and also tells every receiver the secret."""

    def _deal(self, inbox):
        super()._deal(inbox)
        if self.is_dealer:
            for j in self.receivers:
                self.send(j, Message("leak", elems=(self.secret_value,), phase=Phase.DEAL))


class TestShamirShares:
    @pytest.mark.parametrize("index", [1, 2, 3, 4])
    def test_single_share_independent_of_secret(self, index):
        p, t = 5, 1
        views = []
        for s in (0, 1):
            counter = Counter()
            for tape in itertools.product(range(p), repeat=t):
                q = sample_sharing_poly(s, t, TapeRng(tape), p)
                counter[q(index)] += 1
            views.append(counter)
        assert views[0] == views[1]

    def test_every_polynomial_once(self):
        polys = Counter(sample_sharing_poly(1, 1, TapeRng([a]), 5) for a in range(5))
        assert len(polys) == 5
        assert all(q(0) == 1 for q in polys)
        assert set(polys.values()) == {1}


class TestOneRoundScheme:
    # five non-zero evaluation points need p >= 7
    P = 7

    def test_single_corrupt_party(self):
        result = privacy_exhaustive_check("1GIKR", 5, 1, self.P, 0, 1, {2})
        assert result.verdict == EQUAL
        assert result.method == "enumerate"
        assert result.runs == 2 * self.P
        assert result.witness is None

    def test_every_singleton(self):
        results = privacy_all_singletons("1GIKR", 5, 1, self.P, 0, 1, method="enumerate")
        assert [r.corrupt for r in results] == [(2,), (3,), (4,), (5,)]
        assert all(r.verdict == EQUAL for r in results)

    def test_linear_method_agrees(self):
        result = privacy_exhaustive_check("1GIKR", 5, 1, self.P, 2, 5, {3}, method="linear")
        assert result.verdict == EQUAL

    def test_leak_detected(self):
        result = privacy_exhaustive_check(LeakyOneRound, 5, 1, self.P, 0, 1, {2})
        assert result.verdict == DISTINGUISHABLE
        assert result.witness["count_s0"] != result.witness["count_s1"]
        assert "Distinguishable" in str(result)

    def test_leak_detected_by_linear_method(self):
        result = privacy_exhaustive_check(LeakyOneRound, 5, 1, self.P, 0, 1, {2}, method="linear")
        assert result.verdict == DISTINGUISHABLE
        assert result.witness

    def test_state_limit(self):
        with pytest.raises(EnumerationTooLarge):
            privacy_exhaustive_check("1GIKR", 5, 1, self.P, 0, 1, {2}, max_states=3)

    def test_dealer_must_be_honest(self):
        with pytest.raises(ConfigInvalid):
            privacy_exhaustive_check("1GIKR", 5, 1, self.P, 0, 1, {1})

    def test_unknown_method(self):
        with pytest.raises(ConfigInvalid):
            privacy_exhaustive_check("1GIKR", 5, 1, self.P, 0, 1, {2}, method="sample")


class TestOtherSchemes:
    def test_weak_polynomial_sharing(self):
        results = privacy_all_singletons("WPS", 4, 1, 5, 0, 1, method="auto")
        assert len(results) == 3
        assert all(r.verdict == EQUAL for r in results)

    @pytest.mark.parametrize("scheme", ["7BGW", "5BGW"])
    def test_synchronous_vss(self, scheme):
        result = privacy_exhaustive_check(scheme, 4, 1, 5, 0, 1, {4}, method="linear")
        assert result.verdict == EQUAL

    def test_unknown_scheme(self):
        with pytest.raises(ConfigInvalid):
            privacy_exhaustive_check("XYZ", 4, 1, 5, 0, 1, {2})
