"""Tests for Berlekamp-Welch decoding and online error correction"""

import pytest
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from vsslab.algebra.field import FieldParams
from vsslab.algebra.poly import UniPoly, vanishing_poly
from vsslab.codes.oec import OecState, oec_feed
from vsslab.codes.reed_solomon import (
    ShareSet,
    brute_force_candidates,
    brute_force_decode,
    rs_decode,
    solve_linear,
)
from vsslab.errors import DecodeFail, DuplicateFeed, ForeignParty

P = 97
PARAMS = FieldParams.default(12, P)


@st.composite
def corrupted_codeword(draw, extra: int = 1):
    """(d, r, q, W) with |W| = d + 2r + extra and at most r wrong entries"""
    d = draw(st.integers(0, 4))
    r = draw(st.integers(0, 3))
    size = d + 2 * r + extra
    coeffs = draw(st.lists(st.integers(0, P - 1), min_size=d + 1, max_size=d + 1))
    q = UniPoly(tuple(coeffs), P)
    parties = draw(st.permutations(list(PARAMS.parties)))[:size]
    errors = draw(st.integers(0, r))
    offsets = draw(st.lists(st.integers(1, P - 1), min_size=errors, max_size=errors))
    W = {j: q(PARAMS.alpha(j)) for j in parties}
    for j, off in zip(parties, offsets):
        W[j] = (W[j] + off) % P
    return d, r, q, W


class TestSolveLinear:
    def test_unique_solution(self):
        assert solve_linear([[1, 1], [1, 2]], [3, 5], P) == [1, 2]

    def test_inconsistent(self):
        assert solve_linear([[1, 1], [2, 2]], [1, 3], P) is None


class TestRsDecode:
    @settings(max_examples=1000, deadline=None, suppress_health_check=[HealthCheck.too_slow])
    @given(case=corrupted_codeword(extra=1))
    def test_decodes_at_boundary(self, case):
        d, r, q, W = case
        decoded = rs_decode(d, r, W, PARAMS)
        assert decoded == q
        assert brute_force_decode(d, r, W, PARAMS) == decoded

    @settings(max_examples=200, deadline=None)
    @given(case=corrupted_codeword(extra=2))
    def test_decodes_above_boundary(self, case):
        d, r, q, W = case
        assert rs_decode(d, r, W, PARAMS) == q

    @settings(max_examples=200, deadline=None)
    @given(
        d=st.integers(0, 4),
        r=st.integers(1, 3),
        coeffs=st.lists(st.integers(0, P - 1), min_size=5, max_size=5),
        shift=st.integers(1, P - 1),
    )
    def test_fails_below_boundary_when_ambiguous(self, d, r, coeffs, shift):
        q1 = UniPoly(tuple(coeffs[: d + 1]), P)
        common = list(range(1, d + 1))
        q2 = q1 + vanishing_poly([PARAMS.alpha(j) for j in common], P).scale(shift)
        first = list(range(d + 1, d + r + 1))
        second = list(range(d + r + 1, d + 2 * r + 1))
        W = {j: q1(PARAMS.alpha(j)) for j in common + first}
        W.update({j: q2(PARAMS.alpha(j)) for j in second})

        assert len(brute_force_candidates(d, r, W, PARAMS)) >= 2
        with pytest.raises(DecodeFail):
            rs_decode(d, r, W, PARAMS)

    def test_too_many_errors(self):
        q = UniPoly((3, 1), P)
        W = {j: q(PARAMS.alpha(j)) for j in range(1, 6)}
        W[1] = (W[1] + 1) % P
        W[2] = (W[2] + 1) % P
        with pytest.raises(DecodeFail):
            rs_decode(1, 1, W, PARAMS)
        with pytest.raises(DecodeFail):
            brute_force_decode(1, 1, W, PARAMS)

    def test_short_input(self):
        with pytest.raises(DecodeFail):
            rs_decode(2, 1, {1: 0, 2: 0, 3: 0, 4: 0}, PARAMS)


class TestShareSet:
    def test_duplicate_party(self):
        shares = ShareSet.of({1: 4})
        with pytest.raises(DuplicateFeed):
            shares.add(1, 5)

    def test_points(self):
        shares = ShareSet.of([(2, 7), (5, 1)])
        assert len(shares) == 2
        assert 5 in shares
        assert sorted(shares.points(PARAMS)) == [(2, 7), (5, 1)]


class TestOec:
    N, T, D = 7, 2, 2
    PARAMS = FieldParams.default(7, P)

    def test_source_too_small(self):
        with pytest.raises(ValueError):
            OecState.start(range(1, 6), 2, 2)

    def test_finishes_with_honest_shares(self):
        q = UniPoly((11, 3, 5), P)
        st_ = OecState.start(self.PARAMS.parties, self.D, self.T)
        for k, j in enumerate(self.PARAMS.parties):
            st_ = oec_feed(st_, j, q(self.PARAMS.alpha(j)), self.PARAMS)
            if k + 1 < self.D + self.T + 1:
                assert not st_.done
        assert st_.done
        assert st_.result == q

    def test_waits_out_wrong_shares(self):
        q = UniPoly((11, 3, 5), P)
        st_ = OecState.start(self.PARAMS.parties, self.D, self.T)
        # two wrong shares arrive first
        order = [6, 7, 1, 2, 3, 4, 5]
        for j in order:
            value = q(self.PARAMS.alpha(j))
            if j in (6, 7):
                value = (value + 1) % P
            st_ = oec_feed(st_, j, value, self.PARAMS)
            if st_.done:
                break
        assert st_.done
        assert st_.result == q
        assert st_.status == "done"

    def test_done_state_keeps_result(self):
        q = UniPoly((1,), P)
        st_ = OecState.start(self.PARAMS.parties, 0, self.T)
        for j in (1, 2, 3):
            st_ = oec_feed(st_, j, 1, self.PARAMS)
        assert st_.done
        st_ = oec_feed(st_, 4, 50, self.PARAMS)
        assert st_.result == q

    def test_rejects_foreign_and_repeated(self):
        st_ = OecState.start([1, 2, 3, 4, 5, 6], 1, 2)
        with pytest.raises(ForeignParty):
            oec_feed(st_, 7, 0, self.PARAMS)
        st_ = oec_feed(st_, 1, 0, self.PARAMS)
        with pytest.raises(DuplicateFeed):
            oec_feed(st_, 1, 0, self.PARAMS)
