"""Tests for field arithmetic, univariate and bivariate polynomials"""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from vsslab.algebra.bivariate import (
    BiPoly,
    EmbedMode,
    check_pairwise_fit,
    cols_of,
    embed_bivariate,
    rows_of,
)
from vsslab.algebra.field import FieldParams, PrimeField, is_prime
from vsslab.algebra.poly import UniPoly, interpolate, sample_sharing_poly, shares_of
from vsslab.errors import (
    ConfigInvalid,
    DegreeMismatch,
    DuplicateAbscissa,
    FieldTooSmall,
    InsufficientPolynomials,
)
from vsslab.utils.rng import SeededRng

P = 97


class TestField:
    def test_small_primes(self):
        assert [k for k in range(30) if is_prime(k)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
        assert is_prime(2**31 - 1)
        assert not is_prime(2**31 + 1)

    def test_inverse(self):
        field = PrimeField(P)
        for a in range(1, P):
            assert field.mul(a, field.inv(a)) == 1

    def test_inverse_of_zero_raises(self):
        with pytest.raises(ZeroDivisionError):
            PrimeField(P).inv(0)

    def test_elements_reduce(self):
        field = PrimeField(5)
        assert field.element(7) + 4 == field.element(1)
        assert int(field.element(3) * field.element(2)) == 1
        assert field.element(3) / field.element(3) == 1

    def test_default_points(self):
        params = FieldParams.default(4, 11, L=2)
        assert params.alphas == (1, 2, 3, 4)
        assert params.betas == (5, 6)
        assert params.alpha(3) == 3
        assert params.party_at(4) == 4
        assert params.party_at(9) is None

    def test_field_too_small(self):
        with pytest.raises(FieldTooSmall):
            FieldParams.default(5, 5)
        with pytest.raises(FieldTooSmall):
            FieldParams.default(4, 7, L=3)

    def test_composite_modulus(self):
        with pytest.raises(ConfigInvalid):
            FieldParams.default(3, 9)

    def test_zero_point_rejected(self):
        with pytest.raises(ConfigInvalid):
            FieldParams(p=7, n=2, alphas=(0, 1))


class TestUniPoly:
    def test_trailing_zeros_trimmed(self):
        q = UniPoly((3, 0, 0), P)
        assert q.coeffs == (3,)
        assert q.degree == 0
        assert UniPoly.zero(P).degree == -1

    def test_arithmetic(self):
        a = UniPoly((1, 2), P)
        b = UniPoly((5, 0, 1), P)
        assert (a + b)(3) == (a(3) + b(3)) % P
        assert (a - b)(3) == (a(3) - b(3)) % P
        assert (a * b)(3) == a(3) * b(3) % P

    def test_divmod(self):
        a = UniPoly((4, 1, 7, 2), P)
        b = UniPoly((1, 1), P)
        q, r = divmod(a, b)
        assert q * b + r == a
        assert r.degree < b.degree

    def test_sharing_poly(self, rng):
        q = sample_sharing_poly(42, 3, rng, P)
        assert q(0) == 42
        assert q.degree <= 3

    def test_negative_degree(self, rng):
        with pytest.raises(ValueError):
            sample_sharing_poly(1, -1, rng, P)


class TestInterpolate:
    @settings(max_examples=200)
    @given(
        coeffs=st.lists(st.integers(0, P - 1), min_size=1, max_size=6),
        extra=st.integers(0, 3),
    )
    def test_recovers_polynomial(self, coeffs, extra):
        q = UniPoly(tuple(coeffs), P)
        xs = list(range(1, len(coeffs) + extra + 1))
        assert interpolate(list(zip(xs, shares_of(q, xs))), P) == q

    def test_field_elements_carry_modulus(self):
        field = PrimeField(11)
        points = [(field.element(1), field.element(3)), (field.element(2), field.element(5))]
        assert interpolate(points) == UniPoly((1, 2), 11)

    def test_duplicate_abscissa(self):
        with pytest.raises(DuplicateAbscissa):
            interpolate([(1, 2), (1 + P, 3)], P)

    def test_empty(self):
        assert interpolate([], P).is_zero()


class TestBivariate:
    DEGREES = (2, 2)

    def test_row_and_col(self, rng):
        F = BiPoly.random((2, 3), rng, P)
        assert F.degrees == (2, 3)
        for a in (1, 5):
            for x in (0, 2, 9):
                assert F.row(a)(x) == F(x, a)
                assert F.col(a)(x) == F(a, x)

    def test_embed_at_x0(self, rng):
        q = UniPoly((5, 1, 2), P)
        F = embed_bivariate(q, EmbedMode.AT_X0, self.DEGREES, rng)
        assert F.x0() == q

    def test_embed_at_y0(self, rng):
        q = UniPoly((5, 1), P)
        F = embed_bivariate(q, "at_y0", (2, 1), rng)
        assert F.y0() == q
        assert F.degrees == (2, 1)

    def test_embed_symmetric(self, rng):
        q = UniPoly((9, 4, 4), P)
        F = embed_bivariate(q, EmbedMode.SYMMETRIC_X0, self.DEGREES, rng)
        assert F.symmetric
        assert F.x0() == q
        for a in range(1, 5):
            assert F.row(a) == F.col(a)

    def test_embed_multi_beta(self, rng):
        qs = [UniPoly((1, 2), P), UniPoly((3,), P)]
        F = embed_bivariate(qs, EmbedMode.MULTI_BETA, (2, 1), rng, betas=(8, 9))
        assert F.col(8) == qs[0]
        assert F.col(9) == qs[1]

    def test_embed_degree_mismatch(self, rng):
        with pytest.raises(DegreeMismatch):
            embed_bivariate(UniPoly((1, 2, 3, 4), P), EmbedMode.AT_X0, self.DEGREES, rng)
        with pytest.raises(DegreeMismatch):
            embed_bivariate(UniPoly((1,), P), EmbedMode.SYMMETRIC_X0, (1, 2), rng)
        with pytest.raises(DegreeMismatch):
            embed_bivariate([UniPoly((1,), P)] * 2, EmbedMode.MULTI_BETA, (2, 1), rng, betas=(8,))

    def test_pairwise_fit_recovers(self, small_params, rng):
        F = BiPoly.random(self.DEGREES, rng, P)
        rows = {i: f for i, f in rows_of(F, small_params).items() if i <= 4}
        cols = {j: g for j, g in cols_of(F, small_params).items() if j >= 3}
        assert check_pairwise_fit(rows, cols, self.DEGREES, small_params) == F

    def test_pairwise_fit_detects_inconsistency(self, small_params, rng):
        F = BiPoly.random(self.DEGREES, rng, P)
        rows = rows_of(F, small_params)
        cols = cols_of(F, small_params)
        rows[2] = rows[2] + UniPoly((1,), P)
        assert check_pairwise_fit(rows, cols, self.DEGREES, small_params) is None

    def test_pairwise_fit_needs_enough_rows(self, small_params):
        F = BiPoly.random(self.DEGREES, SeededRng(1), P)
        rows = {i: f for i, f in rows_of(F, small_params).items() if i <= 2}
        with pytest.raises(InsufficientPolynomials):
            check_pairwise_fit(rows, cols_of(F, small_params), self.DEGREES, small_params)

    def test_symmetric_flag_validated(self):
        with pytest.raises(DegreeMismatch):
            BiPoly(((1, 2), (3, 4)), P, symmetric=True)
