"""Perron-Frobenius analysis: eigenvalues, proportions, bounds."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from braidlex import automaton as am
from braidlex import matrixgen as mg
from braidlex import spectral as sp
from braidlex.errors import (
    BoundViolationError,
    ConvergenceError,
    SpectralPreconditionError,
)

PHI = (1 + math.sqrt(5)) / 2


class TestPerron:
    def test_golden_ratio(self, build_cached):
        res = sp.perron(am.recurrent_matrix(build_cached(2)))
        assert abs(res.lam - PHI) < 1e-12
        assert res.residual < sp.DEFAULT_TOL
        assert abs(res.v.sum() - 1.0) < 1e-12
        assert np.all(res.v > 0)

    def test_eigenvector_shape(self, build_cached):
        # in canonical order the eigenvector is proportional to (phi, 1, 1, phi)
        a = build_cached(2)
        res = sp.perron(am.recurrent_matrix(a, mg.canonical_ordering(a)))
        scaled = res.v / res.v[1]
        assert np.max(np.abs(scaled - np.array([PHI, 1.0, 1.0, PHI]))) < 1e-10

    def test_trivial_matrix(self):
        res = sp.perron(am.SparseBooleanMatrix(1, frozenset({(0, 0)})))
        assert res.lam == pytest.approx(1.0, abs=1e-15)
        assert res.v[0] == pytest.approx(1.0, abs=1e-15)

    def test_left_eigen_residual(self, build_cached):
        a = build_cached(4)
        R = am.recurrent_matrix(a)
        res = sp.perron(R)
        dense = np.array(R.to_dense(), dtype=float)
        assert np.max(np.abs(res.v @ dense - res.lam * res.v)) < 10 * sp.DEFAULT_TOL

    def test_non_convergence_raises(self, build_cached):
        with pytest.raises(ConvergenceError) as exc:
            sp.perron(am.recurrent_matrix(build_cached(3)), max_iter=2)
        assert exc.value.residual is not None

    @settings(deadline=None, max_examples=15)
    @given(data=st.data())
    def test_eigenvalue_invariant_under_reordering(self, build_cached, data):
        a = build_cached(4)
        rec = am.recurrent_states(a)
        order = data.draw(st.permutations(rec))
        lam = sp.perron(am.recurrent_matrix(a, list(order))).lam
        base = sp.perron(am.recurrent_matrix(a)).lam
        assert abs(lam - base) < 1e-12


class TestProportions:
    def test_n2_half(self, build_cached):
        a = build_cached(2)
        rep = sp.proportions(a, sp.perron(am.recurrent_matrix(a)))
        assert rep.per_letter == pytest.approx((0.5, 0.5), abs=1e-12)
        # exact value is 1/(2 phi)
        assert abs(rep.p_state_t11 - 1 / (2 * PHI)) < 1e-12

    def test_n9_letter_one(self, build_cached):
        an = sp.analyze(build_cached(9))
        assert abs(an.report.per_letter[0] - 0.2594634699) < 1e-9

    def test_sums_to_one_and_product_identity(self, build_cached):
        for n in (2, 3, 4, 5):
            an = sp.analyze(build_cached(n))
            assert abs(sum(an.report.per_letter) - 1.0) < 1e-10
            assert abs(an.row.p_1 - an.row.lam * an.row.p_a1) < 1e-10

    def test_letter_count_convergence(self, build_cached):
        # exact finite-length fractions approach the spectral proportion;
        # n = 4 mixes at rate lambda_3/lambda_4 ~ 0.87, so it needs k = 120
        # to get below 1e-6 (at k = 60 the gap is still 8.7e-6)
        def gap(a, k, p1):
            per = am.ending_letter_counts(a, k)
            return abs(per[1] / sum(per.values()) - p1)

        for n, k in ((1, 60), (2, 60), (3, 60), (4, 120)):
            a = build_cached(n)
            assert gap(a, k, sp.analyze(a).row.p_1) < 1e-6
        a4 = build_cached(4)
        p1 = sp.analyze(a4).row.p_1
        gaps = [gap(a4, k, p1) for k in (40, 60, 80, 100, 120)]
        assert all(x > y for x, y in zip(gaps, gaps[1:]))


class TestPrimitivity:
    def test_recurrent_matrices_are_primitive(self, build_cached):
        for n in range(1, 10):
            assert sp.primitivity_check(am.recurrent_matrix(build_cached(n)))

    def test_identity_is_not(self):
        ident = am.SparseBooleanMatrix(2, frozenset({(0, 0), (1, 1)}))
        assert not sp.primitivity_check(ident)


class TestResolvent:
    def test_r2_at_two(self, build_cached):
        assert sp.resolvent_nonneg_check(am.recurrent_matrix(build_cached(2)), 2.0)

    def test_zero_matrix(self):
        assert sp.resolvent_nonneg_check(am.SparseBooleanMatrix(1, frozenset()), 1.0)

    def test_r3_just_above_growth_rate(self, build_cached):
        a = build_cached(3)
        lam = sp.perron(am.recurrent_matrix(a)).lam
        assert sp.resolvent_nonneg_check(am.recurrent_matrix(a), lam + 0.1)

    def test_precondition(self, build_cached):
        with pytest.raises(SpectralPreconditionError):
            sp.resolvent_nonneg_check(am.recurrent_matrix(build_cached(2)), 1.0)


class TestBoundReport:
    def test_accepts_good_rows(self, build_cached):
        rows = [sp.analyze(build_cached(n)).row for n in (2, 3, 4)]
        assert sp.bound_report(rows).all_ok

    def test_rejects_small_p1(self):
        rows = [sp.GrowthRow(2, 1.618033988749895, 0.3090169943749474, 0.5),
                sp.GrowthRow(3, 2.086791222781383, 0.05, 0.1)]
        with pytest.raises(BoundViolationError) as exc:
            sp.bound_report(rows)
        assert exc.value.bound == "P_1 > 1/8"
        assert exc.value.n == 3

    def test_rejects_nonincreasing_lambda(self):
        rows = [sp.GrowthRow(2, 2.2, 0.31, 0.682), sp.GrowthRow(3, 2.1, 0.2, 0.42)]
        with pytest.raises(BoundViolationError) as exc:
            sp.bound_report(rows)
        assert exc.value.bound == "lambda strictly increasing"

    def test_rejects_broken_product(self):
        rows = [sp.GrowthRow(2, 1.618033988749895, 0.3090169943749474, 0.51)]
        with pytest.raises(BoundViolationError) as exc:
            sp.bound_report(rows)
        assert exc.value.bound == "P_1 = lambda * P_a1"

    def test_rejects_rate_over_ceiling(self):
        rows = [sp.GrowthRow(2, 3.3, 0.14, 0.462)]
        with pytest.raises(BoundViolationError) as exc:
            sp.bound_report(rows)
        assert "lambda <" in exc.value.bound


class TestCrossConstruction:
    def test_bfs_and_generated_eigenvalues_agree(self, build_cached):
        for n in (2, 4, 6):
            bfs = sp.perron(am.recurrent_matrix(build_cached(n))).lam
            gen = sp.perron(mg.build_R_direct(n)).lam
            assert abs(bfs - gen) < 1e-10
