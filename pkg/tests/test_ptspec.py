import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from jcphase import (
    ModelParams,
    Truncation,
    auto_truncation,
    build_state,
    envelope_upper_bound,
    envelope_upper_bound_at,
    evolve_numeric,
    full_partial_transpose,
    full_pt_spectrum,
    log_negativity,
    max_log_negativity,
    negativity_tail_bound,
    pt_block,
    pt_spectrum,
    standalone_eigenvalue,
)
from jcphase.sweep import spectrum_deviation


class TestPTBlock:
    def test_initial_entries(self):
        blk = pt_block(1, 0.0, ModelParams(lam=0.3, alpha=0.5))
        assert blk.a_entry == pytest.approx(0.0375, abs=1e-15)
        assert blk.b_entry == pytest.approx(0.175, abs=1e-15)
        assert blk.c_entry == 0j

    def test_coherence_free_line(self):
        alpha = 0.37
        params = ModelParams(lam=alpha / (1 + alpha), alpha=alpha)
        for t in (0.2, 1.1, 8.5):
            assert abs(pt_block(0, t, params).c_entry) < 1e-16

    def test_eigenvalues_appear_in_dense_spectrum(self):
        params = ModelParams(lam=0.6, alpha=0.4)
        trunc = auto_truncation(0.4, 1e-10)
        blk = pt_block(2, 0.9, params)
        dense = full_pt_spectrum(evolve_numeric(0.9, params, trunc))
        for eig in (blk.eig_plus, blk.eig_minus):
            assert np.min(np.abs(dense - eig)) < 1e-10

    @settings(max_examples=150, deadline=None)
    @given(
        n=st.integers(min_value=0, max_value=40),
        t=st.floats(min_value=0.0, max_value=30.0),
        lam=st.floats(min_value=0.0, max_value=1.0),
        alpha=st.floats(min_value=0.0, max_value=0.95),
    )
    def test_block_identities(self, n, t, lam, alpha):
        blk = pt_block(n, t, ModelParams(lam=lam, alpha=alpha))
        assert blk.a_entry >= 0.0 and blk.b_entry >= 0.0
        assert blk.c_entry.real == 0.0
        assert blk.eig_plus >= blk.eig_minus
        assert blk.eig_plus >= 0.0
        trace = blk.a_entry + blk.b_entry
        det = blk.a_entry * blk.b_entry - abs(blk.c_entry) ** 2
        assert blk.eig_plus + blk.eig_minus == pytest.approx(trace, abs=1e-14)
        assert blk.eig_plus * blk.eig_minus == pytest.approx(det, abs=1e-14)


class TestStandalone:
    def test_initial_value(self):
        assert standalone_eigenvalue(0.0, ModelParams(lam=0.3, alpha=0.6)) == pytest.approx(
            0.4 * 0.3, abs=1e-15
        )

    def test_zero_crossing_for_pure_cold_state(self):
        assert standalone_eigenvalue(math.pi / 2, ModelParams(lam=1.0, alpha=0.0)) == pytest.approx(
            0.0, abs=1e-15
        )

    def test_matches_dense_matrix_element(self):
        params = ModelParams(lam=0.25, alpha=0.6)
        trunc = auto_truncation(0.6, 1e-10)
        pt = full_partial_transpose(build_state(0.37, params, trunc))
        assert standalone_eigenvalue(0.37, params) == pytest.approx(pt[0, 0].real, abs=1e-12)

    def test_never_negative(self):
        rng = np.random.default_rng(3)
        for _ in range(50):
            params = ModelParams(lam=rng.uniform(0, 1), alpha=rng.uniform(0, 0.99))
            assert standalone_eigenvalue(rng.uniform(0, 40), params) >= 0.0


class TestPTSpectrum:
    def test_initial_product_state_is_ppt(self):
        spec = pt_spectrum(0.0, ModelParams(lam=0.5, alpha=0.5), Truncation(30))
        assert spec.eigenvalues()[0] >= -1e-14

    def test_bell_single_negative_eigenvalue(self):
        spec = pt_spectrum(math.pi / 4, ModelParams(lam=1.0, alpha=0.0), Truncation(8))
        ev = spec.eigenvalues()
        negatives = ev[ev < -1e-12]
        assert negatives.shape == (1,)
        assert negatives[0] == pytest.approx(-0.5, abs=1e-14)

    def test_matches_dense_solve(self):
        params = ModelParams(lam=0.8, alpha=0.3)
        assert spectrum_deviation(2.1, params, auto_truncation(0.3, 1e-10)) < 1e-10

    def test_matches_dense_solve_random(self):
        rng = np.random.default_rng(17)
        for _ in range(20):
            params = ModelParams(lam=rng.uniform(0, 1), alpha=rng.uniform(0, 0.9))
            trunc = auto_truncation(params.alpha, 1e-10)
            assert spectrum_deviation(rng.uniform(0, 20), params, trunc) < 1e-10

    def test_eigenvalue_sum_matches_dense_trace(self):
        # all represented PT eigenvalues plus the unpaired edge diagonal add up
        # to the truncated trace, cross-checked against the dense path
        params = ModelParams(lam=0.45, alpha=0.7)
        trunc = auto_truncation(0.7, 1e-10)
        t = 3.3
        spec = pt_spectrum(t, params, trunc)
        edge = pt_block(trunc.n_max, t, params).b_entry
        dense = full_pt_spectrum(evolve_numeric(t, params, trunc))
        assert spec.eigenvalues().sum() + edge == pytest.approx(dense.sum(), abs=1e-10)


class TestLogNegativity:
    def test_zero_at_start(self):
        assert log_negativity(0.0, ModelParams(lam=0.7, alpha=0.4), Truncation(20)) == 0.0

    def test_bell_unit_value(self):
        params = ModelParams(lam=1.0, alpha=0.0)
        assert log_negativity(math.pi / 4, params, Truncation(8)) == pytest.approx(1.0, abs=1e-14)

    def test_matches_dense_trace_norm(self):
        params = ModelParams(lam=0.9, alpha=0.5)
        trunc = Truncation(45)
        t = 1.0
        dense = full_pt_spectrum(evolve_numeric(t, params, trunc))
        dense_log_neg = math.log2(1.0 - 2.0 * dense[dense < 0.0].sum())
        analytic = log_negativity(t, params, trunc)
        tail = negativity_tail_bound(params, trunc.n_max)
        assert abs(analytic - dense_log_neg) <= tail + 1e-9

    def test_tail_shrinks_with_truncation(self):
        params = ModelParams(lam=0.85, alpha=0.6)
        trunc = Truncation(20)
        double = Truncation(40)
        tail = negativity_tail_bound(params, trunc.n_max)
        for t in (0.7, 4.4, 13.0):
            gap = abs(log_negativity(t, params, double) - log_negativity(t, params, trunc))
            assert gap <= math.log2(1.0 + 2.0 * tail)


class TestMaxLogNegativity:
    def test_bell_benchmark(self):
        params = ModelParams(lam=1.0, alpha=0.0)
        series = max_log_negativity(params, Truncation(8), horizon=5.0, coarse_steps=500)
        assert series.value_max == pytest.approx(1.0, abs=1e-6)
        assert series.t_max == pytest.approx(math.pi / 4, abs=1e-5)
        assert series.value_max >= series.log_neg.max()
        assert np.all(series.log_neg >= 0.0)

    def test_coherence_free_line_stays_zero(self):
        alpha = 0.5
        params = ModelParams(lam=alpha / (1 + alpha), alpha=alpha)
        series = max_log_negativity(params, auto_truncation(alpha, 1e-10), horizon=50.0)
        assert series.value_max == 0.0
        assert series.t_max == 0.0

    def test_dominated_by_envelope(self):
        params = ModelParams(lam=0.9, alpha=0.5)
        series = max_log_negativity(
            params, auto_truncation(0.5, 1e-10), horizon=50.0, coarse_steps=2000
        )
        assert series.value_max <= envelope_upper_bound(params) + 1e-9

    def test_rejects_bad_arguments(self):
        params = ModelParams(lam=0.5, alpha=0.5)
        with pytest.raises(ValueError):
            max_log_negativity(params, Truncation(10), horizon=0.0)
        with pytest.raises(ValueError):
            max_log_negativity(params, Truncation(10), coarse_steps=50)


class TestEnvelopeBound:
    def test_hot_limit_values(self):
        assert envelope_upper_bound_at(1.0, 0.5) == 0.0
        assert envelope_upper_bound_at(1.0, 0.0) == pytest.approx(1.0, abs=1e-15)
        assert envelope_upper_bound_at(1.0, 7 / 8) == pytest.approx(math.log2(1.5), abs=1e-15)

    def test_hot_limit_piecewise_form(self):
        for lam in np.linspace(0.0, 1.0, 1000):
            bound = envelope_upper_bound_at(1.0, float(lam))
            if lam <= 0.25:
                expected = math.log2(2.0 - 4.0 * lam)
            elif lam >= 0.75:
                expected = math.log2(4.0 * lam - 2.0)
            else:
                expected = 0.0
            assert abs(bound - expected) < 1e-12

    def test_params_wrapper(self):
        params = ModelParams(lam=0.1, alpha=0.9)
        assert envelope_upper_bound(params) == envelope_upper_bound_at(0.9, 0.1)

    def test_coherence_free_line_is_zero(self):
        for alpha in (0.2, 0.5, 0.9):
            assert envelope_upper_bound_at(alpha, alpha / (1 + alpha)) == pytest.approx(
                0.0, abs=1e-15
            )
