import math

import numpy as np
import pytest

from jcphase import (
    ModelParams,
    TruncatedDensityMatrix,
    Truncation,
    auto_truncation,
    build_state,
    evolve_numeric,
    full_partial_transpose,
    full_pt_spectrum,
    nppt_witness,
    project_2x3,
)
from jcphase.sweep import state_deviation


def random_case(rng, alpha_max=0.9, t_max=20.0):
    params = ModelParams(lam=rng.uniform(0, 1), alpha=rng.uniform(0, alpha_max))
    return rng.uniform(0, t_max), params, auto_truncation(params.alpha, 1e-10)


class TestEvolveNumeric:
    def test_identity_at_zero_time(self):
        params = ModelParams(lam=0.35, alpha=0.55)
        state = evolve_numeric(0.0, params, Truncation(10))
        p = 0.45 * 0.55 ** np.arange(11)
        expected = np.diag(np.concatenate([0.35 * p, 0.65 * p]))
        assert np.max(np.abs(state.entries - expected)) < 1e-14

    def test_bell_matches_closed_form(self):
        params = ModelParams(lam=1.0, alpha=0.0)
        numeric = evolve_numeric(math.pi / 4, params, Truncation(4))
        closed = build_state(math.pi / 4, params, Truncation(4))
        assert np.max(np.abs(numeric.entries - closed.entries)) < 1e-13

    def test_trace_is_kept_thermal_weight(self):
        params = ModelParams(lam=0.2, alpha=0.8)
        trunc = Truncation(30)
        state = evolve_numeric(9.3, params, trunc)
        assert state.trace() == pytest.approx(1.0 - 0.8**31, abs=1e-13)
        assert np.linalg.eigvalsh(state.entries)[0] >= -1e-12

    def test_two_path_equivalence_fixed_point(self):
        params = ModelParams(lam=0.35, alpha=0.55)
        assert state_deviation(1.7, params, Truncation(50)) < 1e-10

    def test_two_path_equivalence_random(self):
        # closed-form and dense-eigensolve states agree entrywise away from the cut
        rng = np.random.default_rng(42)
        worst = 0.0
        for _ in range(100):
            t, params, trunc = random_case(rng)
            worst = max(worst, state_deviation(t, params, trunc))
        assert worst < 1e-10

    def test_sector_populations_conserved(self):
        params = ModelParams(lam=0.7, alpha=0.5)
        trunc = Truncation(25)
        p = 0.5 * 0.5 ** np.arange(26)
        for t in (0.3, 2.9, 17.0):
            diag = np.real(np.diag(evolve_numeric(t, params, trunc).entries))
            assert diag[26] == pytest.approx(0.3 * p[0], abs=1e-12)  # |g,0>
            sector = diag[:25] + diag[27:]
            expected = 0.7 * p[:25] + 0.3 * p[1:]
            assert np.max(np.abs(sector - expected)) < 1e-12


class TestPartialTranspose:
    def test_diagonal_fixed(self):
        diag = np.diag(np.arange(1.0, 13.0))
        state = TruncatedDensityMatrix(5, diag.astype(complex), 0.0)
        assert np.array_equal(full_partial_transpose(state), diag)

    def test_involution_and_trace_exact(self):
        params = ModelParams(lam=0.45, alpha=0.65)
        state = evolve_numeric(3.2, params, Truncation(14))
        pt = full_partial_transpose(state)
        assert np.trace(pt) == np.trace(state.entries)
        back = full_partial_transpose(TruncatedDensityMatrix(14, pt, 0.0))
        assert np.array_equal(back, state.entries)

    def test_bell_minimum_eigenvalue(self):
        state = build_state(math.pi / 4, ModelParams(lam=1.0, alpha=0.0), Truncation(8))
        assert full_pt_spectrum(state)[0] == pytest.approx(-0.5, abs=1e-14)

    def test_bell_full_spectrum_multiset(self):
        state = build_state(math.pi / 4, ModelParams(lam=1.0, alpha=0.0), Truncation(8))
        spectrum = full_pt_spectrum(state)
        expected = np.zeros(18)
        expected[:4] = (-0.5, 0.5, 0.5, 0.5)
        assert np.max(np.abs(np.sort(spectrum) - np.sort(expected))) < 1e-14

    def test_initial_states_are_ppt(self):
        rng = np.random.default_rng(5)
        for _ in range(10):
            params = ModelParams(lam=rng.uniform(0, 1), alpha=rng.uniform(0, 0.9))
            state = build_state(0.0, params, Truncation(12))
            assert full_pt_spectrum(state)[0] >= -1e-14


class TestProject2x3:
    def test_initial_diagonal_window(self):
        params = ModelParams(lam=0.3, alpha=0.5)
        state = build_state(0.0, params, Truncation(10))
        proj = project_2x3(state, 1)
        p = 0.5 * 0.5 ** np.arange(3)
        raw = np.concatenate([0.3 * p, 0.7 * p])
        assert proj.norm == pytest.approx(raw.sum(), abs=1e-14)
        assert np.max(np.abs(proj.entries - np.diag(raw / raw.sum()))) < 1e-14

    def test_bell_support_is_contained(self):
        state = build_state(math.pi / 4, ModelParams(lam=1.0, alpha=0.0), Truncation(6))
        proj = project_2x3(state, 1)
        assert proj.norm == pytest.approx(1.0, abs=1e-14)
        idx = [state.index(a, m) for a in range(2) for m in (0, 1, 2)]
        assert np.max(np.abs(proj.entries - state.entries[np.ix_(idx, idx)])) < 1e-14

    def test_generic_window_is_a_state(self):
        state = build_state(4.1, ModelParams(lam=0.6, alpha=0.7), Truncation(20))
        proj = project_2x3(state, 3)
        assert np.max(np.abs(proj.entries - proj.entries.conj().T)) < 1e-14
        assert np.linalg.eigvalsh(proj.entries)[0] >= -1e-12
        assert np.real(np.trace(proj.entries)) == pytest.approx(1.0, abs=1e-13)

    def test_rejects_window_outside_basis(self):
        state = build_state(1.0, ModelParams(lam=0.5, alpha=0.5), Truncation(5))
        with pytest.raises(ValueError):
            project_2x3(state, 5)
        with pytest.raises(ValueError):
            project_2x3(state, 0)


class TestNpptWitness:
    def test_initial_state_not_flagged(self):
        state = build_state(0.0, ModelParams(lam=0.5, alpha=0.5), Truncation(10))
        assert nppt_witness(state, 5) is None

    def test_bell_flagged_in_first_window(self):
        state = build_state(math.pi / 4, ModelParams(lam=1.0, alpha=0.0), Truncation(6))
        assert nppt_witness(state, 5) == 1

    def test_matches_full_spectrum_verdict(self):
        rng = np.random.default_rng(99)
        for _ in range(100):
            t, params, trunc = random_case(rng)
            state = build_state(t, params, trunc)
            full_negative = full_pt_spectrum(state)[0] < -1e-12
            witness = nppt_witness(state, trunc.n_max - 1)
            assert full_negative == (witness is not None)
