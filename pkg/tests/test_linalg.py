"""Kernel tests: frozen closed-form values plus the documented invariants."""

import numpy as np
import pytest
from numpy.testing import assert_allclose

from lindbladint.linalg import (
    DegenerateInputError,
    LyapunovSingularError,
    ToleranceSet,
    expm,
    expm_action,
    hermitian_abs,
    hermitize,
    kron,
    min_eigenvalue,
    solve_lyapunov,
    trace_norm,
    truncated_svd,
)

from conftest import make_rng, random_complex, random_hermitian, random_model


class TestExpm:
    def test_zero_matrix_gives_identity(self):
        assert_allclose(expm(np.zeros((3, 3))), np.eye(3), atol=1e-15)

    def test_diagonal_closed_form(self):
        A = np.diag([np.log(2.0), np.log(3.0)])
        assert_allclose(expm(A), np.diag([2.0, 3.0]), rtol=1e-14)

    def test_nilpotent_closed_form(self):
        """The series terminates: e^A = I + A for strictly upper triangular 2x2 A."""
        A = np.array([[0.0, 1.0], [0.0, 0.0]])
        assert_allclose(expm(A), np.eye(2) + A, atol=1e-15)

    @pytest.mark.parametrize("seed", [0, 1, 2])
    def test_commuting_product_property(self, seed):
        rng = make_rng(seed)
        A = np.diag(random_complex(1, 4, rng)[0])
        B = np.diag(random_complex(1, 4, rng)[0])
        assert_allclose(expm(A + B), expm(A) @ expm(B), atol=1e-10)

    def test_rejects_bad_inputs(self):
        with pytest.raises(ValueError):
            expm(np.zeros((2, 3)))
        with pytest.raises(ValueError):
            expm(np.zeros((2, 2)), tol=0.0)
        with pytest.raises(ValueError):
            expm(np.array([[np.inf, 0], [0, 0]]))


class TestExpmAction:
    def test_dense_path_matches_expm(self):
        rng = make_rng(3)
        A = random_complex(6, 6, rng)
        Z = random_complex(6, 2, rng)
        assert_allclose(expm_action(A, Z), expm(A) @ Z, atol=1e-13)

    @pytest.mark.parametrize("seed", [0, 1])
    def test_taylor_path_error_tracks_tolerance(self, seed):
        """The matrix-free path must be genuinely tolerance-limited: loose
        tolerances give visibly larger, but still bounded, errors."""
        rng = make_rng(seed)
        A = random_complex(12, 12, rng)
        A *= 3.0 / np.linalg.norm(A, 2)
        Z = random_complex(12, 3, rng)
        exact = expm(A) @ Z
        scale = np.linalg.norm(Z, "fro")
        errors = {}
        for tol in (1e-4, 1e-8):
            approx = expm_action(A, Z, tol, dense_threshold=0)
            errors[tol] = np.linalg.norm(approx - exact, "fro")
            assert errors[tol] <= 10.0 * tol * scale
        assert errors[1e-4] > errors[1e-8]
        assert errors[1e-4] > 1e-12 * scale  # truncated, not machine precision

    def test_vector_input_is_promoted(self):
        A = np.diag([1.0, 2.0])
        out = expm_action(A, np.array([1.0, 1.0]))
        assert out.shape == (2, 1)
        assert_allclose(out[:, 0], [np.e, np.e**2], rtol=1e-13)

    def test_shape_mismatch_rejected(self):
        with pytest.raises(ValueError):
            expm_action(np.eye(2), np.ones((3, 1)))


class TestSolveLyapunov:
    def test_scalar_closed_form(self):
        # -w - w = 4  =>  w = -2
        W = solve_lyapunov(np.array([[-1.0]]), np.array([[4.0]]))
        assert_allclose(W, [[-2.0]], atol=1e-14)

    def test_diagonal_closed_form(self):
        # W_ij = C_ij / (lam_i + conj(lam_j)) for diagonal A
        A = np.diag([-1.0, -2.0])
        C = np.array([[2.0, 3.0], [3.0, 4.0]])
        assert_allclose(solve_lyapunov(A, C), -np.ones((2, 2)), atol=1e-13)

    @pytest.mark.parametrize("seed", [0, 1, 2])
    def test_complex_diagonal_against_closed_form(self, seed):
        """Independent oracle: for diagonal A the solution is entrywise
        C_ij / (lam_i + conj(lam_j))."""
        rng = make_rng(seed)
        lam = -rng.uniform(0.5, 2.0, size=5) + 1j * rng.standard_normal(5)
        C = random_hermitian(5, seed + 100)
        expected = C / (lam[:, None] + np.conj(lam)[None, :])
        assert_allclose(solve_lyapunov(np.diag(lam), C), expected, atol=1e-12)

    @pytest.mark.parametrize("seed", [0, 1, 2, 3])
    def test_residual_and_hermitian_output(self, seed):
        from lindbladint.model import effective_drift

        model = random_model(7, seed, channels=2)
        A = effective_drift(model)
        C = random_hermitian(7, seed + 10)
        W = solve_lyapunov(A, C)
        residual = np.linalg.norm(A @ W + W @ A.conj().T - C, "fro")
        assert residual <= 1e-10 * np.linalg.norm(C, "fro")
        assert np.linalg.norm(W - W.conj().T, "fro") == 0.0

    def test_singular_pair_raises_with_pair(self):
        # skew-Hermitian coefficient: lam + conj(lam) = 0 for every eigenvalue
        A = np.array([[0.0, 1.0], [-1.0, 0.0]])
        with pytest.raises(LyapunovSingularError) as excinfo:
            solve_lyapunov(A, np.eye(2))
        assert len(excinfo.value.pair) == 2

    def test_shape_mismatch_rejected(self):
        with pytest.raises(ValueError):
            solve_lyapunov(-np.eye(2), np.eye(3))


class TestTruncatedSvd:
    def test_keeps_dominant_column(self):
        # discarding the sigma = 1 column leaves mass 1 <= 1.5
        Zh = truncated_svd(np.diag([2.0, 1.0]), tol2=1.5)
        assert Zh.shape == (2, 1)
        assert_allclose(Zh @ Zh.conj().T, np.diag([4.0, 0.0]), atol=1e-14)

    def test_keeps_full_factor_when_tolerance_is_tight(self):
        Zh = truncated_svd(np.diag([2.0, 1.0]), tol2=0.5)
        assert Zh.shape == (2, 2)
        assert_allclose(Zh @ Zh.conj().T, np.diag([4.0, 1.0]), atol=1e-14)

    @pytest.mark.parametrize("seed", [0, 1, 2, 3, 4])
    @pytest.mark.parametrize("tol2", [1e-8, 1e-3, 0.5])
    def test_discarded_mass_bound_and_minimality(self, seed, tol2):
        rng = make_rng(seed)
        Z = random_complex(8, 6, rng) @ np.diag(0.5 ** np.arange(6))
        Zh = truncated_svd(Z, tol2)
        gap = trace_norm(Z @ Z.conj().T - Zh @ Zh.conj().T)
        assert gap <= tol2 + 1e-12
        r = Zh.shape[1]
        if r > 1:
            sigma = np.linalg.svd(Z, compute_uv=False)
            assert np.sum(sigma[r - 1 :] ** 2) > tol2  # one column fewer would violate
        assert r >= 1

    def test_always_keeps_one_column(self):
        Zh = truncated_svd(np.diag([1e-8, 1e-9]), tol2=1.0)
        assert Zh.shape[1] == 1

    def test_degenerate_and_invalid_inputs(self):
        with pytest.raises(DegenerateInputError):
            truncated_svd(np.zeros((3, 2)), 1e-3)
        with pytest.raises(ValueError):
            truncated_svd(np.eye(2), -1.0)


class TestHermitianHelpers:
    def test_trace_norm_of_sign_indefinite_diagonal(self):
        assert trace_norm(np.diag([3.0, -2.0])) == pytest.approx(5.0, abs=1e-14)

    @pytest.mark.parametrize("seed", [0, 1, 2])
    def test_trace_norm_matches_eigenvalue_sum_for_hermitian(self, seed):
        M = random_hermitian(6, seed)
        assert trace_norm(M) == pytest.approx(np.sum(np.abs(np.linalg.eigvalsh(M))), rel=1e-13)

    def test_hermitian_abs_flips_negative_branch(self):
        assert_allclose(hermitian_abs(np.diag([3.0, -2.0])), np.diag([3.0, 2.0]), atol=1e-14)

    @pytest.mark.parametrize("seed", [0, 1])
    def test_hermitian_abs_fixes_psd_input(self, seed):
        rng = make_rng(seed)
        G = random_complex(5, 5, rng)
        P = G @ G.conj().T
        assert_allclose(hermitian_abs(P), P, atol=1e-13 * np.linalg.norm(P))
        assert trace_norm(random_hermitian(5, seed)) == pytest.approx(
            np.trace(hermitian_abs(random_hermitian(5, seed))).real, rel=1e-12
        )

    def test_hermitize_and_min_eigenvalue(self):
        M = np.array([[1.0, 2.0], [0.0, 1.0]])
        H = hermitize(M)
        assert np.linalg.norm(H - H.conj().T) == 0.0
        assert min_eigenvalue(np.array([[0.0, 0.5], [0.5, 0.0]])) == pytest.approx(-0.5, abs=1e-14)

    @pytest.mark.parametrize("seed", [0, 1])
    def test_kron_mixed_product_property(self, seed):
        rng = make_rng(seed)
        A, B, C, D = (random_complex(3, 3, rng) for _ in range(4))
        assert_allclose(kron(A, B) @ kron(C, D), kron(A @ C, B @ D), atol=1e-12)


class TestToleranceSet:
    def test_defaults_are_positive(self):
        tol = ToleranceSet()
        assert tol.expm_tol > 0 and tol.compress_tol > 0 and tol.lyapunov_residual_tol > 0

    @pytest.mark.parametrize("bad", [0.0, -1e-3, np.nan, np.inf])
    def test_rejects_nonpositive_values(self, bad):
        with pytest.raises(ValueError):
            ToleranceSet(expm_tol=bad)
