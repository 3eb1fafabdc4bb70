"""Dense linear-algebra kernels shared by the integrators.

Everything works on plain complex numpy arrays.  Square shape and
finiteness are checked at the public entry points; Hermiticity of
inputs documented as Hermitian is trusted (callers symmetrize where
roundoff matters).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg as sla

__all__ = [
    "ToleranceSet",
    "LyapunovSingularError",
    "DegenerateInputError",
    "LyapunovSolver",
    "expm",
    "expm_action",
    "solve_lyapunov",
    "truncated_svd",
    "trace_norm",
    "hermitian_abs",
    "hermitize",
    "min_eigenvalue",
    "kron",
    "as_square",
]

# expm_action forms the dense exponential below this dimension and
# switches to the matrix-free Taylor recursion above it.
DENSE_ACTION_THRESHOLD = 1024

# Relative threshold on |lam_i + conj(lam_j)| below which the Sylvester
# operator of the Lyapunov equation is treated as singular.
LYAPUNOV_SINGULARITY_RTOL = 1e-14


class LyapunovSingularError(np.linalg.LinAlgError):
    """The Sylvester operator W -> A W + W A^dag is numerically singular."""

    def __init__(self, lam_i: complex, lam_j: complex, threshold: float):
        self.pair = (lam_i, lam_j)
        super().__init__(
            "Lyapunov solve is singular: eigenvalue pair "
            f"({lam_i:.6e}, {lam_j:.6e}) has |lam_i + conj(lam_j)| = "
            f"{abs(lam_i + np.conj(lam_j)):.3e} < {threshold:.3e}"
        )


class DegenerateInputError(ValueError):
    """Input is numerically zero where a nonzero factor is required."""


@dataclass(frozen=True)
class ToleranceSet:
    """Accuracy knobs threaded through the step maps.

    expm_tol bounds the error of the matrix-exponential action,
    compress_tol the discarded singular mass of each low-rank
    truncation, lyapunov_residual_tol the relative residual accepted
    from the Lyapunov solver.
    """

    expm_tol: float = 1e-12
    compress_tol: float = 1e-12
    lyapunov_residual_tol: float = 1e-10
    # 0 forces the tolerance-limited Taylor action even at small sizes,
    # which makes expm_tol an observable knob instead of a formality
    expm_dense_threshold: int = DENSE_ACTION_THRESHOLD

    def __post_init__(self):
        for name in ("expm_tol", "compress_tol", "lyapunov_residual_tol"):
            value = getattr(self, name)
            if not (value > 0.0 and np.isfinite(value)):
                raise ValueError(f"{name} must be positive and finite, got {value}")
        if self.expm_dense_threshold < 0:
            raise ValueError(
                f"expm_dense_threshold must be >= 0, got {self.expm_dense_threshold}"
            )


def as_square(M, name: str = "matrix") -> np.ndarray:
    """Return M as a square complex array, rejecting bad shapes and non-finite entries."""
    M = np.asarray(M, dtype=complex)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise ValueError(f"{name} must be square, got shape {M.shape}")
    if not np.all(np.isfinite(M)):
        raise ValueError(f"{name} contains non-finite entries")
    return M


def hermitize(M: np.ndarray) -> np.ndarray:
    """Nearest Hermitian matrix (M + M^dag) / 2."""
    return 0.5 * (M + M.conj().T)


def expm(A: np.ndarray, tol: float = 1e-12) -> np.ndarray:
    """Matrix exponential by Pade scaling-and-squaring.

    Degree and scaling are picked from norm-based backward-error
    bounds, which in practice deliver close to machine precision; tol
    is honored as an upper bound on the requested accuracy.
    """
    A = as_square(A)
    if not tol > 0.0:
        raise ValueError(f"tol must be positive, got {tol}")
    return sla.expm(A)


def expm_action(
    A: np.ndarray,
    Z: np.ndarray,
    tol: float = 1e-12,
    dense_threshold: int = DENSE_ACTION_THRESHOLD,
) -> np.ndarray:
    """Apply e^A to the columns of Z with error of order tol * ||Z||.

    Below dense_threshold the exponential is formed densely and
    multiplied through; above it a scaled truncated-Taylor recursion
    approximates the action without ever forming e^A, summing terms
    until two consecutive ones drop below the requested tolerance.
    """
    A = as_square(A)
    Z = np.asarray(Z, dtype=complex)
    if Z.ndim == 1:
        Z = Z[:, None]
    if Z.ndim != 2 or Z.shape[0] != A.shape[0]:
        raise ValueError(f"factor shape {Z.shape} incompatible with {A.shape}")
    if not tol > 0.0:
        raise ValueError(f"tol must be positive, got {tol}")
    if A.shape[0] <= dense_threshold:
        return expm(A, tol) @ Z
    return _taylor_action(A, Z, tol)


def _taylor_action(A: np.ndarray, Z: np.ndarray, tol: float) -> np.ndarray:
    """Truncated-Taylor approximation of e^A Z, split so each factor stays mild."""
    # e^A = (e^{A/s})^s with s chosen so the factor's series converges fast.
    s = max(1, int(np.ceil(np.linalg.norm(A, 1))))
    per_factor_tol = tol / s
    F = Z.copy()
    for _ in range(s):
        F = _taylor_factor(A, s, F, per_factor_tol)
    return F


def _taylor_factor(A: np.ndarray, s: int, B: np.ndarray, tol: float) -> np.ndarray:
    F = B.copy()
    term = B
    previous = np.inf
    for j in range(1, 128):
        term = A @ term / (s * j)
        F += term
        current = np.linalg.norm(term, "fro")
        # two consecutive small terms guard against even/odd cancellation
        if previous + current <= tol * np.linalg.norm(F, "fro"):
            break
        previous = current
    return F


class LyapunovSolver:
    """Reusable solver for A W + W A^dag = C with a fixed coefficient A.

    One complex Schur factorization at construction, then each solve is
    a column-wise back-substitution in the triangular frame.  Raises
    LyapunovSingularError when an eigenvalue pair makes the Sylvester
    operator singular at the 1e-14 * ||A|| level.
    """

    def __init__(self, A: np.ndarray):
        A = as_square(A)
        self.A = A
        self.T, self.Q = sla.schur(A, output="complex")
        lam = np.diag(self.T)
        threshold = LYAPUNOV_SINGULARITY_RTOL * np.linalg.norm(A, "fro")
        gaps = np.abs(lam[:, None] + np.conj(lam)[None, :])
        bad = np.argwhere(gaps < threshold)
        if bad.size:
            i, j = bad[0]
            raise LyapunovSingularError(lam[i], lam[j], threshold)
        self.lam = lam

    def solve(self, C: np.ndarray, residual_tol: float = 1e-10) -> np.ndarray:
        """Return the Hermitian solution for a Hermitian right-hand side C."""
        C = as_square(C)
        m = C.shape[0]
        if m != self.A.shape[0]:
            raise ValueError(f"right-hand side shape {C.shape} does not match {self.A.shape}")
        T, Q, lam = self.T, self.Q, self.lam
        Ct = Q.conj().T @ C @ Q
        W = np.zeros_like(Ct)
        eye = np.eye(m)
        # T W + W T^dag = Ct, solved column by column from the last:
        # (T + conj(lam_j) I) w_j = ct_j - sum_{k>j} w_k conj(T_{jk})
        for j in range(m - 1, -1, -1):
            rhs = Ct[:, j]
            if j < m - 1:
                rhs = rhs - W[:, j + 1 :] @ np.conj(T[j, j + 1 :])
            W[:, j] = sla.solve_triangular(T + np.conj(lam[j]) * eye, rhs)
        W = Q @ W @ Q.conj().T
        residual = np.linalg.norm(self.A @ W + W @ self.A.conj().T - C, "fro")
        if residual > residual_tol * np.linalg.norm(C, "fro"):
            raise np.linalg.LinAlgError(
                f"Lyapunov residual {residual:.3e} exceeds "
                f"{residual_tol:.1e} * ||C||; the equation is too ill-conditioned"
            )
        return hermitize(W)


def solve_lyapunov(A: np.ndarray, C: np.ndarray, residual_tol: float = 1e-10) -> np.ndarray:
    """Solve A W + W A^dag = C for Hermitian W (C Hermitian)."""
    return LyapunovSolver(A).solve(C, residual_tol=residual_tol)


def truncated_svd(Z: np.ndarray, tol2: float) -> np.ndarray:
    """Left factor of the truncated SVD, keeping the smallest rank whose
    discarded mass satisfies sum_{j>r} sigma_j^2 <= tol2.

    The returned factor is U_r diag(sigma_1..sigma_r), so the induced
    Gram matrix obeys ||Z Z^dag - Zh Zh^dag||_1 <= tol2 exactly.  At
    least one column is always kept.
    """
    Z = np.asarray(Z, dtype=complex)
    if Z.ndim == 1:
        Z = Z[:, None]
    if Z.ndim != 2:
        raise ValueError(f"expected a matrix, got shape {Z.shape}")
    if not np.all(np.isfinite(Z)):
        raise ValueError("factor contains non-finite entries")
    if tol2 < 0.0:
        raise ValueError(f"tol2 must be nonnegative, got {tol2}")
    if not np.any(Z):
        raise DegenerateInputError("all-zero factor cannot be truncated")
    U, sigma, _ = np.linalg.svd(Z, full_matrices=False)
    energy = sigma**2
    # tail[k] = sum of energies strictly after index k; argmax finds the
    # first k meeting the bound, and tail[-1] = 0 guarantees a hit.
    tail = np.append(np.cumsum(energy[::-1])[::-1], 0.0)[1:]
    r = int(np.argmax(tail <= tol2)) + 1
    return U[:, :r] * sigma[:r]


def trace_norm(M: np.ndarray) -> float:
    """Schatten-1 norm, the sum of singular values."""
    M = np.asarray(M, dtype=complex)
    return float(np.sum(np.linalg.svd(M, compute_uv=False)))


def hermitian_abs(M: np.ndarray) -> np.ndarray:
    """Operator absolute value |M| = sqrt(M^dag M) of a Hermitian matrix."""
    M = as_square(M)
    w, V = np.linalg.eigh(M)
    return (V * np.abs(w)) @ V.conj().T


def min_eigenvalue(M: np.ndarray) -> float:
    """Smallest eigenvalue of a Hermitian matrix."""
    return float(np.linalg.eigvalsh(as_square(M))[0])


def kron(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """Kronecker product, thin wrapper kept for a uniform namespace."""
    return np.kron(A, B)
