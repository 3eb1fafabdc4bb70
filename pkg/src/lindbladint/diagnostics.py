"""Scalar diagnostics, convergence fits, and the exponential-action probe."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .linalg import expm, expm_action, trace_norm
from .model import LindbladModel, effective_drift

__all__ = [
    "StepDiagnostics",
    "trace_deviation",
    "relative_error",
    "least_squares_slope",
    "convergence_order",
    "population",
    "expm_constant_probe",
]


@dataclass(frozen=True)
class StepDiagnostics:
    """One per-step output row: invariant checks plus requested populations.

    rank is None for dense schemes; populations maps 1-based diagonal
    indices to their real parts.
    """

    step: int
    time: float
    trace_deviation: float
    min_eig: float
    rank: int | None = None
    populations: dict[int, float] = field(default_factory=dict)


def trace_deviation(rho: np.ndarray) -> float:
    """Signed unit-trace defect Re(Tr rho) - 1."""
    return float(np.trace(np.asarray(rho)).real - 1.0)


def relative_error(state: np.ndarray, reference: np.ndarray) -> float:
    """Trace-norm distance scaled by the reference's trace norm."""
    state = np.asarray(state, dtype=complex)
    reference = np.asarray(reference, dtype=complex)
    if state.shape != reference.shape:
        raise ValueError(f"shape mismatch {state.shape} vs {reference.shape}")
    denom = trace_norm(reference)
    if denom == 0.0:
        raise ValueError("reference has zero trace norm")
    return trace_norm(state - reference) / denom


def least_squares_slope(x: Sequence[float], y: Sequence[float]) -> float:
    """Plain least-squares slope, written out term by term.

    The sequential summation order is part of the output contract so
    that downstream tools can reproduce the value bit for bit.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.size != y.size or x.size < 2:
        raise ValueError("need two sequences of equal length >= 2")
    n = x.size
    x_mean = 0.0
    y_mean = 0.0
    for i in range(n):
        x_mean += x[i]
        y_mean += y[i]
    x_mean /= n
    y_mean /= n
    num = 0.0
    den = 0.0
    for i in range(n):
        num += (x[i] - x_mean) * (y[i] - y_mean)
        den += (x[i] - x_mean) ** 2
    if den == 0.0:
        raise ValueError("slope is undefined for constant x")
    return num / den


def convergence_order(taus: Sequence[float], errors: Sequence[float]) -> float:
    """Observed order: least-squares slope of log10(error) against log10(tau).

    Expects at least three strictly decreasing step sizes and positive
    errors.
    """
    taus = np.asarray(taus, dtype=float)
    errors = np.asarray(errors, dtype=float)
    if taus.size < 3:
        raise ValueError(f"need at least three step sizes, got {taus.size}")
    if not np.all(np.diff(taus) < 0.0):
        raise ValueError("step sizes must be strictly decreasing")
    if np.any(errors <= 0.0) or not np.all(np.isfinite(errors)):
        raise ValueError("errors must be positive and finite")
    return least_squares_slope(np.log10(taus), np.log10(errors))


def population(rho: np.ndarray, index: int) -> float:
    """Diagonal entry Re(rho_ii) at 1-based index."""
    rho = np.asarray(rho)
    m = rho.shape[0]
    if not 1 <= index <= m:
        raise ValueError(f"index {index} outside 1..{m}")
    return float(rho[index - 1, index - 1].real)


def expm_constant_probe(
    model: LindbladModel,
    taus: Sequence[float],
    tols: Sequence[float],
    seed: int = 0,
) -> list[tuple[float, float, float]]:
    """Measured-to-requested error ratio of the tolerance-limited exponential action.

    For each (tau, tol) pair the drift is frozen (at t = 10 tau when the
    Hamiltonian depends on time), a seeded random unit-trace-norm PSD
    matrix is pushed through the exact sandwich e^(tau A) sigma e^(tau A)^dag
    and through the Taylor action limited to tol, and the trace-norm gap
    divided by tol is recorded.  Returns (tau, tol, ratio) rows in sweep
    order.
    """
    taus = [float(t) for t in taus]
    tols = [float(t) for t in tols]
    if not taus or not tols:
        raise ValueError("need at least one tau and one tol")
    if any(t <= 0 for t in taus) or any(t <= 0 for t in tols):
        raise ValueError("taus and tols must be positive")
    m = model.dim
    rng = np.random.Generator(np.random.Philox(seed))
    G = rng.standard_normal((m, m)) + 1j * rng.standard_normal((m, m))
    sigma = G @ G.conj().T
    sigma /= np.trace(sigma).real  # PSD, so trace norm equals trace
    rows = []
    for tau in taus:
        freeze_at = 10.0 * tau if model.is_time_dependent else 0.0
        A = tau * effective_drift(model, freeze_at)
        E = expm(A)
        exact = E @ sigma @ E.conj().T
        for tol in tols:
            # dense_threshold=0 forces the genuinely tolerance-limited path
            half = expm_action(A, sigma, tol, dense_threshold=0)
            approx = expm_action(A, half.conj().T, tol, dense_threshold=0)
            rows.append((tau, tol, trace_norm(exact - approx) / tol))
    return rows
