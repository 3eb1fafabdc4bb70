"""Structure-preserving exponential-Euler steps and the uniform-grid time loop.

Dense states are density matrices (Hermitian, unit trace, PSD), low-rank
states are m x r factors Z with Z Z^dag the represented density matrix
and ||Z||_F = 1.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Sequence

import numpy as np

from .diagnostics import StepDiagnostics
from .linalg import (
    DegenerateInputError,
    LyapunovSolver,
    ToleranceSet,
    as_square,
    expm,
    expm_action,
    hermitize,
    min_eigenvalue,
    truncated_svd,
)
from .model import LindbladModel, effective_drift

__all__ = [
    "Scheme",
    "StepPlan",
    "Trajectory",
    "IntegrationError",
    "RankOverflowError",
    "free_step",
    "std_expeuler_step",
    "lree_step",
    "integrate",
]

# How far a compressed factor's norm may sit from zero before the step
# is declared degenerate; physical factors stay near one.
FACTOR_NORM_FLOOR = 1e-12


class Scheme(str, Enum):
    """Step maps offered by integrate."""

    FREE = "FREE"
    STD = "STD"
    LREE = "LREE"


class IntegrationError(RuntimeError):
    """A step failed; carries the step index and time where it happened."""

    def __init__(self, step: int, time: float, message: str):
        self.step = step
        self.time = time
        super().__init__(f"step {step} at t = {time:.6g} failed: {message}")


class RankOverflowError(RuntimeError):
    """Compressed rank exceeded the configured safety cap."""


@dataclass(frozen=True)
class StepPlan:
    """Uniform grid: N steps of size horizon / N, plus the tolerance bundle."""

    horizon: float
    steps: int
    tolerances: ToleranceSet = ToleranceSet()

    def __post_init__(self):
        if not (np.isfinite(self.horizon) and self.horizon > 0.0):
            raise ValueError(f"horizon must be positive and finite, got {self.horizon}")
        if not (isinstance(self.steps, (int, np.integer)) and self.steps >= 1):
            raise ValueError(f"steps must be an integer >= 1, got {self.steps}")

    @property
    def tau(self) -> float:
        return self.horizon / self.steps

    @property
    def times(self) -> np.ndarray:
        return np.linspace(0.0, self.horizon, self.steps + 1)


@dataclass
class Trajectory:
    """Output of integrate: grid, snapshots, and one diagnostics row per grid point."""

    scheme: Scheme
    times: np.ndarray
    states: list[np.ndarray]
    snapshot_steps: list[int]
    diagnostics: list[StepDiagnostics]

    @property
    def final_state(self) -> np.ndarray:
        return self.states[-1]


def _active_channels(model: LindbladModel) -> list[tuple[float, np.ndarray]]:
    return [(gamma, L) for gamma, L in model.channels if gamma > 0.0]


def _dense_step(
    model: LindbladModel,
    rho: np.ndarray,
    E: np.ndarray,
    solver: LyapunovSolver | None,
    tol: ToleranceSet,
    standard: bool,
) -> np.ndarray:
    """Shared body of the two dense steps; solver is None iff no active channels."""
    M = E @ rho @ E.conj().T
    if solver is None:
        return hermitize(M)
    if standard:
        # source frozen at the step start, then pushed through the flow integral
        S = np.zeros_like(rho)
        for gamma, L in _active_channels(model):
            S += gamma * (L @ rho @ L.conj().T)
        X = solver.solve(E @ S @ E.conj().T - S, tol.lyapunov_residual_tol)
        return hermitize(M + X)
    W = solver.solve(M - rho, tol.lyapunov_residual_tol)
    out = M
    for gamma, L in _active_channels(model):
        out = out + gamma * (L @ W @ L.conj().T)
    return hermitize(out)


def free_step(
    model: LindbladModel,
    rho: np.ndarray,
    t: float,
    tau: float,
    tol: ToleranceSet = ToleranceSet(),
) -> np.ndarray:
    """One positivity- and trace-preserving exponential-Euler step.

    Propagates with E = e^(tau A(t)) and adds the channel correction
    sum_k gamma_k L_k W L_k^dag, where W solves A W + W A^dag =
    E rho E^dag - rho and equals the flow integral
    int_0^tau e^(sA) rho e^(sA^dag) ds.
    """
    rho = as_square(rho, "rho")
    A = effective_drift(model, t)
    E = expm(tau * A, tol.expm_tol)
    solver = LyapunovSolver(A) if _active_channels(model) else None
    return _dense_step(model, rho, E, solver, tol, standard=False)


def std_expeuler_step(
    model: LindbladModel,
    rho: np.ndarray,
    t: float,
    tau: float,
    tol: ToleranceSet = ToleranceSet(),
) -> np.ndarray:
    """One standard exponential-Euler step: positivity-preserving, trace only to O(tau).

    The channel source sum_k gamma_k L_k rho L_k^dag is frozen at the
    step start and pushed through the same flow integral, again via a
    Lyapunov solve.
    """
    rho = as_square(rho, "rho")
    A = effective_drift(model, t)
    E = expm(tau * A, tol.expm_tol)
    solver = LyapunovSolver(A) if _active_channels(model) else None
    return _dense_step(model, rho, E, solver, tol, standard=True)


def lree_step(
    model: LindbladModel,
    factor: np.ndarray,
    t: float,
    tau: float,
    tol: ToleranceSet = ToleranceSet(),
    max_rank: int | None = None,
) -> np.ndarray:
    """One low-rank step: propagate, append channel columns, compress, renormalize.

    The stacked factor [V, sqrt(gamma_1 tau) L_1 V, ...] with
    V = e^(tau A) Z realizes the right-endpoint quadrature of the flow
    integral at rank r (K+1); truncation then discards at most
    compress_tol of squared singular mass and the Frobenius
    renormalization restores unit trace of Z Z^dag.
    """
    Z = np.asarray(factor, dtype=complex)
    if Z.ndim == 1:
        Z = Z[:, None]
    if Z.ndim != 2 or Z.shape[0] != model.dim:
        raise ValueError(f"factor shape {Z.shape} does not match dimension {model.dim}")
    A = effective_drift(model, t)
    V = expm_action(tau * A, Z, tol.expm_tol, dense_threshold=tol.expm_dense_threshold)
    blocks = [V]
    for gamma, L in _active_channels(model):
        blocks.append(np.sqrt(gamma * tau) * (L @ V))
    compressed = truncated_svd(np.hstack(blocks), tol.compress_tol)
    norm = np.linalg.norm(compressed, "fro")
    if norm < FACTOR_NORM_FLOOR:
        raise DegenerateInputError(
            f"compressed factor has norm {norm:.3e}; state collapsed numerically"
        )
    cap = model.dim if max_rank is None else int(max_rank)
    if compressed.shape[1] > cap:
        raise RankOverflowError(
            f"compressed rank {compressed.shape[1]} exceeds the cap {cap}"
        )
    return compressed / norm


def _validate_initial(scheme: Scheme, model: LindbladModel, state0: np.ndarray) -> np.ndarray:
    if scheme is Scheme.LREE:
        Z = np.asarray(state0, dtype=complex)
        if Z.ndim == 1:
            Z = Z[:, None]
        if Z.ndim != 2 or Z.shape[0] != model.dim:
            raise ValueError(f"factor shape {Z.shape} does not match dimension {model.dim}")
        norm = np.linalg.norm(Z, "fro")
        if abs(norm - 1.0) > 1e-6:
            raise ValueError(f"initial factor must have unit Frobenius norm, got {norm:.6f}")
        return Z
    rho = as_square(state0, "state0")
    if rho.shape[0] != model.dim:
        raise ValueError(f"state shape {rho.shape} does not match dimension {model.dim}")
    defect = np.linalg.norm(rho - rho.conj().T, "fro")
    if defect > 1e-12 * max(1.0, np.linalg.norm(rho, "fro")):
        raise ValueError(f"initial state is not Hermitian, defect {defect:.3e}")
    if abs(np.trace(rho).real - 1.0) > 1e-12:
        raise ValueError(f"initial state must have unit trace, got {np.trace(rho).real!r}")
    if min_eigenvalue(hermitize(rho)) < -1e-10:
        raise ValueError("initial state has an eigenvalue below -1e-10")
    return rho


def _diagnostics_row(
    scheme: Scheme, step: int, time: float, state: np.ndarray, indices: Sequence[int]
) -> StepDiagnostics:
    if scheme is Scheme.LREE:
        norm_sq = float(np.linalg.norm(state, "fro") ** 2)
        r = state.shape[1]
        if r < state.shape[0]:
            low = 0.0
        else:
            low = float(np.linalg.eigvalsh(state.conj().T @ state)[0])
        pops = {i: float(np.sum(np.abs(state[i - 1, :]) ** 2)) for i in indices}
        return StepDiagnostics(step, time, norm_sq - 1.0, low, r, pops)
    dev = float(np.trace(state).real - 1.0)
    low = min_eigenvalue(state)
    pops = {i: float(state[i - 1, i - 1].real) for i in indices}
    return StepDiagnostics(step, time, dev, low, None, pops)


def integrate(
    scheme: Scheme | str,
    model: LindbladModel,
    state0: np.ndarray,
    plan: StepPlan,
    observers: Sequence[Callable[[int, float, np.ndarray], None]] = (),
    population_indices: Sequence[int] = (),
    snapshot_stride: int = 0,
    max_rank: int | None = None,
) -> Trajectory:
    """Run plan.steps uniform steps of the chosen scheme.

    Appends a StepDiagnostics row per grid point (including t = 0) and
    calls each observer as observer(step, time, state) after every
    step.  Snapshots always include the initial and final state, plus
    every snapshot_stride-th iterate when the stride is positive.  Step
    failures re-raise as IntegrationError with the step index attached.
    """
    scheme = Scheme(scheme)
    state = _validate_initial(scheme, model, state0)
    tau = plan.tau
    tol = plan.tolerances

    # Static models reuse one drift, exponential, and Schur factorization.
    static = not model.is_time_dependent
    E_cached = None
    solver_cached = None
    if static and scheme is not Scheme.LREE:
        A = effective_drift(model, 0.0)
        E_cached = expm(tau * A, tol.expm_tol)
        solver_cached = LyapunovSolver(A) if _active_channels(model) else None

    times = plan.times
    states = [state.copy()]
    snapshot_steps = [0]
    rows = [_diagnostics_row(scheme, 0, 0.0, state, population_indices)]
    for n in range(1, plan.steps + 1):
        t_prev = times[n - 1]
        try:
            if scheme is Scheme.LREE:
                state = lree_step(model, state, t_prev, tau, tol, max_rank=max_rank)
            elif static:
                state = _dense_step(
                    model, state, E_cached, solver_cached, tol, standard=scheme is Scheme.STD
                )
            elif scheme is Scheme.FREE:
                state = free_step(model, state, t_prev, tau, tol)
            else:
                state = std_expeuler_step(model, state, t_prev, tau, tol)
        except Exception as exc:
            raise IntegrationError(n, t_prev, str(exc)) from exc
        rows.append(_diagnostics_row(scheme, n, times[n], state, population_indices))
        for observer in observers:
            observer(n, times[n], state)
        if n == plan.steps or (snapshot_stride > 0 and n % snapshot_stride == 0):
            states.append(state.copy())
            snapshot_steps.append(n)
    return Trajectory(scheme, times, states, snapshot_steps, rows)
