"""Model containers and the coupled-qudit chain builders used in the experiments."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .linalg import as_square, kron

__all__ = [
    "LindbladModel",
    "QuditChainSpec",
    "COUPLING_SCHEDULES",
    "effective_drift",
    "qudit_jx",
    "qudit_jz",
    "lift_site_operator",
    "ising_chain_hamiltonian",
    "ghz_state",
    "perturbed_lowrank_state",
    "random_jump_operator",
    "chain_model",
]

# Relative Frobenius defect accepted when spot-checking Hermiticity.
HERMITICITY_TOL = 1e-12


@dataclass
class LindbladModel:
    """Data of a Lindblad generator: Hamiltonian plus weighted jump channels.

    hamiltonian is a static matrix or a callable t -> matrix; channels
    is a sequence of (gamma_k, L_k) pairs with gamma_k >= 0.  The
    Hamiltonian is spot-checked for Hermiticity at construction, the
    channel part -1/2 sum_k gamma_k L_k^dag L_k of the drift is cached.
    """

    hamiltonian: np.ndarray | Callable[[float], np.ndarray]
    channels: Sequence[tuple[float, np.ndarray]] = ()
    dim: int = field(init=False)
    dissipative_drift: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        if callable(self.hamiltonian):
            H0 = as_square(self.hamiltonian(0.0), "hamiltonian(0)")
            samples = [H0, as_square(self.hamiltonian(0.618), "hamiltonian(0.618)")]
        else:
            self.hamiltonian = as_square(self.hamiltonian, "hamiltonian")
            H0 = self.hamiltonian
            samples = [H0]
        m = H0.shape[0]
        for H in samples:
            defect = np.linalg.norm(H - H.conj().T, "fro")
            if defect > HERMITICITY_TOL * max(1.0, np.linalg.norm(H, "fro")):
                raise ValueError(f"hamiltonian is not Hermitian, defect {defect:.3e}")
        checked = []
        drift = np.zeros((m, m), dtype=complex)
        for k, (gamma, L) in enumerate(self.channels):
            gamma = float(gamma)
            if not (np.isfinite(gamma) and gamma >= 0.0):
                raise ValueError(f"channel {k}: rate must be finite and >= 0, got {gamma}")
            L = as_square(L, f"jump operator {k}")
            if L.shape[0] != m:
                raise ValueError(
                    f"jump operator {k} has shape {L.shape}, expected ({m}, {m})"
                )
            checked.append((gamma, L))
            drift -= 0.5 * gamma * (L.conj().T @ L)
        self.channels = tuple(checked)
        self.dim = m
        self.dissipative_drift = drift

    @property
    def is_time_dependent(self) -> bool:
        return callable(self.hamiltonian)

    def hamiltonian_at(self, t: float) -> np.ndarray:
        if callable(self.hamiltonian):
            return np.asarray(self.hamiltonian(t), dtype=complex)
        return self.hamiltonian


def effective_drift(model: LindbladModel, t: float = 0.0) -> np.ndarray:
    """Drift A(t) = -i H(t) - 1/2 sum_k gamma_k L_k^dag L_k of the rewritten generator."""
    return -1j * model.hamiltonian_at(t) + model.dissipative_drift


def qudit_jx(d: int) -> np.ndarray:
    """Collective-spin x operator of a d-level system (spin (d-1)/2), real symmetric."""
    if d < 2:
        raise ValueError(f"need at least two levels, got {d}")
    off = 0.5 * np.sqrt(np.arange(1, d) * np.arange(d - 1, 0, -1.0))
    J = np.zeros((d, d))
    idx = np.arange(d - 1)
    J[idx, idx + 1] = off
    J[idx + 1, idx] = off
    return J


def qudit_jz(d: int) -> np.ndarray:
    """Collective-spin z operator, diag((d-1)/2, (d-3)/2, ..., (1-d)/2)."""
    if d < 2:
        raise ValueError(f"need at least two levels, got {d}")
    return np.diag((d - 1) / 2.0 - np.arange(d))


def lift_site_operator(op: np.ndarray, site: int, num_sites: int) -> np.ndarray:
    """Embed a single-site operator at 1-based position site of a uniform chain."""
    op = np.asarray(op)
    d = op.shape[0]
    if not 1 <= site <= num_sites:
        raise ValueError(f"site {site} outside 1..{num_sites}")
    return kron(kron(np.eye(d ** (site - 1)), op), np.eye(d ** (num_sites - site)))


# Named x-x coupling weight schedules; "constant" is the only one that
# uses the chain's coupling_strength parameter.
COUPLING_SCHEDULES: dict[str, Callable[[float], float]] = {
    "quarter_power": lambda t: (1.0 + t) ** 0.25,
    "exp_decay": lambda t: np.exp(-t),
    "sine": lambda t: np.sin(2.0 * np.pi * t),
    "fast_sine": lambda t: 10.0 * np.sin(10.0 * np.pi * t),
}

TOPOLOGIES = ("all_pairs", "nearest_neighbor")


@dataclass(frozen=True)
class QuditChainSpec:
    """Parameters of the coupled-qudit chain Hamiltonian.

    Each site carries linear_z * Jz + quadratic_z * Jz^2; sites are
    coupled through Jx Jx terms whose weight follows the named schedule
    over every pair or only adjacent ones.
    """

    levels: int
    sites: int
    linear_z: float = 0.0
    quadratic_z: float = 0.0
    schedule: str = "constant"
    coupling_strength: float = 1.0
    topology: str = "all_pairs"

    def __post_init__(self):
        if self.levels < 2:
            raise ValueError(f"levels must be >= 2, got {self.levels}")
        if self.sites < 1:
            raise ValueError(f"sites must be >= 1, got {self.sites}")
        if self.schedule != "constant" and self.schedule not in COUPLING_SCHEDULES:
            known = ["constant", *COUPLING_SCHEDULES]
            raise ValueError(f"unknown schedule {self.schedule!r}, expected one of {known}")
        if self.topology not in TOPOLOGIES:
            raise ValueError(f"unknown topology {self.topology!r}, expected one of {TOPOLOGIES}")

    @property
    def dim(self) -> int:
        return self.levels**self.sites


def ising_chain_hamiltonian(spec: QuditChainSpec) -> np.ndarray | Callable[[float], np.ndarray]:
    """Chain Hamiltonian from a QuditChainSpec.

    Returns a static matrix for the constant schedule and a callable
    t -> matrix otherwise; the time dependence enters only through the
    scalar coupling weight, so the pair sum is assembled once.
    """
    jx = qudit_jx(spec.levels)
    jz = qudit_jz(spec.levels)
    m = spec.dim
    drift = np.zeros((m, m))
    for k in range(1, spec.sites + 1):
        drift += spec.linear_z * lift_site_operator(jz, k, spec.sites)
        drift += spec.quadratic_z * lift_site_operator(jz @ jz, k, spec.sites)
    pair_sum = np.zeros((m, m))
    for k in range(1, spec.sites + 1):
        for l in range(k + 1, spec.sites + 1):
            if spec.topology == "nearest_neighbor" and l != k + 1:
                continue
            pair_sum += lift_site_operator(jx, k, spec.sites) @ lift_site_operator(
                jx, l, spec.sites
            )
    if spec.schedule == "constant":
        return drift + spec.coupling_strength * pair_sum
    weight = COUPLING_SCHEDULES[spec.schedule]

    def hamiltonian(t: float) -> np.ndarray:
        return drift + weight(t) * pair_sum

    return hamiltonian


def ghz_state(d: int, num_sites: int) -> tuple[np.ndarray, np.ndarray]:
    """GHZ density matrix of a d-level chain and its rank-1 factor.

    The density matrix carries 1/2 at the four corners; the factor is
    the unit column with 1/sqrt(2) at the first and last entries.
    """
    if d < 2 or num_sites < 1:
        raise ValueError(f"need d >= 2 and num_sites >= 1, got d={d}, num_sites={num_sites}")
    m = d**num_sites
    rho = np.zeros((m, m))
    for i in (0, m - 1):
        for j in (0, m - 1):
            rho[i, j] = 0.5
    factor = np.zeros((m, 1))
    factor[0, 0] = factor[m - 1, 0] = 1.0 / np.sqrt(2.0)
    return rho, factor


def perturbed_lowrank_state(m: int, delta: float, seed: int = 0) -> tuple[np.ndarray, np.ndarray]:
    """Random pure state mixed with a second direction at weight delta/2.

    Orthonormal directions come from the SVD of a seeded random m x 2
    real matrix.  The returned rank-1 factor spans the dominant
    direction only, so the density matrix sits exactly delta away from
    the factor's Gram matrix in trace norm.
    """
    if m < 2:
        raise ValueError(f"need m >= 2, got {m}")
    if not 0.0 <= delta <= 1.0:
        raise ValueError(f"delta must lie in [0, 1], got {delta}")
    rng = np.random.Generator(np.random.Philox(seed))
    U, _, _ = np.linalg.svd(rng.standard_normal((m, 2)), full_matrices=False)
    q1 = U[:, :1]
    q2 = U[:, 1:]
    rho = (1.0 - delta / 2.0) * (q1 @ q1.T) + (delta / 2.0) * (q2 @ q2.T)
    return rho, q1.copy()


def random_jump_operator(m: int, seed: int = 0) -> np.ndarray:
    """Dense jump operator with i.i.d. standard complex Gaussian entries, scaled 1/sqrt(m)."""
    rng = np.random.Generator(np.random.Philox(seed))
    G = rng.standard_normal((m, m)) + 1j * rng.standard_normal((m, m))
    return G / np.sqrt(2.0 * m)


def chain_model(
    spec: QuditChainSpec,
    gamma: float,
    jump: str = "jz",
    seed: int = 0,
) -> LindbladModel:
    """Lindblad model for a qudit chain with one jump channel per site.

    jump picks the per-site operator: lifted Jz (default), lifted Jx,
    or seeded dense random matrices (seed offset by site index).
    """
    if jump == "jz":
        site_ops = [lift_site_operator(qudit_jz(spec.levels), k, spec.sites) for k in range(1, spec.sites + 1)]
    elif jump == "jx":
        site_ops = [lift_site_operator(qudit_jx(spec.levels), k, spec.sites) for k in range(1, spec.sites + 1)]
    elif jump == "random":
        site_ops = [random_jump_operator(spec.dim, seed=seed + k) for k in range(spec.sites)]
    else:
        raise ValueError(f"unknown jump kind {jump!r}, expected jz, jx or random")
    return LindbladModel(
        hamiltonian=ising_chain_hamiltonian(spec),
        channels=[(gamma, L) for L in site_ops],
    )
