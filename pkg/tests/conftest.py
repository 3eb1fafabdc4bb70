"""Seeded random generators shared across the test modules."""

from __future__ import annotations

import numpy as np

from lindbladint.model import LindbladModel


def make_rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(seed))


def random_complex(m: int, n: int, rng: np.random.Generator) -> np.ndarray:
    return rng.standard_normal((m, n)) + 1j * rng.standard_normal((m, n))


def random_hermitian(m: int, seed: int, scale: float = 1.0) -> np.ndarray:
    G = random_complex(m, m, make_rng(seed))
    return scale * 0.5 * (G + G.conj().T)


def random_density(m: int, seed: int, rank: int | None = None) -> np.ndarray:
    """Seeded PSD unit-trace matrix, optionally rank-deficient."""
    r = m if rank is None else rank
    G = random_complex(m, r, make_rng(seed))
    rho = G @ G.conj().T
    return rho / np.trace(rho).real


def random_model(m: int, seed: int, channels: int = 1, gamma: float = 0.5) -> LindbladModel:
    """Random static model with dense full-rank jumps, so the drift is strictly stable."""
    rng = make_rng(seed)
    H = random_complex(m, m, rng)
    H = 0.5 * (H + H.conj().T)
    chans = []
    for _ in range(channels):
        L = random_complex(m, m, rng) / np.sqrt(m)
        chans.append((gamma, L))
    return LindbladModel(hamiltonian=H, channels=chans)
