"""Entanglement-fidelity identities checked by direct density-matrix evolution."""

from __future__ import annotations

import math

import numpy as np
from scipy.linalg import expm
from scipy.optimize import minimize_scalar

from ..errors import ParameterError


def depolarizing_closed_form(d_dim: int, p: float, n_apps: int) -> float:
    return (1 - 1 / d_dim**2) * (1 - p) ** n_apps + 1 / d_dim**2


def depolarizing_simulated(d_dim: int, p: float, n_apps: int) -> float:
    """<Phi| (D_p^n (x) I)(|Phi><Phi|) |Phi> with D_p(rho) = (1-p) rho + p Tr(rho) I/d."""
    phi = np.eye(d_dim, dtype=complex).reshape(-1) / math.sqrt(d_dim)
    rho = np.outer(phi, phi.conj())
    for _ in range(n_apps):
        # Trace out the system half, then re-attach the maximally mixed state.
        r4 = rho.reshape(d_dim, d_dim, d_dim, d_dim)
        ref = np.einsum("iaib->ab", r4)
        rho = (1 - p) * rho + p * np.kron(np.eye(d_dim) / d_dim, ref)
    return float(np.vdot(phi, rho @ phi).real)


def depolarizing_fidelity_check(d_dim: int, p: float, n_apps: int) -> tuple[float, float]:
    if d_dim not in (2, 4):
        raise ParameterError(f"d_dim must be 2 or 4, got {d_dim}")
    if not 0 <= p <= 1:
        raise ParameterError(f"p must lie in [0, 1], got {p}")
    if not 0 <= n_apps <= 50:
        raise ParameterError(f"n_apps must lie in [0, 50], got {n_apps}")
    return depolarizing_closed_form(d_dim, p, n_apps), depolarizing_simulated(d_dim, p, n_apps)


def phase_agnostic_distance(U: np.ndarray, V: np.ndarray, grid: int = 2001) -> float:
    """min over alpha of the operator norm of U - e^{i alpha} V."""
    def dist(alpha):
        return float(np.linalg.norm(U - np.exp(1j * alpha) * V, 2))

    alphas = np.linspace(-math.pi, math.pi, grid)
    vals = [dist(a) for a in alphas]
    i = int(np.argmin(vals))
    step = alphas[1] - alphas[0]
    res = minimize_scalar(dist, bounds=(alphas[i] - step, alphas[i] + step), method="bounded",
                          options={"xatol": 1e-14})
    return min(vals[i], float(res.fun))


def entanglement_fidelity(U: np.ndarray, V: np.ndarray) -> float:
    d = U.shape[0]
    return float(abs(np.trace(U.conj().T @ V)) ** 2 / d**2)


def distance_fidelity_check(theta: float, axis=(0.3, -0.5, 0.8), phase: float = 0.4) -> tuple[float, float, float]:
    """(F_ent, 1 - D^2, residual) for V = U exp(i phase + i theta/2 v.sigma)."""
    if not 0 <= theta <= math.pi:
        raise ParameterError(f"theta must lie in [0, pi], got {theta}")
    v = np.asarray(axis, dtype=float)
    v = v / np.linalg.norm(v)
    paulis = [np.array([[0, 1], [1, 0]]), np.array([[0, -1j], [1j, 0]]), np.array([[1, 0], [0, -1]])]
    gen = sum(c * P for c, P in zip(v, paulis))
    U = expm(1j * 0.7 * paulis[0]) @ expm(-1j * 0.2 * paulis[2])
    V = U @ expm(1j * phase * np.eye(2) + 1j * theta / 2 * gen)
    F = entanglement_fidelity(U, V)
    D = phase_agnostic_distance(U, V)
    return F, 1 - D**2, abs(F - (1 - D**2))
