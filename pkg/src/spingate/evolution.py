"""Time evolution of inverter states.

The workhorse is spectral propagation: resolve the initial state onto the
eigenbasis once, then evaluate f_n(t) = sum_k A_k B_kn exp(-i E_k t) at any
time, exactly unitary by construction (hbar = 1 throughout).  A fixed-step
RK4 integrator of the same Schrodinger equation is included as an
independent cross-check; it shares no code with the spectral path.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .model import (
    N_STATES,
    SZ_A,
    SZ_B,
    EigenSystem,
    ModelParams,
    build_hamiltonian,
    diagonalize,
    ground_state,
)

NORM_TOL = 1e-12


class SpinObservables(NamedTuple):
    s_za: float
    s_zb: float


@dataclass(frozen=True)
class SpectralState:
    """An initial state resolved onto an eigensystem.

    coeffs[k] = <k|psi(0)>; eigenvectors are real, so this is a plain inner
    product without conjugation on the eigenvector side.
    """

    coeffs: np.ndarray
    eigensystem: EigenSystem


def _as_state(amps) -> np.ndarray:
    psi = np.asarray(amps, dtype=complex)
    if psi.shape != (N_STATES,):
        raise ValueError(f"state must have shape ({N_STATES},), got {psi.shape}")
    norm_sq = float(np.sum(np.abs(psi) ** 2))
    if abs(norm_sq - 1.0) > NORM_TOL:
        raise ValueError(f"state not normalized: sum |f_n|^2 = {norm_sq!r}")
    return psi


def _as_time(t) -> float:
    try:
        t = float(t)
    except (TypeError, ValueError) as exc:
        raise ValueError(f"t must be a real number, got {t!r}") from exc
    if not math.isfinite(t) or t < 0.0:
        raise ValueError(f"t must be finite and >= 0, got {t}")
    return t


def project(initial, system: EigenSystem) -> SpectralState:
    """Resolve a normalized state onto an eigenbasis.

    The reconstruction sum_k A_k B_k is checked against the input to 1e-12;
    a failure means the eigensystem does not span the state.
    """
    psi = _as_state(initial)
    coeffs = system.vectors @ psi
    recon = system.vectors.T @ coeffs
    if float(np.max(np.abs(recon - psi))) > 1e-12:
        raise ValueError("eigenbasis does not reconstruct the input state")
    return SpectralState(coeffs=coeffs, eigensystem=system)


def evolve(state: SpectralState, t) -> np.ndarray:
    """State amplitudes at time t."""
    t = _as_time(t)
    phases = np.exp(-1j * state.eigensystem.energies * t)
    return state.eigensystem.vectors.T @ (state.coeffs * phases)


def evolve_series(state: SpectralState, times) -> np.ndarray:
    """Amplitudes at many times at once; row i belongs to times[i]."""
    ts = np.asarray(times, dtype=float)
    if ts.ndim != 1:
        raise ValueError(f"times must be one-dimensional, got shape {ts.shape}")
    if ts.size and (not np.all(np.isfinite(ts)) or float(ts.min()) < 0.0):
        raise ValueError("every time must be finite and >= 0")
    phases = np.exp(-1j * np.outer(ts, state.eigensystem.energies))
    return (phases * state.coeffs) @ state.eigensystem.vectors


def probabilities(amps) -> np.ndarray:
    """Occupation probabilities p_n = |f_n|^2 of a normalized state."""
    psi = _as_state(amps)
    return np.abs(psi) ** 2


def spin_projections(amps) -> SpinObservables:
    """Spin z projections on dots A and B; they sum to zero for any state
    built from the zero-total-spin-projection basis states."""
    p = probabilities(amps)
    return SpinObservables(s_za=float(p @ SZ_A), s_zb=float(p @ SZ_B))


def energy_expectation(h, amps) -> float:
    """<psi|H|psi> of a normalized state; real for symmetric H."""
    psi = _as_state(amps)
    hm = np.asarray(h, dtype=float)
    return float(np.real(np.conj(psi) @ (hm @ psi)))


def evolve_rk4(h, initial, t, dt) -> np.ndarray:
    """Integrate i dpsi/dt = H psi with fixed-step classic RK4.

    Cross-check for the spectral propagator: no eigenvectors, no
    renormalization, so the norm drift is part of what callers inspect.
    The requested dt shrinks to t / ceil(t / dt) to land on t exactly.

    Raises ValueError when dt * ||H||_inf exceeds 0.1; beyond that the
    local truncation error is no longer negligible.
    """
    hm = np.asarray(h, dtype=float)
    psi = _as_state(initial)
    t = _as_time(t)
    dt = float(dt)
    if not math.isfinite(dt) or dt <= 0.0:
        raise ValueError(f"dt must be finite and > 0, got {dt}")
    h_norm = float(np.max(np.sum(np.abs(hm), axis=1)))
    if dt * h_norm > 0.1:
        raise ValueError(
            f"step too large: dt * ||H|| = {dt * h_norm:.3g} exceeds the 0.1 guard"
        )
    if t == 0.0:
        return psi
    steps = max(1, math.ceil(t / dt - 1e-12))
    step = t / steps
    gen = -1j * hm
    for _ in range(steps):
        k1 = gen @ psi
        k2 = gen @ (psi + (0.5 * step) * k1)
        k3 = gen @ (psi + (0.5 * step) * k2)
        k4 = gen @ (psi + step * k3)
        psi = psi + (step / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
    return psi


def prepare_state(params: ModelParams) -> SpectralState:
    """Switching-protocol initial condition.

    The system starts in the ground state of (v, u) with the field off;
    at t = 0 the field h_a switches on instantly, so that ground state is
    resolved onto the eigenbasis of the field-on Hamiltonian.
    """
    at_rest = ModelParams(v=params.v, u=params.u, h_a=0.0)
    psi0 = ground_state(diagonalize(build_hamiltonian(at_rest)))
    system = diagonalize(build_hamiltonian(params))
    return project(psi0, system)
