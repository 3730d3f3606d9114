"""Closed-form references for the inverter model.

Everything here is exact algebra: the zero-field ground state, the full
dynamics at zero repulsion, the reduction of the Hamiltonian to its 3x3
singlet block, and the strong-repulsion (Heisenberg) asymptotics.  The
numerical modules never call these for production results; they exist so
tests can pit two independent routes against each other.

Formulas are written in cancellation-free form: (sqrt(u^2 + 16 v^2) - u)
is evaluated as 16 v^2 / (sqrt(...) + u) so nothing is lost at u >> v.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .model import N_STATES, ModelParams

_SQRT2 = math.sqrt(2.0)


@dataclass(frozen=True)
class SpinOscillation:
    """Zero-repulsion spin oscillation s_za(t) = amplitude sin^2(omega t / 2).

    amplitude = 2 h v / (h^2 + 4 v^2) peaks at 1/2 exactly when h = 2v and
    carries the sign of the field.
    """

    omega: float
    amplitude: float


@dataclass(frozen=True)
class HeisenbergAsymptotics:
    """u >> v reference values from the effective exchange j = v^2 / u:
    optimal field h_opt = 2j and limiting switching time pi u / (4 sqrt2 v^2).
    """

    j: float
    h_opt: float
    t0_limit: float


def _require_zero_field(params: ModelParams) -> None:
    if params.h_a != 0.0:
        raise ValueError(f"closed form holds at h_a = 0 only, got h_a = {params.h_a}")


def zero_field_ground_energy(params: ModelParams) -> float:
    """Ground energy at h_a = 0: (u - sqrt(u^2 + 16 v^2)) / 2."""
    _require_zero_field(params)
    root = math.hypot(params.u, 4.0 * params.v)
    return -8.0 * params.v ** 2 / (root + params.u)


def zero_field_ground_state(params: ModelParams) -> np.ndarray:
    """Ground-state amplitudes at h_a = 0 as a complex vector.

    Proportional to (1, 1, c, c, 0, 0) with doublon admixture
    c = (sqrt(u^2 + 16 v^2) - u) / 4v, normalized.
    """
    _require_zero_field(params)
    root = math.hypot(params.u, 4.0 * params.v)
    doublon = 4.0 * params.v / (root + params.u)
    front = 0.5 * math.sqrt(1.0 + params.u / root)
    amps = front * np.array([1.0, 1.0, doublon, doublon, 0.0, 0.0])
    return amps.astype(complex)


def exchange_splitting(params: ModelParams) -> float:
    """Singlet-triplet gap (sqrt(u^2 + 16 v^2) - u) / 2.

    Equals 2v at u = 0 and falls toward 4 v^2 / u for large u; in between
    it sets the scale of the optimal switching field.
    """
    root = math.hypot(params.u, 4.0 * params.v)
    return 8.0 * params.v ** 2 / (root + params.u)


def free_oscillation(v: float, h_a: float) -> SpinOscillation:
    """Frequency and amplitude of the u = 0 spin oscillation."""
    p = ModelParams(v=v, h_a=h_a)
    omega = math.hypot(p.h_a, 2.0 * p.v)
    # h^2 + 4 v^2 rather than omega^2: exact at the h = 2v sweet spot
    amplitude = 2.0 * p.h_a * p.v / (p.h_a * p.h_a + 4.0 * p.v * p.v)
    return SpinOscillation(omega=omega, amplitude=amplitude)


def free_probabilities(v: float, h_a: float, t):
    """Occupation probabilities at u = 0, closed form.

    With w(t) = 2 a sin^2(omega t / 2) and a the oscillation amplitude:
    p1 = (1 + w)^2 / 4, p2 = (1 - w)^2 / 4, p3 = p4 = (1 - w^2) / 4,
    p5 = p6 = 0.  Accepts scalar or array t; probabilities stack on the
    last axis.
    """
    osc = free_oscillation(v, h_a)
    ts = np.asarray(t, dtype=float)
    swing = 2.0 * osc.amplitude * np.sin(0.5 * osc.omega * ts) ** 2
    p1 = 0.25 * (1.0 + swing) ** 2
    p2 = 0.25 * (1.0 - swing) ** 2
    p_doublon = 0.25 * (1.0 - swing ** 2)
    zeros = np.zeros_like(p1)
    return np.stack([p1, p2, p_doublon, p_doublon, zeros, zeros], axis=-1)


def free_spin(v: float, h_a: float, t):
    """Dot-A spin projection at u = 0: amplitude sin^2(omega t / 2)."""
    osc = free_oscillation(v, h_a)
    ts = np.asarray(t, dtype=float)
    out = osc.amplitude * np.sin(0.5 * osc.omega * ts) ** 2
    return float(out) if out.ndim == 0 else out


def reduce_singlet_block(h) -> tuple[np.ndarray, np.ndarray]:
    """Split a model Hamiltonian into its 3x3 singlet block plus levels.

    The block acts on {|1>, |2>, (|3> + |4>) / sqrt2}; the returned levels
    are the decoupled antisymmetric doublon (|3> - |4>) / sqrt2 and the two
    spin-aligned states, in that order.  Raises ValueError when the matrix
    lacks the structure that makes this split exact (asymmetry, coupled
    spin-aligned rows, or doublons that differ as seen from |1> and |2>).
    """
    m = np.asarray(h, dtype=float)
    if m.shape != (N_STATES, N_STATES):
        raise ValueError(f"expected a {N_STATES}x{N_STATES} matrix, got {m.shape}")
    if not np.array_equal(m, m.T):
        raise ValueError("matrix must be symmetric")
    scale = max(1.0, float(np.max(np.abs(m))))
    aligned = np.abs(m[4:, :]).copy()
    aligned[0, 4] = aligned[1, 5] = 0.0
    asym = max(
        abs(m[0, 2] - m[0, 3]),
        abs(m[1, 2] - m[1, 3]),
        abs(m[2, 2] - m[3, 3]),
    )
    if float(np.max(aligned)) > 1e-13 * scale or asym > 1e-13 * scale:
        raise ValueError("matrix does not decouple into singlet block plus levels")
    basis_change = np.zeros((3, N_STATES))
    basis_change[0, 0] = 1.0
    basis_change[1, 1] = 1.0
    basis_change[2, 2] = basis_change[2, 3] = 1.0 / _SQRT2
    block = basis_change @ m @ basis_change.T
    anti_level = 0.5 * (m[2, 2] + m[3, 3]) - m[2, 3]
    levels = np.array([anti_level, m[4, 4], m[5, 5]])
    return block, levels


def heisenberg_limits(params: ModelParams) -> HeisenbergAsymptotics:
    """Strong-repulsion references, exact only as u/v -> infinity.

    Never used to produce switching times; the numerical search is the
    authority and these values anchor its large-u behavior in tests.
    """
    if params.u == 0.0:
        raise ValueError("heisenberg limits need u > 0 (j = v^2 / u diverges)")
    j = params.v ** 2 / params.u
    return HeisenbergAsymptotics(
        j=j,
        h_opt=2.0 * j,
        t0_limit=math.pi * params.u / (4.0 * _SQRT2 * params.v ** 2),
    )
