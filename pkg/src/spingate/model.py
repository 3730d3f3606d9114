"""Two-site Hubbard model of a double-quantum-dot spin inverter.

Two electrons on two dots (A and B) with tunneling v, on-site repulsion u,
and a local magnetic field h_a acting on dot A only.  This module fixes the
six-state basis, builds the Hamiltonian, and diagonalizes it with a cyclic
Jacobi sweep tuned for the strongly graded matrices that u >> v produces.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

N_STATES = 6

# Two-electron configurations in fixed order: (dot A, dot B) spin content,
# "ud" marks a doubly occupied dot.  Every array in the package uses these
# indices: 0 |up, down>, 1 |down, up>, 2 |updown, 0>, 3 |0, updown>,
# 4 |up, up>, 5 |down, down>.
BASIS = (
    ("u", "d"),
    ("d", "u"),
    ("ud", "0"),
    ("0", "ud"),
    ("u", "u"),
    ("d", "d"),
)

_SZ = {"u": 0.5, "d": -0.5, "ud": 0.0, "0": 0.0}

SZ_A = np.array([_SZ[a] for a, _ in BASIS])
SZ_B = np.array([_SZ[b] for _, b in BASIS])
_DOUBLE = np.array([1.0 if "ud" in (a, b) else 0.0 for a, b in BASIS])

# pairs coupled by tunneling: each singly occupied configuration talks to
# both doublons; spin-aligned configurations talk to nothing
_HOPPING = ((0, 2), (0, 3), (1, 2), (1, 3))


class JacobiError(RuntimeError):
    """Eigensolver left tolerance; should never happen for valid input."""


class DegenerateGroundStateError(ValueError):
    """The two lowest levels coincide; no unique ground state exists."""


@dataclass(frozen=True)
class ModelParams:
    """Energies of one inverter instance, measured from the on-site level.

    v: inter-dot tunneling energy, > 0.  Dimensionless work sets v = 1 and
        quotes everything else in units of v.
    u: on-site Coulomb repulsion, >= 0.
    h_a: local field on dot A in energy units, either sign.  The electron
        g factor and Bohr magneton are absorbed here; they reappear only
        when converting to laboratory units.
    """

    v: float
    u: float = 0.0
    h_a: float = 0.0

    def __post_init__(self):
        for name in ("v", "u", "h_a"):
            raw = getattr(self, name)
            try:
                value = float(raw)
            except (TypeError, ValueError) as exc:
                raise ValueError(f"{name} must be a real number, got {raw!r}") from exc
            if not math.isfinite(value):
                raise ValueError(f"{name} must be finite, got {value}")
            object.__setattr__(self, name, value)
        if self.v <= 0.0:
            raise ValueError(f"v must be > 0, got {self.v}")
        if self.u < 0.0:
            raise ValueError(f"u must be >= 0, got {self.u}")


@dataclass(frozen=True)
class EigenSystem:
    """Energies sorted ascending; vectors[k] is the eigenvector of
    energies[k] expressed over BASIS (rows are eigenvectors)."""

    energies: np.ndarray
    vectors: np.ndarray


def build_hamiltonian(params: ModelParams) -> np.ndarray:
    """6x6 real-symmetric Hamiltonian over BASIS.

    Diagonal: Zeeman term -2 h_a S_zA plus u on each doublon.  All four
    tunneling elements are -v; with that sign the zero-field ground state
    is componentwise non-negative.
    """
    h = np.zeros((N_STATES, N_STATES))
    np.fill_diagonal(h, params.u * _DOUBLE - 2.0 * params.h_a * SZ_A)
    for i, j in _HOPPING:
        h[i, j] = h[j, i] = -params.v
    return h


def _rotate(a: np.ndarray, vecs: np.ndarray, p: int, q: int) -> None:
    apq = a[p, q]
    if apq == 0.0:
        return
    diff = a[q, q] - a[p, p]
    if abs(apq) < 1e-36 * abs(diff):
        t = apq / diff
    else:
        theta = 0.5 * diff / apq
        t = 1.0 / (abs(theta) + math.sqrt(theta * theta + 1.0))
        if theta < 0.0:
            t = -t
    c = 1.0 / math.sqrt(t * t + 1.0)
    s = t * c
    app, aqq = a[p, p], a[q, q]
    col_p, col_q = a[:, p].copy(), a[:, q].copy()
    a[:, p] = c * col_p - s * col_q
    a[:, q] = s * col_p + c * col_q
    row_p, row_q = a[p, :].copy(), a[q, :].copy()
    a[p, :] = c * row_p - s * row_q
    a[q, :] = s * row_p + c * row_q
    # recurrences keep the diagonal exact where the matrix products round
    a[p, p] = app - t * apq
    a[q, q] = aqq + t * apq
    a[p, q] = a[q, p] = 0.0
    vec_p, vec_q = vecs[p].copy(), vecs[q].copy()
    vecs[p] = c * vec_p - s * vec_q
    vecs[q] = s * vec_p + c * vec_q


def jacobi_eigh(matrix, *, tol_scale: float = 1e-14, max_sweeps: int = 100):
    """Eigendecomposition of a real-symmetric matrix by cyclic Jacobi sweeps.

    Rotations run in fixed row order until every off-diagonal magnitude is
    at most tol_scale * ||A||_F, then one extra polish sweep runs.  The
    polish matters: matrices with entries spanning many orders (u/v up to
    1e3 here) meet the threshold while the small-magnitude eigenvectors
    still carry ~1e-10 cross-talk, and one more sweep removes it.

    Zero off-diagonal entries are never rotated, so exactly decoupled
    sectors stay exactly decoupled.

    Returns (eigenvalues, eigenvectors-as-rows) in unsorted diagonal order.
    """
    a = np.array(matrix, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"matrix must be square, got shape {a.shape}")
    if not np.array_equal(a, a.T):
        raise ValueError("matrix must be symmetric")
    n = a.shape[0]
    vecs = np.eye(n)
    off_mask = ~np.eye(n, dtype=bool)
    threshold = tol_scale * np.linalg.norm(a)
    polished = False
    for _ in range(max_sweeps):
        off = float(np.max(np.abs(a[off_mask]))) if n > 1 else 0.0
        if off == 0.0 or (off <= threshold and polished):
            return a.diagonal().copy(), vecs
        if off <= threshold:
            polished = True
        for p in range(n - 1):
            for q in range(p + 1, n):
                _rotate(a, vecs, p, q)
    raise JacobiError(f"no convergence after {max_sweeps} sweeps")


def diagonalize(h) -> EigenSystem:
    """Eigensystem of a real-symmetric Hamiltonian, verified before return.

    Energies come back ascending (stable sort, so exactly equal levels keep
    their sweep order).  Each eigenvector's sign is fixed so its largest
    magnitude component is positive, first index winning ties; that makes
    the output deterministic down to the last bit.
    """
    h = np.asarray(h, dtype=float)
    energies, vectors = jacobi_eigh(h)
    order = np.argsort(energies, kind="stable")
    energies = energies[order]
    vectors = vectors[order]
    for k in range(vectors.shape[0]):
        lead = int(np.argmax(np.abs(vectors[k])))
        if vectors[k, lead] < 0.0:
            vectors[k] = -vectors[k]
    scale = max(1.0, float(np.max(np.abs(h))))
    residual = float(np.max(np.abs(h @ vectors.T - vectors.T * energies)))
    gram = vectors @ vectors.T
    ortho = float(np.max(np.abs(gram - np.eye(len(energies)))))
    if residual > 1e-12 * scale or ortho > 1e-12:
        raise JacobiError(
            f"eigensystem out of tolerance: residual {residual:.3e}, "
            f"orthonormality defect {ortho:.3e}"
        )
    return EigenSystem(energies=energies, vectors=vectors)


def ground_state(system: EigenSystem, *, gap_tol: float = 1e-12) -> np.ndarray:
    """Ground-state amplitudes as a complex vector.

    The sign is fixed so the first basis component is non-negative.  Raises
    DegenerateGroundStateError when the gap to the next level is below
    gap_tol relative to the spectral scale.
    """
    energies = system.energies
    scale = max(1.0, float(np.max(np.abs(energies))))
    gap = energies[1] - energies[0]
    if gap <= gap_tol * scale:
        raise DegenerateGroundStateError(f"ground level degenerate: E1 - E0 = {gap:.3e}")
    vec = system.vectors[0]
    if vec[0] < 0.0:
        vec = -vec
    return vec.astype(complex)
