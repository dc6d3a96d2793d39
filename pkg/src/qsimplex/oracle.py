"""Reference Hilbert-space simulator and seeded random instances.

Everything here works on ordinary complex state vectors and is the ground
truth the simplex routines are compared against.
"""
from __future__ import annotations

import numpy as np

from .core import HilbertState, as_hilbert
from .errors import DegenerateDraw, DimensionMismatch, NotHermitian, NotUnitary

UNITARY_TOL = 1e-9
HERM_TOL = 1e-9

SQRT1_2 = 1.0 / np.sqrt(2.0)

# Hadamard as a real rotation (not the usual symmetric form).
U_H = np.array([[SQRT1_2, -SQRT1_2], [SQRT1_2, SQRT1_2]], dtype=complex)

U_CNOT = np.array(
    [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]],
    dtype=complex,
)

SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)

P0 = np.diag([1.0, 0.0]).astype(complex)
P1 = np.diag([0.0, 1.0]).astype(complex)


def u_rabi(theta: float) -> np.ndarray:
    c, s = np.cos(theta), np.sin(theta)
    return np.array([[c, -s], [s, c]], dtype=complex)


def u_phase(alpha: float) -> np.ndarray:
    return np.diag([1.0, np.exp(1j * alpha)])


def controlled(u) -> np.ndarray:
    """Two-qubit gate applying ``u`` to the second qubit when the first is |1>."""
    u = np.asarray(u, dtype=complex)
    return np.kron(P0, np.eye(2)) + np.kron(P1, u)


def unitarity_error(u) -> float:
    u = np.asarray(u, dtype=complex)
    return float(np.max(np.abs(u.conj().T @ u - np.eye(u.shape[0]))))


def check_unitary(u, tol: float = UNITARY_TOL) -> np.ndarray:
    u = np.asarray(u, dtype=complex)
    if u.ndim != 2 or u.shape[0] != u.shape[1]:
        raise NotUnitary(f"expected a square matrix, got shape {u.shape}")
    err = unitarity_error(u)
    if err > tol:
        raise NotUnitary(f"max |U^dag U - I| = {err:.3e} exceeds {tol}")
    return u


def check_hermitian(h, tol: float = HERM_TOL) -> np.ndarray:
    h = np.asarray(h, dtype=complex)
    if h.ndim != 2 or h.shape[0] != h.shape[1]:
        raise NotHermitian(f"expected a square matrix, got shape {h.shape}")
    err = float(np.max(np.abs(h - h.conj().T))) if h.size else 0.0
    if err > tol:
        raise NotHermitian(f"max |H - H^dag| = {err:.3e} exceeds {tol}")
    return h


def apply_unitary(u, psi) -> HilbertState:
    psi = as_hilbert(psi)
    u = check_unitary(u)
    if u.shape[1] != psi.dim:
        raise DimensionMismatch(f"unitary of size {u.shape} cannot act on a {psi.dim}-dim state")
    return HilbertState(u @ psi.amplitudes)


def _rng(seed):
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def random_state(k: int, seed=None) -> HilbertState:
    """Haar-random pure state (normalized complex Gaussian vector)."""
    if k < 1:
        raise DimensionMismatch("dimension must be at least 1")
    rng = _rng(seed)
    z = rng.standard_normal(k) + 1j * rng.standard_normal(k)
    return HilbertState(z / np.linalg.norm(z))


def random_unitary(k: int, seed=None, max_tries: int = 8) -> np.ndarray:
    """Haar-random unitary from the QR decomposition of a Ginibre matrix.

    The phases of R's diagonal are divided out so the distribution is Haar
    rather than biased by the QR sign convention.
    """
    if k < 1:
        raise DimensionMismatch("dimension must be at least 1")
    rng = _rng(seed)
    for _ in range(max_tries):
        z = (rng.standard_normal((k, k)) + 1j * rng.standard_normal((k, k))) / np.sqrt(2.0)
        q, r = np.linalg.qr(z)
        d = np.diag(r)
        if np.min(np.abs(d)) < 1e-10:
            continue
        return q * (d / np.abs(d))
    raise DegenerateDraw(f"rank-deficient draw {max_tries} times in a row")


def random_hermitian(k: int, seed=None) -> np.ndarray:
    rng = _rng(seed)
    a = rng.standard_normal((k, k)) + 1j * rng.standard_normal((k, k))
    return (a + a.conj().T) / 2


def schrodinger_reference(psi0, h, t: float, hbar: float = 1.0) -> HilbertState:
    """exp(-i H t / hbar) psi0 for a time-independent Hamiltonian."""
    psi0 = as_hilbert(psi0)
    h = check_hermitian(h)
    if h.shape[0] != psi0.dim:
        raise DimensionMismatch(f"Hamiltonian of size {h.shape} cannot act on a {psi0.dim}-dim state")
    w, v = np.linalg.eigh(h)
    phases = np.exp(-1j * w * t / hbar)
    return HilbertState(v @ (phases * (v.conj().T @ psi0.amplitudes)))


def propagator(h, t: float, hbar: float = 1.0) -> np.ndarray:
    h = check_hermitian(h)
    w, v = np.linalg.eigh(h)
    return (v * np.exp(-1j * w * t / hbar)) @ v.conj().T
