"""Map-preserving combination of subsystems (the box product).

For p-vectors the box product builds the p-vector of the Kronecker product
of the underlying wavefunctions, so a two-qubit system needs 16 entries
instead of 64.  The same rule applied to canonical transform matrices gives
the transform of U1 (x) U2.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import STRUCT_TOL, PVector, SimplexState, as_pvector
from .errors import NotCanonical
from .gates import CANONICAL, TransformMatrix, real_block_form
from .oracle import P0, P1, U_CNOT, check_unitary

__all__ = [
    "kron_parts",
    "box_p",
    "box_m",
    "combine_n",
    "NonAssociativityReport",
    "box_nonassociativity_witness",
    "m_cnot16",
    "m_controlled_u",
    "canonical_parts",
]


def kron_parts(a_re, a_im, b_re, b_im):
    """Real and imaginary parts of (a_re + i a_im) (x) (b_re + i b_im)."""
    re = np.kron(a_re, b_re) - np.kron(a_im, b_im)
    im = np.kron(a_re, b_im) + np.kron(a_im, b_re)
    return re, im


def box_p(p1, p2) -> PVector:
    p1 = as_pvector(p1)
    p2 = as_pvector(p2)
    x, y = kron_parts(p1.x, p1.y, p2.x, p2.y)
    return PVector.from_parts(x, y)


def canonical_parts(m, tol: float = STRUCT_TOL):
    """(Re U, Im U) read off a canonical transform matrix."""
    a = m.matrix if isinstance(m, TransformMatrix) else np.asarray(m, float)
    k = a.shape[0] // 4
    re = a[:k, :k]
    im = a[2 * k : 3 * k, :k]
    err = float(np.max(np.abs(real_block_form(re, im) - a)))
    if err > tol:
        raise NotCanonical(f"matrix deviates from R(x)A + J(x)B by {err:.3e}; canonicalize it first")
    return re, im


def box_m(m1, m2, tol: float = STRUCT_TOL) -> TransformMatrix:
    re1, im1 = canonical_parts(m1, tol)
    re2, im2 = canonical_parts(m2, tol)
    re, im = kron_parts(re1, im1, re2, im2)
    return TransformMatrix(real_block_form(re, im), CANONICAL)


def combine_n(ps) -> SimplexState:
    """Simplex vector of N subsystems, folding the box product from the left."""
    ps = [as_pvector(p) for p in ps]
    if not ps:
        raise ValueError("need at least one p-vector")
    acc = ps[0]
    for p in ps[1:]:
        acc = box_p(acc, p)
    n = acc.entries.size
    return SimplexState((1.0 + acc.entries) / n)


@dataclass(frozen=True)
class NonAssociativityReport:
    found: bool
    trials: int
    max_residual: float
    seed: int
    witness: tuple | None = None

    @property
    def residual(self) -> float:
        return self.max_residual


def box_nonassociativity_witness(trials: int = 2000, seed: int = 0, threshold: float = 1e-6) -> NonAssociativityReport:
    """Random search for p1, p2, p3 with (p1 [] p2) [] p3 != p1 [] (p2 [] p3).

    Each trial draws three independent Gaussian complex qubit amplitude
    vectors (normalized) and compares the two groupings.  The largest
    residual seen is reported whether or not it clears ``threshold``.
    """
    from .core import p_from_hilbert
    from .oracle import random_state

    rng = np.random.default_rng(seed)
    best = 0.0
    best_triple = None
    for _ in range(trials):
        p1, p2, p3 = (p_from_hilbert(random_state(2, rng)) for _ in range(3))
        left = box_p(box_p(p1, p2), p3).entries
        right = box_p(p1, box_p(p2, p3)).entries
        res = float(np.linalg.norm(left - right))
        if res > best or best_triple is None:
            best = res
            best_triple = (p1, p2, p3)
        if res > threshold:
            return NonAssociativityReport(True, trials, res, seed, (p1, p2, p3))
    return NonAssociativityReport(False, trials, best, seed, best_triple)


def m_cnot16() -> TransformMatrix:
    """Block-diagonal R (x) U_CNOT; the imaginary part vanishes."""
    return TransformMatrix(np.kron(np.eye(4), U_CNOT.real), CANONICAL)


def m_controlled_u(u) -> TransformMatrix:
    """Transform of P0 (x) I + P1 (x) U, control on the first qubit."""
    u = check_unitary(u)
    if u.shape != (2, 2):
        raise ValueError(f"controlled gate needs a 2x2 unitary, got {u.shape}")
    c_re = np.kron(P0.real, np.eye(2)) + np.kron(P1.real, u.real)
    c_im = np.kron(P1.real, u.imag)
    return TransformMatrix(real_block_form(c_re, c_im), CANONICAL)
