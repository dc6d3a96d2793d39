"""Two-qubit states as Kronecker products of 8-entry simplex vectors.

Each qubit keeps its own 8-entry vector and the pair lives in 64 entries,
with the first factor as the slow index.  The CNOT analog permutes the four
16-entry blocks of a regrouped ("stacked") layout in which the entries of
the two qubits are sorted by logical basis state.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import SimplexState, as_simplex
from .errors import DimensionMismatch
from .gates import AffineTransform

__all__ = [
    "ProductSimplexState",
    "tensor",
    "shuffle8",
    "shuffle64",
    "stack_direct",
    "unstack_direct",
    "cnot_blocks64",
    "cnot64",
    "apply_cnot64",
    "apply_single64",
    "rank1_residual",
    "factor_product",
]


@dataclass(frozen=True)
class ProductSimplexState:
    factors: tuple
    combined: np.ndarray

    def __post_init__(self):
        c = np.array(self.combined, dtype=float, copy=True)
        c.setflags(write=False)
        object.__setattr__(self, "combined", c)
        object.__setattr__(self, "factors", tuple(self.factors))

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.combined, dtype=dtype)


def tensor(*states) -> ProductSimplexState:
    """Kronecker product of simplex vectors, first factor outermost."""
    if not states:
        raise ValueError("need at least one factor")
    factors = tuple(as_simplex(s) for s in states)
    out = factors[0].entries
    for f in factors[1:]:
        out = np.kron(out, f.entries)
    return ProductSimplexState(factors, out)


def _as_vector(v, size):
    if isinstance(v, ProductSimplexState):
        v = v.combined
    v = np.asarray(v, dtype=float)
    if v.shape != (size,):
        raise DimensionMismatch(f"expected a {size}-entry vector, got shape {v.shape}")
    return v


def shuffle8() -> np.ndarray:
    """Permutation taking the per-basis-state layout (0-block; 1-block) of a
    qubit, each block ordered (1+x, 1-x, 1+y, 1-y), to the standard order."""
    return np.array(
        [
            [1, 0, 0, 0, 0, 0, 0, 0],
            [0, 0, 0, 0, 1, 0, 0, 0],
            [0, 1, 0, 0, 0, 0, 0, 0],
            [0, 0, 0, 0, 0, 1, 0, 0],
            [0, 0, 1, 0, 0, 0, 0, 0],
            [0, 0, 0, 0, 0, 0, 1, 0],
            [0, 0, 0, 1, 0, 0, 0, 0],
            [0, 0, 0, 0, 0, 0, 0, 1],
        ],
        dtype=float,
    )


def shuffle64() -> np.ndarray:
    s8 = shuffle8()
    return np.kron(s8, s8) @ np.kron(np.kron(np.eye(2), s8), np.eye(4))


def stack_direct(s) -> np.ndarray:
    """Regroup a 64-entry product vector into stacked blocks by index arithmetic.

    Stacked index (a, b, i, j) holds entry i of qubit 1's basis-a block times
    entry j of qubit 2's basis-b block; the product vector index is
    (2i + a, 2j + b).
    """
    v = _as_vector(s, 64)
    return v.reshape(4, 2, 4, 2).transpose(1, 3, 0, 2).reshape(64)


def unstack_direct(w) -> np.ndarray:
    w = _as_vector(w, 64)
    return w.reshape(2, 2, 4, 4).transpose(2, 0, 3, 1).reshape(64)


def cnot_blocks64() -> np.ndarray:
    """Swap of the last two 16-entry blocks of the stacked layout."""
    m = np.zeros((64, 64))
    eye = np.eye(16)
    for row, col in ((0, 0), (1, 1), (2, 3), (3, 2)):
        m[16 * row : 16 * row + 16, 16 * col : 16 * col + 16] = eye
    return m


def cnot64() -> np.ndarray:
    """The CNOT analog conjugated back into the product layout."""
    s = shuffle64()
    return s @ cnot_blocks64() @ s.T


def apply_cnot64(ps) -> np.ndarray:
    return cnot64() @ _as_vector(ps, 64)


def apply_single64(t, v, qubit: int) -> np.ndarray:
    """Apply a single-qubit affine gate to one factor of a 64-entry vector.

    On vectors whose 8-entry marginals sum to one the affine map equals the
    linear map ``offset 1^T + M``, which extends to the product by Kronecker.
    """
    if not isinstance(t, AffineTransform):
        t = AffineTransform.from_matrix(t)
    if t.matrix.size != 8:
        raise DimensionMismatch("single-qubit gate must be 8x8")
    a = t.linear_part()
    grid = _as_vector(v, 64).reshape(8, 8)
    if qubit == 0:
        grid = a @ grid
    elif qubit == 1:
        grid = grid @ a.T
    else:
        raise DimensionMismatch(f"qubit index {qubit} out of range for two qubits")
    return grid.reshape(64)


def rank1_residual(v) -> float:
    """Frobenius distance from ``v`` (as an 8x8 grid) to its best rank-1 fit."""
    sv = np.linalg.svd(_as_vector(v, 64).reshape(8, 8), compute_uv=False)
    return float(np.sqrt(np.sum(sv[1:] ** 2)))


def factor_product(v) -> tuple[SimplexState, SimplexState, float]:
    """Best factorization v ~ s1 (x) s2 with both factors summing to one."""
    grid = _as_vector(v, 64).reshape(8, 8)
    u, sv, vt = np.linalg.svd(grid)
    a = u[:, 0] * sv[0]
    b = vt[0]
    scale = b.sum()
    a, b = a * scale, b / scale
    return SimplexState(a), SimplexState(b), float(np.sqrt(np.sum(sv[1:] ** 2)))
