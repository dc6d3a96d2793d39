"""Gate transforms acting on simplex vectors.

A unitary U on a K-dimensional Hilbert space becomes the real 4K x 4K matrix

    M(U) = R (x) Re(U) + J (x) Im(U)

acting on the deviation vector p, where R is the 4x4 identity and J is the
4-cycle permutation below.  On full simplex vectors it acts affinely,
T(s) = (I - M) 1 / (4K) + M s.

Because p always has the shape (x, -x, y, -y), the matrices (J^2 (x) X) and
-(R (x) X) act identically on it.  Many different matrices therefore
implement the same gate; :func:`canonicalize` picks the representative of
the form above.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import STRUCT_TOL, PVector, SimplexState, as_pvector, as_simplex
from .errors import DimensionMismatch, NotBlockStructured, OutOfRange
from .oracle import UNITARY_TOL, check_unitary

R_BLOCK = np.eye(4)
J_BLOCK = np.array(
    [
        [0, 0, 0, 1],
        [0, 0, 1, 0],
        [1, 0, 0, 0],
        [0, 1, 0, 0],
    ],
    dtype=float,
)
# J^k for k = 0..3; the four patterns tile the 4x4 block grid exactly once.
_J_POWERS = [np.linalg.matrix_power(J_BLOCK.astype(int), k) for k in range(4)]
_BLOCK_POWER = np.zeros((4, 4), dtype=int)
for _k, _pk in enumerate(_J_POWERS):
    _BLOCK_POWER[_pk == 1] = _k

CANONICAL = "canonical"
ALTERNATE = "alternate"
GENERAL = "general"

_R2 = 1.0 / np.sqrt(2.0)


@dataclass(frozen=True)
class TransformMatrix:
    matrix: np.ndarray
    form: str = GENERAL

    def __post_init__(self):
        m = np.array(self.matrix, dtype=float, copy=True)
        if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] % 4 or m.shape[0] == 0:
            raise DimensionMismatch(f"transform must be square with side a multiple of 4, got {m.shape}")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0] // 4

    @property
    def size(self) -> int:
        return self.matrix.shape[0]

    def __matmul__(self, other):
        if isinstance(other, TransformMatrix):
            return compose(self, other)
        if isinstance(other, PVector):
            return PVector(self.matrix @ other.entries)
        return self.matrix @ np.asarray(other)

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.matrix, dtype=dtype)


@dataclass(frozen=True)
class AffineTransform:
    """T(s) = offset + M s with offset = (I - M) 1 / (4K)."""

    matrix: TransformMatrix
    offset: np.ndarray

    @classmethod
    def from_matrix(cls, m) -> "AffineTransform":
        if not isinstance(m, TransformMatrix):
            m = TransformMatrix(m)
        n = m.size
        offset = (np.eye(n) - m.matrix) @ np.ones(n) / n
        offset.setflags(write=False)
        return cls(m, offset)

    def linear_part(self) -> np.ndarray:
        """Matrix A with A s = T(s) whenever the entries of s sum to one."""
        return self.matrix.matrix + np.outer(self.offset, np.ones(self.matrix.size))

    def __call__(self, s) -> SimplexState:
        return apply(self, s)


def real_block_form(a, b, c=None, d=None) -> np.ndarray:
    """R (x) a + J (x) b + J^2 (x) c + J^3 (x) d."""
    a = np.asarray(a, float)
    out = np.kron(R_BLOCK, a) + np.kron(J_BLOCK, np.asarray(b, float))
    if c is not None:
        out = out + np.kron(_J_POWERS[2].astype(float), np.asarray(c, float))
    if d is not None:
        out = out + np.kron(_J_POWERS[3].astype(float), np.asarray(d, float))
    return out


def build_transform(u, tol: float = UNITARY_TOL) -> TransformMatrix:
    u = check_unitary(u, tol)
    return TransformMatrix(real_block_form(u.real, u.imag), CANONICAL)


def build_transform_alternate(u, tol: float = UNITARY_TOL) -> TransformMatrix:
    """The equivalent representative -J^2 (x) Re(U) + J (x) Im(U)."""
    u = check_unitary(u, tol)
    k = u.shape[0]
    zero = np.zeros((k, k))
    return TransformMatrix(real_block_form(zero, u.imag, -u.real), ALTERNATE)


def decompose(m, tol: float = STRUCT_TOL):
    """Split ``m`` into the coefficients (X0, X1, X2, X3) of J^0..J^3.

    Raises NotBlockStructured when blocks belonging to the same power of J
    disagree by more than ``tol``.
    """
    a = np.asarray(m.matrix if isinstance(m, TransformMatrix) else m, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] % 4:
        raise DimensionMismatch(f"expected a square matrix with side a multiple of 4, got {a.shape}")
    k = a.shape[0] // 4
    blocks = a.reshape(4, k, 4, k).transpose(0, 2, 1, 3)
    coeffs = []
    for power in range(4):
        rows, cols = np.nonzero(_BLOCK_POWER == power)
        group = blocks[rows, cols]
        mean = group.mean(axis=0)
        spread = float(np.max(np.abs(group - mean)))
        if spread > tol:
            raise NotBlockStructured(
                f"blocks for J^{power} differ by {spread:.3e}; matrix is not in the block algebra"
            )
        coeffs.append(mean)
    return tuple(coeffs)


def canonicalize(m, tol: float = STRUCT_TOL) -> TransformMatrix:
    x0, x1, x2, x3 = decompose(m, tol)
    return TransformMatrix(real_block_form(x0 - x2, x1 - x3), CANONICAL)


def apply(t, s) -> SimplexState:
    if not isinstance(t, AffineTransform):
        t = AffineTransform.from_matrix(t)
    s = as_simplex(s)
    if s.entries.size != t.matrix.size:
        raise DimensionMismatch(f"{t.matrix.size}-dim transform applied to a {s.entries.size}-dim state")
    return SimplexState(t.offset + t.matrix.matrix @ s.entries)


def apply_p(m, p) -> PVector:
    m = m if isinstance(m, TransformMatrix) else TransformMatrix(m)
    p = as_pvector(p)
    if p.entries.size != m.size:
        raise DimensionMismatch(f"{m.size}-dim transform applied to a {p.entries.size}-dim p-vector")
    return PVector(m.matrix @ p.entries)


def compose(m2, m1) -> TransformMatrix:
    """Matrix for ``m1`` followed by ``m2``.

    The raw product of two canonical matrices picks up a J^2 term; use
    :func:`canonicalize` on the result for matrix-level comparisons.
    """
    a2 = m2.matrix if isinstance(m2, TransformMatrix) else np.asarray(m2, float)
    a1 = m1.matrix if isinstance(m1, TransformMatrix) else np.asarray(m1, float)
    if a2.shape != a1.shape:
        raise DimensionMismatch(f"cannot compose {a2.shape} with {a1.shape}")
    return TransformMatrix(a2 @ a1, GENERAL)


def cascade(*matrices) -> TransformMatrix:
    """Compose gates given in the order they act."""
    if not matrices:
        raise ValueError("need at least one transform")
    out = matrices[0]
    if not isinstance(out, TransformMatrix):
        out = TransformMatrix(out)
    for m in matrices[1:]:
        out = compose(m, out)
    return out


def hadamard() -> TransformMatrix:
    """Nonnegative 8x8 representative of the rotation-form Hadamard gate."""
    h = _R2
    m = np.array(
        [
            [h, 0, 0, h, 0, 0, 0, 0],
            [h, h, 0, 0, 0, 0, 0, 0],
            [0, h, h, 0, 0, 0, 0, 0],
            [0, 0, h, h, 0, 0, 0, 0],
            [0, 0, 0, 0, h, 0, 0, h],
            [0, 0, 0, 0, h, h, 0, 0],
            [0, 0, 0, 0, 0, h, h, 0],
            [0, 0, 0, 0, 0, 0, h, h],
        ]
    )
    return TransformMatrix(m, GENERAL)


def rabi(theta: float) -> TransformMatrix:
    if not np.isfinite(theta):
        raise OutOfRange(f"rotation angle must be finite, got {theta!r}")
    c, s = np.cos(theta), np.sin(theta)
    m = np.array(
        [
            [c, 0, 0, s, 0, 0, 0, 0],
            [s, c, 0, 0, 0, 0, 0, 0],
            [0, s, c, 0, 0, 0, 0, 0],
            [0, 0, s, c, 0, 0, 0, 0],
            [0, 0, 0, 0, c, 0, 0, s],
            [0, 0, 0, 0, s, c, 0, 0],
            [0, 0, 0, 0, 0, s, c, 0],
            [0, 0, 0, 0, 0, 0, s, c],
        ]
    )
    return TransformMatrix(m, GENERAL)


def phase(alpha: float) -> TransformMatrix:
    if not np.isfinite(alpha):
        raise OutOfRange(f"phase angle must be finite, got {alpha!r}")
    c, s = np.cos(alpha), np.sin(alpha)
    m = np.array(
        [
            [1, 0, 0, 0, 0, 0, 0, 0],
            [0, c, 0, 0, 0, 0, 0, s],
            [0, 0, 1, 0, 0, 0, 0, 0],
            [0, 0, 0, c, 0, s, 0, 0],
            [0, 0, 0, 0, 1, 0, 0, 0],
            [0, s, 0, 0, 0, c, 0, 0],
            [0, 0, 0, 0, 0, 0, 1, 0],
            [0, 0, 0, s, 0, 0, 0, c],
        ]
    )
    return TransformMatrix(m, CANONICAL)


def identity(k: int = 2) -> TransformMatrix:
    return TransformMatrix(np.eye(4 * k), CANONICAL)


def row_squared_sums(m) -> np.ndarray:
    a = m.matrix if isinstance(m, TransformMatrix) else np.asarray(m, float)
    return np.sum(a * a, axis=1)


def output_structure_residual(m, p) -> float:
    """Largest violation of zero-sum / mirrored blocks in ``M p``."""
    q = apply_p(m, p)
    return max(q.antisymmetry_residual(), float(abs(q.entries.sum())))


@dataclass(frozen=True)
class OrRealization:
    p_and: float
    p_or: float
    lower: float
    upper: float

    @property
    def feasible(self) -> bool:
        """Whether some joint distribution of the two events has this AND probability."""
        return self.lower - 1e-15 <= self.p_and <= self.upper + 1e-15


_OR_SLOPE = 1.0 - _R2
_OR_OFFSET = (np.sqrt(2.0) - 1.0) / 8.0


def hadamard_row_via_or(pa: float, pb: float) -> OrRealization:
    """First Hadamard row from the probabilities of two events a and b.

    ``pa`` and ``pb`` are the first and fourth simplex entries.  Choosing
    P(a and b) as below makes P(a or b) equal to the transformed first entry.
    """
    for name, v in (("pa", pa), ("pb", pb)):
        if not (0.0 <= v <= 0.25):
            raise OutOfRange(f"{name}={v!r} outside [0, 1/4]")
    p_and = _OR_SLOPE * pa + _OR_SLOPE * pb + _OR_OFFSET
    p_or = pa + pb - p_and
    return OrRealization(p_and, p_or, max(0.0, pa + pb - 1.0), min(pa, pb))


def or_feasibility_scan(n: int = 24) -> tuple[float, int, int]:
    """Fraction of mapped qubit states, on an n^3 angle grid, where the AND
    probability demanded by :func:`hadamard_row_via_or` is attainable.

    Returns ``(fraction, feasible_count, total)``.
    """
    from .core import map_state

    feasible = 0
    total = 0
    polar = np.linspace(0.0, np.pi, n)
    phases = np.linspace(0.0, 2 * np.pi, n, endpoint=False)
    for a in polar:
        for rel in phases:
            for glob in phases:
                psi = np.exp(1j * glob) * np.array([np.cos(a / 2), np.exp(1j * rel) * np.sin(a / 2)])
                s = map_state(psi).entries
                r = hadamard_row_via_or(min(max(s[0], 0.0), 0.25), min(max(s[3], 0.0), 0.25))
                feasible += r.feasible
                total += 1
    return feasible / total, feasible, total
