"""State types and the nonlinear embedding of wavefunctions into the simplex.

A K-dimensional wavefunction with real part ``x`` and imaginary part ``y`` is
sent to the 4K-dimensional probability vector

    s = (1 + (x, -x, y, -y)) / (4K)

The four blocks are contiguous, each of length K.  For a qubit (K=2) this is
exactly the entry order (1+x0, 1+x1, 1-x0, 1-x1, 1+y0, 1+y1, 1-y0, 1-y1)/8.
The deviation vector ``p = 4K s - 1`` carries all of the state information.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionMismatch, NotInImage, NotNormalized

NORM_TOL = 1e-9
STRUCT_TOL = 1e-9

__all__ = [
    "NORM_TOL",
    "STRUCT_TOL",
    "HilbertState",
    "SimplexState",
    "PVector",
    "ValidityReport",
    "as_hilbert",
    "as_simplex",
    "as_pvector",
    "map_state",
    "unmap_state",
    "p_of",
    "p_from_hilbert",
    "validate",
    "simplex_norm",
]


def _frozen(a, dtype):
    a = np.array(a, dtype=dtype, copy=True)
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class HilbertState:
    """K complex amplitudes.  Normalization is checked where it matters."""

    amplitudes: np.ndarray

    def __post_init__(self):
        a = _frozen(self.amplitudes, complex)
        if a.ndim != 1 or a.size < 1:
            raise DimensionMismatch(f"amplitudes must be a non-empty vector, got shape {a.shape}")
        object.__setattr__(self, "amplitudes", a)

    @classmethod
    def from_parts(cls, re, im):
        return cls(np.asarray(re, float) + 1j * np.asarray(im, float))

    @property
    def dim(self) -> int:
        return self.amplitudes.size

    @property
    def re(self) -> np.ndarray:
        return self.amplitudes.real

    @property
    def im(self) -> np.ndarray:
        return self.amplitudes.imag

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.amplitudes, dtype=dtype)


@dataclass(frozen=True)
class SimplexState:
    """A 4K-entry real vector.

    Construction only checks the shape, so convex mixtures and other points
    off the mapped hypersurface can be represented and diagnosed with
    :func:`validate`.
    """

    entries: np.ndarray

    def __post_init__(self):
        e = _frozen(self.entries, float)
        if e.ndim != 1 or e.size == 0 or e.size % 4:
            raise DimensionMismatch(f"simplex vector length must be a positive multiple of 4, got {e.shape}")
        object.__setattr__(self, "entries", e)

    @property
    def dim(self) -> int:
        """Hilbert dimension K of the wavefunction this vector encodes."""
        return self.entries.size // 4

    def __len__(self):
        return self.entries.size

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.entries, dtype=dtype)


@dataclass(frozen=True)
class PVector:
    """Deviation vector laid out as (x, -x, y, -y)."""

    entries: np.ndarray

    def __post_init__(self):
        e = _frozen(self.entries, float)
        if e.ndim != 1 or e.size == 0 or e.size % 4:
            raise DimensionMismatch(f"p-vector length must be a positive multiple of 4, got {e.shape}")
        object.__setattr__(self, "entries", e)

    @classmethod
    def from_parts(cls, x, y):
        x = np.asarray(x, float)
        y = np.asarray(y, float)
        return cls(np.concatenate([x, -x, y, -y]))

    @property
    def dim(self) -> int:
        return self.entries.size // 4

    @property
    def x(self) -> np.ndarray:
        return self.entries[: self.dim]

    @property
    def y(self) -> np.ndarray:
        k = self.dim
        return self.entries[2 * k : 3 * k]

    def antisymmetry_residual(self) -> float:
        k = self.dim
        e = self.entries
        return float(max(np.max(np.abs(e[:k] + e[k : 2 * k])), np.max(np.abs(e[2 * k : 3 * k] + e[3 * k :]))))

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.entries, dtype=dtype)


def as_hilbert(psi) -> HilbertState:
    return psi if isinstance(psi, HilbertState) else HilbertState(psi)


def as_simplex(s) -> SimplexState:
    return s if isinstance(s, SimplexState) else SimplexState(s)


def as_pvector(p) -> PVector:
    return p if isinstance(p, PVector) else PVector(p)


def simplex_norm(k: int) -> float:
    """Euclidean norm shared by every mapped state of dimension ``k``."""
    return np.sqrt(4 * k + 2) / (4 * k)


def p_from_hilbert(psi) -> PVector:
    """p-vector of a wavefunction, without the normalization check."""
    psi = as_hilbert(psi)
    return PVector.from_parts(psi.re, psi.im)


def map_state(psi, tol: float = NORM_TOL) -> SimplexState:
    psi = as_hilbert(psi)
    if abs(psi.norm - 1.0) > tol:
        raise NotNormalized(f"wavefunction norm {psi.norm!r} differs from 1 by more than {tol}")
    k = psi.dim
    return SimplexState((1.0 + p_from_hilbert(psi).entries) / (4 * k))


def p_of(s) -> PVector:
    s = as_simplex(s)
    return PVector(4 * s.dim * s.entries - 1.0)


@dataclass(frozen=True)
class ValidityReport:
    """Per-invariant residuals for a simplex vector.

    ``checks`` maps an invariant name to ``(passed, residual)``.
    """

    checks: dict = field(default_factory=dict)
    tol: float = STRUCT_TOL

    @property
    def ok(self) -> bool:
        return all(passed for passed, _ in self.checks.values())

    def failed(self) -> list:
        return [name for name, (passed, _) in self.checks.items() if not passed]

    def residual(self, name: str) -> float:
        return self.checks[name][1]

    def __str__(self):
        lines = [f"{name:<8} {'pass' if ok else 'FAIL'}  {res:.3e}" for name, (ok, res) in self.checks.items()]
        return "\n".join(lines)


def validate(s, tol: float = STRUCT_TOL) -> ValidityReport:
    """Check every mapped-state invariant of ``s`` and record the residuals.

    ``range``: entries inside [0, 1]; ``sum``: entries add to one;
    ``pairs``: s_i + s_{i+K} = 1/(2K) in both the real and imaginary halves;
    ``norm``: the deviation vector has length sqrt(2), equivalently
    ``||s|| = sqrt(4K+2)/(4K)``.
    """
    s = as_simplex(s)
    e = s.entries
    k = s.dim
    half = 1.0 / (2 * k)

    range_res = float(max(0.0, -e.min(), e.max() - 1.0))
    sum_res = float(abs(e.sum() - 1.0))
    pair_res = float(
        max(
            np.max(np.abs(e[:k] + e[k : 2 * k] - half)),
            np.max(np.abs(e[2 * k : 3 * k] + e[3 * k :] - half)),
        )
    )
    norm_res = float(abs(np.linalg.norm(4 * k * e - 1.0) - np.sqrt(2.0)))

    checks = {
        "range": (range_res <= tol, range_res),
        "sum": (sum_res <= tol, sum_res),
        "pairs": (pair_res <= tol, pair_res),
        "norm": (norm_res <= tol, norm_res),
    }
    return ValidityReport(checks=checks, tol=tol)


def unmap_state(s, tol: float = STRUCT_TOL) -> HilbertState:
    """Recover the wavefunction from a mapped simplex vector.

    Real parts come from the first block and imaginary parts from the third;
    the mirrored blocks are only used for validation.
    """
    s = as_simplex(s)
    report = validate(s, tol)
    if not report.ok:
        raise NotInImage(f"vector is not a mapped state; failed checks: {report.failed()}")
    k = s.dim
    e = s.entries
    x = 4 * k * e[:k] - 1.0
    y = 4 * k * e[2 * k : 3 * k] - 1.0
    return HilbertState.from_parts(x, y)
