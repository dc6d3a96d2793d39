"""Continuous-time evolution of simplex vectors.

The simplex analog of the Schrodinger equation is

    hbar ds/dt = H_eff(t) (s - 1/(4K))

with the real generator H_eff = R (x) Im(H) - J (x) Re(H).  It is integrated
here with classical fixed-step RK4.  Units: hbar = 1 unless given, so
Hamiltonians are angular frequencies.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .core import SimplexState, as_simplex
from .errors import DimensionMismatch, InvalidStep
from .gates import real_block_form
from .oracle import HERM_TOL, check_hermitian

__all__ = [
    "EffectiveHamiltonian",
    "EvolutionResult",
    "effective_hamiltonian",
    "evolve",
    "sum_residual",
    "pnorm_residual",
]


@dataclass(frozen=True)
class EffectiveHamiltonian:
    matrix: np.ndarray
    source: np.ndarray

    @property
    def dim(self) -> int:
        return self.source.shape[0]

    def __matmul__(self, other):
        return self.matrix @ np.asarray(other)


@dataclass
class EvolutionResult:
    times: np.ndarray
    states: list
    sum_residuals: np.ndarray = field(repr=False)
    pnorm_residuals: np.ndarray = field(repr=False)

    def entries(self) -> np.ndarray:
        """Trajectory as an (n_times, 4K) array."""
        return np.array([s.entries for s in self.states])

    @property
    def final(self) -> SimplexState:
        return self.states[-1]


def effective_hamiltonian(h, tol: float = HERM_TOL) -> EffectiveHamiltonian:
    h = check_hermitian(h, tol)
    # R (x) Im(H) - J (x) Re(H)
    m = real_block_form(h.imag, -h.real)
    m.setflags(write=False)
    src = h.copy()
    src.setflags(write=False)
    return EffectiveHamiltonian(m, src)


def _provider(h) -> Callable[[float], np.ndarray]:
    if callable(h):
        return h
    const = np.asarray(h, dtype=complex)
    return lambda t: const


def evolve(
    s0,
    h,
    t_final: float,
    dt: float = 1e-3,
    hbar: float = 1.0,
    store_every: int = 1,
) -> EvolutionResult:
    """Integrate the simplex equation from ``s0`` over [0, t_final].

    ``h`` is a Hermitian matrix or a callable ``h(t)`` returning one; the
    callable is sampled at the RK4 stage times.  The step count is the
    smallest integer with steps * dt >= t_final, and the step is shrunk
    uniformly so the last sample lands exactly on ``t_final``.
    """
    s0 = as_simplex(s0)
    if not (np.isfinite(dt) and dt > 0):
        raise InvalidStep(f"dt must be positive and finite, got {dt!r}")
    if not (np.isfinite(t_final) and t_final >= 0):
        raise InvalidStep(f"t_final must be non-negative and finite, got {t_final!r}")
    if store_every < 1:
        raise InvalidStep("store_every must be at least 1")

    n = s0.entries.size
    k = s0.dim
    center = np.full(n, 1.0 / n)
    provider = _provider(h)

    constant = not callable(h)
    cache = {}

    def heff(t):
        if constant and cache:
            return cache["m"]
        m = effective_hamiltonian(provider(t)).matrix
        if m.shape[0] != n:
            raise DimensionMismatch(f"Hamiltonian dimension {m.shape[0] // 4} does not match state dimension {k}")
        if constant:
            cache["m"] = m
        return m

    def rhs(t, s):
        return heff(t) @ (s - center) / hbar

    steps = int(np.ceil(t_final / dt - 1e-12)) if t_final > 0 else 0
    h_step = t_final / steps if steps else 0.0

    s = s0.entries.copy()
    times = [0.0]
    states = [SimplexState(s)]
    for i in range(steps):
        t = i * h_step
        k1 = rhs(t, s)
        k2 = rhs(t + h_step / 2, s + h_step / 2 * k1)
        k3 = rhs(t + h_step / 2, s + h_step / 2 * k2)
        k4 = rhs(t + h_step, s + h_step * k3)
        s = s + h_step / 6 * (k1 + 2 * k2 + 2 * k3 + k4)
        if (i + 1) % store_every == 0 or i + 1 == steps:
            times.append((i + 1) * h_step)
            states.append(SimplexState(s))

    arr = np.array([st.entries for st in states])
    sums = np.abs(arr.sum(axis=1) - 1.0)
    pnorms = np.abs(np.linalg.norm(n * arr - 1.0, axis=1) - np.sqrt(2.0))
    return EvolutionResult(np.array(times), states, sums, pnorms)


def sum_residual(result: EvolutionResult) -> float:
    if not result.states:
        raise ValueError("empty evolution result")
    return float(np.max(result.sum_residuals))


def pnorm_residual(result: EvolutionResult) -> float:
    if not result.states:
        raise ValueError("empty evolution result")
    return float(np.max(result.pnorm_residuals))
