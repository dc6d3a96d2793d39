"""Seeded commuting-diagram checks behind ``qsimplex verify``."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import boxprod, gates, multiqubit, oracle
from .core import map_state, p_from_hilbert, unmap_state
from .evolve import evolve, sum_residual


@dataclass(frozen=True)
class CheckRow:
    name: str
    cases: int
    max_error: float
    tol: float

    @property
    def passed(self) -> bool:
        return self.max_error < self.tol


def _commuting(k, n, rng):
    worst = 0.0
    for _ in range(n):
        u = oracle.random_unitary(k, rng)
        psi = oracle.random_state(k, rng)
        lhs = map_state(oracle.apply_unitary(u, psi)).entries
        rhs = gates.apply(gates.build_transform(u), map_state(psi)).entries
        worst = max(worst, float(np.max(np.abs(lhs - rhs))))
    return worst


def _named_gates(n, rng):
    worst = 0.0
    for _ in range(n):
        theta, alpha = rng.uniform(-np.pi, np.pi, 2)
        psi = oracle.random_state(2, rng)
        s = map_state(psi)
        for u, m in (
            (oracle.U_H, gates.hadamard()),
            (oracle.u_rabi(theta), gates.rabi(theta)),
            (oracle.u_phase(alpha), gates.phase(alpha)),
        ):
            lhs = map_state(u @ psi.amplitudes).entries
            worst = max(worst, float(np.max(np.abs(lhs - gates.apply(m, s).entries))))
    return worst


def _cascade(n, rng):
    worst = 0.0
    for _ in range(n):
        u1, u2 = oracle.random_unitary(2, rng), oracle.random_unitary(2, rng)
        lhs = gates.canonicalize(gates.compose(gates.build_transform(u2), gates.build_transform(u1))).matrix
        rhs = gates.build_transform(u2 @ u1).matrix
        worst = max(worst, float(np.max(np.abs(lhs - rhs))))
    return worst


def _roundtrip(n, rng):
    worst = 0.0
    for _ in range(n):
        psi = oracle.random_state(int(rng.integers(1, 9)), rng)
        back = unmap_state(map_state(psi)).amplitudes
        worst = max(worst, float(np.max(np.abs(back - psi.amplitudes))))
    return worst


def _box_preserve(n, rng):
    worst = 0.0
    for _ in range(n):
        a, b = oracle.random_state(2, rng), oracle.random_state(2, rng)
        lhs = map_state(np.kron(a.amplitudes, b.amplitudes)).entries
        rhs = (1 + boxprod.box_p(p_from_hilbert(a), p_from_hilbert(b)).entries) / 16
        worst = max(worst, float(np.max(np.abs(lhs - rhs))))
    return worst


def _box_hom(n, rng):
    worst = 0.0
    for _ in range(n):
        u1, u2 = oracle.random_unitary(2, rng), oracle.random_unitary(2, rng)
        lhs = boxprod.box_m(gates.build_transform(u1), gates.build_transform(u2)).matrix
        rhs = gates.build_transform(np.kron(u1, u2)).matrix
        worst = max(worst, float(np.max(np.abs(lhs - rhs))))
    return worst


_BASIS = np.eye(2, dtype=complex)


def _cnot16():
    worst = 0.0
    m = boxprod.m_cnot16()
    for a in (0, 1):
        for b in (0, 1):
            s = boxprod.combine_n([p_from_hilbert(_BASIS[a]), p_from_hilbert(_BASIS[b])])
            want = boxprod.combine_n([p_from_hilbert(_BASIS[a]), p_from_hilbert(_BASIS[a ^ b])])
            worst = max(worst, float(np.max(np.abs(gates.apply(m, s).entries - want.entries))))
    return worst


def _cnot64():
    worst = 0.0
    for a in (0, 1):
        for b in (0, 1):
            s = multiqubit.tensor(map_state(_BASIS[a]), map_state(_BASIS[b]))
            want = multiqubit.tensor(map_state(_BASIS[a]), map_state(_BASIS[a ^ b])).combined
            worst = max(worst, float(np.max(np.abs(multiqubit.apply_cnot64(s) - want))))
    return worst


def _evolution():
    h = 0.5 * oracle.SIGMA_X
    res = evolve(map_state([1, 0]), h, 2 * np.pi, 1e-3, store_every=50)
    ref = np.array([map_state(oracle.schrodinger_reference([1, 0], h, t)).entries for t in res.times])
    return float(np.max(np.abs(res.entries() - ref))), sum_residual(res)


def run_suite(seed: int = 0, tol: float = 1e-10) -> list[CheckRow]:
    rng = np.random.default_rng(seed)
    evo_err, evo_sum = _evolution()
    return [
        CheckRow("map/unmap round trip (K=1..8)", 200, _roundtrip(200, rng), 1e-12),
        CheckRow("named gates H, RABI, PHASE", 200, _named_gates(200, rng), tol),
        CheckRow("random U, K=2", 500, _commuting(2, 500, rng), tol),
        CheckRow("random U, K=4", 100, _commuting(4, 100, rng), tol),
        CheckRow("cascading M(U2)M(U1) ~ M(U2U1)", 200, _cascade(200, rng), tol),
        CheckRow("box product preserves the map", 500, _box_preserve(500, rng), 1e-12),
        CheckRow("box of transforms = M(U1 (x) U2)", 100, _box_hom(100, rng), tol),
        CheckRow("CNOT truth table, 16-entry box form", 4, _cnot16(), 1e-15),
        CheckRow("CNOT truth table, 64-entry tensor form", 4, _cnot64(), 1e-15),
        CheckRow("RK4 sigma_x trajectory vs analytic", 1, evo_err, 1e-8),
        CheckRow("RK4 probability sum", 1, evo_sum, 1e-10),
    ]


def format_table(rows, seed) -> str:
    width = max(len(r.name) for r in rows)
    out = [f"seed {seed}", f"{'check':<{width}}  {'cases':>5}  {'max error':>10}  {'tol':>8}  status"]
    for r in rows:
        out.append(
            f"{r.name:<{width}}  {r.cases:>5}  {r.max_error:>10.3e}  {r.tol:>8.0e}  {'PASS' if r.passed else 'FAIL'}"
        )
    return "\n".join(out)
