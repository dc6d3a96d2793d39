"""Execute circuit programs in the simplex and in Hilbert space side by side."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import boxprod, gates, multiqubit, oracle
from .circuit import CircuitProgram, Op
from .core import HilbertState, map_state, p_from_hilbert
from .errors import SimplexError

MODES = ("simplex", "hilbert", "both")
REPRESENTATIONS = ("box16", "tensor64")

# A control amplitude below this is treated as exactly zero when tracking
# product factors through a CNOT.
_BASIS_TOL = 1e-12


@dataclass
class RunReport:
    mode: str
    representation: str
    hilbert: HilbertState | None = None
    mapped_hilbert: np.ndarray | None = None
    simplex: np.ndarray | None = None
    reference: np.ndarray | None = None
    deviation: float | None = None
    note: str = ""


def gate_unitary(op: Op) -> np.ndarray:
    if op.kind == "H":
        return oracle.U_H
    if op.kind == "RABI":
        return oracle.u_rabi(op.params[0])
    if op.kind == "PHASE":
        return oracle.u_phase(op.params[0])
    if op.kind == "CNOT":
        return oracle.U_CNOT
    if op.kind == "CU":
        return oracle.controlled(op.unitary())
    raise SimplexError(f"unknown gate {op.kind}")


def gate_transform(op: Op) -> gates.TransformMatrix:
    """Closed-form 8x8 transform of a single-qubit gate."""
    if op.kind == "H":
        return gates.hadamard()
    if op.kind == "RABI":
        return gates.rabi(op.params[0])
    if op.kind == "PHASE":
        return gates.phase(op.params[0])
    raise SimplexError(f"{op.kind} is not a single-qubit gate")


def full_unitary(op: Op, n: int) -> np.ndarray:
    u = gate_unitary(op)
    if op.kind in ("CNOT", "CU") or n == 1:
        return u
    eye = np.eye(2)
    return np.kron(u, eye) if op.targets[0] == 0 else np.kron(eye, u)


def run_hilbert(program: CircuitProgram) -> HilbertState:
    psi = program.initial
    for op in program.ops:
        psi = full_unitary(op, program.qubit_count) @ psi
    return HilbertState(psi)


def _box16_transform(op: Op) -> gates.TransformMatrix:
    if op.kind == "CNOT":
        return boxprod.m_cnot16()
    if op.kind == "CU":
        return boxprod.m_controlled_u(op.unitary())
    g = gates.canonicalize(gate_transform(op))
    eye = gates.identity(2)
    return boxprod.box_m(g, eye) if op.targets[0] == 0 else boxprod.box_m(eye, g)


def _basis_label_factors(program: CircuitProgram):
    if program.initial_label is None:
        return None
    bits = program.initial_label.strip("|>")
    return [np.eye(2, dtype=complex)[int(b)] for b in bits]


def _split_product(psi: np.ndarray):
    """Factor a two-qubit state as a (x) b, or return None if entangled.

    The global phase is put entirely on the first factor, so the split is a
    convention; the 64-entry representation depends on it.
    """
    grid = psi.reshape(2, 2)
    u, sv, vt = np.linalg.svd(grid)
    if sv[1] > 1e-12:
        return None
    a = u[:, 0] * sv[0]
    b = vt[0]
    # make the largest entry of b real and positive
    j = int(np.argmax(np.abs(b)))
    ph = b[j] / abs(b[j])
    return [a * ph, b / ph]


def _run_tensor64(program: CircuitProgram, track: bool):
    factors = _basis_label_factors(program)
    if factors is None:
        factors = _split_product(program.initial)
        if factors is None:
            raise SimplexError("tensor64 needs a product initial state")
    v = multiqubit.tensor(map_state(factors[0]), map_state(factors[1])).combined
    live = [f.copy() for f in factors] if track else None
    for op in program.ops:
        if op.kind == "CNOT":
            v = multiqubit.apply_cnot64(v)
            if live is not None:
                c0, c1 = live[0]
                if abs(c1) <= _BASIS_TOL:
                    pass
                elif abs(c0) <= _BASIS_TOL:
                    live[1] = oracle.SIGMA_X @ live[1]
                else:
                    live = None
        elif op.kind == "CU":
            raise SimplexError("CU has no 64-entry analog; use --repr box16")
        else:
            t = gates.AffineTransform.from_matrix(gate_transform(op))
            q = op.targets[0]
            v = multiqubit.apply_single64(t, v, q)
            if live is not None:
                live[q] = gate_unitary(op) @ live[q]
    ref = None
    if live is not None:
        ref = multiqubit.tensor(map_state(live[0]), map_state(live[1])).combined
    return v, ref


def run_simplex(program: CircuitProgram, representation: str = "box16", track: bool = False):
    """Simplex result, plus a product-factor reference for tensor64 when tracked."""
    n = program.qubit_count
    if n == 1:
        s = map_state(program.initial)
        for op in program.ops:
            s = gates.apply(gate_transform(op), s)
        return s.entries, None
    if representation == "tensor64":
        return _run_tensor64(program, track)
    if representation != "box16":
        raise SimplexError(f"unknown representation {representation!r}")
    factors = _basis_label_factors(program)
    if factors is not None:
        s = boxprod.combine_n([p_from_hilbert(f) for f in factors])
    else:
        s = map_state(program.initial)
    for op in program.ops:
        s = gates.apply(_box16_transform(op), s)
    return s.entries, None


def run(program: CircuitProgram, mode: str = "both", representation: str = "box16") -> RunReport:
    if mode not in MODES:
        raise SimplexError(f"mode must be one of {MODES}, got {mode!r}")
    if representation not in REPRESENTATIONS:
        raise SimplexError(f"representation must be one of {REPRESENTATIONS}, got {representation!r}")
    rep = representation if program.qubit_count == 2 else "single"
    report = RunReport(mode, rep)

    if mode in ("hilbert", "both"):
        psi = run_hilbert(program)
        report.hilbert = psi
        report.mapped_hilbert = map_state(psi).entries

    if mode in ("simplex", "both"):
        v, ref = run_simplex(program, representation, track=(mode == "both"))
        report.simplex = v
        if mode == "both":
            if rep == "tensor64":
                if ref is None:
                    report.note = "Hilbert result is not tracked as a product state; no 64-entry reference"
                else:
                    report.reference = ref
                    report.deviation = float(np.max(np.abs(v - ref)))
            else:
                report.reference = report.mapped_hilbert
                report.deviation = float(np.max(np.abs(v - report.mapped_hilbert)))
    return report
