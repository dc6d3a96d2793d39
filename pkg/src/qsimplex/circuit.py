"""Line-oriented circuit language.

Example::

    # Bell-type preparation
    qubits 2
    init |00>
    H 0
    CNOT 0 1

Statements, one per line (``#`` starts a comment):

``qubits N``
    N is 1 or 2, must come first.
``init |b...>`` or ``init (re,im) (re,im) ...``
    named basis state or 2^N amplitude literals; defaults to all zeros.
``H q`` / ``RABI q theta`` / ``PHASE q alpha``
    single-qubit gates, angles in radians.
``CNOT 0 1`` / ``CU 0 1 (a) (b) (c) (d)``
    controlled gates, control qubit 0, target qubit 1; CU takes the 2x2
    unitary row-major as four amplitude literals.

Angles accept plain floats and multiples of ``pi`` (``pi/2``, ``-3*pi/4``).
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass, field

import numpy as np

from .errors import SimplexError
from .oracle import unitarity_error

__all__ = [
    "CircuitError",
    "CircuitSyntaxError",
    "IndexOutOfRange",
    "BadAmplitudeLiteral",
    "NonNormalizedInit",
    "NonUnitaryLiteral",
    "Op",
    "CircuitProgram",
    "parse_circuit",
    "pretty_print",
    "parse_amplitudes",
]

INIT_NORM_TOL = 1e-6


class CircuitError(SimplexError):
    def __init__(self, message: str, line: int = 0, column: int = 0):
        self.message = message
        self.line = line
        self.column = column
        super().__init__(f"line {line}, column {column}: {message}" if line else message)


class CircuitSyntaxError(CircuitError):
    pass


class IndexOutOfRange(CircuitError):
    pass


class BadAmplitudeLiteral(CircuitError):
    pass


class NonNormalizedInit(CircuitError):
    pass


class NonUnitaryLiteral(CircuitError):
    pass


@dataclass(frozen=True)
class Op:
    kind: str
    targets: tuple
    params: tuple = ()
    matrix: tuple | None = None
    line: int = field(default=0, compare=False)

    def unitary(self) -> np.ndarray | None:
        if self.matrix is None:
            return None
        return np.array(self.matrix, dtype=complex).reshape(2, 2)


@dataclass(frozen=True)
class CircuitProgram:
    qubit_count: int
    ops: tuple
    initial_state: tuple
    initial_label: str | None = None

    @property
    def initial(self) -> np.ndarray:
        return np.array(self.initial_state, dtype=complex)


_TOKEN = re.compile(r"\(\s*[^()]*\)|\|[^>\s]*>?|[^\s()|]+|\S")
_ANGLE = re.compile(
    r"""^(?P<sign>[+-])?
        (?:(?P<num>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)(?P<star>\*)?)?
        (?P<pi>pi)?
        (?:/(?P<den>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?))?$""",
    re.VERBOSE | re.IGNORECASE,
)

_ARITY = {"H": 1, "RABI": 1, "PHASE": 1, "CNOT": 2, "CU": 2}


def _tokens(text: str):
    for m in _TOKEN.finditer(text):
        yield m.group(0), m.start() + 1


def _parse_angle(tok: str, line: int, col: int) -> float:
    m = _ANGLE.match(tok)
    if not m or not (m.group("num") or m.group("pi")) or (m.group("star") and not m.group("pi")):
        raise CircuitSyntaxError(f"expected an angle, got {tok!r}", line, col)
    value = float(m.group("num")) if m.group("num") else 1.0
    if m.group("pi"):
        value *= math.pi
    if m.group("den"):
        den = float(m.group("den"))
        if den == 0:
            raise CircuitSyntaxError("division by zero in angle", line, col)
        value /= den
    if m.group("sign") == "-":
        value = -value
    if not math.isfinite(value):
        raise CircuitSyntaxError(f"angle {tok!r} is not finite", line, col)
    return value


def _parse_amp(tok: str, line: int, col: int) -> complex:
    if not (tok.startswith("(") and tok.endswith(")")):
        raise BadAmplitudeLiteral(f"expected an amplitude literal (re,im), got {tok!r}", line, col)
    parts = tok[1:-1].split(",")
    if len(parts) != 2:
        raise BadAmplitudeLiteral(f"amplitude literal needs exactly two numbers: {tok!r}", line, col)
    try:
        re_, im_ = (float(p) for p in parts)
    except ValueError:
        raise BadAmplitudeLiteral(f"non-numeric amplitude literal {tok!r}", line, col) from None
    if not (math.isfinite(re_) and math.isfinite(im_)):
        raise BadAmplitudeLiteral(f"amplitude literal {tok!r} is not finite", line, col)
    return complex(re_, im_)


def _parse_ket(tok: str, n: int, line: int, col: int) -> np.ndarray:
    bits = tok[1:-1] if tok.endswith(">") else None
    if not bits or any(b not in "01" for b in bits):
        raise CircuitSyntaxError(f"malformed basis state {tok!r}", line, col)
    if len(bits) != n:
        raise CircuitSyntaxError(f"basis state {tok!r} has {len(bits)} bits, program has {n} qubits", line, col)
    vec = np.zeros(2**n, dtype=complex)
    vec[int(bits, 2)] = 1.0
    return vec


def _parse_index(tok: str, n: int, line: int, col: int) -> int:
    if not tok.isdigit():
        raise CircuitSyntaxError(f"expected a qubit index, got {tok!r}", line, col)
    q = int(tok)
    if q >= n:
        raise IndexOutOfRange(f"qubit index {q} out of range for {n} qubit(s)", line, col)
    return q


def parse_amplitudes(tokens, n_expected: int | None, line: int = 0) -> np.ndarray:
    """Amplitude literals to a normalized vector (tolerance INIT_NORM_TOL)."""
    amps = [_parse_amp(tok, line, col) for tok, col in tokens]
    if n_expected is not None and len(amps) != n_expected:
        col = tokens[0][1] if tokens else 0
        raise BadAmplitudeLiteral(f"expected {n_expected} amplitudes, got {len(amps)}", line, col)
    vec = np.array(amps, dtype=complex)
    norm = float(np.linalg.norm(vec))
    if abs(norm - 1.0) > INIT_NORM_TOL:
        col = tokens[0][1] if tokens else 0
        raise NonNormalizedInit(f"initial state has norm {norm!r}", line, col)
    return vec / norm


def parse_circuit(text: str) -> CircuitProgram:
    n = None
    init = None
    label = None
    ops = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0]
        toks = list(_tokens(body))
        if not toks:
            continue
        head, hcol = toks[0]
        word = head.upper()
        args = toks[1:]

        if word == "QUBITS":
            if n is not None:
                raise CircuitSyntaxError("duplicate 'qubits' statement", lineno, hcol)
            if len(args) != 1 or not args[0][0].isdigit():
                raise CircuitSyntaxError("usage: qubits N", lineno, hcol)
            n = int(args[0][0])
            if n not in (1, 2):
                raise CircuitSyntaxError(f"only 1 or 2 qubits are supported, got {n}", lineno, args[0][1])
            continue

        if n is None:
            raise CircuitSyntaxError("program must start with 'qubits N'", lineno, hcol)

        if word == "INIT":
            if init is not None:
                raise CircuitSyntaxError("duplicate 'init' statement", lineno, hcol)
            if ops:
                raise CircuitSyntaxError("'init' must precede all gates", lineno, hcol)
            if not args:
                raise CircuitSyntaxError("usage: init |bits> or init (re,im) ...", lineno, hcol)
            if args[0][0].startswith("|"):
                if len(args) != 1:
                    raise CircuitSyntaxError("unexpected tokens after basis state", lineno, args[1][1])
                init = _parse_ket(args[0][0], n, lineno, args[0][1])
                label = args[0][0]
            else:
                init = parse_amplitudes(args, 2**n, lineno)
            continue

        if word not in _ARITY:
            raise CircuitSyntaxError(f"unknown statement {head!r}", lineno, hcol)

        arity = _ARITY[word]
        extra = {"H": 0, "RABI": 1, "PHASE": 1, "CNOT": 0, "CU": 4}[word]
        if len(args) != arity + extra:
            raise CircuitSyntaxError(
                f"{word} takes {arity} qubit index(es) and {extra} parameter(s), got {len(args)} argument(s)",
                lineno,
                hcol,
            )
        if arity == 2 and n != 2:
            raise IndexOutOfRange(f"{word} needs 2 qubits, program has {n}", lineno, hcol)
        targets = tuple(_parse_index(tok, n, lineno, col) for tok, col in args[:arity])
        if arity == 2 and targets != (0, 1):
            raise IndexOutOfRange(f"{word} supports control 0 and target 1 only, got {targets}", lineno, args[0][1])

        params = ()
        matrix = None
        if word in ("RABI", "PHASE"):
            params = (_parse_angle(args[1][0], lineno, args[1][1]),)
        elif word == "CU":
            entries = [_parse_amp(tok, lineno, col) for tok, col in args[2:]]
            err = unitarity_error(np.array(entries).reshape(2, 2))
            if err > 1e-9:
                raise NonUnitaryLiteral(f"CU matrix is not unitary (error {err:.3e})", lineno, args[2][1])
            matrix = tuple(entries)
        ops.append(Op(word, targets, params, matrix, lineno))

    if n is None:
        raise CircuitSyntaxError("empty program: missing 'qubits N'", 1, 1)
    if init is None:
        init = np.zeros(2**n, dtype=complex)
        init[0] = 1.0
        label = "|" + "0" * n + ">"
    return CircuitProgram(n, tuple(ops), tuple(complex(a) for a in init), label)


def _fmt_amp(z: complex) -> str:
    return f"({float(z.real)!r},{float(z.imag)!r})"


def pretty_print(program: CircuitProgram) -> str:
    lines = [f"qubits {program.qubit_count}"]
    if program.initial_label:
        lines.append(f"init {program.initial_label}")
    else:
        lines.append("init " + " ".join(_fmt_amp(z) for z in program.initial_state))
    for op in program.ops:
        parts = [op.kind, *map(str, op.targets)]
        parts.extend(repr(float(p)) for p in op.params)
        if op.matrix is not None:
            parts.extend(_fmt_amp(z) for z in op.matrix)
        lines.append(" ".join(parts))
    return "\n".join(lines) + "\n"
