"""Command-line front end.

Exit status: 0 on success, 2 for circuit or argument parse errors, 3 for
numeric or validation failures, 1 for I/O errors.
"""
from __future__ import annotations

import argparse
import contextlib
import csv
import re
import sys
from pathlib import Path

import numpy as np

from . import oracle
from .circuit import CircuitError, parse_amplitudes, parse_circuit, _tokens
from .core import map_state, p_of, validate
from .errors import OutOfRange, SimplexError
from .evolve import evolve
from .gates import apply, rabi
from .runner import MODES, REPRESENTATIONS, run
from .verification import format_table, run_suite

EXIT_OK = 0
EXIT_IO = 1
EXIT_PARSE = 2
EXIT_NUMERIC = 3


def fmt(x: float) -> str:
    return f"{float(x):.17g}"


@contextlib.contextmanager
def _sink(out):
    if out is None or out == "-":
        yield sys.stdout
    else:
        with open(out, "w", newline="", encoding="utf-8") as f:
            yield f


def _writer(f):
    return csv.writer(f, lineterminator="\n")


def rabi_sweep(steps: int, out=None, init=(1.0, 0.0)) -> list[list[float]]:
    """Rows (theta, s1..s8) for theta evenly spaced over [0, 2 pi]."""
    if steps < 2:
        raise OutOfRange("steps must be at least 2")
    s0 = map_state(np.asarray(init, dtype=complex))
    rows = []
    for theta in np.linspace(0.0, 2 * np.pi, steps):
        rows.append([float(theta), *apply(rabi(theta), s0).entries])
    if out is not None:
        with _sink(out) as f:
            w = _writer(f)
            w.writerow(["theta"] + [f"s{i}" for i in range(1, 9)])
            w.writerows([fmt(v) for v in row] for row in rows)
    return rows


_DETUNED = re.compile(r"^detuned\(\s*([^,()]+)\s*,\s*([^,()]+)\s*\)$", re.IGNORECASE)


def hamiltonian_preset(preset: str) -> np.ndarray:
    """``sigma_x``, ``sigma_z`` or ``detuned(delta,omega)`` = (delta sz + omega sx)/2."""
    name = preset.strip().lower()
    if name == "sigma_x":
        return oracle.SIGMA_X.copy()
    if name == "sigma_z":
        return oracle.SIGMA_Z.copy()
    m = _DETUNED.match(preset.strip())
    if m:
        try:
            delta, omega = float(m.group(1)), float(m.group(2))
        except ValueError:
            raise OutOfRange(f"bad detuned parameters in {preset!r}") from None
        return 0.5 * (delta * oracle.SIGMA_Z + omega * oracle.SIGMA_X)
    raise OutOfRange(f"unknown Hamiltonian preset {preset!r}; use sigma_x, sigma_z or detuned(D,W)")


def evolve_cmd(preset: str, t_final: float, dt: float, out=None, init=(1.0, 0.0), every: int = 1):
    """Rows (t, s1..s8, sum_residual) of the integrated trajectory."""
    h = hamiltonian_preset(preset)
    res = evolve(map_state(np.asarray(init, dtype=complex)), h, t_final, dt, store_every=every)
    rows = [[float(t), *s.entries, float(r)] for t, s, r in zip(res.times, res.states, res.sum_residuals)]
    if out is not None:
        with _sink(out) as f:
            w = _writer(f)
            w.writerow(["t"] + [f"s{i}" for i in range(1, 9)] + ["sum_residual"])
            w.writerows([fmt(v) for v in row] for row in rows)
    return rows


def _state_from_args(words: list[str]) -> np.ndarray:
    text = " ".join(words)
    toks = list(_tokens(text))
    if len(toks) == 1 and toks[0][0].startswith("|"):
        bits = toks[0][0].strip("|>")
        if not bits or any(b not in "01" for b in bits):
            raise CircuitError(f"malformed basis state {toks[0][0]!r}")
        v = np.zeros(2 ** len(bits), dtype=complex)
        v[int(bits, 2)] = 1
        return v
    return parse_amplitudes(toks, None)


def _print_vector(label, v, f):
    f.write(f"{label}: " + " ".join(fmt(x) for x in v) + "\n")


def _cmd_map(args):
    psi = _state_from_args(args.state)
    s = map_state(psi)
    with _sink(args.out) as f:
        w = _writer(f)
        w.writerow(["index", "s", "p"])
        for i, (si, pi) in enumerate(zip(s.entries, p_of(s).entries), start=1):
            w.writerow([i, fmt(si), fmt(pi)])
    rep = validate(s, args.tol)
    print(str(rep), file=sys.stderr)
    return EXIT_OK if rep.ok else EXIT_NUMERIC


def _cmd_run(args):
    text = Path(args.circuit).read_text(encoding="utf-8")
    program = parse_circuit(text)
    report = run(program, args.mode, args.repr)
    with _sink(args.out) as f:
        f.write(f"representation: {report.representation}\n")
        if report.hilbert is not None:
            f.write("hilbert: " + " ".join(f"({fmt(z.real)},{fmt(z.imag)})" for z in report.hilbert.amplitudes) + "\n")
            _print_vector("map(hilbert)", report.mapped_hilbert, f)
        if report.simplex is not None:
            _print_vector("simplex", report.simplex, f)
        if report.deviation is not None:
            f.write(f"max deviation: {report.deviation:.3e}\n")
        if report.note:
            f.write(f"note: {report.note}\n")
    if report.deviation is not None and report.deviation > args.tol:
        print(f"deviation {report.deviation:.3e} exceeds tolerance {args.tol:.1e}", file=sys.stderr)
        return EXIT_NUMERIC
    return EXIT_OK


def _cmd_rabi(args):
    rabi_sweep(args.steps, args.out or "-")
    return EXIT_OK


def _cmd_evolve(args):
    init = _state_from_args(args.init)
    evolve_cmd(args.preset, args.t_final, args.dt, args.out or "-", init=init, every=args.every)
    return EXIT_OK


def _cmd_verify(args):
    rows = run_suite(args.seed, args.tol)
    with _sink(args.out) as f:
        f.write(format_table(rows, args.seed) + "\n")
    return EXIT_OK if all(r.passed for r in rows) else EXIT_NUMERIC


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="qsimplex", description="Simulate qubits in the probability simplex.")
    sub = p.add_subparsers(dest="command", required=True)

    m = sub.add_parser("map", help="print the simplex image of a state")
    m.add_argument("state", nargs="+", help="basis state like '|01>' or amplitude literals '(re,im)'")
    m.add_argument("--tol", type=float, default=1e-9)
    m.add_argument("--out")
    m.set_defaults(func=_cmd_map)

    r = sub.add_parser("run", help="execute a circuit file")
    r.add_argument("circuit")
    r.add_argument("--mode", choices=MODES, default="both")
    r.add_argument("--repr", choices=REPRESENTATIONS, default="box16")
    r.add_argument("--tol", type=float, default=1e-10)
    r.add_argument("--out")
    r.set_defaults(func=_cmd_run)

    rs = sub.add_parser("rabi-sweep", help="CSV of the Rabi flopping curve")
    rs.add_argument("--steps", type=int, default=201)
    rs.add_argument("--out")
    rs.set_defaults(func=_cmd_rabi)

    e = sub.add_parser("evolve", help="integrate the simplex equation of motion")
    e.add_argument("--preset", default="sigma_x", help="sigma_x, sigma_z or detuned(D,W)")
    e.add_argument("--t-final", type=float, default=2 * np.pi)
    e.add_argument("--dt", type=float, default=1e-3)
    e.add_argument("--every", type=int, default=1, help="store every n-th step")
    e.add_argument("--init", nargs="+", default=["|0>"])
    e.add_argument("--out")
    e.set_defaults(func=_cmd_evolve)

    v = sub.add_parser("verify", help="run the commuting-diagram checks")
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--tol", type=float, default=1e-10)
    v.add_argument("--out")
    v.set_defaults(func=_cmd_verify)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CircuitError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except SimplexError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
