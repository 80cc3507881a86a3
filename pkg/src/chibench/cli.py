"""Command-line driver.

Exit codes: 0 success, 1 failed verification, 2 usage or input errors.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from chibench import analysis
from chibench.bench import (
    BenchError,
    bench_from_targets,
    compensation_report,
    parse_bench,
    parse_index_pair,
    render_bench,
    simulate_chain,
)
from chibench.qmath import LinAlgError
from chibench.source import SourceError, prepare_source
from chibench.states import ROLES, PairState, StateError, chi_state, fidelity, x_state

DUMP_HEADER = "# chibench state v1"
ROLES_PREFIX = "# roles:"


class DumpError(ValueError):
    pass


class UsageError(Exception):
    pass


def format_state_dump(s: PairState) -> str:
    lines = [DUMP_HEADER, f"{ROLES_PREFIX} {' '.join(s.roles)}"]
    for k, a in enumerate(s.amps):
        lines.append(f"{k:04b} {a.real:.16e} {a.imag:.16e}")
    return "\n".join(lines) + "\n"


def parse_state_dump(text: str) -> PairState:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines or lines[0] != DUMP_HEADER:
        raise DumpError(f"line 1: expected header {DUMP_HEADER!r}")
    if len(lines) < 2 or not lines[1].startswith(ROLES_PREFIX):
        raise DumpError(f"line 2: expected '{ROLES_PREFIX} r1 r2 r3 r4'")
    roles = tuple(lines[1][len(ROLES_PREFIX):].split())
    if len(roles) != 4 or sorted(roles) != sorted(ROLES):
        raise DumpError(f"line 2: roles {roles} are not a permutation of {ROLES}")
    data = lines[2:]
    if len(data) != 16:
        raise DumpError(f"expected 16 amplitude lines, got {len(data)}")
    amps = np.zeros(16, dtype=np.complex128)
    for k, line in enumerate(data):
        lineno = k + 3
        parts = line.split()
        if len(parts) != 3:
            raise DumpError(f"line {lineno}: expected 'BITSTRING RE IM'")
        bits, re_, im_ = parts
        if bits != f"{k:04b}":
            raise DumpError(f"line {lineno}: expected bitstring {k:04b}, got {bits!r}")
        try:
            amps[k] = complex(float(re_), float(im_))
        except ValueError:
            raise DumpError(f"line {lineno}: bad number in {line!r}") from None
    if not np.all(np.isfinite(amps)):
        raise DumpError("non-finite amplitude")
    norm = float(np.linalg.norm(amps))
    if abs(norm - 1.0) > 1e-9:
        raise DumpError(f"state is not normalised (norm {norm:.12g})")
    return PairState(amps, roles)


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"{path}: {exc.strerror}") from None


def _write(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8")


def _load_benches(paths):
    benches = []
    for path in paths:
        try:
            benches.append(parse_bench(_read(path)))
        except BenchError as exc:
            raise UsageError(f"{path}: {exc}") from None
    return benches


def _load_input(where: str) -> PairState:
    if where == "x":
        return x_state()
    try:
        return parse_state_dump(_read(where))
    except DumpError as exc:
        raise UsageError(f"{where}: {exc}") from None


def _index_pair(text: str) -> tuple[int, int]:
    try:
        return parse_index_pair(text)
    except BenchError as exc:
        raise UsageError(str(exc)) from None


def cmd_compile(args) -> int:
    try:
        bench = bench_from_targets(args.target)
    except BenchError as exc:
        raise UsageError(str(exc)) from None
    _write(args.out, render_bench(bench))
    return 0


def cmd_simulate(args) -> int:
    out = simulate_chain(_load_benches(args.bench), _load_input(args.input))
    _write(args.dump, format_state_dump(out))
    return 0


def cmd_verify(args) -> int:
    if not args.target.startswith("chi:"):
        raise UsageError(f"--target must look like chi:I,J, got {args.target!r}")
    i, j = _index_pair(args.target[len("chi:"):])
    out = simulate_chain(_load_benches(args.bench), _load_input(args.input))
    target = chi_state(i, j)
    if out.roles != target.roles:
        raise UsageError(
            f"output roles {' '.join(out.roles)} differ from chi roles "
            f"{' '.join(target.roles)} (missing swap_labels?)"
        )
    f = fidelity(out, target)
    ok = f >= 1.0 - args.tol
    print(f"fidelity {f:.17g}")
    print(f"target chi:{i},{j} tol {args.tol:g} {'PASS' if ok else 'FAIL'}")
    return 0 if ok else 1


def format_report(rep: analysis.AnalysisReport) -> str:
    rows = list(rep.rows())
    w0 = max(len(r[0]) for r in rows)
    w1 = max(len(r[1]) for r in rows)
    out = [f"{'quantity':<{w0}}  {'label':<{w1}}  value"]
    out += [f"{kind:<{w0}}  {label:<{w1}}  {value:.12f}" for kind, label, value in rows]
    out.append("")
    out.append("kind\tlabel\tvalue")
    out += [f"{kind}\t{label}\t{value:.17g}" for kind, label, value in rows]
    return "\n".join(out) + "\n"


def cmd_analyze(args) -> int:
    if args.chi is not None:
        s = chi_state(*_index_pair(args.chi))
    else:
        s = _load_input(args.state)
    try:
        rep = analysis.report(s)
    except StateError as exc:
        raise UsageError(str(exc)) from None
    sys.stdout.write(format_report(rep))
    return 0


def cmd_basis_check(args) -> int:
    dev = analysis.basis_orthonormality(args.tol)
    ok = dev < args.tol
    print(f"gram deviation {dev:.3e} tol {args.tol:g} {'PASS' if ok else 'FAIL'}")
    return 0 if ok else 1


def cmd_source(args) -> int:
    try:
        alpha = complex(args.alpha.replace(" ", ""))
    except ValueError:
        raise UsageError(f"--alpha must be a number, got {args.alpha!r}") from None
    try:
        state, prob = prepare_source(alpha)
    except SourceError as exc:
        raise UsageError(str(exc)) from None
    print(f"probability {prob:.17g}")
    sys.stdout.write(format_state_dump(state))
    return 0


def cmd_compensation(args) -> int:
    rep = compensation_report()
    print(f"compensated_fidelity {rep.compensated_fidelity:.17g}")
    print(f"literal_fidelity {rep.literal_fidelity:.17g}")
    print(f"flagged {'yes' if rep.flagged else 'no'}: {rep.message()}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="chibench", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("compile", help="write a bench file for a target")
    c.add_argument("--target", required=True, help="chi00 or pauli:I,J")
    c.add_argument("--out", required=True, help="output file ('-' for stdout)")
    c.set_defaults(func=cmd_compile)

    s = sub.add_parser("simulate", help="run a state through one or more benches")
    s.add_argument("--bench", action="append", required=True, help="bench file (repeatable, applied in order)")
    s.add_argument("--input", default="x", help="'x' for the source state or a state dump file")
    s.add_argument("--dump", default=None, help="output dump file (default stdout)")
    s.set_defaults(func=cmd_simulate)

    v = sub.add_parser("verify", help="check a bench chain against chi:I,J")
    v.add_argument("--bench", action="append", required=True)
    v.add_argument("--target", required=True, help="chi:I,J")
    v.add_argument("--input", default="x")
    v.add_argument("--tol", type=float, default=1e-9)
    v.set_defaults(func=cmd_verify)

    a = sub.add_parser("analyze", help="entanglement report for a state")
    g = a.add_mutually_exclusive_group(required=True)
    g.add_argument("--chi", help="I,J")
    g.add_argument("--state", help="state dump file")
    a.set_defaults(func=cmd_analyze)

    b = sub.add_parser("basis-check", help="orthonormality of the chi family")
    b.add_argument("--tol", type=float, default=1e-12)
    b.set_defaults(func=cmd_basis_check)

    src = sub.add_parser("source", help="heralding probability and encoded source state")
    src.add_argument("--alpha", default="1", help="l=0 amplitude (complex allowed, e.g. 0.5+0.5j)")
    src.set_defaults(func=cmd_source)

    k = sub.add_parser("compensation", help="effect of the V-path phase in the second interferometer")
    k.set_defaults(func=cmd_compensation)
    return p


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (UsageError, StateError, LinAlgError) as exc:
        print(f"chibench {args.command}: error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())
