"""Command-line entry point: ``hyperpf <subcommand> [flags]``.

Every subcommand exits 0 on success, 1 when a check it runs fails, and 2
on invalid input.  ``--format records`` prints line-oriented key=value
records (deterministic for a given configuration and seed).
"""

from __future__ import annotations

import argparse
import random
import sys
import time
from dataclasses import dataclass
from fractions import Fraction

from .circuit import (
    AffineSubstitution, EvaluationError, dumps_circuit, evaluate, loads_circuit, parse_affine,
    project, size, to_polynomial,
)
from .invariants import (
    DEFAULT_TERM_BUDGET, HyperpfaffianInstance, SearchStats, classical_pfaffian,
    determinant, hyperpfaffian, hyperpfaffian_expand, permanent, permanent_naive,
)
from .kernel import ParseError, ResourceError, format_rational, parse_rational
from .linalg import SquareMatrix, determinant_leibniz
from .projection import MAX_SYMBOLIC_D, verify_projection_theorem
from .repcheck import (
    DEFAULT_BASIS_BUDGET, invariant_dimension_bruteforce, invariant_dimension_predicted,
    verify_proposition,
)
from .tensor import (
    apply_group_element, load_tensor, random_sparse_tensor, random_special_linear,
)

DEFAULT_SEED = 42


class UsageError(ValueError):
    pass


@dataclass
class RunConfiguration:
    subcommand: str
    input: str | None = None
    k: int | None = None
    n: int | None = None
    d: int | None = None
    m: str | None = None
    b: int | None = None
    seed: int = DEFAULT_SEED
    trials: int = 100
    budget: int | None = None
    force: bool = False
    format: str = "text"

    def validate(self):
        if not 0 <= self.seed < 2**64:
            raise UsageError("seed must be a 64-bit unsigned integer")
        if self.trials < 0:
            raise UsageError("trials must be nonnegative")
        for name in ("k", "n", "d", "b"):
            value = getattr(self, name)
            if value is not None and value < 1:
                raise UsageError(f"--{name} must be positive")
        if self.subcommand in ("check-invariance", "bench", "verify-proposition"):
            if self.k is None or self.n is None:
                raise UsageError(f"{self.subcommand} needs --k and --n")
            if self.n % (2 * self.k):
                raise UsageError(f"2k = {2 * self.k} must divide n = {self.n}")
        if self.subcommand == "verify-projection" and (self.k is None or self.d is None):
            raise UsageError("verify-projection needs --k and --d")
        if self.subcommand == "invariant-dim" and (self.n is None or self.m is None):
            raise UsageError("invariant-dim needs --n and --m")


class Output:
    def __init__(self, fmt: str, stream=None):
        self.fmt = fmt
        self.stream = stream or sys.stdout

    def emit(self, text: str = "", records: dict | None = None):
        if self.fmt == "records":
            if records is not None:
                for key, value in records.items():
                    self.stream.write(f"{key}={_record_value(value)}\n")
        elif text:
            self.stream.write(text if text.endswith("\n") else text + "\n")


def _record_value(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, Fraction):
        return format_rational(v)
    return str(v)


def parse_matrix(text: str) -> SquareMatrix:
    """Rows separated by ';' or newlines, entries by ',' or whitespace."""
    rows = []
    for row in text.replace("\n", ";").split(";"):
        row = row.replace(",", " ").split()
        if row:
            rows.append(tuple(parse_rational(x) for x in row))
    if not rows:
        raise ParseError("empty matrix")
    try:
        return SquareMatrix(tuple(rows))
    except ValueError as e:
        raise ParseError(str(e)) from None


def _matrix_arg(args) -> SquareMatrix:
    if args.matrix:
        return parse_matrix(args.matrix)
    if args.input:
        with open(args.input) as fh:
            return parse_matrix(fh.read())
    raise UsageError("give a matrix with --matrix '1,2;3,4' or --input PATH")


def _parse_m(text: str) -> list[int]:
    lo, sep, hi = text.partition(":")
    try:
        values = list(range(int(lo), int(hi) + 1)) if sep else [int(lo)]
    except ValueError:
        raise UsageError(f"--m must be an integer or a range a:b, got {text!r}") from None
    if not values or values[0] < 1:
        raise UsageError("--m must be positive")
    return values


def _load_instance(cfg: RunConfiguration) -> HyperpfaffianInstance:
    if not cfg.input:
        raise UsageError("--input PATH to an hpft tensor file is required")
    t = load_tensor(cfg.input)
    return HyperpfaffianInstance.of(t, cfg.k)


def _head(cfg: RunConfiguration) -> dict:
    return {"command": cfg.subcommand, "seed": cfg.seed}


# -- subcommands ----------------------------------------------------------

def cmd_eval(cfg, args, out) -> int:
    inst = _load_instance(cfg)
    value = hyperpfaffian(inst)
    out.emit(format_rational(value), {**_head(cfg), "k": inst.k, "n": inst.n, "d": inst.d, "value": value})
    return 0


def cmd_expand(cfg, args, out) -> int:
    inst = _load_instance(cfg)
    value = hyperpfaffian_expand(inst, budget=cfg.budget or DEFAULT_TERM_BUDGET)
    out.emit(format_rational(value), {**_head(cfg), "k": inst.k, "n": inst.n, "d": inst.d, "value": value})
    return 0


def cmd_permanent(cfg, args, out) -> int:
    m = _matrix_arg(args)
    value = permanent_naive(m) if args.method == "naive" else permanent(m)
    out.emit(format_rational(value), {**_head(cfg), "n": m.n, "method": args.method, "value": value})
    return 0


def cmd_determinant(cfg, args, out) -> int:
    m = _matrix_arg(args)
    value = determinant_leibniz(m) if args.method == "leibniz" else determinant(m)
    out.emit(format_rational(value), {**_head(cfg), "n": m.n, "method": args.method, "value": value})
    return 0


def cmd_pfaffian(cfg, args, out) -> int:
    m = _matrix_arg(args)
    try:
        value = classical_pfaffian(m)
    except ValueError as e:
        raise UsageError(str(e)) from None
    out.emit(format_rational(value), {**_head(cfg), "n": m.n, "value": value})
    return 0


def cmd_verify_projection(cfg, args, out) -> int:
    report = verify_projection_theorem(cfg.k, cfg.d, force=cfg.force)
    if cfg.format == "records":
        out.stream.write(f"command={cfg.subcommand}\nseed={cfg.seed}\n" + report.records())
    else:
        out.emit(report.text())
    return 0 if report.equal else 1


def cmd_invariant_dim(cfg, args, out) -> int:
    budget = cfg.budget or DEFAULT_BASIS_BUDGET
    rows = []
    ok = True
    for m in _parse_m(cfg.m):
        b = cfg.b
        if b is not None and m % b:
            raise UsageError(f"block size {b} does not divide m = {m}")
        predicted = invariant_dimension_predicted(cfg.n, m, b)
        try:
            brute = invariant_dimension_bruteforce(cfg.n, m, b, budget=budget)
        except ResourceError:
            brute = None
        match = None if brute is None or predicted is None else brute == predicted
        ok = ok and match is not False
        rows.append((cfg.n, m, b, predicted, brute, match))

    def cell(v):
        return "-" if v is None else _record_value(v)

    if cfg.format == "records":
        out.stream.write(f"command={cfg.subcommand}\nseed={cfg.seed}\n")
        for n, m, b, predicted, brute, match in rows:
            out.stream.write(f"n={n} m={m} b={cell(b)} predicted={cell(predicted)} "
                             f"brute_force={cell(brute)} match={cell(match)}\n")
    else:
        lines = [f"{'n':>3} {'m':>3} {'b':>3} {'predicted':>10} {'brute_force':>12} {'match':>6}"]
        for r in rows:
            lines.append(f"{r[0]:>3} {r[1]:>3} {cell(r[2]):>3} {cell(r[3]):>10} {cell(r[4]):>12} {cell(r[5]):>6}")
        out.emit("\n".join(lines))
    return 0 if ok else 1


def cmd_verify_proposition(cfg, args, out) -> int:
    report = verify_proposition(cfg.k, cfg.n, budget=cfg.budget or DEFAULT_BASIS_BUDGET)
    if cfg.format == "records":
        out.stream.write(f"command={cfg.subcommand}\nseed={cfg.seed}\n" + report.records())
    else:
        out.emit(report.text())
    return 0 if report.passed else 1


def invariance_trials(k: int, n: int, trials: int, seed: int, *, perturb: bool = False,
                      entries: int = 4, factors: int | None = None) -> dict:
    """Compare f(g.p) with f(p) for random sparse p and random transvection products g.

    f is the hyperpfaffian, or with ``perturb`` the hyperpfaffian plus the
    (non-invariant) sum of all coefficients of p, as a negative control.
    """
    rng = random.Random(seed)
    factors = 2 * n if factors is None else factors

    def f(p):
        value = hyperpfaffian(p, k)
        if perturb:
            value += sum((c for _, c in p.items()), Fraction(0))
        return value

    passed = failed = nonzero = 0
    for _ in range(trials):
        p = random_sparse_tensor(n, 2 * k, entries, rng, covering=2)
        g = random_special_linear(n, rng.getrandbits(63), factors)
        before, after = f(p), f(apply_group_element(g, p))
        if before == after:
            passed += 1
        else:
            failed += 1
        nonzero += before != 0
    return {"k": k, "n": n, "trials": trials, "perturbed": perturb,
            "passed": passed, "failed": failed, "nonzero_values": nonzero}


def cmd_check_invariance(cfg, args, out) -> int:
    result = invariance_trials(cfg.k, cfg.n, cfg.trials, cfg.seed, perturb=args.perturb)
    text = (f"invariance under random SL_{cfg.n} elements, k={cfg.k} n={cfg.n} seed={cfg.seed}"
            f"{' (perturbed control)' if args.perturb else ''}\n"
            f"  {result['passed']}/{result['trials']} pass, {result['failed']} fail, "
            f"{result['nonzero_values']} nonzero values")
    out.emit(text, {**_head(cfg), **result})
    return 0 if result["failed"] == 0 else 1


def cmd_bench(cfg, args, out) -> int:
    rng = random.Random(cfg.seed)
    m = 2 * cfg.k
    entries = max(1, round(args.density * cfg.n ** m))
    stats = SearchStats()
    total = Fraction(0)
    start = time.perf_counter()
    for _ in range(max(cfg.trials, 1)):
        p = random_sparse_tensor(cfg.n, m, entries, rng, covering=args.covering)
        total += hyperpfaffian(p, cfg.k, stats=stats)
    wall = time.perf_counter() - start
    records = {**_head(cfg), "k": cfg.k, "n": cfg.n, "density": args.density, "entries": entries,
               "trials": max(cfg.trials, 1), "nodes": stats.nodes, "leaves": stats.leaves,
               "value_sum": total}
    if args.timing:
        records["wall_seconds"] = f"{wall:.6f}"
    text = (f"bench k={cfg.k} n={cfg.n} entries={entries} trials={records['trials']} seed={cfg.seed}\n"
            f"  wall {wall:.4f} s, {stats.nodes} search nodes, {stats.leaves} complete covers")
    out.emit(text, records)
    return 0


def _parse_assignments(items: list[str]) -> dict[str, Fraction]:
    values = {}
    for item in items or []:
        name, sep, value = item.partition("=")
        if not sep:
            raise UsageError(f"expected NAME=VALUE, got {item!r}")
        values[name.strip()] = parse_rational(value.strip())
    return values


def _parse_substitution(items: list[str]) -> AffineSubstitution:
    mapping = {}
    for item in items or []:
        name, sep, form = item.partition("=")
        if not sep:
            raise UsageError(f"expected NAME=AFFINE_FORM, got {item!r}")
        mapping[name.strip()] = parse_affine(form)
    try:
        return AffineSubstitution(mapping)
    except ValueError as e:
        raise UsageError(str(e)) from None


def cmd_circuit(cfg, args, out) -> int:
    if not cfg.input:
        raise UsageError("--input PATH to an hpfc circuit file is required")
    with open(cfg.input) as fh:
        c = loads_circuit(fh.read())
    head = {**_head(cfg), "action": args.action}
    if args.action == "parse":
        out.emit(f"circuit with {size(c)} nodes over {', '.join(c.variables()) or 'no variables'}",
                 {**head, "size": size(c), "variables": ",".join(c.variables())})
    elif args.action == "eval":
        try:
            value = evaluate(c, _parse_assignments(args.assign))
        except EvaluationError as e:
            raise UsageError(e.args[0]) from None
        out.emit(format_rational(value), {**head, "value": value})
    elif args.action == "poly":
        poly = to_polynomial(c)
        out.emit(str(poly), {**head, "terms": len(poly.terms), "polynomial": poly})
    else:
        try:
            projected = project(c, _parse_substitution(args.subst))
        except ValueError as e:
            raise UsageError(str(e)) from None
        if cfg.format == "records":
            poly = to_polynomial(projected)
            out.emit("", {**head, "size": size(projected), "terms": len(poly.terms), "polynomial": poly})
        else:
            out.emit(dumps_circuit(projected) + f"# polynomial: {to_polynomial(projected)}")
    return 0


COMMANDS = {
    "eval": cmd_eval,
    "expand": cmd_expand,
    "permanent": cmd_permanent,
    "determinant": cmd_determinant,
    "pfaffian": cmd_pfaffian,
    "verify-projection": cmd_verify_projection,
    "invariant-dim": cmd_invariant_dim,
    "verify-proposition": cmd_verify_proposition,
    "check-invariance": cmd_check_invariance,
    "circuit": cmd_circuit,
    "bench": cmd_bench,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--k", type=int)
    common.add_argument("--n", type=int)
    common.add_argument("--d", type=int)
    common.add_argument("--m", type=str, help="integer or inclusive range a:b")
    common.add_argument("--b", type=int)
    common.add_argument("--seed", type=int, default=DEFAULT_SEED)
    common.add_argument("--trials", type=int, default=100)
    common.add_argument("--budget", type=int)
    common.add_argument("--force", action="store_true")
    common.add_argument("--format", choices=("text", "records"), default="text")
    common.add_argument("--input", metavar="PATH")

    parser = argparse.ArgumentParser(prog="hyperpf", description="Exact hyperpfaffian toolkit.")
    sub = parser.add_subparsers(dest="subcommand", required=True)
    sub.add_parser("eval", parents=[common], help="hyperpfaffian of an hpft tensor (backtracking)")
    sub.add_parser("expand", parents=[common], help="hyperpfaffian by full tensor-power expansion")
    for name, methods in (("permanent", ("ryser", "naive")), ("determinant", ("bareiss", "leibniz"))):
        p = sub.add_parser(name, parents=[common])
        p.add_argument("--matrix", help="inline matrix, e.g. '1,2;3,4'")
        p.add_argument("--method", choices=methods, default=methods[0])
    p = sub.add_parser("pfaffian", parents=[common])
    p.add_argument("--matrix")
    sub.add_parser("verify-projection", parents=[common],
                   help=f"symbolic projection check (d > {MAX_SYMBOLIC_D} needs --force)")
    sub.add_parser("invariant-dim", parents=[common], help="predicted vs brute-force invariant dimensions")
    sub.add_parser("verify-proposition", parents=[common], help="uniqueness / no-lower-degree checks")
    p = sub.add_parser("check-invariance", parents=[common], help="random transvection invariance suite")
    p.add_argument("--perturb", action="store_true", help="negative control: add a non-invariant term")
    p = sub.add_parser("circuit", parents=[common], help="parse/eval/project hpfc circuit files")
    p.add_argument("--action", choices=("parse", "eval", "poly", "project"), default="parse")
    p.add_argument("--assign", action="append", metavar="NAME=VALUE")
    p.add_argument("--subst", action="append", metavar="NAME=AFFINE")
    p = sub.add_parser("bench", parents=[common], help="timed hyperpfaffian evaluation")
    p.add_argument("--density", type=float, default=0.01)
    p.add_argument("--covering", type=int, default=2, help="planted exact covers per tensor")
    p.add_argument("--timing", action="store_true", help="include wall time in records output")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    cfg = RunConfiguration(
        subcommand=args.subcommand, input=args.input, k=args.k, n=args.n, d=args.d, m=args.m,
        b=args.b, seed=args.seed, trials=args.trials, budget=args.budget, force=args.force,
        format=args.format,
    )
    out = Output(cfg.format)
    try:
        cfg.validate()
        return COMMANDS[cfg.subcommand](cfg, args, out)
    except (ValueError, ResourceError, OSError) as e:
        print(f"hyperpf {cfg.subcommand}: error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
