"""A small arithmetic-circuit IR: build, evaluate, measure, project.

Nodes are stored in topological order (every operand precedes its use)
and built append-only, so acyclicity holds by construction.  ``add`` and
``mul`` have fan-in exactly two; n-ary sums and products become balanced
trees.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from typing import Mapping

from .kernel import ParseError, ResourceError, format_rational, parse_rational, to_scalar
from .poly import Poly, var_key, xvar

MAX_PERMANENT_CIRCUIT = 6
DEFAULT_POLY_BUDGET = 10**5


class EvaluationError(KeyError):
    pass


@dataclass(frozen=True)
class Node:
    kind: str  # "input" | "const" | "add" | "mul"
    arg: object  # variable name, Fraction, or (left, right) node ids


@dataclass(frozen=True)
class Circuit:
    nodes: tuple[Node, ...]
    output: int

    def __post_init__(self):
        for i, node in enumerate(self.nodes):
            if node.kind in ("add", "mul"):
                left, right = node.arg
                if not (0 <= left < i and 0 <= right < i):
                    raise ValueError(f"node {i} references a node that does not precede it")
            elif node.kind not in ("input", "const"):
                raise ValueError(f"unknown node kind {node.kind!r}")
        if not 0 <= self.output < len(self.nodes):
            raise ValueError("output is not a node of the circuit")

    def variables(self) -> list[str]:
        return sorted({n.arg for n in self.nodes if n.kind == "input"}, key=var_key)


class CircuitBuilder:
    def __init__(self):
        self.nodes: list[Node] = []
        self._inputs: dict[str, int] = {}

    def _push(self, node: Node) -> int:
        self.nodes.append(node)
        return len(self.nodes) - 1

    def input(self, name: str) -> int:
        if name not in self._inputs:
            self._inputs[name] = self._push(Node("input", name))
        return self._inputs[name]

    def const(self, c) -> int:
        return self._push(Node("const", to_scalar(c)))

    def add(self, a: int, b: int) -> int:
        return self._push(Node("add", (a, b)))

    def mul(self, a: int, b: int) -> int:
        return self._push(Node("mul", (a, b)))

    def _balanced(self, ids: list[int], op) -> int:
        if not ids:
            raise ValueError("empty sum/product")
        while len(ids) > 1:
            nxt = [op(ids[i], ids[i + 1]) for i in range(0, len(ids) - 1, 2)]
            if len(ids) % 2:
                nxt.append(ids[-1])
            ids = nxt
        return ids[0]

    def sum(self, ids: list[int]) -> int:
        return self._balanced(list(ids), self.add)

    def product(self, ids: list[int]) -> int:
        return self._balanced(list(ids), self.mul)

    def build(self, output: int) -> Circuit:
        return Circuit(tuple(self.nodes), output)


def evaluate(c: Circuit, assignment: Mapping[str, object]):
    """Value at the output, by induction over the nodes.  Works over any
    ring whose elements support + and * (Fractions, Polys)."""
    values: list = []
    for node in c.nodes:
        if node.kind == "input":
            try:
                v = assignment[node.arg]
            except KeyError:
                raise EvaluationError(f"no value for variable {node.arg!r}") from None
            values.append(v if isinstance(v, Poly) else to_scalar(v))
        elif node.kind == "const":
            values.append(node.arg)
        elif node.kind == "add":
            values.append(values[node.arg[0]] + values[node.arg[1]])
        else:
            values.append(values[node.arg[0]] * values[node.arg[1]])
    return values[c.output]


def size(c: Circuit) -> int:
    return len(c.nodes)


def to_polynomial(c: Circuit, *, budget: int = DEFAULT_POLY_BUDGET) -> Poly:
    values: list[Poly] = []
    for i, node in enumerate(c.nodes):
        if node.kind == "input":
            v = Poly.var(node.arg)
        elif node.kind == "const":
            v = Poly.const(node.arg)
        elif node.kind == "add":
            v = values[node.arg[0]] + values[node.arg[1]]
        else:
            v = values[node.arg[0]] * values[node.arg[1]]
        if len(v.terms) > budget:
            raise ResourceError(f"node {i} expands to {len(v.terms)} terms, budget is {budget}",
                                len(v.terms))
        values.append(v)
    return values[c.output]


# -- affine substitutions -------------------------------------------------

_TERM = re.compile(r"\s*([+-]?)\s*(?:(\d+(?:/\d+)?)\s*\*?\s*)?([A-Za-z_][\w{},]*)?\s*")


def parse_affine(text: str) -> Poly:
    """Parse an affine form such as ``2*y + 1/3 - z``."""
    s = text.strip()
    if not s:
        raise ParseError("empty affine form")
    pos, out = 0, Poly()
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m or m.end() == pos or not (m.group(2) or m.group(3)):
            raise ParseError(f"cannot parse affine form {text!r} at offset {pos}")
        if pos and not m.group(1):
            raise ParseError(f"missing + or - in {text!r} at offset {pos}")
        coef = parse_rational(m.group(2)) if m.group(2) else Fraction(1)
        if m.group(1) == "-":
            coef = -coef
        out = out + (coef * Poly.var(m.group(3)) if m.group(3) else Poly.const(coef))
        pos = m.end()
    return out


@dataclass(frozen=True)
class AffineSubstitution:
    mapping: Mapping[str, Poly]

    def __post_init__(self):
        clean = {}
        for name, form in self.mapping.items():
            if isinstance(form, str):
                form = parse_affine(form)
            form = Poly.coerce(form)
            if form.degree > 1:
                raise ValueError(f"substitution for {name!r} is not affine: {form}")
            clean[name] = form
        object.__setattr__(self, "mapping", clean)

    def __getitem__(self, name) -> Poly:
        return self.mapping[name]

    def apply(self, point: Mapping[str, object]) -> dict[str, Fraction]:
        """The point at which the original circuit is evaluated."""
        return {name: form.evaluate({v: to_scalar(point[v]) for v in form.variables()}) + Fraction(0)
                for name, form in self.mapping.items()}


def _affine_subcircuit(b: CircuitBuilder, form: Poly) -> int:
    terms = []
    for mono, coef in form.sorted_terms():
        if not mono:
            continue
        y = b.input(mono[0][0])
        terms.append(y if coef == 1 else b.mul(b.const(coef), y))
    constant = form.coefficient(())
    if constant or not terms:
        terms.append(b.const(constant))
    return b.sum(terms)


def project(c: Circuit, s: AffineSubstitution | Mapping) -> Circuit:
    """Circuit for the polynomial of ``c`` evaluated at the affine point ``s``.

    Every input leaf is replaced by a fresh subcircuit for its affine form
    (new variables share one input node each).  A form with t variables
    costs at most 4t + 1 nodes, so size(project(c, s)) <= size(c) +
    sum over inputs v of 4 t_v; see ``projection_size_bound``.
    """
    if not isinstance(s, AffineSubstitution):
        s = AffineSubstitution(s)
    missing = [v for v in c.variables() if v not in s.mapping]
    if missing:
        raise ValueError(f"substitution does not cover variables {missing}")
    b = CircuitBuilder()
    ids: list[int] = []
    for node in c.nodes:
        if node.kind == "input":
            ids.append(_affine_subcircuit(b, s[node.arg]))
        elif node.kind == "const":
            ids.append(b.const(node.arg))
        elif node.kind == "add":
            ids.append(b.add(ids[node.arg[0]], ids[node.arg[1]]))
        else:
            ids.append(b.mul(ids[node.arg[0]], ids[node.arg[1]]))
    return b.build(ids[c.output])


def projection_size_bound(c: Circuit, s: AffineSubstitution | Mapping) -> int:
    if not isinstance(s, AffineSubstitution):
        s = AffineSubstitution(s)
    return size(c) + sum(4 * len(s[v].variables()) for v in c.variables())


def build_permanent_circuit(n: int) -> Circuit:
    """Sum over all n! permutations of balanced products x_{1,σ(1)} ... x_{n,σ(n)}."""
    if not 1 <= n <= MAX_PERMANENT_CIRCUIT:
        raise ValueError(f"permanent circuit only built for 1 <= n <= {MAX_PERMANENT_CIRCUIT}")
    b = CircuitBuilder()
    x = {(i, j): b.input(xvar(i, j)) for i in range(1, n + 1) for j in range(1, n + 1)}
    terms = [b.product([x[i + 1, s[i] + 1] for i in range(n)]) for s in permutations(range(n))]
    return b.build(b.sum(terms))


def per2_example_substitution() -> AffineSubstitution:
    """per_2 at the matrix [[x, y+1], [x+1, z]], which equals xz + xy + x + y + 1."""
    return AffineSubstitution({
        xvar(1, 1): "x", xvar(1, 2): "y + 1",
        xvar(2, 1): "x + 1", xvar(2, 2): "z",
    })


# -- "hpfc v1" text format ------------------------------------------------

def dumps_circuit(c: Circuit) -> str:
    lines = []
    for i, node in enumerate(c.nodes):
        if node.kind == "input":
            lines.append(f"{i} input {node.arg}")
        elif node.kind == "const":
            lines.append(f"{i} const {format_rational(node.arg)}")
        else:
            op = "add" if node.kind == "add" else "mul"
            lines.append(f"{i} {op} {node.arg[0]} {node.arg[1]}")
    lines.append(f"output {c.output}")
    return "\n".join(lines) + "\n"


def loads_circuit(text: str) -> Circuit:
    ids: dict[str, int] = {}
    nodes: list[Node] = []
    output = None
    for lineno, line in enumerate(text.splitlines(), start=1):
        fields = line.split()
        if not fields:
            continue
        if output is not None:
            raise ParseError(f"line {lineno}: content after the output line")
        if fields[0] == "output":
            if len(fields) != 2 or fields[1] not in ids:
                raise ParseError(f"line {lineno}: output must name a defined node")
            output = ids[fields[1]]
            continue
        if len(fields) < 3:
            raise ParseError(f"line {lineno}: expected '<id> <kind> ...'")
        nid, kind, args = fields[0], fields[1], fields[2:]
        if nid in ids:
            raise ParseError(f"line {lineno}: duplicate node id {nid}")
        if kind == "input" and len(args) == 1:
            node = Node("input", args[0])
        elif kind == "const" and len(args) == 1:
            try:
                node = Node("const", parse_rational(args[0]))
            except ParseError as e:
                raise ParseError(f"line {lineno}: {e}") from None
        elif kind in ("add", "mul") and len(args) == 2:
            missing = [a for a in args if a not in ids]
            if missing:
                raise ParseError(f"line {lineno}: operand {missing[0]} is not defined earlier")
            node = Node(kind, (ids[args[0]], ids[args[1]]))
        else:
            raise ParseError(f"line {lineno}: bad node {line.strip()!r}")
        ids[nid] = len(nodes)
        nodes.append(node)
    if output is None:
        raise ParseError("missing 'output <id>' line")
    return Circuit(tuple(nodes), output)
