import random
from fractions import Fraction

import pytest

from hyperpf.circuit import (
    AffineSubstitution, Circuit, CircuitBuilder, EvaluationError, Node, build_permanent_circuit,
    dumps_circuit, evaluate, loads_circuit, parse_affine, per2_example_substitution, project,
    projection_size_bound, size, to_polynomial,
)
from hyperpf.invariants import permanent
from hyperpf.kernel import ParseError, ResourceError
from hyperpf.poly import Poly, permanent_polynomial, xvar

from conftest import random_matrix

x, y, z = Poly.var("x"), Poly.var("y"), Poly.var("z")


def matrix_point(rows):
    return {xvar(i + 1, j + 1): v for i, row in enumerate(rows) for j, v in enumerate(row)}


def test_evaluate_examples():
    b = CircuitBuilder()
    assert evaluate(b.build(b.const(5)), {}) == 5
    b = CircuitBuilder()
    vx, vy, vz, one = b.input("x"), b.input("y"), b.input("z"), b.const(1)
    out = b.add(b.mul(vx, vz), b.mul(b.add(vx, one), b.add(vy, one)))
    c = b.build(out)
    assert evaluate(c, {"x": 1, "y": 1, "z": 1}) == 5
    assert evaluate(build_permanent_circuit(2), matrix_point([[1, 2], [2, 1]])) == 5
    with pytest.raises(EvaluationError):
        evaluate(c, {"x": 1})


def test_size_examples():
    b = CircuitBuilder()
    assert size(b.build(b.const(1))) == 1
    b = CircuitBuilder()
    assert size(b.build(b.add(b.input("x"), b.input("y")))) == 3
    # 4 inputs, 2 products, 1 sum
    assert size(build_permanent_circuit(2)) == 7
    assert size(build_permanent_circuit(3)) == 9 + 6 * 2 + 5


def test_builder_dedups_inputs_and_balances():
    b = CircuitBuilder()
    assert b.input("x") == b.input("x")
    leaves = [b.input(f"v{i}") for i in range(8)]
    c = b.build(b.product(leaves))
    assert size(c) == 1 + 8 + 7
    with pytest.raises(ValueError):
        b.sum([])


def test_circuit_validation():
    with pytest.raises(ValueError):
        Circuit((Node("add", (0, 1)),), 0)
    with pytest.raises(ValueError):
        Circuit((Node("const", Fraction(1)),), 3)
    with pytest.raises(ValueError):
        Circuit((Node("pow", None),), 0)


def test_to_polynomial_examples():
    b = CircuitBuilder()
    vx = b.input("x")
    c = b.build(b.add(b.mul(vx, vx), b.mul(b.const(2), vx)))
    assert to_polynomial(c) == x * x + 2 * x
    assert to_polynomial(build_permanent_circuit(3)) == permanent_polynomial(3)
    with pytest.raises(ResourceError):
        to_polynomial(build_permanent_circuit(4), budget=3)


def test_per2_worked_projection():
    c = project(build_permanent_circuit(2), per2_example_substitution())
    poly = to_polynomial(c)
    assert poly == x * z + x * y + x + y + 1
    assert len(poly.terms) == 5
    assert str(poly) == "x*y + x*z + x + y + 1"


def test_identity_and_constant_substitutions():
    c = build_permanent_circuit(3)
    ident = AffineSubstitution({v: v for v in c.variables()})
    rng = random.Random(4)
    for _ in range(5):
        point = {v: Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for v in c.variables()}
        assert evaluate(project(c, ident), point) == evaluate(c, point)
    const = {v: Poly.const(i) for i, v in enumerate(c.variables())}
    pc = project(c, const)
    assert pc.variables() == []
    assert evaluate(pc, {}) == permanent([[0, 1, 2], [3, 4, 5], [6, 7, 8]])


def test_project_requires_all_variables():
    with pytest.raises(ValueError):
        project(build_permanent_circuit(2), {xvar(1, 1): "x"})


@pytest.mark.parametrize("n", range(1, 7))
def test_permanent_circuit(n, rng):
    c = build_permanent_circuit(n)
    if n == 1:
        assert c.nodes == (Node("input", xvar(1, 1)),)
    m = random_matrix(rng, n)
    assert evaluate(c, matrix_point(m.rows)) == permanent(m)
    with pytest.raises(ValueError):
        build_permanent_circuit(7)


def test_permanent_circuit_all_ones():
    assert evaluate(build_permanent_circuit(3), matrix_point([[1] * 3] * 3)) == 6


def test_parse_affine():
    assert parse_affine("2*y + 1/3 - z") == 2 * y + Fraction(1, 3) - z
    assert parse_affine("-x") == -x
    assert parse_affine("7") == 7
    assert parse_affine("x_{1,2} + 1") == Poly.var(xvar(1, 2)) + 1
    for bad in ("", "x y", "2 +", "x*y"):
        with pytest.raises(ParseError):
            parse_affine(bad)


def test_non_affine_rejected():
    with pytest.raises(ValueError):
        AffineSubstitution({"x": x * y})


def random_circuit(rng, variables, nodes):
    b = CircuitBuilder()
    ids = [b.input(v) for v in variables] + [b.const(rng.randint(-3, 3))]
    for _ in range(nodes):
        l, r = rng.choice(ids), rng.choice(ids)
        ids.append(b.add(l, r) if rng.random() < 0.5 else b.mul(l, r))
    return b.build(ids[-1])


def random_substitution(rng, variables, new):
    out = {}
    for v in variables:
        form = Poly.const(Fraction(rng.randint(-4, 4), rng.randint(1, 3)))
        for w in rng.sample(new, rng.randint(0, len(new))):
            form = form + rng.choice([-2, -1, 1, 3]) * Poly.var(w)
        out[v] = form
    return AffineSubstitution(out)


def test_projection_commutes_with_evaluation(rng):
    for _ in range(40):
        old, new = ["a", "b", "c"], ["u", "v"]
        c = random_circuit(rng, old, rng.randint(1, 12))
        s = random_substitution(rng, old, new)
        point = {w: Fraction(rng.randint(-5, 5), rng.randint(1, 4)) for w in new}
        pc = project(c, s)
        assert evaluate(pc, point) == evaluate(c, s.apply(point))
        assert size(pc) <= projection_size_bound(c, s)


def test_hpfc_round_trip(rng):
    c = project(build_permanent_circuit(2), per2_example_substitution())
    assert loads_circuit(dumps_circuit(c)) == c
    c = random_circuit(rng, ["a"], 5)
    assert loads_circuit(dumps_circuit(c)) == c


@pytest.mark.parametrize("text", [
    "0 input x\n",
    "0 input x\noutput 1\n",
    "0 add 1 2\noutput 0\n",
    "0 const 1/0\noutput 0\n",
    "0 input x\n0 input y\noutput 0\n",
    "0 input x\noutput 0\n1 const 2\n",
    "0 frob x\noutput 0\n",
])
def test_hpfc_rejects_malformed(text):
    with pytest.raises(ParseError):
        loads_circuit(text)


def test_hpfc_error_mentions_line():
    with pytest.raises(ParseError, match="line 2"):
        loads_circuit("0 input x\n1 mul 0 5\noutput 1\n")
