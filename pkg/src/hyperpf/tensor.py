"""Sparse exact tensors in the m-th tensor power of C^n.

A tensor is a map from multi-indices (1-based tuples of length m) to
nonzero coefficients.  Coefficients are Fractions for numeric work but
any commutative ring element with ``+``, ``*`` and truthiness works
(the projection lab stores polynomials here).
"""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import permutations
from typing import Iterable, Iterator, Mapping

from .kernel import ParseError, as_permutation, format_rational, parse_rational, sign, to_scalar
from .linalg import SquareMatrix

MultiIndex = tuple[int, ...]


class DimensionError(ValueError):
    pass


class SparseTensor:
    __slots__ = ("n", "m", "_entries")

    def __init__(self, n: int, m: int, entries: Mapping[MultiIndex, object] | Iterable = (), *, exact=True):
        if n < 1 or m < 1:
            raise ValueError("dimension and order must be positive")
        self.n = n
        self.m = m
        items = entries.items() if isinstance(entries, Mapping) else entries
        store: dict[MultiIndex, object] = {}
        for idx, value in items:
            idx = tuple(idx)
            if len(idx) != m:
                raise DimensionError(f"multi-index {idx} has length {len(idx)}, expected {m}")
            if any(not 1 <= i <= n for i in idx):
                raise DimensionError(f"multi-index {idx} out of range 1..{n}")
            if exact:
                value = to_scalar(value)
            if idx in store:
                value = store[idx] + value
            store[idx] = value
        self._entries = {k: store[k] for k in sorted(store) if store[k]}

    @classmethod
    def basis(cls, n: int, idx: MultiIndex, coeff=1) -> "SparseTensor":
        return cls(n, len(idx), {tuple(idx): coeff})

    @classmethod
    def zero(cls, n: int, m: int) -> "SparseTensor":
        return cls(n, m)

    @classmethod
    def _raw(cls, n, m, entries: dict) -> "SparseTensor":
        t = cls.__new__(cls)
        t.n, t.m = n, m
        t._entries = {k: entries[k] for k in sorted(entries) if entries[k]}
        return t

    def items(self) -> Iterator[tuple[MultiIndex, object]]:
        return iter(self._entries.items())

    def __getitem__(self, idx) -> object:
        return self._entries.get(tuple(idx), 0)

    def __len__(self):
        return len(self._entries)

    def __iter__(self):
        return iter(self._entries)

    def __eq__(self, other):
        if not isinstance(other, SparseTensor):
            return NotImplemented
        return (self.n, self.m, self._entries) == (other.n, other.m, other._entries)

    def __hash__(self):
        return hash((self.n, self.m, tuple(self._entries.items())))

    def __repr__(self):
        return f"SparseTensor(n={self.n}, m={self.m}, entries={self._entries!r})"

    def _check_same_space(self, other):
        if (self.n, self.m) != (other.n, other.m):
            raise DimensionError("tensors live in different spaces")

    def __add__(self, other: "SparseTensor") -> "SparseTensor":
        self._check_same_space(other)
        out = dict(self._entries)
        for idx, v in other.items():
            out[idx] = out.get(idx, 0) + v
        return SparseTensor._raw(self.n, self.m, out)

    def __neg__(self):
        return SparseTensor._raw(self.n, self.m, {k: -v for k, v in self.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "SparseTensor":
        return SparseTensor._raw(self.n, self.m, {k: c * v for k, v in self.items()})

    def __rmul__(self, c):
        return self.scale(c)

    def tensor(self, other: "SparseTensor") -> "SparseTensor":
        """Concatenation product: (s ⊗ t)[i + j] = s[i] * t[j]."""
        if self.n != other.n:
            raise DimensionError("dimension mismatch")
        out = {}
        for i, a in self.items():
            for j, b in other.items():
                out[i + j] = a * b
        return SparseTensor._raw(self.n, self.m + other.m, out)

    def map_coefficients(self, f) -> "SparseTensor":
        return SparseTensor._raw(self.n, self.m, {k: f(v) for k, v in self.items()})


def pair_with_antisymmetrizer(t: SparseTensor):
    """<v, t> with <v, e_σ(1)⊗...⊗e_σ(n)> = sign(σ) and zero on repeated indices."""
    if t.m != t.n:
        raise DimensionError(f"pairing needs order == dimension, got order {t.m}, dimension {t.n}")
    total = 0
    for idx, c in t.items():
        p = as_permutation(idx)
        if p is not None:
            total = total + sign(p) * c
    return Fraction(total) if isinstance(total, int) else total


def tensor_power(t: SparseTensor, d: int) -> SparseTensor:
    if d < 1:
        raise ValueError("power must be positive")
    out = t
    for _ in range(d - 1):
        out = out.tensor(t)
    return out


def apply_group_element(g: SquareMatrix, t: SparseTensor) -> SparseTensor:
    """Act with g on every slot: e_i -> sum_r g[r,i] e_r, re-expanded slot by slot."""
    if g.n != t.n:
        raise DimensionError(f"matrix of size {g.n} acting on tensors over C^{t.n}")
    columns = [[(r + 1, g.rows[r][i]) for r in range(g.n) if g.rows[r][i]] for i in range(g.n)]
    current = dict(t.items())
    for slot in range(t.m):
        nxt: dict = {}
        for idx, c in current.items():
            head, tail = idx[:slot], idx[slot + 1:]
            for r, a in columns[idx[slot] - 1]:
                key = head + (r,) + tail
                nxt[key] = nxt.get(key, 0) + a * c
        current = {k: v for k, v in nxt.items() if v}
    return SparseTensor._raw(t.n, t.m, current)


def lie_action(t: SparseTensor, a: int, b: int) -> SparseTensor:
    """Action of the matrix unit E_ab by the Leibniz rule: replace one slot b -> a, summed over slots."""
    out: dict = {}
    for idx, c in t.items():
        for s, i in enumerate(idx):
            if i == b:
                key = idx[:s] + (a,) + idx[s + 1:]
                out[key] = out.get(key, 0) + c
    return SparseTensor._raw(t.n, t.m, out)


def permute_blocks(idx: MultiIndex, b: int, order) -> MultiIndex:
    blocks = [idx[i * b:(i + 1) * b] for i in range(len(idx) // b)]
    return tuple(x for j in order for x in blocks[j])


def is_block_symmetric(t: SparseTensor, b: int) -> bool:
    """Invariance under every permutation of the m/b contiguous blocks of size b.

    Adjacent block transpositions generate the block permutation group, so
    it is enough to check each of those.
    """
    if b < 1 or t.m % b:
        raise DimensionError(f"block size {b} does not divide order {t.m}")
    nblocks = t.m // b
    entries = dict(t.items())
    for s in range(nblocks - 1):
        order = list(range(nblocks))
        order[s], order[s + 1] = s + 1, s
        swapped = {permute_blocks(idx, b, order): c for idx, c in entries.items()}
        if swapped != entries:
            return False
    return True


def antisymmetrizer(n: int, *, max_n: int = 8) -> SparseTensor:
    """The tensor e_1 ∧ ... ∧ e_n with ±1 coefficients (n! entries)."""
    if n > max_n:
        raise ValueError(f"refusing to materialize {n}! entries (max_n={max_n})")
    return SparseTensor._raw(n, n, {
        tuple(i + 1 for i in p): Fraction(sign(p)) for p in permutations(range(n))
    })


def random_rational(rng: random.Random, size: int = 3, nonzero: bool = True) -> Fraction:
    while True:
        x = Fraction(rng.randint(-size, size), rng.randint(1, size))
        if x or not nonzero:
            return x


def random_special_linear(n: int, seed: int, factors: int, *, size: int = 2) -> SquareMatrix:
    """Product of ``factors`` random transvections I + c*E_ij; determinant exactly 1."""
    if n < 2:
        raise ValueError("need n >= 2 for transvections")
    rng = random.Random(seed)
    g = SquareMatrix.identity(n)
    for _ in range(factors):
        i, j = rng.sample(range(1, n + 1), 2)
        g = SquareMatrix.elementary(n, i, j, random_rational(rng, size)) @ g
    return g


def random_sparse_tensor(n: int, m: int, entries: int, rng: random.Random,
                         *, covering: int = 0, size: int = 3) -> SparseTensor:
    """Random tensor with ``entries`` uniform multi-indices plus ``covering``
    random permutations of 1..n cut into blocks of length m (so that
    exact covers, and hence nonzero hyperpfaffians, actually occur)."""
    terms = []
    for _ in range(entries):
        terms.append((tuple(rng.randint(1, n) for _ in range(m)), random_rational(rng, size)))
    if covering and n % m == 0:
        for _ in range(covering):
            perm = list(range(1, n + 1))
            rng.shuffle(perm)
            for s in range(0, n, m):
                terms.append((tuple(perm[s:s + m]), random_rational(rng, size)))
    return SparseTensor(n, m, terms)


# -- "hpft 1" text format -------------------------------------------------

def dumps_tensor(t: SparseTensor) -> str:
    lines = ["hpft 1", f"n {t.n} m {t.m}"]
    for idx, c in t.items():
        lines.append(" ".join(map(str, idx)) + " " + format_rational(c))
    return "\n".join(lines) + "\n"


def loads_tensor(text: str) -> SparseTensor:
    lines = text.splitlines()
    if not lines or lines[0].split() != ["hpft", "1"]:
        raise ParseError("line 1: expected header 'hpft 1'")
    if len(lines) < 2:
        raise ParseError("line 2: missing 'n <n> m <m>'")
    head = lines[1].split()
    try:
        if len(head) != 4 or head[0] != "n" or head[2] != "m":
            raise ValueError
        n, m = int(head[1]), int(head[3])
        if n < 1 or m < 1:
            raise ValueError
    except ValueError:
        raise ParseError(f"line 2: expected 'n <n> m <m>', got {lines[1]!r}") from None
    entries = {}
    for lineno, line in enumerate(lines[2:], start=3):
        fields = line.split()
        if not fields:
            continue
        if len(fields) != m + 1:
            raise ParseError(f"line {lineno}: expected {m} indices and a coefficient")
        try:
            idx = tuple(int(x) for x in fields[:m])
        except ValueError:
            raise ParseError(f"line {lineno}: non-integer index") from None
        if any(not 1 <= i <= n for i in idx):
            raise ParseError(f"line {lineno}: index out of range 1..{n}")
        if idx in entries:
            raise ParseError(f"line {lineno}: duplicate multi-index {idx}")
        try:
            c = parse_rational(fields[-1])
        except ParseError as e:
            raise ParseError(f"line {lineno}: {e}") from None
        if c == 0:
            raise ParseError(f"line {lineno}: zero coefficient")
        entries[idx] = c
    return SparseTensor(n, m, entries)


def load_tensor(path) -> SparseTensor:
    with open(path) as fh:
        return loads_tensor(fh.read())


def save_tensor(t: SparseTensor, path) -> None:
    with open(path, "w") as fh:
        fh.write(dumps_tensor(t))
