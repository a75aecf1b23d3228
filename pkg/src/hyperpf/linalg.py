"""Exact matrices: fraction-free (Bareiss) determinant and rank."""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from math import gcd, lcm, prod
from typing import Iterable, Mapping, Sequence

from .kernel import sign, to_scalar


@dataclass(frozen=True)
class SquareMatrix:
    rows: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(to_scalar(x) for x in row) for row in self.rows)
        object.__setattr__(self, "rows", rows)
        if any(len(row) != len(rows) for row in rows):
            raise ValueError("matrix is not square")

    @classmethod
    def identity(cls, n: int) -> "SquareMatrix":
        return cls(tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    @classmethod
    def elementary(cls, n: int, i: int, j: int, c=1) -> "SquareMatrix":
        """Transvection I + c*E_ij (1-based, i != j)."""
        if i == j:
            raise ValueError("transvection needs i != j")
        rows = [[Fraction(int(r == s)) for s in range(n)] for r in range(n)]
        rows[i - 1][j - 1] += to_scalar(c)
        return cls(tuple(map(tuple, rows)))

    @property
    def n(self) -> int:
        return len(self.rows)

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        """1-based entry access."""
        i, j = ij
        return self.rows[i - 1][j - 1]

    def __matmul__(self, other: "SquareMatrix") -> "SquareMatrix":
        if self.n != other.n:
            raise ValueError("dimension mismatch")
        cols = list(zip(*other.rows))
        return SquareMatrix(tuple(
            tuple(sum((a * b for a, b in zip(row, col)), Fraction(0)) for col in cols)
            for row in self.rows
        ))

    def transpose(self) -> "SquareMatrix":
        return SquareMatrix(tuple(zip(*self.rows)))

    def scale(self, c) -> "SquareMatrix":
        c = to_scalar(c)
        return SquareMatrix(tuple(tuple(c * x for x in row) for row in self.rows))

    def is_antisymmetric(self) -> bool:
        return all(self.rows[i][j] == -self.rows[j][i] for i in range(self.n) for j in range(self.n))

    def __str__(self):
        from .kernel import format_rational
        return "\n".join(" ".join(format_rational(x) for x in row) for row in self.rows)


def as_matrix(rows) -> SquareMatrix:
    return rows if isinstance(rows, SquareMatrix) else SquareMatrix(tuple(map(tuple, rows)))


def _clear_denominators(rows: Sequence[Sequence[Fraction]]) -> tuple[list[list[int]], int]:
    """Scale each row to integers; returns the rows and the product of row scalings."""
    out, scale = [], 1
    for row in rows:
        row = [to_scalar(x) for x in row]
        s = lcm(*(x.denominator for x in row)) if row else 1
        out.append([int(x * s) for x in row])
        scale *= s
    return out, scale


def bareiss_determinant(a: list[list[int]]) -> int:
    """Determinant of an integer matrix; every intermediate stays integral."""
    a = [list(row) for row in a]
    n = len(a)
    if n == 0:
        return 1
    negate = False
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k]:
                    a[k], a[r] = a[r], a[k]
                    negate = not negate
                    break
            else:
                return 0
        pivot = a[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * pivot - a[i][k] * a[k][j]) // prev
        prev = pivot
    det = a[n - 1][n - 1]
    return -det if negate else det


def determinant(m) -> Fraction:
    m = as_matrix(m)
    ints, scale = _clear_denominators(m.rows)
    return Fraction(bareiss_determinant(ints), scale)


def determinant_leibniz(m) -> Fraction:
    """Sum over all n! permutations; oracle for small n."""
    m = as_matrix(m)
    n = m.n
    return sum(
        (sign(p) * prod((m.rows[i][p[i]] for i in range(n)), start=Fraction(1))
         for p in permutations(range(n))),
        Fraction(0),
    )


def bareiss_rank(rows: Sequence[Sequence]) -> int:
    """Rank of a dense rational matrix by fraction-free elimination."""
    a, _ = _clear_denominators(rows)
    if not a:
        return 0
    nrows, ncols = len(a), len(a[0])
    rank, prev = 0, 1
    for col in range(ncols):
        if rank == nrows:
            break
        piv = next((r for r in range(rank, nrows) if a[r][col]), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        pivot = a[rank][col]
        for i in range(rank + 1, nrows):
            for j in range(col + 1, ncols):
                a[i][j] = (a[i][j] * pivot - a[i][col] * a[rank][j]) // prev
            a[i][col] = 0
        prev = pivot
        rank += 1
    return rank


def sparse_rank(rows: Iterable[Mapping[int, int]]) -> int:
    """Rank of a sparse integer matrix given as {column: value} rows.

    Fraction-free elimination: shortest live row first, pivoting on the
    column shared with the fewest other rows (preferring unit entries).
    Updated rows are divided by their content whenever they were scaled,
    so entries stay small on the very sparse systems produced by
    Lie-algebra actions.
    """
    live: dict[int, dict[int, int]] = {}
    col_rows: dict[int, set[int]] = {}
    heap: list[tuple[int, int]] = []
    for r, row in enumerate(rows):
        row = {c: v for c, v in row.items() if v}
        if not row:
            continue
        live[r] = row
        for c in row:
            col_rows.setdefault(c, set()).add(r)
        heap.append((len(row), r))
    heapq.heapify(heap)

    rank = 0
    while heap:
        length, r = heapq.heappop(heap)
        row = live.get(r)
        if row is None or len(row) != length:
            continue
        del live[r]
        for c in row:
            col_rows[c].discard(r)
        col = min(row, key=lambda c: (abs(row[c]) != 1, len(col_rows[c]), c))
        pv = row[col]
        rank += 1
        for t in col_rows.pop(col):
            other = live[t]
            f = other[col]
            g = gcd(pv, f)
            a, b = pv // g, f // g
            if a < 0:
                a, b = -a, -b
            if a != 1:
                for c in other:
                    other[c] *= a
            for c, v in row.items():
                w = other.get(c, 0) - b * v
                if w:
                    if c not in other:
                        col_rows[c].add(t)
                    other[c] = w
                elif c in other:
                    del other[c]
                    if c != col:
                        col_rows[c].discard(t)
            if not other:
                del live[t]
                continue
            if a != 1:
                content = 0
                for v in other.values():
                    content = gcd(content, v)
                    if content == 1:
                        break
                if content > 1:
                    for c in other:
                        other[c] //= content
            heapq.heappush(heap, (len(other), t))
    return rank
