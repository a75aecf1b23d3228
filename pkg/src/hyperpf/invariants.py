"""Hyperpfaffian, Pfaffian, permanent and determinant evaluators.

Every evaluator here has an independent oracle next to it:
``hyperpfaffian`` / ``hyperpfaffian_expand``, ``permanent`` (Ryser) /
``permanent_naive`` (Leibniz), ``determinant`` (Bareiss) /
``determinant_leibniz``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from math import factorial, prod

from .kernel import ResourceError, sign
from .linalg import as_matrix, determinant, determinant_leibniz
from .tensor import SparseTensor, pair_with_antisymmetrizer, tensor_power

DEFAULT_TERM_BUDGET = 10**7

# determinant oracles live in linalg; re-exported with the other evaluators
__all__ = [
    "HyperpfaffianInstance", "InstanceError", "SearchStats", "classical_pfaffian", "determinant",
    "determinant_leibniz", "expansion_bound", "hyperpfaffian", "hyperpfaffian_expand",
    "matrix_tensor", "permanent", "permanent_naive",
]


class InstanceError(ValueError):
    pass


@dataclass(frozen=True)
class HyperpfaffianInstance:
    k: int
    n: int
    tensor: SparseTensor

    def __post_init__(self):
        if self.k < 1 or self.n < 1:
            raise InstanceError("k and n must be positive")
        if self.n % (2 * self.k):
            raise InstanceError(f"2k = {2 * self.k} does not divide n = {self.n}")
        if self.tensor.m != 2 * self.k:
            raise InstanceError(f"tensor order {self.tensor.m} != 2k = {2 * self.k}")
        if self.tensor.n != self.n:
            raise InstanceError(f"tensor dimension {self.tensor.n} != n = {self.n}")

    @property
    def d(self) -> int:
        return self.n // (2 * self.k)

    @classmethod
    def of(cls, p: SparseTensor, k: int | None = None) -> "HyperpfaffianInstance":
        if k is None:
            if p.m % 2:
                raise InstanceError(f"tensor order {p.m} is odd")
            k = p.m // 2
        return cls(k, p.n, p)


def _instance(p, k) -> HyperpfaffianInstance:
    return p if isinstance(p, HyperpfaffianInstance) else HyperpfaffianInstance.of(p, k)


@dataclass
class SearchStats:
    nodes: int = 0
    leaves: int = 0


def hyperpfaffian(p, k: int | None = None, *, stats: SearchStats | None = None):
    """<v, p^{⊗d}> by backtracking over exact covers of {1..n}.

    Each step extends the cover with a stored entry whose smallest index is
    the smallest uncovered element, so every unordered cover is visited once.
    The d! orderings of a cover's blocks all have the same sign because the
    blocks have even length 2k, hence the final d! factor.
    """
    inst = _instance(p, k)
    t, n = inst.tensor, inst.n
    full = (1 << n) - 1
    buckets: list[list] = [[] for _ in range(n + 1)]
    for idx, c in t.items():
        bits = 0
        for i in idx:
            bits |= 1 << (i - 1)
        if bin(bits).count("1") == len(idx):
            buckets[min(idx)].append((idx, bits, c))

    total = 0
    chosen: list = []

    def extend(mask, coeff):
        nonlocal total
        if stats is not None:
            stats.nodes += 1
        if mask == full:
            seq = [i for idx in chosen for i in idx]
            total = total + sign(seq) * coeff
            if stats is not None:
                stats.leaves += 1
            return
        low = (~mask & (mask + 1)).bit_length()
        for idx, bits, c in buckets[low]:
            if not bits & mask:
                chosen.append(idx)
                extend(mask | bits, c if coeff is None else coeff * c)
                chosen.pop()

    extend(0, None)
    total = factorial(inst.d) * total
    return Fraction(total) if isinstance(total, int) else total


def expansion_bound(inst: HyperpfaffianInstance) -> int:
    return len(inst.tensor) ** inst.d


def hyperpfaffian_expand(p, k: int | None = None, *, budget: int = DEFAULT_TERM_BUDGET):
    """Oracle: materialize p^{⊗d} and pair it with the antisymmetrizer."""
    inst = _instance(p, k)
    bound = expansion_bound(inst)
    if bound > budget:
        raise ResourceError(f"expansion needs up to {bound} terms, budget is {budget}", bound)
    return pair_with_antisymmetrizer(tensor_power(inst.tensor, inst.d))


def matrix_tensor(a) -> SparseTensor:
    """The order-2 tensor sum_ij A_ij e_i ⊗ e_j."""
    a = as_matrix(a)
    return SparseTensor(a.n, 2, {
        (i + 1, j + 1): a.rows[i][j] for i in range(a.n) for j in range(a.n) if a.rows[i][j]
    })


def classical_pfaffian(a) -> Fraction:
    """Pfaffian of an antisymmetric matrix, expanded along the first row over perfect matchings."""
    a = as_matrix(a)
    if a.n % 2:
        raise ValueError("Pfaffian needs even dimension")
    if not a.is_antisymmetric():
        raise ValueError("matrix is not antisymmetric")
    rows = a.rows

    def pf(idx: tuple[int, ...]) -> Fraction:
        if not idx:
            return Fraction(1)
        first, rest = idx[0], idx[1:]
        total = Fraction(0)
        for pos, j in enumerate(rest):
            if rows[first][j]:
                total += (-1) ** pos * rows[first][j] * pf(rest[:pos] + rest[pos + 1:])
        return total

    return pf(tuple(range(a.n)))


def permanent_naive(m) -> Fraction:
    m = as_matrix(m)
    n = m.n
    return sum(
        (prod((m.rows[i][s[i]] for i in range(n)), start=Fraction(1)) for s in permutations(range(n))),
        Fraction(0),
    )


def permanent(m) -> Fraction:
    """Ryser's inclusion-exclusion over column subsets, walked in Gray-code order."""
    m = as_matrix(m)
    n = m.n
    if n == 0:
        return Fraction(1)
    rows = m.rows
    row_sums = [Fraction(0)] * n
    total = Fraction(0)
    subset = 0
    for step in range(1, 1 << n):
        j = (step & -step).bit_length() - 1
        subset ^= 1 << j
        if subset >> j & 1:
            for i in range(n):
                row_sums[i] += rows[i][j]
        else:
            for i in range(n):
                row_sums[i] -= rows[i][j]
        size = bin(subset).count("1")
        term = prod(row_sums, start=Fraction(1))
        total += -term if size % 2 else term
    return -total if n % 2 else total
