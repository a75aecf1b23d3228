"""Exact scalars, permutations, signs, partitions and hook lengths.

Rationals are ``fractions.Fraction`` (always gcd-reduced with a positive
denominator).  All indices are 1-based.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial, prod
from typing import Iterable, Sequence

ExactScalar = Fraction


class ParseError(ValueError):
    """Malformed text input (rational, tensor file, circuit file)."""


class ResourceError(RuntimeError):
    """A configured size or term budget would be exceeded."""

    def __init__(self, message: str, bound: int | None = None):
        super().__init__(message)
        self.bound = bound


def to_scalar(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return parse_rational(x)
    if isinstance(x, float):
        raise TypeError("floating point values are not exact; pass a Fraction or 'p/q' string")
    return Fraction(x)


def parse_rational(text: str) -> Fraction:
    """Parse ``p/q`` or ``p`` (ASCII, no spaces)."""
    s = text.strip()
    if not s or any(ch.isspace() for ch in s):
        raise ParseError(f"bad rational {text!r}")
    num, sep, den = s.partition("/")
    try:
        p = int(num)
        q = int(den) if sep else 1
    except ValueError:
        raise ParseError(f"bad rational {text!r}") from None
    if q == 0:
        raise ParseError(f"zero denominator in {text!r}")
    return Fraction(p, q)


def format_rational(x) -> str:
    x = to_scalar(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


# -- permutations -----------------------------------------------------------

def inversion_count(seq: Sequence[int]) -> int:
    """Number of pairs i < j with seq[i] > seq[j]; merge sort, O(n log n)."""
    seq = list(seq)
    return _sort_count(seq)[1]


def _sort_count(a: list) -> tuple[list, int]:
    if len(a) <= 1:
        return a, 0
    mid = len(a) // 2
    left, x = _sort_count(a[:mid])
    right, y = _sort_count(a[mid:])
    merged = []
    count = x + y
    i = j = 0
    while i < len(left) and j < len(right):
        if right[j] < left[i]:
            merged.append(right[j])
            count += len(left) - i
            j += 1
        else:
            merged.append(left[i])
            i += 1
    merged.extend(left[i:])
    merged.extend(right[j:])
    return merged, count


@dataclass(frozen=True)
class Permutation:
    """Bijection of {1..n}, stored as its image sequence."""

    images: tuple[int, ...]

    def __post_init__(self):
        images = tuple(self.images)
        object.__setattr__(self, "images", images)
        if sorted(images) != list(range(1, len(images) + 1)):
            raise ValueError(f"not a permutation of 1..{len(images)}: {images}")

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(1, n + 1)))

    def __len__(self):
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def __mul__(self, other: "Permutation") -> "Permutation":
        """Composition ``(self * other)(i) = self(other(i))``."""
        if len(self) != len(other):
            raise ValueError("permutations of different size")
        return Permutation(tuple(self(other(i)) for i in range(1, len(self) + 1)))

    def inverse(self) -> "Permutation":
        inv = [0] * len(self)
        for i, image in enumerate(self.images, start=1):
            inv[image - 1] = i
        return Permutation(tuple(inv))

    def sign(self) -> int:
        return sign(self)


def sign(p: Permutation | Sequence[int]) -> int:
    """(-1)^(number of inversions).  Accepts any sequence of distinct values."""
    images = p.images if isinstance(p, Permutation) else p
    return -1 if inversion_count(images) % 2 else 1


def as_permutation(m: Sequence[int]) -> Permutation | None:
    """The permutation spelled by ``m`` if its entries are exactly 1..len(m), else None."""
    n = len(m)
    seen = [False] * (n + 1)
    for i in m:
        if not 1 <= i <= n or seen[i]:
            return None
        seen[i] = True
    return Permutation(tuple(m))


# -- partitions --------------------------------------------------------------

@dataclass(frozen=True)
class Partition:
    parts: tuple[int, ...]

    def __post_init__(self):
        parts = tuple(int(x) for x in self.parts)
        object.__setattr__(self, "parts", parts)
        if any(x <= 0 for x in parts):
            raise ValueError("partition parts must be positive")
        if any(a < b for a, b in zip(parts, parts[1:])):
            raise ValueError(f"partition parts must be nonincreasing: {parts}")

    @classmethod
    def rectangle(cls, rows: int, cols: int) -> "Partition":
        return cls((cols,) * rows if cols > 0 else ())

    @property
    def weight(self) -> int:
        return sum(self.parts)

    def __len__(self):
        return len(self.parts)

    def conjugate(self) -> "Partition":
        if not self.parts:
            return self
        return Partition(tuple(sum(1 for p in self.parts if p > j) for j in range(self.parts[0])))

    def hook_lengths(self) -> list[list[int]]:
        cols = self.conjugate().parts
        return [
            [row - j + cols[j] - i - 1 for j in range(row)]
            for i, row in enumerate(self.parts)
        ]

    def count_standard_tableaux(self) -> int:
        """Hook-length formula: |λ|! / prod(hooks), in big integers."""
        hooks = prod(h for row in self.hook_lengths() for h in row)
        return factorial(self.weight) // hooks


def partitions(m: int, max_part: int | None = None) -> Iterable[Partition]:
    """All partitions of m, largest first."""
    if max_part is None:
        max_part = m

    def rec(rest, bound):
        if rest == 0:
            yield ()
            return
        for first in range(min(rest, bound), 0, -1):
            for tail in rec(rest - first, first):
                yield (first,) + tail

    for parts in rec(m, max_part):
        yield Partition(parts)


def rectangle_dimension(n: int, m: int) -> int:
    """Dimension of SL_n-invariants in the m-th tensor power of C^n.

    Zero unless n divides m; otherwise the number of standard Young
    tableaux of the rectangle with n rows of length m/n.
    """
    if n < 1 or m < 1:
        raise ValueError("n and m must be positive")
    if m % n:
        return 0
    return Partition.rectangle(n, m // n).count_standard_tableaux()
