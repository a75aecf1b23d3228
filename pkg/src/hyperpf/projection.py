"""Projection of the hyperpfaffian onto the d x d permanent / determinant.

The projection point is the order-2k tensor over C^{2kd}

    p = sum_{i,j=0}^{d-1} x_{i+1,j+1} (e_{1+2ki} ⊗ ... ⊗ e_{k+2ki}
                                        ⊗ e_{k+1+2kj} ⊗ ... ⊗ e_{2k+2kj}),

and evaluating the hyperpfaffian there gives d! per_d for even k and
d! det_d for odd k.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import factorial

from .invariants import SearchStats, hyperpfaffian
from .kernel import ResourceError, as_permutation, sign
from .poly import Poly, scaled_reference, xvar
from .tensor import SparseTensor

MAX_SYMBOLIC_D = 4


def block_indices(k: int, i: int, j: int) -> tuple[int, ...]:
    """Multi-index of the (i, j) entry of the projection tensor (0-based i, j)."""
    return (tuple(s + 1 + 2 * k * i for s in range(k))
            + tuple(s + k + 1 + 2 * k * j for s in range(k)))


def build_projection_tensor(k: int, d: int) -> SparseTensor:
    if k < 1 or d < 1:
        raise ValueError("k and d must be positive")
    return SparseTensor(2 * k * d, 2 * k, {
        block_indices(k, i, j): Poly.var(xvar(i + 1, j + 1)) for i in range(d) for j in range(d)
    }, exact=False)


def leaf_sign(k: int, i_seq, j_seq) -> int:
    """Sign of the concatenated multi-index picked by the block sequences i and j."""
    i_seq, j_seq = tuple(i_seq), tuple(j_seq)
    d = len(i_seq)
    if len(j_seq) != d:
        raise ValueError("i and j sequences differ in length")
    for seq in (i_seq, j_seq):
        if as_permutation([x + 1 for x in seq]) is None:
            raise ValueError(f"{seq} is not a permutation of 0..{d - 1}")
    concat = [x for a, b in zip(i_seq, j_seq) for x in block_indices(k, a, b)]
    return sign(concat)


def symbolic_hyperpfaffian(k: int, d: int, *, force: bool = False,
                           stats: SearchStats | None = None) -> Poly:
    if d > MAX_SYMBOLIC_D and not force:
        raise ResourceError(f"symbolic expansion refused for d = {d} > {MAX_SYMBOLIC_D} without force",
                            factorial(d) ** 2)
    result = hyperpfaffian(build_projection_tensor(k, d), k, stats=stats)
    return Poly.coerce(result)


@dataclass
class ProjectionReport:
    k: int
    d: int
    lhs: Poly
    rhs: Poly

    @property
    def parity(self) -> str:
        return "odd" if self.k % 2 else "even"

    @property
    def target(self) -> str:
        return "determinant" if self.k % 2 else "permanent"

    @property
    def equal(self) -> bool:
        return self.lhs.sorted_terms() == self.rhs.sorted_terms()

    def records(self) -> str:
        return "\n".join([
            f"k={self.k}",
            f"d={self.d}",
            f"parity={self.parity}",
            f"target={self.target}",
            f"equal={'true' if self.equal else 'false'}",
            f"terms_lhs={len(self.lhs.terms)}",
            f"terms_rhs={len(self.rhs.terms)}",
        ]) + "\n"

    def text(self) -> str:
        rel = "==" if self.equal else "!="
        name = "det" if self.k % 2 else "per"
        return (
            f"projection of Pf_{{{self.k},{2 * self.k * self.d}}} at k={self.k}, d={self.d} ({self.parity} k)\n"
            f"  hyperpfaffian:  {self.lhs}\n"
            f"  {self.d}! * {name}_{self.d}:  {self.rhs}\n"
            f"  result: hyperpfaffian {rel} {self.d}! * {name}_{self.d} "
            f"({len(self.lhs.terms)} vs {len(self.rhs.terms)} terms)\n"
        )


def verify_projection_theorem(k: int, d: int, *, force: bool = False) -> ProjectionReport:
    lhs = symbolic_hyperpfaffian(k, d, force=force)
    rhs = scaled_reference(d, odd=bool(k % 2))
    return ProjectionReport(k, d, lhs, rhs)
