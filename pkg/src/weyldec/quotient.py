"""Canonical forms for the cyclic modules D / D*(x_1..x_d)^(n+1).

Writing an operator in right normal form sum d^beta x^alpha c and deleting
every term whose x-degree exceeds n is a genuine normal form for the left
ideal generated by the (n+1)-st power of the coordinate ideal: the ideal
splits as the direct sum over beta of d^beta times that power, so the kept
terms form a complement.  Class equality is structural equality of the
truncated right form.

The invariant solver looks for classes killed by every coordinate
x_i.  Left multiplication by x_i shifts the per-axis weight
alpha - beta by one and never raises the derivative order, so the
defining linear system is block diagonal over weight vectors; each block
is solved exactly with the dense kernel routine.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from . import linalg
from .multiindex import (
    MultiIndex,
    add,
    count_up_to,
    grlex_key,
    iter_up_to,
    sub,
    total,
    unit,
)
from .weyl import RightForm, WeylOp

Pair = tuple[MultiIndex, MultiIndex]  # (d_exponent, x_exponent)


@dataclass(frozen=True)
class QuotientSpec:
    """Parameters of the quotient by the (n+1)-st power of (x_1..x_d)."""

    dim: int
    n: int

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError(f"dimension must be positive, got {self.dim}")
        if self.n < 0:
            raise ValueError(f"power parameter must be nonnegative, got {self.n}")

    def expected_invariant_dim(self) -> int:
        return count_up_to(self.dim, self.n)


class QuotientClass:
    """Class of an operator, held as its truncated right normal form."""

    __slots__ = ("spec", "rep")

    def __init__(self, spec: QuotientSpec, rep: RightForm):
        if rep.dim != spec.dim:
            raise ValueError(f"dimension mismatch: {spec.dim} vs {rep.dim}")
        kept = {(b, a): c for (b, a), c in rep.terms.items() if total(a) <= spec.n}
        self.spec = spec
        self.rep = RightForm(spec.dim, kept)

    def is_zero(self) -> bool:
        return self.rep.is_zero()

    def order(self) -> int:
        return self.rep.order()

    def lift(self) -> WeylOp:
        """The canonical representative as a free operator."""
        return self.rep.to_left()

    def __bool__(self) -> bool:
        return bool(self.rep)

    def __eq__(self, other) -> bool:
        if not isinstance(other, QuotientClass):
            return NotImplemented
        return self.spec == other.spec and self.rep == other.rep

    def __add__(self, other: "QuotientClass") -> "QuotientClass":
        if not isinstance(other, QuotientClass):
            return NotImplemented
        if other.spec != self.spec:
            raise ValueError("cannot add classes of different quotients")
        return QuotientClass(self.spec, self.rep + other.rep)

    def __neg__(self) -> "QuotientClass":
        return QuotientClass(self.spec, -self.rep)

    def __sub__(self, other: "QuotientClass") -> "QuotientClass":
        return self + (-other)

    def scale(self, value) -> "QuotientClass":
        return QuotientClass(self.spec, self.rep.scale(value))

    def __repr__(self) -> str:
        return f"QuotientClass({self.spec!r}, {self.rep!r})"

    def __str__(self) -> str:
        return str(self.rep)


def reduce_op(p: WeylOp, spec: QuotientSpec) -> QuotientClass:
    """Canonical form of an operator modulo the ideal of the quotient."""
    if p.dim != spec.dim:
        raise ValueError(f"dimension mismatch: {spec.dim} vs {p.dim}")
    return QuotientClass(spec, p.to_right())


def in_ideal(p: WeylOp, spec: QuotientSpec) -> bool:
    return reduce_op(p, spec).is_zero()


def act(p: WeylOp, v: QuotientClass) -> QuotientClass:
    """Left module action on a class; independent of the chosen lift."""
    return reduce_op(p * v.lift(), v.spec)


def zero_class(spec: QuotientSpec) -> QuotientClass:
    return QuotientClass(spec, RightForm.zero(spec.dim))


def class_from_terms(spec: QuotientSpec, terms: dict[Pair, Fraction]) -> QuotientClass:
    return QuotientClass(spec, RightForm(spec.dim, terms))


@dataclass
class InvariantBasis:
    """Basis of the classes killed by every coordinate, up to a derivative
    order bound."""

    spec: QuotientSpec
    vectors: list[QuotientClass]
    order_bound: int
    stabilized: bool  # dimension did not grow at order_bound + 1

    @property
    def dimension(self) -> int:
        return len(self.vectors)

    @property
    def bound_too_small(self) -> bool:
        return self.dimension < self.spec.expected_invariant_dim()


def invariant_basis(spec: QuotientSpec, order_bound: int | None = None) -> InvariantBasis:
    """Solve x_i * v = 0 for all axes within the given derivative order.

    The default bound dim*n is where the dimension provably stabilizes;
    a +1 probe is always run so non-stabilization is self-reporting.
    """
    bound = spec.dim * spec.n if order_bound is None else order_bound
    if bound < 0:
        raise ValueError(f"order bound must be nonnegative, got {bound}")
    vectors = _solve_invariants(spec, bound)
    probe = _solve_invariants(spec, bound + 1)
    return InvariantBasis(
        spec=spec,
        vectors=vectors,
        order_bound=bound,
        stabilized=len(vectors) == len(probe),
    )


def _solve_invariants(spec: QuotientSpec, bound: int) -> list[QuotientClass]:
    d, n = spec.dim, spec.n
    blocks: dict[MultiIndex, list[Pair]] = {}
    for beta in iter_up_to(d, bound):
        for a in iter_up_to(d, n):
            blocks.setdefault(sub(a, beta), []).append((beta, a))

    out: list[QuotientClass] = []
    for mu in sorted(blocks):
        cols = blocks[mu]
        row_index: dict[tuple[int, Pair], int] = {}
        rows: list[list[Fraction]] = []

        def entry(axis: int, pair: Pair, col: int, value: int) -> None:
            key = (axis, pair)
            r = row_index.get(key)
            if r is None:
                r = row_index[key] = len(rows)
                rows.append([Fraction(0)] * len(cols))
            rows[r][col] += value

        for col, (beta, a) in enumerate(cols):
            for i in range(d):
                # x_i * d^beta x^a = d^beta x^(a+e_i) - beta_i d^(beta-e_i) x^a
                if total(a) + 1 <= n:
                    entry(i, (beta, add(a, unit(d, i))), col, 1)
                if beta[i] > 0:
                    entry(i, (sub(beta, unit(d, i)), a), col, -beta[i])

        matrix = linalg.Matrix(rows, cols=len(cols))
        for vec in linalg.kernel(matrix):
            terms = {cols[j]: c for j, c in enumerate(vec) if c}
            out.append(class_from_terms(spec, terms))

    out.sort(key=_class_sort_key)
    return out


def _class_sort_key(v: QuotientClass):
    lead = max(
        ((total(b) + total(a), b + a) for (b, a) in v.rep.terms),
        default=(0, ()),
    )
    return lead
