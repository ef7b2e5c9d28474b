"""The Weyl algebra A_d(Q) of polynomial-coefficient differential operators.

Generators are x_1..x_d and the partial derivatives d_1..d_d, subject to
d_i x_j = x_j d_i + delta_ij.  Elements are stored in *left* normal form,
a dict mapping (x_exponent, d_exponent) pairs to nonzero rational
coefficients, denoting sum c * x^alpha * d^beta.

Reordering a derivative block past a coordinate block expands by the
Leibniz rule

    d^b x^a = sum over r <= min(a, b) of C(b, r) * a!/(a-r)! * x^(a-r) d^(b-r)

applied componentwise, and the inverse reordering carries the sign
(-1)^|r|.  The right normal form (all derivatives on the left) is a
first-class view because ideal reduction works in that basis.

All values are immutable and all operations are pure functions.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping

from .multiindex import (
    MultiIndex,
    add,
    binom_prod,
    falling_prod,
    iter_box,
    leq,
    minimum,
    sub,
    total,
    zeros,
)
from .poly import Poly

TermKey = tuple[MultiIndex, MultiIndex]


def _clean(dim: int, terms: Mapping[TermKey, Fraction]) -> dict[TermKey, Fraction]:
    out: dict[TermKey, Fraction] = {}
    for (a, b), coeff in terms.items():
        if len(a) != dim or len(b) != dim:
            raise ValueError(f"exponents {(a, b)} do not match dimension {dim}")
        c = Fraction(coeff)
        if c:
            out[(tuple(a), tuple(b))] = c
    return out


class WeylOp:
    """Operator in left normal form: sum of c * x^alpha * d^beta."""

    __slots__ = ("dim", "terms")

    def __init__(self, dim: int, terms: Mapping[TermKey, Fraction] | None = None):
        if dim < 1:
            raise ValueError(f"dimension must be positive, got {dim}")
        self.dim = dim
        self.terms = _clean(dim, terms or {})

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, dim: int) -> WeylOp:
        return cls(dim, {})

    @classmethod
    def const(cls, dim: int, value) -> WeylOp:
        z = zeros(dim)
        return cls(dim, {(z, z): Fraction(value)})

    @classmethod
    def one(cls, dim: int) -> WeylOp:
        return cls.const(dim, 1)

    @classmethod
    def x(cls, dim: int, axis: int) -> WeylOp:
        return cls.x_monomial(dim, _unit(dim, axis))

    @classmethod
    def d(cls, dim: int, axis: int) -> WeylOp:
        return cls.d_monomial(dim, _unit(dim, axis))

    @classmethod
    def x_monomial(cls, dim: int, exp: MultiIndex, coeff=1) -> WeylOp:
        return cls(dim, {(tuple(exp), zeros(dim)): Fraction(coeff)})

    @classmethod
    def d_monomial(cls, dim: int, exp: MultiIndex, coeff=1) -> WeylOp:
        return cls(dim, {(zeros(dim), tuple(exp)): Fraction(coeff)})

    @classmethod
    def from_poly(cls, p: Poly) -> WeylOp:
        """The multiplication operator of a polynomial."""
        return cls(p.dim, {(exp, zeros(p.dim)): c for exp, c in p.terms.items()})

    # -- queries -----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def order(self) -> int:
        """Maximal derivative degree; -1 for the zero operator."""
        return max((total(b) for _, b in self.terms), default=-1)

    def x_degree(self) -> int:
        return max((total(a) for a, _ in self.terms), default=-1)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, WeylOp):
            return self.dim == other.dim and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == WeylOp.const(self.dim, other)
        return NotImplemented

    def __repr__(self) -> str:
        return f"WeylOp({self.dim}, {self.terms!r})"

    def __str__(self) -> str:
        return format_left(self)

    # -- linear structure ----------------------------------------------------

    def _coerce(self, other) -> "WeylOp":
        if isinstance(other, WeylOp):
            if other.dim != self.dim:
                raise ValueError(f"dimension mismatch: {self.dim} vs {other.dim}")
            return other
        if isinstance(other, (int, Fraction)):
            return WeylOp.const(self.dim, other)
        return NotImplemented

    def __add__(self, other) -> WeylOp:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self.terms)
        for key, c in other.terms.items():
            out[key] = out.get(key, Fraction(0)) + c
        return WeylOp(self.dim, out)

    __radd__ = __add__

    def __neg__(self) -> WeylOp:
        return WeylOp(self.dim, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other) -> WeylOp:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> WeylOp:
        return (-self) + other

    def scale(self, value) -> WeylOp:
        c = Fraction(value)
        return WeylOp(self.dim, {k: c * v for k, v in self.terms.items()})

    # -- multiplication ------------------------------------------------------

    def __mul__(self, other) -> WeylOp:
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, WeylOp):
            return NotImplemented
        if other.dim != self.dim:
            raise ValueError(f"dimension mismatch: {self.dim} vs {other.dim}")
        out: dict[TermKey, Fraction] = {}
        for (a1, b1), c1 in self.terms.items():
            for (a2, b2), c2 in other.terms.items():
                c = c1 * c2
                for r in iter_box(minimum(b1, a2)):
                    w = c * binom_prod(b1, r) * falling_prod(a2, r)
                    key = (add(a1, sub(a2, r)), add(sub(b1, r), b2))
                    out[key] = out.get(key, Fraction(0)) + w
        return WeylOp(self.dim, out)

    def __rmul__(self, other) -> WeylOp:
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, n: int) -> WeylOp:
        if not isinstance(n, int) or n < 0:
            raise ValueError(f"exponent must be a nonnegative integer, got {n!r}")
        result = WeylOp.one(self.dim)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- the action on polynomials ------------------------------------------

    def apply(self, f: Poly) -> Poly:
        """Natural action: differentiate, then multiply by the coefficient."""
        if f.dim != self.dim:
            raise ValueError(f"dimension mismatch: {self.dim} vs {f.dim}")
        out: dict[MultiIndex, Fraction] = {}
        for (a, b), c in self.terms.items():
            for g, cf in f.terms.items():
                if leq(b, g):
                    key = add(a, sub(g, b))
                    out[key] = out.get(key, Fraction(0)) + c * cf * falling_prod(g, b)
        return Poly(self.dim, out)

    # -- normal form views ----------------------------------------------------

    def to_right(self) -> "RightForm":
        out: dict[TermKey, Fraction] = {}
        for (a, b), c in self.terms.items():
            for r in iter_box(minimum(a, b)):
                sign = -1 if total(r) % 2 else 1
                w = c * sign * binom_prod(b, r) * falling_prod(a, r)
                key = (sub(b, r), sub(a, r))
                out[key] = out.get(key, Fraction(0)) + w
        return RightForm(self.dim, out)


class RightForm:
    """Operator in right normal form: sum of c * d^beta * x^alpha.

    Term keys are (d_exponent, x_exponent).  Converting to and from the
    left form is exact and the two views denote the same operator.
    """

    __slots__ = ("dim", "terms")

    def __init__(self, dim: int, terms: Mapping[TermKey, Fraction] | None = None):
        if dim < 1:
            raise ValueError(f"dimension must be positive, got {dim}")
        self.dim = dim
        self.terms = _clean(dim, terms or {})

    @classmethod
    def zero(cls, dim: int) -> RightForm:
        return cls(dim, {})

    def is_zero(self) -> bool:
        return not self.terms

    def order(self) -> int:
        return max((total(b) for b, _ in self.terms), default=-1)

    def x_degree(self) -> int:
        return max((total(a) for _, a in self.terms), default=-1)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, RightForm):
            return NotImplemented
        return self.dim == other.dim and self.terms == other.terms

    def __repr__(self) -> str:
        return f"RightForm({self.dim}, {self.terms!r})"

    def __str__(self) -> str:
        return format_right(self)

    def __add__(self, other: "RightForm") -> RightForm:
        if not isinstance(other, RightForm):
            return NotImplemented
        if other.dim != self.dim:
            raise ValueError(f"dimension mismatch: {self.dim} vs {other.dim}")
        out = dict(self.terms)
        for key, c in other.terms.items():
            out[key] = out.get(key, Fraction(0)) + c
        return RightForm(self.dim, out)

    def __neg__(self) -> RightForm:
        return RightForm(self.dim, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other: "RightForm") -> RightForm:
        return self + (-other)

    def scale(self, value) -> RightForm:
        c = Fraction(value)
        return RightForm(self.dim, {k: c * v for k, v in self.terms.items()})

    def to_left(self) -> WeylOp:
        out: dict[TermKey, Fraction] = {}
        for (b, a), c in self.terms.items():
            for r in iter_box(minimum(a, b)):
                w = c * binom_prod(b, r) * falling_prod(a, r)
                key = (sub(a, r), sub(b, r))
                out[key] = out.get(key, Fraction(0)) + w
        return WeylOp(self.dim, out)


# -- automorphisms ------------------------------------------------------------


def fourier(p: WeylOp) -> WeylOp:
    """The automorphism x_i -> d_i, d_i -> -x_i (fourth root of the identity)."""
    out: dict[TermKey, Fraction] = {}
    for (a, b), c in p.terms.items():
        sign = -1 if total(b) % 2 else 1
        key = (a, b)  # becomes d^a x^b in right form
        out[key] = out.get(key, Fraction(0)) + c * sign
    return RightForm(p.dim, out).to_left()


def fourier_inv(p: WeylOp) -> WeylOp:
    """The inverse automorphism x_i -> -d_i, d_i -> x_i."""
    out: dict[TermKey, Fraction] = {}
    for (a, b), c in p.terms.items():
        sign = -1 if total(a) % 2 else 1
        key = (a, b)
        out[key] = out.get(key, Fraction(0)) + c * sign
    return RightForm(p.dim, out).to_left()


def translate(p: WeylOp, axis: int, shift) -> WeylOp:
    """The substitution x_axis -> x_axis + shift (0-based axis); d fixed."""
    if not 0 <= axis < p.dim:
        raise ValueError(f"axis {axis} out of range for dimension {p.dim}")
    a0 = Fraction(shift)
    from math import comb

    out: dict[TermKey, Fraction] = {}
    for (a, b), c in p.terms.items():
        e = a[axis]
        for k in range(e + 1):
            w = c * comb(e, k) * a0 ** (e - k)
            key = (a[:axis] + (k,) + a[axis + 1 :], b)
            out[key] = out.get(key, Fraction(0)) + w
    return WeylOp(p.dim, out)


def euler_op(dim: int) -> WeylOp:
    """The grading operator sum_i x_i d_i."""
    out = WeylOp.zero(dim)
    for i in range(dim):
        out = out + WeylOp.x(dim, i) * WeylOp.d(dim, i)
    return out


def commutator(p: WeylOp, q: WeylOp) -> WeylOp:
    return p * q - q * p


# -- canonical printing --------------------------------------------------------


def _unit(dim: int, axis: int) -> MultiIndex:
    if not 0 <= axis < dim:
        raise ValueError(f"axis {axis} out of range for dimension {dim}")
    return tuple(1 if i == axis else 0 for i in range(dim))


def _mono_str(prefix: str, exp: MultiIndex) -> list[str]:
    out = []
    for i, e in enumerate(exp):
        if e == 1:
            out.append(f"{prefix}{i + 1}")
        elif e > 1:
            out.append(f"{prefix}{i + 1}^{e}")
    return out


def _format_terms(items: list[tuple[TermKey, Fraction]], first: str, second: str) -> str:
    if not items:
        return "0"
    items = sorted(
        items,
        key=lambda kv: (total(kv[0][0]) + total(kv[0][1]), kv[0][0] + kv[0][1]),
        reverse=True,
    )
    pieces = []
    for (e1, e2), c in items:
        factors = _mono_str(first, e1) + _mono_str(second, e2)
        mag = abs(c)
        if not factors:
            body = str(mag)
        elif mag == 1:
            body = "*".join(factors)
        else:
            body = str(mag) + "*" + "*".join(factors)
        pieces.append(("-" if c < 0 else "+", body))
    sign, body = pieces[0]
    out = ("-" if sign == "-" else "") + body
    for sign, body in pieces[1:]:
        out += f" {sign} {body}"
    return out


def format_left(p: WeylOp) -> str:
    """Graded-lex rendering of the left normal form, e.g. "x1*d1 + 1"."""
    return _format_terms(list(p.terms.items()), "x", "d")


def format_right(r: RightForm) -> str:
    """Graded-lex rendering of the right normal form, e.g. "-4*d1*x1 + 2"."""
    return _format_terms(list(r.terms.items()), "d", "x")
