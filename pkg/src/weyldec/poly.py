"""Sparse multivariate polynomials with exact rational coefficients.

A polynomial stores a dict mapping exponent tuples to nonzero Fraction
coefficients; the zero polynomial has an empty term map.  Values are
immutable by convention and every operation returns a fresh Poly, so
instances can be shared freely.

The univariate helpers at the bottom (division, extended Euclid, Yun
squarefree splitting, rational roots) operate on dimension-1 polynomials
and back the constant-coefficient operator splitting.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping

from .multiindex import MultiIndex, add as mi_add, grlex_key, total


class Poly:
    """Element of Q[x_1, .., x_d], stored sparsely."""

    __slots__ = ("dim", "terms")

    def __init__(self, dim: int, terms: Mapping[MultiIndex, Fraction] | None = None):
        if dim < 1:
            raise ValueError(f"dimension must be positive, got {dim}")
        clean: dict[MultiIndex, Fraction] = {}
        for exp, coeff in (terms or {}).items():
            if len(exp) != dim:
                raise ValueError(f"exponent {exp} does not have length {dim}")
            c = Fraction(coeff)
            if c:
                clean[tuple(exp)] = c
        self.dim = dim
        self.terms = clean

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, dim: int) -> Poly:
        return cls(dim, {})

    @classmethod
    def const(cls, dim: int, value) -> Poly:
        return cls(dim, {(0,) * dim: Fraction(value)})

    @classmethod
    def one(cls, dim: int) -> Poly:
        return cls.const(dim, 1)

    @classmethod
    def variable(cls, dim: int, axis: int) -> Poly:
        """The polynomial x_axis (0-based axis)."""
        if not 0 <= axis < dim:
            raise ValueError(f"axis {axis} out of range for dimension {dim}")
        exp = tuple(1 if i == axis else 0 for i in range(dim))
        return cls(dim, {exp: Fraction(1)})

    @classmethod
    def monomial(cls, dim: int, exp: MultiIndex, coeff=1) -> Poly:
        return cls(dim, {tuple(exp): Fraction(coeff)})

    # -- queries -----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((total(e) for e in self.terms), default=-1)

    def coeff(self, exp: MultiIndex) -> Fraction:
        return self.terms.get(tuple(exp), Fraction(0))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.dim == other.dim and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == Poly.const(self.dim, other)
        return NotImplemented

    def __hash__(self):
        return hash((self.dim, frozenset(self.terms.items())))

    def __repr__(self) -> str:
        return f"Poly({self.dim}, {self.terms!r})"

    def __str__(self) -> str:
        return format_poly(self)

    # -- arithmetic --------------------------------------------------------

    def _coerce(self, other) -> Poly:
        if isinstance(other, Poly):
            if other.dim != self.dim:
                raise ValueError(f"dimension mismatch: {self.dim} vs {other.dim}")
            return other
        if isinstance(other, (int, Fraction)):
            return Poly.const(self.dim, other)
        return NotImplemented

    def __add__(self, other) -> Poly:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self.terms)
        for exp, c in other.terms.items():
            out[exp] = out.get(exp, Fraction(0)) + c
        return Poly(self.dim, out)

    __radd__ = __add__

    def __neg__(self) -> Poly:
        return Poly(self.dim, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> Poly:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> Poly:
        return (-self) + other

    def __mul__(self, other) -> Poly:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out: dict[MultiIndex, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                key = mi_add(e1, e2)
                out[key] = out.get(key, Fraction(0)) + c1 * c2
        return Poly(self.dim, out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> Poly:
        if not isinstance(n, int) or n < 0:
            raise ValueError(f"exponent must be a nonnegative integer, got {n!r}")
        result = Poly.one(self.dim)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result


def format_poly(p: Poly, names: Iterable[str] | None = None) -> str:
    """Render in graded-lex order, highest degree first.

    Default variable names are t for dimension 1 and x1..xd otherwise.
    """
    if p.is_zero():
        return "0"
    if names is None:
        names = ["t"] if p.dim == 1 else [f"x{i + 1}" for i in range(p.dim)]
    else:
        names = list(names)
    pieces = []
    for exp in sorted(p.terms, key=grlex_key, reverse=True):
        c = p.terms[exp]
        factors = []
        for name, e in zip(names, exp):
            if e == 1:
                factors.append(name)
            elif e > 1:
                factors.append(f"{name}^{e}")
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


# -- univariate algorithms --------------------------------------------------


def _require_univariate(p: Poly) -> None:
    if p.dim != 1:
        raise ValueError(f"univariate polynomial required, got dimension {p.dim}")


def to_dense(p: Poly) -> list[Fraction]:
    """Coefficient list, low degree first; empty list for zero."""
    _require_univariate(p)
    if p.is_zero():
        return []
    out = [Fraction(0)] * (p.degree() + 1)
    for (e,), c in p.terms.items():
        out[e] = c
    return out


def from_dense(coeffs: Iterable[Fraction]) -> Poly:
    return Poly(1, {(i,): Fraction(c) for i, c in enumerate(coeffs) if c})


def leading_coeff(p: Poly) -> Fraction:
    _require_univariate(p)
    if p.is_zero():
        raise ValueError("zero polynomial has no leading coefficient")
    return p.terms[(p.degree(),)]


def monic(p: Poly) -> Poly:
    """Scale a nonzero univariate polynomial to leading coefficient 1."""
    lc = leading_coeff(p)
    if lc == 1:
        return p
    return Poly(1, {e: c / lc for e, c in p.terms.items()})


def poly_divmod(f: Poly, g: Poly) -> tuple[Poly, Poly]:
    """Exact univariate division with remainder, f = q*g + r, deg r < deg g."""
    _require_univariate(f)
    _require_univariate(g)
    if g.is_zero():
        raise ZeroDivisionError("polynomial division by zero")
    rem = to_dense(f)
    den = to_dense(g)
    dg = len(den) - 1
    lc = den[-1]
    if len(rem) - 1 < dg:
        return Poly.zero(1), f
    quot = [Fraction(0)] * (len(rem) - dg)
    for i in range(len(quot) - 1, -1, -1):
        c = rem[i + dg] / lc
        quot[i] = c
        if c:
            for j, d in enumerate(den):
                rem[i + j] -= c * d
    return from_dense(quot), from_dense(rem[:dg])


def exact_div(f: Poly, g: Poly) -> Poly:
    q, r = poly_divmod(f, g)
    if not r.is_zero():
        raise ValueError("division is not exact")
    return q


def derivative(p: Poly) -> Poly:
    _require_univariate(p)
    return Poly(1, {(e - 1,): c * e for (e,), c in p.terms.items() if e > 0})


def poly_gcd(f: Poly, g: Poly) -> Poly:
    """Monic gcd; gcd(0, 0) is an error."""
    return bezout(f, g)[0]


def bezout(f: Poly, g: Poly) -> tuple[Poly, Poly, Poly]:
    """Extended Euclid: returns (d, u, v) with u*f + v*g = d and d monic."""
    _require_univariate(f)
    _require_univariate(g)
    if f.is_zero() and g.is_zero():
        raise ValueError("gcd of two zero polynomials is undefined")
    r0, r1 = f, g
    u0, v0 = Poly.one(1), Poly.zero(1)
    u1, v1 = Poly.zero(1), Poly.one(1)
    while not r1.is_zero():
        q, r2 = poly_divmod(r0, r1)
        r0, r1 = r1, r2
        u0, u1 = u1, u0 - q * u1
        v0, v1 = v1, v0 - q * v1
    lc = leading_coeff(r0)
    inv = Fraction(1) / lc
    return inv * r0, inv * u0, inv * v0


def yun_squarefree(p: Poly) -> list[tuple[Poly, int]]:
    """Squarefree decomposition p = unit * prod f_i^i via Yun's algorithm.

    Returns the nonconstant factors as (factor, multiplicity) pairs, factors
    monic, pairwise coprime and squarefree, multiplicities increasing.
    """
    _require_univariate(p)
    if p.is_zero():
        raise ValueError("cannot decompose the zero polynomial")
    if p.degree() == 0:
        return []
    p = monic(p)
    dp = derivative(p)
    a = poly_gcd(p, dp)
    b = exact_div(p, a)
    c = exact_div(dp, a)
    d = c - derivative(b)
    out: list[tuple[Poly, int]] = []
    i = 1
    while b.degree() > 0:
        f = poly_gcd(b, d)
        b = exact_div(b, f)
        c = exact_div(d, f)
        d = c - derivative(b)
        if f.degree() > 0:
            out.append((f, i))
        i += 1
    return out


def eval_poly(p: Poly, value: Fraction) -> Fraction:
    """Horner evaluation of a univariate polynomial."""
    acc = Fraction(0)
    for c in reversed(to_dense(p)):
        acc = acc * value + c
    return acc


def rational_roots(p: Poly) -> list[Fraction]:
    """All rational roots of a nonzero univariate polynomial, ascending.

    Roots are listed once each regardless of multiplicity.
    """
    _require_univariate(p)
    if p.is_zero():
        raise ValueError("zero polynomial")
    coeffs = to_dense(p)
    denom_lcm = 1
    for c in coeffs:
        denom_lcm = denom_lcm * c.denominator // _gcd(denom_lcm, c.denominator)
    ints = [int(c * denom_lcm) for c in coeffs]
    low = 0
    while ints[low] == 0:
        low += 1
    roots = set()
    if low > 0:
        roots.add(Fraction(0))
    trailing, lead = abs(ints[low]), abs(ints[-1])
    for num in _divisors(trailing):
        for den in _divisors(lead):
            for cand in (Fraction(num, den), Fraction(-num, den)):
                if cand not in roots and eval_poly(p, cand) == 0:
                    roots.add(cand)
    return sorted(roots)


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)


def _divisors(n: int) -> list[int]:
    out = []
    i = 1
    while i * i <= n:
        if n % i == 0:
            out.append(i)
            if i != n // i:
                out.append(n // i)
        i += 1
    return sorted(out)
