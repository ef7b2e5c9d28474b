"""Splitting A_1 / A_1*P(d) for a constant-coefficient operator P over Q.

Since P has constant coefficients, the left ideal A_1*P respects the
x-grading of the left normal form: an operator sum x^a c_a(d) lies in the
ideal exactly when every coefficient polynomial c_a is divisible by P.
Reducing each c_a modulo P is therefore a canonical form, with no operator
reordering involved.

The splitting runs in two stages.  A Bezout (partial fraction) argument
splits the quotient along the pairwise coprime prime-power factors
q_i^(e_i) of P.  A linear prime power q = t - a is then split all the way
into e simple pieces by transporting the rising-factorial generators of
D / D*x^e through the algebra automorphism x -> -d + a, d -> x, which
carries the ideal A_1*x^e onto A_1*(d - a)^e.  Prime powers with a
nonlinear base are left whole at the coprime stage.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .decomp import build_certificate
from .poly import (
    Poly,
    bezout,
    exact_div,
    monic,
    poly_divmod,
    poly_gcd,
    rational_roots,
    to_dense,
    yun_squarefree,
)
from .quotient import QuotientSpec
from .weyl import WeylOp, fourier_inv, translate


def op_from_dpoly(p: Poly) -> WeylOp:
    """The constant-coefficient operator p(d) in one variable."""
    if p.dim != 1:
        raise ValueError("univariate polynomial required")
    return WeylOp(1, {((0,), e): c for e, c in p.terms.items()})


class ConstCoeffClass:
    """Class in A_1 / A_1*p(d): every d-coefficient is reduced modulo p."""

    __slots__ = ("modulus", "rep")

    def __init__(self, modulus: Poly, rep: WeylOp):
        self.modulus = modulus
        self.rep = rep

    def is_zero(self) -> bool:
        return self.rep.is_zero()

    def lift(self) -> WeylOp:
        return self.rep

    def __eq__(self, other) -> bool:
        if not isinstance(other, ConstCoeffClass):
            return NotImplemented
        return self.modulus == other.modulus and self.rep == other.rep

    def __repr__(self) -> str:
        return f"ConstCoeffClass({self.modulus!r}, {self.rep!r})"

    def __str__(self) -> str:
        return str(self.rep)


def reduce_const_coeff(w: WeylOp, p: Poly) -> ConstCoeffClass:
    """Canonical form of w modulo the left ideal generated by p(d)."""
    if w.dim != 1:
        raise ValueError("constant-coefficient reduction needs dimension 1")
    if p.dim != 1 or p.degree() < 1:
        raise ValueError("modulus must be a nonconstant univariate polynomial")
    p = monic(p)
    by_x: dict[int, dict[tuple[int, ...], Fraction]] = {}
    for ((a,), b), c in w.terms.items():
        by_x.setdefault(a, {})[b] = c
    terms: dict = {}
    for a, coeffs in by_x.items():
        _, r = poly_divmod(Poly(1, coeffs), p)
        for e, c in r.terms.items():
            terms[((a,), e)] = c
    return ConstCoeffClass(p, WeylOp(1, terms))


@dataclass(frozen=True)
class ConstCoeffSpec:
    """A constant-coefficient operator with a coprime prime-power factor list."""

    p: Poly
    factors: tuple[tuple[Poly, int], ...]

    def __post_init__(self):
        if self.p.dim != 1 or self.p.degree() < 1:
            raise ValueError("operator polynomial must be univariate and nonconstant")
        if not self.factors:
            raise ValueError("factor list is empty")
        prod = Poly.one(1)
        for q, e in self.factors:
            if q.degree() < 1 or e < 1:
                raise ValueError(f"bad factor ({q}, {e})")
            prod = prod * q**e
        if monic(prod) != monic(self.p):
            raise ValueError("factor list does not multiply to the operator polynomial")
        for i, (qi, _) in enumerate(self.factors):
            for qj, _ in self.factors[i + 1 :]:
                if poly_gcd(qi, qj).degree() != 0:
                    raise ValueError(f"factors {qi} and {qj} are not coprime")


def normalized_factors(factors) -> tuple[tuple[Poly, int], ...]:
    return tuple((monic(q), e) for q, e in factors)


def default_factors(p: Poly) -> tuple[tuple[Poly, int], ...]:
    """Squarefree splitting refined by extraction of rational roots.

    Within one squarefree factor the rational roots come out ascending,
    followed by the root-free residual (kept whole).
    """
    out: list[tuple[Poly, int]] = []
    for part, mult in yun_squarefree(p):
        residual = part
        for root in rational_roots(part):
            linear = Poly(1, {(1,): Fraction(1), (0,): -root})
            residual = exact_div(residual, linear)
            out.append((linear, mult))
        if residual.degree() >= 1:
            out.append((monic(residual), mult))
    return tuple(out)


@dataclass
class OdeComponent:
    factor: Poly
    multiplicity: int
    annihilator: Poly  # factor ** multiplicity
    generator: ConstCoeffClass  # class modulo the full operator
    root: Fraction | None  # root of a linear factor
    linear_split: list[ConstCoeffClass] | None  # simple generators mod annihilator


@dataclass
class OdeSplit:
    spec: ConstCoeffSpec
    components: list[OdeComponent]
    checks: list[tuple[str, bool]]

    @property
    def verified(self) -> bool:
        return all(ok for _, ok in self.checks)

    @property
    def simple_count(self) -> int:
        return sum(
            len(c.linear_split) if c.linear_split is not None else 1
            for c in self.components
        )


def crt_split(spec: ConstCoeffSpec) -> OdeSplit:
    """Coprime splitting: one generator per prime-power factor.

    The generator for q^e is the Bezout cofactor v*(P/q^e) with
    u*q^e + v*(P/q^e) = 1; the generators sum to 1 and q^e kills its own.
    """
    phat = monic(spec.p)
    components: list[OdeComponent] = []
    checks: list[tuple[str, bool]] = []
    total_op = WeylOp.zero(1)
    for q, e in spec.factors:
        ann = q**e
        rest = exact_div(phat, ann)
        g, _, v = bezout(ann, rest)
        if g.degree() != 0:
            raise ValueError(f"factor {q} is not coprime to the rest")
        _, gen_poly = poly_divmod(v * rest, phat)
        gen_op = op_from_dpoly(gen_poly)
        total_op = total_op + gen_op
        gen = reduce_const_coeff(gen_op, phat)
        label = format_factor(q, e)
        checks.append(
            (f"{label}:killed", reduce_const_coeff(op_from_dpoly(ann) * gen_op, phat).is_zero())
        )
        checks.append((f"{label}:nonzero", not gen.is_zero()))
        root = _linear_root(q)
        components.append(OdeComponent(q, e, ann, gen, root, None))
    checks.insert(
        0, ("sum_is_one", reduce_const_coeff(total_op - WeylOp.one(1), phat).is_zero())
    )
    return OdeSplit(spec, components, checks)


def _linear_root(q: Poly) -> Fraction | None:
    if q.degree() != 1:
        return None
    dense = to_dense(monic(q))
    return -dense[0]


def split_linear_power(q: Poly, e: int) -> list[ConstCoeffClass]:
    """The e simple generators of A_1 / A_1*(d - a)^e for a linear q = t - a.

    Transports the verified generators of D / D*x^e through the automorphism
    x -> -d + a, d -> x (translation by the root composed with the inverse
    of the x/d swap), which maps the ideal A_1*x^e onto A_1*(d - a)^e.
    """
    root = _linear_root(q)
    if root is None:
        raise ValueError(f"prime power base {q} is not linear; finer splitting unsupported")
    if e < 1:
        raise ValueError(f"multiplicity must be positive, got {e}")
    cert = build_certificate(QuotientSpec(1, e - 1))
    if not cert.verified:
        raise RuntimeError(f"certificate for x^{e} failed verification")
    modulus = monic(q) ** e
    out: list[ConstCoeffClass] = []
    for entry in cert.entries:
        image = fourier_inv(translate(entry.generator_op, 0, root))
        out.append(reduce_const_coeff(image, modulus))
    return out


def verify_linear_split(
    q: Poly, e: int, classes: list[ConstCoeffClass]
) -> list[tuple[str, bool]]:
    """Kill, nonzero and joint independence checks for a linear split."""
    modulus = monic(q) ** e
    q_op = op_from_dpoly(monic(q))
    label = format_factor(q, e)
    checks: list[tuple[str, bool]] = []
    for idx, cls in enumerate(classes):
        killed = reduce_const_coeff(q_op * cls.rep, modulus).is_zero()
        checks.append((f"{label}:simple{idx}:killed", killed))
        checks.append((f"{label}:simple{idx}:nonzero", not cls.is_zero()))
    keys = sorted({k for cls in classes for k in cls.rep.terms})
    index = {k: r for r, k in enumerate(keys)}
    rows = [[Fraction(0)] * len(classes) for _ in keys]
    for j, cls in enumerate(classes):
        for k, c in cls.rep.terms.items():
            rows[index[k]][j] = c
    independent = not linalg.kernel(linalg.Matrix(rows, cols=len(classes)))
    checks.append((f"{label}:independent", independent))
    return checks


def ode_split(p: Poly, factors=None) -> OdeSplit:
    """Full pipeline: coprime splitting plus linear prime-power refinement."""
    if p.dim != 1 or p.degree() < 1:
        raise ValueError("operator polynomial must be univariate and nonconstant")
    if factors is None:
        factor_list = default_factors(monic(p))
    else:
        factor_list = normalized_factors(factors)
    spec = ConstCoeffSpec(p, factor_list)
    split = crt_split(spec)
    for comp in split.components:
        if comp.factor.degree() == 1:
            comp.linear_split = split_linear_power(comp.factor, comp.multiplicity)
            split.checks.extend(
                verify_linear_split(comp.factor, comp.multiplicity, comp.linear_split)
            )
    return split


def format_factor(q: Poly, e: int) -> str:
    from .poly import format_poly

    base = format_poly(q)
    if e == 1:
        return base
    return f"{base}^{e}" if len(q.terms) == 1 else f"({base})^{e}"
