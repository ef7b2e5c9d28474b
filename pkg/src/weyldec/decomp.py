"""Explicit semisimple splitting of D / D*(x_1..x_d)^(n+1).

The quotient by the (n+1)-st power of the coordinate ideal decomposes into
C(n+d, d) copies of the quotient by the ideal itself.  Rising-factorial
("Pochhammer") operators built from 1 + d_i x_i supply explicit generators:
for each exponent alpha with |alpha| <= n, the class of

    Q_{n-j}(x) * x^alpha,   j = |alpha|,   Q_m(x) = prod_i (1 + d_i x_i)_m

is killed by every coordinate, and together these classes form a basis of
the invariants.  A certificate records machine-checked proofs of the facts
the construction relies on: each generator is well defined and nonzero, the
classes are linearly independent, their count matches the brute-force
invariant dimension, and right multiplication by the grading operator
sum x_i d_i acts on the layer |alpha| = j with eigenvalue -(d + j), one
distinct weight per layer.

The module also inverts the construction (writing any class as a
constant-coefficient combination of the generators) and searches for a
single generator of a finite direct sum of such quotients by peeling one
simple summand at a time with monomial witnesses.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from . import linalg
from .multiindex import (
    MultiIndex,
    grlex_key,
    iter_up_to,
    leq,
    sub,
    total,
    unit,
    zeros,
)
from .quotient import (
    InvariantBasis,
    QuotientClass,
    QuotientSpec,
    act,
    in_ideal,
    invariant_basis,
    reduce_op,
    zero_class,
)
from .weyl import WeylOp, euler_op

Pair = tuple[MultiIndex, MultiIndex]


class EigenvectorError(RuntimeError):
    """A class expected to be an eigenvector of the grading action is not."""


class SearchExhaustedError(RuntimeError):
    """A witness search ran past its configured monomial bound."""


@dataclass(frozen=True)
class PochhammerOp:
    """The operator prod_i (1 + d_i x_i)_n, expanded to left normal form."""

    dim: int
    n: int
    op: WeylOp


def axis_rising(dim: int, axis: int, n: int) -> WeylOp:
    """Single-axis rising factorial (1 + d_axis x_axis)_n."""
    out = WeylOp.one(dim)
    base = WeylOp.d(dim, axis) * WeylOp.x(dim, axis)
    for k in range(1, n + 1):
        out = out * (base + WeylOp.const(dim, k - 1))
    return out


def pochhammer_op(dim: int, n: int) -> PochhammerOp:
    if dim < 1 or n < 0:
        raise ValueError(f"need dim >= 1 and n >= 0, got ({dim}, {n})")
    out = WeylOp.one(dim)
    for i in range(dim):
        out = out * axis_rising(dim, i, n)
    return PochhammerOp(dim, n, out)


@dataclass
class GeneratorEntry:
    """One summand generator: the class of Q_{n-j}(x) * x^alpha."""

    alpha: MultiIndex
    layer: int  # |alpha|
    generator_op: WeylOp
    invariant_class: QuotientClass
    euler_weight: Fraction | None


@dataclass
class DecompositionCertificate:
    spec: QuotientSpec
    entries: list[GeneratorEntry]
    invariant_dimension: int
    checks: dict[str, bool]

    @property
    def verified(self) -> bool:
        return all(self.checks.values())

    def entry(self, alpha: MultiIndex) -> GeneratorEntry:
        for e in self.entries:
            if e.alpha == tuple(alpha):
                return e
        raise KeyError(f"no generator with exponent {alpha}")


def euler_weight(entry_op: WeylOp, cls: QuotientClass, spec: QuotientSpec) -> Fraction:
    """Eigenvalue of right multiplication by the grading operator.

    Raises EigenvectorError unless the reduced image is an exact scalar
    multiple of the given class.
    """
    if cls.is_zero():
        raise EigenvectorError("zero class has no eigenvalue")
    image = reduce_op(entry_op * euler_op(spec.dim), spec)
    key = next(iter(cls.rep.terms))
    w = image.rep.terms.get(key, Fraction(0)) / cls.rep.terms[key]
    if image != cls.scale(w):
        raise EigenvectorError(
            f"image {image} is not a scalar multiple of {cls}"
        )
    return w


def build_certificate(spec: QuotientSpec) -> DecompositionCertificate:
    """Construct all generators and run the five verification checks."""
    d, n = spec.dim, spec.n
    entries: list[GeneratorEntry] = []
    euler_ok = True
    for alpha in iter_up_to(d, n):
        j = total(alpha)
        gen = pochhammer_op(d, n - j).op * WeylOp.x_monomial(d, alpha)
        cls = reduce_op(gen, spec)
        weight: Fraction | None
        try:
            weight = euler_weight(gen, cls, spec)
        except EigenvectorError:
            weight = None
            euler_ok = False
        entries.append(GeneratorEntry(alpha, j, gen, cls, weight))

    well_defined = all(
        in_ideal(WeylOp.x(d, i) * e.generator_op, spec)
        for e in entries
        for i in range(d)
    )
    nonzero = all(not e.invariant_class.is_zero() for e in entries)
    independent = _classes_independent([e.invariant_class for e in entries])

    inv = invariant_basis(spec)
    expected = spec.expected_invariant_dim()
    dimension_match = (
        inv.stabilized and inv.dimension == expected and len(entries) == expected
    )

    weights_expected = euler_ok and all(
        e.euler_weight == -(d + e.layer) for e in entries
    )
    layer_weights = {e.layer: e.euler_weight for e in entries}
    weights_distinct = len(set(layer_weights.values())) == len(layer_weights)

    checks = {
        "well_defined": well_defined,
        "nonzero": nonzero,
        "independent": independent,
        "dimension_match": dimension_match,
        "euler_weights": weights_expected and weights_distinct,
    }
    return DecompositionCertificate(spec, entries, inv.dimension, checks)


def _classes_independent(classes: Sequence[QuotientClass]) -> bool:
    if not classes:
        return True
    pairs = sorted({p for cls in classes for p in cls.rep.terms})
    index = {p: r for r, p in enumerate(pairs)}
    rows = [[Fraction(0)] * len(classes) for _ in pairs]
    for col, cls in enumerate(classes):
        for p, c in cls.rep.terms.items():
            rows[index[p]][col] = c
    return not linalg.kernel(linalg.Matrix(rows, cols=len(classes)))


# -- the component maps -------------------------------------------------------


def components_to_class(
    components: Mapping[MultiIndex, WeylOp], cert: DecompositionCertificate
) -> QuotientClass:
    """Send a tuple of coefficient operators to sum P_alpha * generator_alpha."""
    spec = cert.spec
    acc = WeylOp.zero(spec.dim)
    for alpha, p in components.items():
        entry = cert.entry(alpha)
        if p.dim != spec.dim:
            raise ValueError(f"dimension mismatch: {spec.dim} vs {p.dim}")
        acc = acc + p * entry.generator_op
    return reduce_op(acc, spec)


def class_to_components(
    v: QuotientClass, cert: DecompositionCertificate
) -> dict[MultiIndex, WeylOp]:
    """Invert the generator map; each coefficient is a pure derivative polynomial.

    The generator of exponent alpha is homogeneous of per-axis weight alpha
    under the grading weight(x^a d^b) = a - b, and multiplying by d^gamma
    shifts the weight by -gamma.  Splitting the target class by weight
    therefore block-diagonalizes the linear system: in the block of weight
    mu only the coefficients c * d^(alpha - mu) can contribute.  Each block
    is solved exactly; an unsolvable block would contradict surjectivity of
    the generator map, so it raises.
    """
    spec = cert.spec
    if v.spec != spec:
        raise ValueError("class does not belong to the certificate's quotient")

    by_weight: dict[MultiIndex, dict[Pair, Fraction]] = {}
    for (b, a), c in v.rep.terms.items():
        by_weight.setdefault(sub(a, b), {})[(b, a)] = c

    out: dict[MultiIndex, WeylOp] = {e.alpha: WeylOp.zero(spec.dim) for e in cert.entries}
    for mu in sorted(by_weight):
        target = by_weight[mu]
        candidates: list[tuple[MultiIndex, MultiIndex, QuotientClass]] = []
        for e in cert.entries:
            gamma = sub(e.alpha, mu)
            if all(g >= 0 for g in gamma):
                col = reduce_op(WeylOp.d_monomial(spec.dim, gamma) * e.generator_op, spec)
                candidates.append((e.alpha, gamma, col))
        pairs = sorted(set(target) | {p for _, _, col in candidates for p in col.rep.terms})
        index = {p: r for r, p in enumerate(pairs)}
        rows = [[Fraction(0)] * len(candidates) for _ in pairs]
        for j, (_, _, col) in enumerate(candidates):
            for p, c in col.rep.terms.items():
                rows[index[p]][j] = c
        rhs = [target.get(p, Fraction(0)) for p in pairs]
        sol = linalg.solve(linalg.Matrix(rows, cols=len(candidates)), rhs)
        if sol is None:
            raise RuntimeError(
                f"weight-{mu} block is not in the generator span; "
                "this contradicts surjectivity and indicates a bug"
            )
        for (alpha, gamma, _), c in zip(candidates, sol):
            if c:
                out[alpha] = out[alpha] + WeylOp.d_monomial(spec.dim, gamma, c)
    return out


# -- cyclic generators of direct sums -----------------------------------------


@dataclass
class PeelStep:
    """Transcript of one induction step: with Q = x^delta annihilating the
    partial generator and P = d^gamma, Q*P does not kill the peeled simple."""

    summand: int
    alpha: MultiIndex
    delta: MultiIndex
    gamma: MultiIndex


@dataclass
class CyclicGenerator:
    specs: list[QuotientSpec]
    components: tuple[QuotientClass, ...]
    steps: list[PeelStep]
    invariant_dimension: int
    verified: bool


def _tuple_zero(specs: Sequence[QuotientSpec]) -> tuple[QuotientClass, ...]:
    return tuple(zero_class(s) for s in specs)


def _tuple_embed(
    specs: Sequence[QuotientSpec], k: int, v: QuotientClass
) -> tuple[QuotientClass, ...]:
    return tuple(v if i == k else zero_class(s) for i, s in enumerate(specs))


def _tuple_add(
    a: tuple[QuotientClass, ...], b: tuple[QuotientClass, ...]
) -> tuple[QuotientClass, ...]:
    return tuple(x + y for x, y in zip(a, b))


def _tuple_act(p: WeylOp, t: tuple[QuotientClass, ...]) -> tuple[QuotientClass, ...]:
    return tuple(act(p, v) for v in t)


def _tuple_is_zero(t: tuple[QuotientClass, ...]) -> bool:
    return all(v.is_zero() for v in t)


def cyclic_generator(
    specs: Sequence[QuotientSpec], *, search_bound: int | None = None
) -> CyclicGenerator:
    """One element whose orbit is the whole direct sum of the given quotients.

    The last summand is cyclic with the class of 1 as generator; every
    earlier simple constituent (one per certificate generator) is then
    absorbed by the torsion trick: find a coordinate monomial x^delta
    killing the partial generator m, a derivative monomial d^gamma with
    x^delta d^gamma not killing the new simple's generator m0, and replace
    m by m + d^gamma m0.  Verification checks that every invariant basis
    vector of the sum lies in the monomial orbit of the result.
    """
    specs = list(specs)
    if not specs:
        raise ValueError("need at least one summand")
    d = specs[0].dim
    if any(s.dim != d for s in specs):
        raise ValueError("summands must share one ambient dimension")

    certs: dict[QuotientSpec, DecompositionCertificate] = {}

    def cert_for(s: QuotientSpec) -> DecompositionCertificate:
        if s not in certs:
            c = build_certificate(s)
            if not c.verified:
                raise RuntimeError(f"certificate for {s} failed verification")
            certs[s] = c
        return certs[s]

    g = _tuple_embed(specs, len(specs) - 1, reduce_op(WeylOp.one(d), specs[-1]))
    steps: list[PeelStep] = []
    pending: list[tuple[int, GeneratorEntry]] = []
    for k in range(len(specs) - 1):
        for e in cert_for(specs[k]).entries:
            pending.append((k, e))

    for k, e in reversed(pending):
        m0 = _tuple_embed(specs, k, e.invariant_class)
        g = _peel(specs, g, m0, steps, k, e.alpha, search_bound)

    targets: list[tuple[QuotientClass, ...]] = []
    for k, s in enumerate(specs):
        for e in cert_for(s).entries:
            targets.append(_tuple_embed(specs, k, e.invariant_class))
    verified = _orbit_covers(specs, g, targets)
    return CyclicGenerator(specs, g, steps, len(targets), verified)


def _peel(
    specs: Sequence[QuotientSpec],
    g: tuple[QuotientClass, ...],
    m0: tuple[QuotientClass, ...],
    steps: list[PeelStep],
    summand: int,
    alpha: MultiIndex,
    search_bound: int | None,
) -> tuple[QuotientClass, ...]:
    d = specs[0].dim
    max_order = max((v.order() for v in g), default=0)
    bound = search_bound
    if bound is None:
        bound = max(s.n for s in specs) + max(max_order, 0) + 1
    for delta in iter_up_to(d, bound):
        if total(delta) == 0:
            continue
        x_op = WeylOp.x_monomial(d, delta)
        if not _tuple_is_zero(_tuple_act(x_op, g)):
            continue
        for gamma in iter_up_to(d, bound):
            probe = x_op * WeylOp.d_monomial(d, gamma)
            if not _tuple_is_zero(_tuple_act(probe, m0)):
                steps.append(PeelStep(summand, tuple(alpha), delta, gamma))
                return _tuple_add(g, _tuple_act(WeylOp.d_monomial(d, gamma), m0))
    raise SearchExhaustedError(
        f"no monomial witness within degree {bound} while absorbing a simple"
    )


def _orbit_covers(
    specs: Sequence[QuotientSpec],
    g: tuple[QuotientClass, ...],
    targets: list[tuple[QuotientClass, ...]],
    escalations: int = 2,
) -> bool:
    d = specs[0].dim
    ord_g = max((v.order() for v in g), default=0)
    delta_bound = max(s.n for s in specs) + max(ord_g, 0)
    gamma_bound = max(ord_g, 0) + max(d * s.n for s in specs) + 1
    for _ in range(escalations + 1):
        if _span_contains(specs, g, targets, delta_bound, gamma_bound):
            return True
        delta_bound += 2
        gamma_bound += 2
    return False


def _span_contains(
    specs: Sequence[QuotientSpec],
    g: tuple[QuotientClass, ...],
    targets: list[tuple[QuotientClass, ...]],
    delta_bound: int,
    gamma_bound: int,
) -> bool:
    d = specs[0].dim
    spanning: list[tuple[QuotientClass, ...]] = []
    for delta in iter_up_to(d, delta_bound):
        for gamma in iter_up_to(d, gamma_bound):
            w = _tuple_act(WeylOp.x_monomial(d, delta) * WeylOp.d_monomial(d, gamma), g)
            if not _tuple_is_zero(w):
                spanning.append(w)

    coords = sorted(
        {
            (k, p)
            for t in spanning + targets
            for k, v in enumerate(t)
            for p in v.rep.terms
        }
    )
    index = {c: r for r, c in enumerate(coords)}
    rows = [[Fraction(0)] * len(spanning) for _ in coords]
    for j, t in enumerate(spanning):
        for k, v in enumerate(t):
            for p, c in v.rep.terms.items():
                rows[index[(k, p)]][j] = c
    matrix = linalg.Matrix(rows, cols=len(spanning))
    for t in targets:
        rhs = [Fraction(0)] * len(coords)
        for k, v in enumerate(t):
            for p, c in v.rep.terms.items():
                rhs[index[(k, p)]] = c
        if linalg.solve(matrix, rhs) is None:
            return False
    return True
