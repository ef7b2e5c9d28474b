"""Multi-index helpers shared by the polynomial and operator layers.

A multi-index is a plain tuple of ints, one entry per variable.  Exponent
vectors are nonnegative; the per-axis weight vectors used by the invariant
solver may carry negative entries, so the arithmetic here does not enforce
a sign.
"""

from __future__ import annotations

from itertools import product as _cartesian
from math import comb, factorial, perm
from typing import Iterable, Iterator

MultiIndex = tuple[int, ...]


def zeros(dim: int) -> MultiIndex:
    return (0,) * dim


def unit(dim: int, axis: int) -> MultiIndex:
    """Standard basis vector for a 0-based axis."""
    return tuple(1 if i == axis else 0 for i in range(dim))


def add(a: MultiIndex, b: MultiIndex) -> MultiIndex:
    return tuple(x + y for x, y in zip(a, b))


def sub(a: MultiIndex, b: MultiIndex) -> MultiIndex:
    return tuple(x - y for x, y in zip(a, b))


def leq(a: MultiIndex, b: MultiIndex) -> bool:
    """Componentwise a <= b."""
    return all(x <= y for x, y in zip(a, b))


def minimum(a: MultiIndex, b: MultiIndex) -> MultiIndex:
    return tuple(min(x, y) for x, y in zip(a, b))


def total(a: MultiIndex) -> int:
    return sum(a)


def mi_factorial(a: MultiIndex) -> int:
    out = 1
    for x in a:
        out *= factorial(x)
    return out


def binom_prod(b: MultiIndex, r: MultiIndex) -> int:
    """Product of componentwise binomials C(b_i, r_i)."""
    out = 1
    for x, y in zip(b, r):
        out *= comb(x, y)
    return out


def falling_prod(g: MultiIndex, r: MultiIndex) -> int:
    """Product of componentwise falling factorials g_i(g_i-1)...(g_i-r_i+1)."""
    out = 1
    for x, y in zip(g, r):
        out *= perm(x, y)
    return out


def iter_box(bounds: MultiIndex) -> Iterator[MultiIndex]:
    """All multi-indices r with 0 <= r <= bounds componentwise."""
    return _cartesian(*(range(b + 1) for b in bounds))


def iter_degree(dim: int, k: int) -> Iterator[MultiIndex]:
    """Multi-indices of total degree k, first axis dominant, descending."""
    if dim == 1:
        yield (k,)
        return
    for lead in range(k, -1, -1):
        for rest in iter_degree(dim - 1, k - lead):
            yield (lead,) + rest


def iter_up_to(dim: int, n: int) -> Iterator[MultiIndex]:
    """Multi-indices of total degree 0..n in graded order."""
    for k in range(n + 1):
        yield from iter_degree(dim, k)


def grlex_key(a: MultiIndex) -> tuple[int, MultiIndex]:
    """Sort key for graded lexicographic order (degree first, then lex)."""
    return (sum(a), a)


def count_up_to(dim: int, n: int) -> int:
    """Number of multi-indices of total degree <= n, i.e. C(n + dim, dim)."""
    return comb(n + dim, dim)
