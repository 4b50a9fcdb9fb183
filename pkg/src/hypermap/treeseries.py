"""Tree series F_s^(m) via colored-plane-tree functional equations.

F_s^(m)(x) = sum_v C_{v,s} x^{v+1} counts admissibly m-labeled plane trees
(on mv+1 vertices) whose root subtrees are placed into s ordered regions.
It is computed as x * h_s(P) where P solves the fixed point P = x * ell(P):

  ell(x) = sum_d  W_m(dm) * C(dm+m-1, m-1) * x^d     (internal colorings)
  h_s(x) = sum_d  W_m(dm) * C(dm+s-1, s-1) * x^d     (root colorings)

with W_m(k) the number of partitions of a k-set into m-blocks.  The root
factor C(dm+s-1, s-1) counts compositions of the root's dm children into s
ordered regions.  At m = 1 and s = 1 this is the Catalan generating
function.
"""

from __future__ import annotations

from functools import lru_cache
from math import comb

from .moments import block_wick, lambda_dim
from .series import Series


@lru_cache(maxsize=None)
def ell_series(m: int, order: int) -> Series:
    """Coloring series for internal vertices with d children (series index d)."""
    if m < 1:
        raise ValueError("m must be >= 1")
    return Series(
        [block_wick(m, d * m) * lambda_dim(m, d * m) for d in range(order)], order
    )


@lru_cache(maxsize=None)
def h_series(m: int, s: int, order: int) -> Series:
    """Coloring series for the root: block partition of the dm children times
    a composition of them into s regions."""
    if m < 1 or s < 1:
        raise ValueError("m and s must be >= 1")
    return Series(
        [block_wick(m, d * m) * comb(d * m + s - 1, s - 1) for d in range(order)],
        order,
    )


@lru_cache(maxsize=None)
def _fixed_point(m: int, order: int) -> Series:
    """P with P = x * ell(P), solved degree by degree: the x^k coefficient of
    the right side only involves lower-degree coefficients of P."""
    ell = ell_series(m, order)
    coeffs = [0] * order
    if order > 1:
        coeffs[1] = ell.coeffs[0]
    for k in range(2, order):
        p_known = Series(coeffs[:k], k)
        rhs = ell.truncate(k).compose(p_known).shift(1)
        coeffs[k] = rhs.coeffs[k]
    return Series(coeffs, order)


@lru_cache(maxsize=None)
def tree_series(m: int, s: int, order: int) -> Series:
    """F_s^(m) to the requested truncation order."""
    if order < 2:
        raise ValueError("order must be >= 2 (the series starts at x)")
    p = _fixed_point(m, order)
    return h_series(m, s, order).compose(p).shift(1).truncate(order)
