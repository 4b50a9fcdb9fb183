"""Genus-stratified generating functions of the moment-polynomial
coefficients.

In the falling factorial basis, the normalized trace moments define series
G_g whose x^v coefficient is the weight-(g) coefficient at r = g-1+v.  The
three computations here:

  * g = 0: integration of the tree series F_1 (the leading coefficients are
    generalized Catalan numbers divided by 2mv);
  * g = 1: a closed rational-plus-log expression in F_{2m} obtained by
    summing over cycles with grafted trees;
  * g >= 2: a finite triple sum over minimum-degree-3 graphs, balanced
    orientations of their thickenings, and spanning-tree representatives,
    where each edge class contributes a rational function of F_{2m} built
    from the kernels mu and phi below.

A direct summation oracle over all bounded-size graphs of fixed Betti number
cross-checks every route.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from functools import lru_cache
from math import factorial

from .errors import GuardError
from .flows import edet_count, enumerate_balanced, moment_contribution
from .graphs import (
    Multigraph,
    SpanningTreeRep,
    edge_classes,
    enumerate_gamma_g_bounded,
    enumerate_min_degree3,
    spanning_tree_reps,
)
from .moments import beta, block_wick, nonloop_complex_moment
from .series import Series, log_tail
from .treeseries import tree_series


def _F(m: int, order: int) -> Series:
    """F_{2m}^(m), the grafting series for new degree-2 vertices."""
    return tree_series(m, 2 * m, max(order, 2)).truncate(order)


@lru_cache(maxsize=None)
def mu_series(m: int, a: int, b: int, K: int, c: int, order: int) -> Series:
    """mu_{>=K}(c) = c (beta(c) F)^K / (a! b! (1 - beta(c) F)); zero when
    4 does not divide a-b.  The selector c is one of the two digraph
    parameters a, b (whichever the spanning-tree orientation picks)."""
    if a + b != 2 * m or c not in (a, b):
        raise ValueError("mu requires a+b = 2m and c in {a, b}")
    if (a - b) % 4:
        return Series.zero(order)
    f = _F(m, order)
    bf = beta(m, c) * f
    geo = (Series.one(order) - bf).inverse()
    return (bf**K * geo) * Fraction(c, factorial(a) * factorial(b))


@lru_cache(maxsize=None)
def phi_series(m: int, a: int, b: int, K: int, order: int) -> Series:
    """phi_{>=K}(a, b): the tau-weighted tail sum
    sum_{k>=K} tau(k+1; a, b) (2m-1)!^k F^k / (a! b!)^(k+1)
    in closed form; zero when 4 does not divide a-b."""
    if a + b != 2 * m:
        raise ValueError("phi requires a + b = 2m")
    if (a - b) % 4:
        return Series.zero(order)
    f = _F(m, order)
    if a != b:
        bfa = beta(m, a) * f
        bfb = beta(m, b) * f
        part_a = (bfa**K) * (Series.one(order) - bfa).inverse() * a
        part_b = (bfb**K) * (Series.one(order) - bfb).inverse() * b
        return (part_a - part_b) * Fraction(1, factorial(a) * factorial(b) * (a - b))
    # a = b = m
    bf = beta(m, m) * f
    geo2 = (Series.one(order) - bf).inverse() ** 2
    correction = Series.zero(order)
    for i in range(1, K + 1):
        correction = correction + bf ** (i - 1) * i
    return (geo2 - correction) * Fraction(1, factorial(m) ** 2)


def r_single(m: int, a: int, b: int, in_tree: bool, select_a: bool, order: int) -> Series:
    """Contribution of a lone non-loop edge: mu_{>=0} of the tree-selected
    parameter when the edge lies on the spanning tree, else phi_{>=0}."""
    if in_tree:
        return mu_series(m, a, b, 0, a if select_a else b, order)
    return phi_series(m, a, b, 0, order)


def r_parallel(
    m: int, n: int, a_s: int, b_s: int, in_tree: bool, select_a: bool, order: int
) -> Series:
    """Contribution of a class of n parallel edges with totals (a_s, b_s).

    Sums over how many edges r get subdivision points and over the local
    splittings (a_i, b_i) of the flow: each subdivided edge carries a
    phi_{>=1} factor (or mu_{>=1} when it hosts the tree edge), the
    unsubdivided bundle carries its mixed moment over a_{r+1}! b_{r+1}!,
    and the n!/r! factor accounts for the choice of subdivided edges
    together with the vertex-fixing permutations of the rest.
    """
    out = Series.zero(order)
    for r in range(n + 1):
        for a_tuple in itertools.product(range(2 * m + 1), repeat=r):
            a_rest = a_s - sum(a_tuple)
            b_rest = b_s - sum(2 * m - ai for ai in a_tuple)
            if a_rest < 0 or b_rest < 0:
                continue
            if any((2 * ai - 2 * m) % 4 for ai in a_tuple):
                continue  # a phi/mu factor would vanish
            mom = nonloop_complex_moment(m, a_rest, b_rest)
            if not mom:
                continue
            pref = Fraction(factorial(n), factorial(r)) * Fraction(
                mom, factorial(a_rest) * factorial(b_rest)
            )
            phis = [
                phi_series(m, ai, 2 * m - ai, 1, order) for ai in a_tuple
            ]
            prod_phi = Series.one(order)
            for p in phis:
                prod_phi = prod_phi * p
            if not in_tree:
                out = out + prod_phi * pref
                continue
            c_rest = a_rest if select_a else b_rest
            bracket = prod_phi * c_rest
            for i, ai in enumerate(a_tuple):
                ci = ai if select_a else 2 * m - ai
                term = mu_series(m, ai, 2 * m - ai, 1, ci, order)
                for j, p in enumerate(phis):
                    if j != i:
                        term = term * p
                bracket = bracket + term
            out = out + bracket * pref
    return out


@lru_cache(maxsize=None)
def _phi2_sum(m: int, order: int) -> Series:
    """Sum of phi_{>=2}(a, b) over all splittings a + b = 2m (vanishing ones
    included for free)."""
    out = Series.zero(order)
    for a in range(2 * m + 1):
        if (2 * a - 2 * m) % 4 == 0:
            out = out + phi_series(m, a, 2 * m - a, 2, order)
    return out


@lru_cache(maxsize=None)
def r_loop(m: int, n: int, order: int) -> Series:
    """Contribution of a class of n loops at one vertex.

    Splits the loops into r deeply subdivided (>= 2 new vertices, phi_{>=2}
    each), s singly subdivided (one new vertex, grafting factor F and the
    top mixed moment), and t untouched (loop moment of the 2mt thickened
    loops); 2^(s+t) t! corrects the automorphism count for flips and
    permutations that miss every new vertex.
    """
    f = _F(m, order)
    m2m = nonloop_complex_moment(m, 2 * m, 2 * m)
    phi2 = _phi2_sum(m, order)
    out = Series.zero(order)
    for r in range(n + 1):
        for s in range(n - r + 1):
            t = n - r - s
            coeff = (
                Fraction(2 ** (s + t) * factorial(t))
                * Fraction(factorial(n), factorial(r) * factorial(s) * factorial(t))
                * Fraction(block_wick(2 * m, 2 * m * t), factorial(2 * m * t))
                * Fraction(m2m, factorial(2 * m)) ** s
            )
            out = out + (phi2**r) * (f**s) * coeff
    return out


def graph_contribution(g: Multigraph, m: int, order: int) -> Series:
    """Total contribution of one minimum-degree-3 graph: the (1/|Aut|)-scaled
    product of per-vertex grafting factors F_{m d(v)} (m d(v) - 1)! times the
    sum over balanced orientations and spanning-tree representatives of the
    per-class factors."""
    from .graphs import aut_orders

    degrees = g.degrees()
    if min(degrees) < 3:
        raise ValueError("graph contribution requires minimum degree 3")
    v = g.vertex_count
    if order <= v:
        return Series.zero(order)
    inner = order - v
    classes = edge_classes(g)
    trees = spanning_tree_reps(g, 0)
    acc = Series.zero(inner)
    for gamma in enumerate_balanced(g, m, nonzero_only=True):
        for tree in trees:
            prod = Series.one(inner)
            for ci, cls in enumerate(classes):
                if cls.kind == "loop":
                    factor = r_loop(m, cls.size, inner)
                else:
                    a, b = gamma.params[ci]
                    tree_edges = set(tree.edge_indices) & set(cls.edges)
                    in_tree = bool(tree_edges)
                    select_a = (
                        tree.matches_reference(next(iter(tree_edges)))
                        if in_tree
                        else True
                    )
                    if cls.kind == "single":
                        factor = r_single(m, a, b, in_tree, select_a, inner)
                    else:
                        factor = r_parallel(
                            m, cls.size, a, b, in_tree, select_a, inner
                        )
                prod = prod * factor
            acc = acc + prod
    unit = Series.one(inner)
    for vtx in range(v):
        s = m * degrees[vtx]
        unit = unit * tree_series(m, s, inner + 1).shift_down(1) * factorial(s - 1)
    total = unit * acc * Fraction(1, aut_orders(g)[0])
    return total.shift(v)


def gg_series(m: int, g: int, order: int, allow_large: bool = False) -> Series:
    """G_g for g >= 2 as the finite sum of graph contributions."""
    if g < 2:
        raise ValueError("gg_series requires g >= 2; use g0_series / g1_series")
    if g > (4 if allow_large else 3):
        raise GuardError("genus series guarded to g <= 3 (g = 4 with allow_large)", g=g)
    out = Series.zero(order)
    for graph, _aut in enumerate_min_degree3(g, allow_large=allow_large):
        out = out + graph_contribution(graph, m, order)
    return out


def g0_series(m: int, order: int) -> Series:
    """G_0(x) = sum_v C_v x^(v+1) / (2mv): integrate x^(-2)(F_1 - x) and
    rescale by x/2m."""
    if m < 1:
        raise ValueError("m must be >= 1")
    f1 = tree_series(m, 1, max(order, 2))
    inner = (f1 - Series.x(f1.order)).shift_down(2)
    return (inner.integrate().shift(1) * Fraction(1, 2 * m)).truncate(order)


def g1_series(m: int, order: int) -> Series:
    """G_1(x) in closed form in F = F_{2m}^(m):

      F/2m + <z^2m zbar^2m> F^2 / 4m + (beta(m) F)^3 / (2m (1 - beta(m) F))
           + sum over splittings a+b = 2m, 4 | a-b, a != b of
             (log-tail_3(beta(a) F) - log-tail_3(beta(b) F)) / (2(a-b)).
    """
    f = _F(m, order)
    m2m = nonloop_complex_moment(m, 2 * m, 2 * m)
    bfm = beta(m, m) * f
    out = f * Fraction(1, 2 * m)
    out = out + f * f * Fraction(m2m, 4 * m)
    out = out + (bfm**3) * (Series.one(order) - bfm).inverse() * Fraction(1, 2 * m)
    for a in range(2 * m + 1):
        b = 2 * m - a
        if a == b or (a - b) % 4:
            continue
        tail = log_tail(beta(m, a) * f, 3) - log_tail(beta(m, b) * f, 3)
        out = out + tail * Fraction(1, 2 * (a - b))
    return out


def leading_coefficient(m: int, g: int) -> Fraction:
    """[x] G_g for g >= 2: the one-vertex graph (g loops) contributes
    W_2m(2mg)/2mg and every other graph starts at x^2 or later."""
    if g < 2:
        raise ValueError("leading_coefficient applies to g >= 2")
    return Fraction(block_wick(2 * m, 2 * m * g), 2 * m * g)


def gg_series_oracle(
    m: int, g: int, vmax: int, allow_large: bool = False
) -> Series:
    """Direct summation over all connected graphs of Betti number g with at
    most vmax vertices: x^v W M / (2m (v+g-1) |Aut_v|) summed over balanced
    orientations.  Valid through x^vmax (returned order vmax+1)."""
    limit = 6 if m == 1 else 4
    if vmax > limit and not allow_large:
        raise GuardError(
            f"direct genus oracle guarded to vmax <= {limit} for m = {m}", vmax=vmax
        )
    coeffs = [Fraction(0)] * (vmax + 1)
    for graph, aut_v in enumerate_gamma_g_bounded(g, vmax):
        total = 0
        for gamma in enumerate_balanced(graph, m, nonzero_only=False):
            mg = moment_contribution(gamma)
            if mg:
                total += edet_count(gamma) * mg
        if total:
            v = graph.vertex_count
            coeffs[v] += Fraction(total, 2 * m * (v + g - 1) * aut_v)
    return Series(coeffs, vmax + 1)
