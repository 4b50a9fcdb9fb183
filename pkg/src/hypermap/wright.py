"""Generating functions of connected graphs of fixed first Betti number,
expressed through the rooted-tree function, plus the genus-1 scheme series
for orientable one-face maps.

The weighted count of connected graphs with Betti number g (weight
1/|Aut G|) is:

  g = 0:   integral of T(x)/x, with T the inverse series of x e^{-x};
  g = 1:   (1/2) log(1/(1 - T));
  g >= 2:  sum over minimum-degree-3 graphs of T^v / (|Aut G| (1 - T)^e),

and for any g >= 2 the same value follows from the bivariate sum
sum x^v y^e / |Aut G| by substituting x -> T, y -> 1/(1 - T).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial

from .errors import GuardError
from .graphs import enumerate_min_degree3
from .series import Series, log_tail, series_reversion
from .treeseries import tree_series


@lru_cache(maxsize=None)
def tree_function(order: int) -> Series:
    """T(x) = sum v^(v-1) x^v / v!, the inverse series of x e^{-x}."""
    xemx = Series(
        [0] + [Fraction((-1) ** k, factorial(k)) for k in range(order - 1)], order
    )
    return series_reversion(xemx)


def _one_minus_t_inv(order: int) -> Series:
    return (Series.one(order) - tree_function(order)).inverse()


def w_series(g: int, order: int, allow_large: bool = False) -> Series:
    """Weighted connected graphs of Betti number g, as a series in x.

    The g = 0 branch integrates T/x directly (so its x^3 coefficient is
    1/2 = 3/3!, the Cayley value; see the golden data notes for the
    commonly quoted variant with 1/3 there).
    """
    if g < 0:
        raise ValueError("g must be >= 0")
    if g == 0:
        t = tree_function(max(order, 2))
        return t.shift_down(1).integrate().truncate(order)
    if g == 1:
        return log_tail(tree_function(order), 1) * Fraction(1, 2)
    if g > (5 if allow_large else 3):
        raise GuardError(
            "enumerative route guarded to g <= 3 (g <= 5 with allow_large); "
            "use wg_from_bivariate for larger g",
            g=g,
        )
    t = tree_function(order)
    inv = _one_minus_t_inv(order)
    out = Series.zero(order)
    for graph, aut in enumerate_min_degree3(g, allow_large=allow_large):
        out = out + (t**graph.vertex_count) * (inv**graph.edge_count) * Fraction(
            1, aut
        )
    return out


@dataclass(frozen=True)
class BivariateAutSum:
    """The polynomial sum x^v y^e / |Aut G| over a fixed-Betti family,
    stored as (v, e, coeff) terms."""

    terms: tuple  # of (v, e, Fraction)

    @staticmethod
    def from_json_obj(obj: dict) -> "BivariateAutSum":
        return BivariateAutSum(
            tuple((t["v"], t["e"], Fraction(t["coeff"])) for t in obj["terms"])
        )

    def to_json_obj(self) -> dict:
        return {
            "terms": [
                {"v": v, "e": e, "coeff": f"{c.numerator}/{c.denominator}"
                 if c.denominator != 1 else str(c.numerator)}
                for v, e, c in self.terms
            ]
        }

    @staticmethod
    def from_family(g: int, allow_large: bool = False) -> "BivariateAutSum":
        """Build the sum by enumerating the minimum-degree-3 family."""
        acc: dict = {}
        for graph, aut in enumerate_min_degree3(g, allow_large=allow_large):
            key = (graph.vertex_count, graph.edge_count)
            acc[key] = acc.get(key, Fraction(0)) + Fraction(1, aut)
        return BivariateAutSum(tuple((v, e, c) for (v, e), c in sorted(acc.items())))


def wg_from_bivariate(bs: BivariateAutSum, order: int) -> Series:
    """Evaluate the bivariate automorphism sum at x -> T, y -> 1/(1-T)."""
    t = tree_function(order)
    inv = _one_minus_t_inv(order)
    out = Series.zero(order)
    for v, e, coeff in bs.terms:
        out = out + (t**v) * (inv**e) * coeff
    return out


def genus1_scheme_series(order: int) -> Series:
    """Weighted genus-1 orientable one-face maps by vertex count.

    Two reduced maps exist; subdividing their edges and attaching planar
    trees (Catalan generating function C) gives

      [x/(1-C)^4] / (4 (1 - x/(1-C)^2)^2) + [x^2/(1-C)^6] / (6 (1 - x/(1-C)^2)^3).
    """
    cat = tree_series(1, 1, max(order, 2)).truncate(order)
    inv = (Series.one(order) - cat).inverse()
    x = Series.x(order)
    edge = x * inv**2  # one subdivided-edge unit
    block = (Series.one(order) - edge).inverse()
    first = x * inv**4 * block**2 * Fraction(1, 4)
    second = x**2 * inv**6 * block**3 * Fraction(1, 6)
    return first + second
