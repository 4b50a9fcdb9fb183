"""Trace-moment polynomials and their independent oracles.

The pipeline value: summing over connected host graphs with r edges, the
polynomial in N of degree r+1 whose falling-factorial coefficient at
(N)_{v(G)} accumulates W(gamma) M(gamma) / |Aut_v G| over balanced digraph
structures gamma.  Two oracles validate it: a direct expansion of the trace
power over index words (any m), and the classical oriented-pairing surface
sum (m = 1).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import GuardError
from .flows import edet_count, enumerate_balanced, moment_contribution
from .graphs import enumerate_gamma_r
from .moments import loop_moment, nonloop_complex_moment
from .series import FallingPoly, MonomialPoly


@lru_cache(maxsize=None)
def moment_polynomial(m: int, r: int) -> FallingPoly:
    """<Tr X^{2mr}> as a polynomial in the matrix size N, in the falling
    factorial basis.  Guarded to r <= 4, and m <= 4 when r = 4."""
    if not 1 <= r <= 4:
        raise GuardError("moment polynomial guarded to 1 <= r <= 4", r=r)
    if r == 4 and m > 4:
        raise GuardError("moment polynomial guarded to m <= 4 at r = 4", m=m, r=r)
    coeffs = [Fraction(0)] * (r + 2)
    for g, _aut, aut_v in enumerate_gamma_r(r):
        acc = 0
        for gamma in enumerate_balanced(g, m, nonzero_only=True):
            mg = moment_contribution(gamma)
            if mg:
                acc += edet_count(gamma) * mg
        if acc:
            coeffs[g.vertex_count] += Fraction(acc, aut_v)
    return FallingPoly(coeffs)


@dataclass(frozen=True)
class AlphaTable:
    """Falling-factorial coefficients of the normalized polynomial
    P/(2mr): alpha[l] multiplies (N)_{r+1-l}, l = 0..r+1."""

    m: int
    r: int
    alpha: tuple

    def __getitem__(self, l: int) -> Fraction:
        return self.alpha[l]


def alpha_coeffs(m: int, r: int) -> AlphaTable:
    poly = moment_polynomial(m, r)
    norm = poly.scale(Fraction(1, 2 * m * r))
    cs = list(norm.coeffs) + [Fraction(0)] * (r + 2 - len(norm.coeffs))
    return AlphaTable(m, r, tuple(cs[r + 1 - l] for l in range(r + 2)))


def trace_word_oracle(m: int, r: int, n: int) -> int:
    """<Tr X^{2mr}> at matrix size n by direct expansion over index words.

    Each cyclic word contributes the product over unordered index pairs of
    its per-pair moment (diagonal letters use the loop normalization,
    off-diagonal pairs the mixed complex moment).  Independent of the graph
    pipeline.  Guarded to n^{2mr} <= 2*10^7 words.
    """
    k = 2 * m * r
    if n**k > 2 * 10**7:
        raise GuardError("trace oracle guarded to n^(2mr) <= 2e7", n=n, k=k)
    total = 0
    for word in itertools.product(range(n), repeat=k):
        counts: dict = {}
        for t in range(k):
            u, v = word[t], word[(t + 1) % k]
            counts[(u, v)] = counts.get((u, v), 0) + 1
        prod = 1
        seen = set()
        for (u, v), c in counts.items():
            if u == v:
                prod *= loop_moment(m, c)
            elif (v, u) not in seen:
                prod *= nonloop_complex_moment(m, c, counts.get((v, u), 0))
            if not prod:
                break
            seen.add((u, v))
        total += prod
    return total


def interpolate_polynomial(samples, degree: int) -> MonomialPoly:
    """Unique degree-<= interpolant through exact sample points (n, value);
    extra samples must be consistent or the mismatch is reported."""
    pts = list(samples)
    if len(pts) < degree + 1:
        raise ValueError("need at least degree+1 samples")
    base = pts[: degree + 1]
    # Newton divided differences, exact.
    xs = [Fraction(x) for x, _ in base]
    if len(set(xs)) != len(xs):
        raise ValueError("sample points must be distinct")
    divided = [Fraction(y) for _, y in base]
    for j in range(1, len(base)):
        for i in range(len(base) - 1, j - 1, -1):
            divided[i] = (divided[i] - divided[i - 1]) / (xs[i] - xs[i - j])
    # expand sum_k divided[k] * prod_{i<k}(N - x_i)
    coeffs = [Fraction(0)] * (degree + 1)
    basis = [Fraction(1)] + [Fraction(0)] * degree
    for k in range(len(base)):
        for j in range(degree + 1):
            coeffs[j] += divided[k] * basis[j]
        if k < degree:
            new = [Fraction(0)] * (degree + 1)
            for j in range(degree + 1):
                if basis[j]:
                    if j + 1 <= degree:
                        new[j + 1] += basis[j]
                    new[j] -= xs[k] * basis[j]
            basis = new
    poly = MonomialPoly(coeffs)
    for x, y in pts[degree + 1 :]:
        if poly.evaluate(x) != Fraction(y):
            raise ValueError(
                f"over-determined samples inconsistent at n={x}: "
                f"{poly.evaluate(x)} != {y}"
            )
    return poly


def pairing_oracle_gue(r: int) -> MonomialPoly:
    """Surface sum over oriented pairings of a 2r-gon (the m = 1 oracle):
    sum over fixed-point-free involutions pi of N^(number of cycles of
    pi composed with the 2r-rotation).  Guarded to r <= 6."""
    if r < 1 or r > 6:
        raise GuardError("pairing oracle guarded to r <= 6", r=r)
    k = 2 * r
    coeffs = [0] * (r + 2)

    def involutions(items):
        if not items:
            yield {}
            return
        first, rest = items[0], items[1:]
        for i, other in enumerate(rest):
            for sub in involutions(rest[:i] + rest[i + 1 :]):
                sub = dict(sub)
                sub[first] = other
                sub[other] = first
                yield sub

    for pi in involutions(tuple(range(k))):
        # apply rotation, then the involution
        perm = [pi[(i + 1) % k] for i in range(k)]
        seen = [False] * k
        cycles = 0
        for i in range(k):
            if not seen[i]:
                cycles += 1
                j = i
                while not seen[j]:
                    seen[j] = True
                    j = perm[j]
        coeffs[cycles] += 1
    return MonomialPoly(coeffs)
