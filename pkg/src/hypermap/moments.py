"""Block-partition moments and the scalar helpers used by the genus formulas.

The model's one-variable measure has k-th moment equal to the number of
partitions of a k-set into blocks of a fixed even size 2m (a generalized Wick
number).  Off-diagonal matrix entries are complex, and their mixed moments
<z^a zbar^b> count block partitions of a letters z and b letters zbar into
blocks of size 2m in which every block's (z-count - zbar-count) is divisible
by 4.  At m = 1 this reduces to the familiar Gaussian pairings.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb, factorial

from .errors import GuardError


@lru_cache(maxsize=None)
def block_wick(n: int, k: int) -> int:
    """Number of partitions of a k-set into blocks of size n; 0 if n does not
    divide k.  Equals k! / (n!^(k/n) (k/n)!)."""
    if n < 1 or k < 0:
        raise ValueError("block_wick requires n >= 1 and k >= 0")
    if k % n:
        return 0
    q = k // n
    return factorial(k) // (factorial(n) ** q * factorial(q))


def loop_moment(m: int, k: int) -> int:
    """Moment <x^k> of a diagonal entry: partitions of [k] into 2m-blocks."""
    if m < 1:
        raise ValueError("m must be >= 1")
    return block_wick(2 * m, k)


@lru_cache(maxsize=None)
def nonloop_complex_moment(m: int, a: int, b: int) -> int:
    """Mixed moment <z^a zbar^b> of an off-diagonal entry.

    Counts partitions of a labeled letters z and b labeled letters zbar into
    blocks of size 2m such that each block's z-count minus zbar-count is
    divisible by 4.  Zero unless 2m | a+b and 4 | a-b.

    Computed by placing the block containing the smallest remaining letter
    and recursing on the (remaining z, remaining zbar) counts.
    """
    if m < 1 or a < 0 or b < 0:
        raise ValueError("nonloop_complex_moment requires m >= 1, a, b >= 0")
    if (a + b) % (2 * m) or (a - b) % 4:
        return 0
    return _mixed_block_count(m, a, b)


@lru_cache(maxsize=None)
def _mixed_block_count(m: int, a: int, b: int) -> int:
    if a == 0 and b == 0:
        return 1
    size = 2 * m
    total = 0
    if a > 0:
        # Block containing the first z: j z's (j >= 1) and k zbar's.
        for j in range(1, min(a, size) + 1):
            k = size - j
            if k > b or (j - k) % 4:
                continue
            total += comb(a - 1, j - 1) * comb(b, k) * _mixed_block_count(m, a - j, b - k)
    else:
        # Only all-zbar blocks remain; allowed only when 4 | 2m.
        if (2 * m) % 4 == 0 and b >= size:
            total = comb(b - 1, size - 1) * _mixed_block_count(m, 0, b - size)
    return total


def complex_moment_bruteforce(m: int, a: int, b: int) -> int:
    """Oracle for :func:`nonloop_complex_moment` by exhaustive enumeration of
    set partitions into 2m-blocks.  Guarded to a+b <= 16 letters."""
    if a + b > 16:
        raise GuardError("brute-force moment limited to a+b <= 16", a=a, b=b)
    if m < 1 or a < 0 or b < 0:
        raise ValueError("invalid arguments")
    size = 2 * m
    if (a + b) % size:
        return 0
    # Letters 0..a-1 are z, a..a+b-1 are zbar.
    letters = tuple(range(a + b))

    def count(remaining: tuple) -> int:
        if not remaining:
            return 1
        first, rest = remaining[0], remaining[1:]
        total = 0
        from itertools import combinations

        for others in combinations(rest, size - 1):
            block = (first,) + others
            zs = sum(1 for x in block if x < a)
            if (2 * zs - size) % 4:
                continue
            chosen = set(block)
            total += count(tuple(x for x in rest if x not in chosen))
        return total

    return count(letters)


def beta(m: int, a: int) -> Fraction:
    """(a / 2m) * C(2m, a), the cycle-count weight attached to a digraph
    parameter value a on an edge with a+b = 2m."""
    if not 0 <= a <= 2 * m:
        raise ValueError("beta requires 0 <= a <= 2m")
    return Fraction(a, 2 * m) * comb(2 * m, a)


def tau(k: int, a: int, b: int) -> int:
    """sum_{i=0}^{k-1} a^i b^(k-1-i): oriented spanning trees of the
    thickened k-cycle with parameters (a, b)."""
    if k < 1 or a < 0 or b < 0:
        raise ValueError("tau requires k >= 1 and a, b >= 0")
    return sum(a**i * b ** (k - 1 - i) for i in range(k))


def lambda_dim(r: int, t: int) -> int:
    """Dimension C(r-1+t, r-1) of degree-t homogeneous polynomials in r
    variables."""
    if r < 1 or t < 0:
        raise ValueError("lambda_dim requires r >= 1 and t >= 0")
    return comb(r - 1 + t, r - 1)
