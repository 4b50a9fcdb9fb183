"""Exact rational arithmetic: truncated power series and polynomial bases.

Everything here is immutable and pure.  A :class:`Series` carries an explicit
truncation ``order`` (exclusive bound on known powers); arithmetic propagates
the minimum order of the operands and never zero-extends, so a coefficient
beyond the truncation bound can never leak into a comparison.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence, Union

Rational = Fraction
RationalLike = Union[Fraction, int]


def rat_to_str(q: RationalLike) -> str:
    """Lowest-terms string form: "p/q", or "p" when the denominator is 1."""
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def rat_from_str(s: str) -> Fraction:
    return Fraction(s)


class Series:
    """Truncated formal power series with exact rational coefficients.

    ``order`` is the exclusive bound on known powers: coefficients are stored
    for powers 0 .. order-1.  Powers >= order are unknown, not zero;
    :meth:`__getitem__` refuses to read them.
    """

    __slots__ = ("order", "coeffs")

    def __init__(self, coeffs: Iterable[RationalLike], order: int):
        if order < 0:
            raise ValueError("series order must be >= 0")
        cs = [Fraction(c) for c in coeffs]
        if len(cs) > order:
            cs = cs[:order]
        else:
            cs.extend([Fraction(0)] * (order - len(cs)))
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("Series is immutable")

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero(order: int) -> "Series":
        return Series([], order)

    @staticmethod
    def one(order: int) -> "Series":
        return Series([1], order)

    @staticmethod
    def x(order: int) -> "Series":
        return Series([0, 1], order)

    @staticmethod
    def constant(c: RationalLike, order: int) -> "Series":
        return Series([c], order)

    @staticmethod
    def geometric(order: int) -> "Series":
        """1/(1-x) = 1 + x + x^2 + ..."""
        return Series([1] * order, order)

    # -- basic protocol ----------------------------------------------------

    def __getitem__(self, power: int) -> Fraction:
        if not 0 <= power < self.order:
            raise IndexError(
                f"coefficient at x^{power} is beyond truncation order {self.order}"
            )
        return self.coeffs[power]

    def __eq__(self, other) -> bool:
        if not isinstance(other, Series):
            return NotImplemented
        return self.order == other.order and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.order, self.coeffs))

    def __repr__(self):
        return f"Series({list(self.coeffs)!r}, order={self.order})"

    def __str__(self):
        return series_to_text(self)

    def agrees_with(self, other: "Series", through: int) -> bool:
        """Coefficient equality for all powers 0..through (inclusive)."""
        if through >= min(self.order, other.order):
            raise IndexError("comparison reaches beyond a truncation order")
        return all(self.coeffs[k] == other.coeffs[k] for k in range(through + 1))

    def valuation(self) -> int:
        """Index of the first nonzero known coefficient; ``order`` if all zero."""
        for k, c in enumerate(self.coeffs):
            if c:
                return k
        return self.order

    def truncate(self, order: int) -> "Series":
        if order > self.order:
            raise ValueError("cannot extend a series beyond its known order")
        return Series(self.coeffs[:order], order)

    # -- ring operations ---------------------------------------------------

    def __add__(self, other) -> "Series":
        other = _coerce(other, self.order)
        n = min(self.order, other.order)
        return Series([self.coeffs[k] + other.coeffs[k] for k in range(n)], n)

    __radd__ = __add__

    def __neg__(self) -> "Series":
        return Series([-c for c in self.coeffs], self.order)

    def __sub__(self, other) -> "Series":
        return self + (-_coerce(other, self.order))

    def __rsub__(self, other) -> "Series":
        return _coerce(other, self.order) - self

    def __mul__(self, other) -> "Series":
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            return Series([c * a for a in self.coeffs], self.order)
        n = min(self.order, other.order)
        out = [Fraction(0)] * n
        for i, a in enumerate(self.coeffs[:n]):
            if not a:
                continue
            for j in range(min(n - i, other.order)):
                b = other.coeffs[j]
                if b:
                    out[i + j] += a * b
        return Series(out, n)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Series":
        if not isinstance(k, int) or k < 0:
            raise ValueError("series power requires an integer exponent >= 0")
        result = Series.one(self.order)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def inverse(self) -> "Series":
        """Multiplicative inverse; requires a nonzero constant term."""
        if self.order == 0 or not self.coeffs[0]:
            raise ZeroDivisionError("series inverse requires nonzero constant term")
        n = self.order
        inv0 = Fraction(1) / self.coeffs[0]
        out = [inv0] + [Fraction(0)] * (n - 1)
        for k in range(1, n):
            s = Fraction(0)
            for j in range(1, k + 1):
                if j < len(self.coeffs) and self.coeffs[j]:
                    s += self.coeffs[j] * out[k - j]
            out[k] = -inv0 * s
        return Series(out, n)

    def __truediv__(self, other) -> "Series":
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            return Series([a / c for a in self.coeffs], self.order)
        return self * other.inverse()

    def __rtruediv__(self, other) -> "Series":
        return _coerce(other, self.order) / self

    def compose(self, inner: "Series") -> "Series":
        """self(inner); the inner series must have zero constant term."""
        if inner.order > 0 and inner.coeffs[0]:
            raise ValueError("composition requires inner constant term 0")
        n = min(self.order, inner.order)
        # Horner from the top coefficient down.
        result = Series.zero(n)
        for k in range(n - 1, -1, -1):
            result = result * inner.truncate(n) + Series.constant(self.coeffs[k], n)
        return result

    # -- shifts ------------------------------------------------------------

    def shift(self, k: int) -> "Series":
        """Multiply by x^k; the k new low coefficients are exactly zero,
        so the order grows by k."""
        if k < 0:
            raise ValueError("shift amount must be >= 0")
        return Series([Fraction(0)] * k + list(self.coeffs), self.order + k)

    def shift_down(self, k: int) -> "Series":
        """Divide by x^k; requires valuation >= k.  Order shrinks by k."""
        if k < 0:
            raise ValueError("shift amount must be >= 0")
        if any(self.coeffs[i] for i in range(min(k, self.order))):
            raise ValueError(f"cannot divide by x^{k}: valuation too small")
        if self.order < k:
            raise ValueError("shift_down exceeds known order")
        return Series(self.coeffs[k:], self.order - k)

    # -- calculus ----------------------------------------------------------

    def differentiate(self) -> "Series":
        return Series(
            [k * self.coeffs[k] for k in range(1, self.order)],
            max(self.order - 1, 0),
        )

    def integrate(self, lowest_power: int = 1) -> "Series":
        """Antiderivative with integration constant 0.

        [x^{k+1}] out = [x^k] self / (k+1).  Output powers below
        ``lowest_power`` are dropped (forced to zero).
        """
        out = [Fraction(0)] * (self.order + 1)
        for k in range(self.order):
            if k + 1 >= lowest_power:
                out[k + 1] = self.coeffs[k] / (k + 1)
        return Series(out, self.order + 1)

    # -- serialization -----------------------------------------------------

    def to_json_obj(self, var: str = "x") -> dict:
        return {
            "var": var,
            "order": self.order,
            "coeffs": [rat_to_str(c) for c in self.coeffs],
        }

    @staticmethod
    def from_json_obj(obj: dict) -> "Series":
        return Series([rat_from_str(c) for c in obj["coeffs"]], obj["order"])


def _coerce(value, order: int) -> Series:
    if isinstance(value, Series):
        return value
    return Series.constant(value, order)


def series_reversion(f: Series) -> Series:
    """Compositional inverse g with f(g) = g(f) = x to truncation order.

    Requires zero constant term and nonzero linear coefficient.  Solved
    degree by degree: adding g_n x^n perturbs [x^n] f(g) by f_1 g_n.
    """
    if f.order < 2:
        raise ValueError("reversion needs at least order 2")
    if f.coeffs[0]:
        raise ValueError("reversion requires zero constant term")
    f1 = f.coeffs[1]
    if not f1:
        raise ValueError("reversion requires nonzero linear coefficient")
    n = f.order
    g = [Fraction(0), Fraction(1) / f1] + [Fraction(0)] * (n - 2)
    for k in range(2, n):
        c = f.compose(Series(g, k + 1)).coeffs[k]
        g[k] = -c / f1
    return Series(g, n)


def log_tail(f: Series, n: int) -> Series:
    """sum_{k>=n} f^k / k, the log-of-1/(1-f) series with the first n-1
    terms of the k-sum omitted.  Requires f(0) = 0 and n >= 1."""
    if n < 1:
        raise ValueError("log_tail requires n >= 1")
    if f.order > 0 and f.coeffs[0]:
        raise ValueError("log_tail requires zero constant term")
    # f has valuation >= 1, so f^k contributes nothing once k >= order.
    out = Series.zero(f.order)
    if n >= f.order:
        return out
    fk = f ** n
    for k in range(n, f.order):
        out = out + fk / k
        fk = fk * f
    return out


def series_to_text(s: Series, var: str = "x") -> str:
    """Human form, e.g. "35x/8 + 1845x^2/4"; "0" when no nonzero terms."""
    terms = []
    for k, c in enumerate(s.coeffs):
        if not c:
            continue
        terms.append(_term_text(c, var, k))
    return " + ".join(terms) if terms else "0"


def _term_text(c: Fraction, var: str, k: int) -> str:
    num, den = c.numerator, c.denominator
    if k == 0:
        return rat_to_str(c)
    v = var if k == 1 else f"{var}^{k}"
    body = v if abs(num) == 1 else f"{abs(num)}{v}"
    if den != 1:
        body = f"{body}/{den}"
    return body if num > 0 else f"-{body}"


# -- polynomial bases -------------------------------------------------------


@lru_cache(maxsize=None)
def falling_in_monomials(n: int) -> tuple:
    """Coefficients of (N)_n = N(N-1)...(N-n+1) in the monomial basis
    (signed Stirling numbers of the first kind)."""
    if n == 0:
        return (1,)
    prev = falling_in_monomials(n - 1)
    # (N)_n = (N)_{n-1} * (N - (n-1))
    out = [0] * (n + 1)
    for k, c in enumerate(prev):
        out[k + 1] += c
        out[k] -= (n - 1) * c
    return tuple(out)


@lru_cache(maxsize=None)
def monomial_in_fallings(n: int) -> tuple:
    """Coefficients of N^n over the falling factorials (N)_k (Stirling
    numbers of the second kind)."""
    if n == 0:
        return (1,)
    prev = monomial_in_fallings(n - 1)
    # N * (N)_k = (N)_{k+1} + k (N)_k
    out = [0] * (n + 1)
    for k, c in enumerate(prev):
        out[k + 1] += c
        out[k] += k * c
    return tuple(out)


class _BasePoly:
    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence[RationalLike]):
        cs = [Fraction(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError(f"{type(self).__name__} is immutable")

    @property
    def degree(self) -> int:
        """Degree, with the zero polynomial given degree -1."""
        return len(self.coeffs) - 1

    def __eq__(self, other) -> bool:
        if type(other) is not type(self):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash((type(self).__name__, self.coeffs))

    def __add__(self, other):
        if type(other) is not type(self):
            raise TypeError("cannot mix polynomial bases; convert first")
        n = max(len(self.coeffs), len(other.coeffs))
        a = list(self.coeffs) + [Fraction(0)] * (n - len(self.coeffs))
        b = list(other.coeffs) + [Fraction(0)] * (n - len(other.coeffs))
        return type(self)([x + y for x, y in zip(a, b)])

    def scale(self, c: RationalLike):
        c = Fraction(c)
        return type(self)([c * a for a in self.coeffs])

    def __repr__(self):
        return f"{type(self).__name__}({[rat_to_str(c) for c in self.coeffs]})"


class MonomialPoly(_BasePoly):
    """Polynomial in N stored as coefficients of N^k."""

    def evaluate(self, n: RationalLike) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * n + c
        return acc

    def to_falling(self) -> "FallingPoly":
        out = [Fraction(0)] * len(self.coeffs)
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            for j, s in enumerate(monomial_in_fallings(k)):
                if s:
                    out[j] += c * s
        return FallingPoly(out)

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)

    def __str__(self):
        terms = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c:
                terms.append(_term_text(c, "N", k))
        return " + ".join(terms).replace("+ -", "- ") if terms else "0"


class FallingPoly(_BasePoly):
    """Polynomial in N stored as coefficients of (N)_k = N(N-1)...(N-k+1)."""

    def evaluate(self, n: RationalLike) -> Fraction:
        acc = Fraction(0)
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            ff = Fraction(1)
            for i in range(k):
                ff *= n - i
            acc += c * ff
        return acc

    def to_monomial(self) -> MonomialPoly:
        out = [Fraction(0)] * len(self.coeffs)
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            for j, s in enumerate(falling_in_monomials(k)):
                if s:
                    out[j] += c * s
        return MonomialPoly(out)

    def __str__(self):
        terms = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if not c:
                continue
            if k == 0:
                terms.append(rat_to_str(c))
                continue
            body = f"(N)_{k}" if abs(c.numerator) == 1 else f"{abs(c.numerator)}(N)_{k}"
            if c.denominator != 1:
                body = f"{body}/{c.denominator}"
            terms.append(body if c.numerator > 0 else f"-{body}")
        return " + ".join(terms).replace("+ -", "- ") if terms else "0"


def factorial(n: int) -> int:
    return math.factorial(n)
