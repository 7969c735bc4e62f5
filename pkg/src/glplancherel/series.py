"""Truncated power series in one variable over exact rationals.

A :class:`TruncatedSeries` of order ``N`` stores ``c_0 .. c_N``; everything
above ``v^N`` is discarded.  Infinite products of the shape

    prod_{r >= r0} (1 - (v q^{-r})^d)^(c_lin*r + c_const)

are expanded in closed form by :func:`pochhammer_series`: the logarithm of the
product has one exact rational coefficient per power of ``v`` (the sums over
``r`` are geometric), and the truncated exponential follows from ``f' = g' f``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Sequence, Union

from .errors import NotInvertibleError, SeriesOrderError

__all__ = [
    "TruncatedSeries",
    "ProductFactorSpec",
    "series_arith",
    "pochhammer_series",
    "coeff_extract",
    "DEFAULT_ORDER",
]

DEFAULT_ORDER = 30

Number = Union[int, Fraction]


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    raise TypeError(f"exact rational expected, got {type(x).__name__}")


@dataclass(frozen=True)
class TruncatedSeries:
    """Power series ``sum_k coeffs[k] v^k`` truncated at order ``len(coeffs) - 1``."""

    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        if not self.coeffs:
            raise ValueError("a truncated series needs at least the constant coefficient")
        object.__setattr__(self, "coeffs", tuple(_frac(c) for c in self.coeffs))

    # -- constructors -------------------------------------------------------

    @classmethod
    def from_coeffs(cls, coeffs: Iterable[Number], order: int) -> TruncatedSeries:
        """Pad with zeros or cut ``coeffs`` to exactly ``order + 1`` entries."""
        if order < 0:
            raise ValueError("order must be nonnegative")
        cs = list(coeffs)[: order + 1]
        cs.extend([0] * (order + 1 - len(cs)))
        return cls(tuple(cs))

    @classmethod
    def constant(cls, c: Number, order: int) -> TruncatedSeries:
        return cls.from_coeffs([c], order)

    @classmethod
    def one(cls, order: int) -> TruncatedSeries:
        return cls.constant(1, order)

    @classmethod
    def monomial(cls, c: Number, k: int, order: int) -> TruncatedSeries:
        """``c * v^k``; zero if ``k > order``."""
        cs = [0] * (order + 1)
        if k <= order:
            cs[k] = c
        return cls(tuple(cs))

    # -- basic access ------------------------------------------------------

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __len__(self):
        return len(self.coeffs)

    def __getitem__(self, k: int) -> Fraction:
        return coeff_extract(self, k)

    def __iter__(self):
        return iter(self.coeffs)

    def truncate(self, order: int) -> TruncatedSeries:
        if order > self.order:
            raise SeriesOrderError(f"cannot extend a series of order {self.order} to {order}")
        return TruncatedSeries(self.coeffs[: order + 1])

    def _check(self, other: TruncatedSeries) -> None:
        if other.order != self.order:
            raise SeriesOrderError(
                f"order mismatch ({self.order} vs {other.order}); truncate explicitly first"
            )

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other):
        if isinstance(other, TruncatedSeries):
            self._check(other)
            return TruncatedSeries(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))
        if isinstance(other, (int, Fraction)):
            return TruncatedSeries((self.coeffs[0] + other,) + self.coeffs[1:])
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries(tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        if isinstance(other, (TruncatedSeries, int, Fraction)):
            return self + (-other)
        return NotImplemented

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c: Number) -> TruncatedSeries:
        c = _frac(c)
        return TruncatedSeries(tuple(c * a for a in self.coeffs))

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        self._check(other)
        a, b = self.coeffs, other.coeffs
        n = self.order
        # skip zero coefficients: products of sparse class series are common
        nz_b = [(j, bj) for j, bj in enumerate(b) if bj]
        out = [Fraction(0)] * (n + 1)
        for i, ai in enumerate(a):
            if not ai:
                continue
            for j, bj in nz_b:
                if i + j > n:
                    break
                out[i + j] += ai * bj
        return TruncatedSeries(tuple(out))

    __rmul__ = __mul__

    def shift(self, k: int) -> TruncatedSeries:
        """Multiply by ``v^k``, dropping what falls past the order."""
        if k < 0:
            raise ValueError("shift must be nonnegative")
        n = self.order
        return TruncatedSeries(((Fraction(0),) * min(k, n + 1) + self.coeffs)[: n + 1])

    def invert(self) -> TruncatedSeries:
        a = self.coeffs
        if a[0] == 0:
            raise NotInvertibleError("constant term is zero")
        inv0 = 1 / a[0]
        b = [inv0]
        for n in range(1, len(a)):
            acc = sum((a[j] * b[n - j] for j in range(1, n + 1) if a[j]), Fraction(0))
            b.append(-inv0 * acc)
        return TruncatedSeries(tuple(b))

    def __pow__(self, k) -> TruncatedSeries:
        return self.power(k)

    def power(self, k: Number) -> TruncatedSeries:
        """Raise to an integer or rational exponent.

        Uses the recurrence obtained from ``a * f' = k * a' * f``.  Rational
        exponents need a unit constant term so that ``f_0`` stays rational.
        """
        k = _frac(k)
        a = self.coeffs
        a0 = a[0]
        if a0 == 0:
            if k.denominator == 1 and k >= 0:
                return self._power_by_squaring(int(k))
            raise NotInvertibleError("constant term is zero")
        if k.denominator != 1 and a0 != 1:
            raise ValueError("rational exponent requires a unit constant term")
        f0 = a0 ** int(k) if k.denominator == 1 else Fraction(1)
        f = [f0]
        nz = [(j, aj) for j, aj in enumerate(a) if j and aj]
        for n in range(1, len(a)):
            acc = Fraction(0)
            for j, aj in nz:
                if j > n:
                    break
                acc += ((k + 1) * j - n) * aj * f[n - j]
            f.append(acc / (n * a0))
        return TruncatedSeries(tuple(f))

    def _power_by_squaring(self, k: int) -> TruncatedSeries:
        result = TruncatedSeries.one(self.order)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def log(self) -> TruncatedSeries:
        """Logarithm of a series with constant term 1 (result has zero constant term)."""
        a = self.coeffs
        if a[0] != 1:
            raise ValueError("log needs constant term 1")
        # g' = a'/a  <=>  n g_n = n a_n - sum_{k=1}^{n-1} k g_k a_{n-k}
        g = [Fraction(0)]
        for n in range(1, len(a)):
            acc = n * a[n]
            for k in range(1, n):
                if g[k] and a[n - k]:
                    acc -= k * g[k] * a[n - k]
            g.append(acc / n)
        return TruncatedSeries(tuple(g))

    def exp(self) -> TruncatedSeries:
        """Exponential of a series with zero constant term."""
        if self.coeffs[0] != 0:
            raise ValueError("exp needs zero constant term")
        return _exp_coeffs(self.coeffs)

    def __repr__(self):
        terms = [f"{c}*v^{k}" for k, c in enumerate(self.coeffs) if c]
        return f"TruncatedSeries({' + '.join(terms) or '0'}; O(v^{self.order + 1}))"


def _exp_coeffs(g: Sequence[Fraction]) -> TruncatedSeries:
    # n f_n = sum_{k=1}^n k g_k f_{n-k}
    nz = [(k, k * gk) for k, gk in enumerate(g) if k and gk]
    f = [Fraction(1)]
    for n in range(1, len(g)):
        acc = Fraction(0)
        for k, kg in nz:
            if k > n:
                break
            acc += kg * f[n - k]
        f.append(acc / n)
    return TruncatedSeries(tuple(f))


def coeff_extract(s: TruncatedSeries, n: int) -> Fraction:
    """Exact coefficient of ``v^n``; asking beyond the order is an error, never zero."""
    if n < 0:
        raise IndexError("negative coefficient index")
    if n > s.order:
        raise IndexError(f"coefficient v^{n} lies beyond the truncation order {s.order}")
    return s.coeffs[n]


def series_arith(kind: str, a: TruncatedSeries, b=None) -> TruncatedSeries:
    """Dispatch ``add | mul | invert | scale | shift | power`` on series."""
    if kind == "add":
        return a + b
    if kind == "mul":
        return a * b
    if kind == "invert":
        return a.invert()
    if kind == "scale":
        return a.scale(b)
    if kind == "shift":
        return a.shift(b)
    if kind == "power":
        return a.power(b)
    raise ValueError(f"unknown series operation {kind!r}")


@dataclass(frozen=True)
class ProductFactorSpec:
    """``prod_{r >= r0} (1 - (v q^{-r})^d)^(c_lin*r + c_const)``."""

    d: int
    r0: int
    c_lin: Number
    c_const: Number
    q: Fraction

    def __post_init__(self):
        if not isinstance(self.d, int) or self.d < 1:
            raise ValueError("d must be a positive integer")
        if self.r0 not in (0, 1):
            raise ValueError("r0 must be 0 or 1")
        object.__setattr__(self, "q", _frac(self.q))
        object.__setattr__(self, "c_lin", _frac(self.c_lin))
        object.__setattr__(self, "c_const", _frac(self.c_const))
        if self.q <= 1:
            raise ValueError("q must exceed 1")

    def log_coefficient(self, k: int) -> Fraction:
        """Coefficient of ``v^(d k)`` in the logarithm of the product (k >= 1)."""
        x = self.q ** (-self.d * k)
        geom_r = x / (1 - x) ** 2  # sum_{r>=r0} r x^r (r = 0 contributes nothing)
        geom = (1 if self.r0 == 0 else x) / (1 - x)  # sum_{r>=r0} x^r
        return -(self.c_lin * geom_r + self.c_const * geom) / k


def pochhammer_series(spec: ProductFactorSpec, order: int) -> TruncatedSeries:
    """Exact truncated expansion of the infinite product described by ``spec``."""
    if order < 0:
        raise ValueError("order must be nonnegative")
    g = [Fraction(0)] * (order + 1)
    for k in range(1, order // spec.d + 1):
        g[spec.d * k] = spec.log_coefficient(k)
    return _exp_coeffs(g)
