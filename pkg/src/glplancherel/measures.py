"""Pointwise weights: Schur specializations, M_{v,q}, GL(n,q) degrees, mu_n and P_{v,q}.

Quantities that involve an infinite product over ``r`` are returned as
:class:`CertifiedReal` values; every other factor is an exact rational.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import prod
from typing import Union

from .collection import PartitionCollection
from .errors import ConsistencyError, DomainError
from .partitions import Partition
from .rationals import decimal_ceil, format_decimal, parse_rational

__all__ = [
    "CertifiedReal",
    "MWeight",
    "certified_product",
    "schur_special",
    "m_exact_part",
    "m_prefactor",
    "m_weight",
    "gl_order",
    "euler_coefficient",
    "irrep_degree",
    "plancherel_weight",
    "grand_prefactor",
    "grand_weight",
    "DEFAULT_TOL",
]

DEFAULT_TOL = Fraction(1, 10**9)

Number = Union[int, Fraction]


@dataclass(frozen=True)
class CertifiedReal:
    """A real number known to lie in ``[value - error_bound, value + error_bound]``."""

    value: Fraction
    error_bound: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "value", Fraction(self.value))
        object.__setattr__(self, "error_bound", Fraction(self.error_bound))
        if self.error_bound < 0:
            raise ValueError("error bound must be nonnegative")

    @classmethod
    def exact(cls, x: Number) -> CertifiedReal:
        return cls(Fraction(x), Fraction(0))

    @property
    def lower(self) -> Fraction:
        return self.value - self.error_bound

    @property
    def upper(self) -> Fraction:
        return self.value + self.error_bound

    def contains(self, x: Number) -> bool:
        return self.lower <= x <= self.upper

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return CertifiedReal(self.value * other, self.error_bound * abs(other))
        if isinstance(other, CertifiedReal):
            a, ea, b, eb = self.value, self.error_bound, other.value, other.error_bound
            return CertifiedReal(a * b, abs(a) * eb + abs(b) * ea + ea * eb)
        return NotImplemented

    __rmul__ = __mul__

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            return CertifiedReal(self.value + other, self.error_bound)
        if isinstance(other, CertifiedReal):
            return CertifiedReal(self.value + other.value, self.error_bound + other.error_bound)
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return CertifiedReal(-self.value, self.error_bound)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __abs__(self):
        # |.| is 1-Lipschitz, so the bound carries over unchanged
        return CertifiedReal(abs(self.value), self.error_bound)

    def __float__(self):
        return float(self.value)

    def to_dict(self, digits: int | None = None) -> dict:
        """``{"value": decimal, "err": decimal}``; the decimal rounding is folded into ``err``."""
        if digits is None:
            digits = _digits_for(self.error_bound)
        shown = parse_rational(format_decimal(self.value, digits))
        err = decimal_ceil(self.error_bound + abs(self.value - shown), digits)
        return {"value": format_decimal(self.value, digits), "err": format_decimal(err, digits)}

    @classmethod
    def from_dict(cls, data: dict) -> CertifiedReal:
        return cls(parse_rational(data["value"]), parse_rational(data["err"]))

    def __repr__(self):
        return f"CertifiedReal({float(self.value)!r} +/- {float(self.error_bound):.3g})"


def _digits_for(err: Fraction) -> int:
    if err == 0:
        return 40
    digits = 3
    while Fraction(1, 10 ** (digits - 3)) > err and digits < 200:
        digits += 1
    return digits


def _floor_to(x: Fraction, bits: int) -> Fraction:
    return Fraction((x.numerator << bits) // x.denominator, 1 << bits)


def _ceil_to(x: Fraction, bits: int) -> Fraction:
    return Fraction(-((-x.numerator << bits) // x.denominator), 1 << bits)


def certified_product(
    x: Number,
    q: Number,
    r0: int,
    c_lin: int,
    c_const: int,
    tol: Number = DEFAULT_TOL,
) -> CertifiedReal:
    """``prod_{r >= r0} (1 - x q^{-r})^(c_lin*r + c_const)`` to absolute accuracy ``tol``.

    Partial products are carried as outward-rounded dyadic intervals.  Past the
    cutoff R, ``|log(1-y)| <= y/(1-y)`` and the closed forms of
    ``sum_{r>R} z^r`` and ``sum_{r>R} r z^r`` bound the logarithm of the tail.
    """
    x, q, tol = Fraction(x), Fraction(q), Fraction(tol)
    if q <= 1:
        raise DomainError("q must exceed 1")
    if tol <= 0:
        raise ValueError("tol must be positive")
    if x <= 0 or x >= q**r0:
        raise DomainError("need 0 < x q^{-r} < 1 for every factor")
    z = 1 / q
    bits = tol.denominator.bit_length() - tol.numerator.bit_length() + 24
    while True:
        lo = hi = Fraction(1)
        r = r0
        while True:
            e = c_lin * r + c_const
            if e:
                f = (1 - x * z**r) ** e
                lo = _floor_to(lo * f, bits)
                hi = _ceil_to(hi * f, bits)
            zR1 = z ** (r + 1)
            s0 = zR1 / (1 - z)  # sum_{s>r} z^s
            s1 = zR1 * ((r + 1) - r * z) / (1 - z) ** 2  # sum_{s>r} s z^s
            tau = x * (abs(c_lin) * s1 + abs(c_const) * s0) / (1 - x * zR1)
            r += 1
            if tau < Fraction(1, 2) and hi * (1 / (1 - tau) - (1 - tau)) <= tol / 2:
                break
        lower = lo * (1 - tau)
        upper = hi / (1 - tau)
        err = (upper - lower) / 2
        if err <= tol:
            return CertifiedReal((upper + lower) / 2, err)
        bits += 32


def schur_special(lam: Partition, d: int, q: Number) -> Fraction:
    """``s_lambda(q^{-d}, q^{-2d}, ...) = Q^{n(lambda')} / prod_x (Q^{h(x)} - 1)`` with ``Q = q^d``."""
    q = Fraction(q)
    if q <= 1:
        raise DomainError("q must exceed 1")
    if d < 1:
        raise ValueError("d must be positive")
    Q = q**d
    return Q**lam.n_conjugate / prod((Q**h - 1 for h in lam.hooks), start=Fraction(1))


def m_exact_part(lam: Partition, v: Number, q: Number) -> Fraction:
    """The finite part ``q^{2n(lambda')+|lambda|} prod (q^h-1)^{-2} v^{|lambda|}`` of M_{v,q}."""
    q, v = Fraction(q), Fraction(v)
    hook_prod = prod((q**h - 1 for h in lam.hooks), start=Fraction(1))
    return q ** (2 * lam.n_conjugate + lam.size) * v**lam.size / hook_prod**2


def _check_m_domain(v: Fraction, q: Fraction) -> None:
    if q <= 1:
        raise DomainError("q must exceed 1")
    if not 0 < v < q:
        raise DomainError(f"M_(v,q) needs 0 < v < q (got v={v}, q={q})")


def m_prefactor(v: Number, q: Number, tol: Number = DEFAULT_TOL) -> CertifiedReal:
    """``C(v,q) = prod_{r>=1} (1 - v q^{-r})^r``."""
    v, q = Fraction(v), Fraction(q)
    _check_m_domain(v, q)
    return certified_product(v, q, r0=1, c_lin=1, c_const=0, tol=tol)


@dataclass(frozen=True)
class MWeight:
    value: CertifiedReal
    exact_part: Fraction
    prefactor: CertifiedReal


def m_weight(lam: Partition, v: Number, q: Number, tol: Number = DEFAULT_TOL) -> MWeight:
    v, q, tol = Fraction(v), Fraction(q), Fraction(tol)
    _check_m_domain(v, q)
    exact = m_exact_part(lam, v, q)
    c = m_prefactor(v, q, tol / max(exact, Fraction(1)))
    return MWeight(c * exact, exact, c)


def _check_int_q(q) -> int:
    if isinstance(q, Fraction) and q.denominator == 1:
        q = int(q)
    if not isinstance(q, int) or q < 2:
        raise DomainError("group-theoretic quantities need an integer q >= 2")
    return q


def gl_order(n: int, q: int) -> int:
    """``|GL(n,q)| = q^{n(n-1)/2} prod_{i=1}^n (q^i - 1)``."""
    q = _check_int_q(q)
    return q ** (n * (n - 1) // 2) * prod(q**i - 1 for i in range(1, n + 1))


def euler_coefficient(n: int, q: Number) -> Fraction:
    """``q^{n(n+1)/2} / prod_{i=1}^n (q^i - 1)``: the size law of P_{v,q} up to ``v^n`` and the prefactor."""
    q = Fraction(q)
    return q ** (n * (n + 1) // 2) / prod((q**i - 1 for i in range(1, n + 1)), start=Fraction(1))


def irrep_degree(coll: PartitionCollection, q: int) -> int:
    q = _check_int_q(q)
    coll.check(q)
    n = coll.total
    d = Fraction(prod(q**i - 1 for i in range(1, n + 1)))
    for lab, lam in coll:
        d *= schur_special(lam, lab.degree, q)
    if d.denominator != 1 or d <= 0:
        raise ConsistencyError(f"degree of {coll} came out as {d}, not a positive integer")
    return int(d)


def plancherel_weight(coll: PartitionCollection, q: int, check: bool = True) -> Fraction:
    """``mu_n(Lambda) = d_Lambda^2 / |GL(n,q)|``, cross-checked against the Schur product form."""
    q = _check_int_q(q)
    n = coll.total
    direct = Fraction(irrep_degree(coll, q) ** 2, gl_order(n, q))
    if check:
        fast = Fraction(prod(q**i - 1 for i in range(1, n + 1)), q ** (n * (n - 1) // 2))
        for lab, lam in coll:
            fast *= schur_special(lam, lab.degree, q) ** 2
        if fast != direct:
            raise ConsistencyError(f"Plancherel weight routes disagree on {coll}: {direct} vs {fast}")
    return direct


def grand_prefactor(v: Number, q: Number, tol: Number = DEFAULT_TOL) -> CertifiedReal:
    """``prod_{r>=0} (1 - v q^{-r})``, the normalizer of P_{v,q}."""
    v, q = Fraction(v), Fraction(q)
    if not 0 < v < 1:
        raise DomainError(f"P_(v,q) needs 0 < v < 1 (got v={v})")
    return certified_product(v, q, r0=0, c_lin=0, c_const=1, tol=tol)


def grand_weight(coll: PartitionCollection, v: Number, q: int, tol: Number = DEFAULT_TOL) -> CertifiedReal:
    v = Fraction(v)
    if not 0 < v < 1:
        raise DomainError(f"P_(v,q) needs 0 < v < 1 (got v={v})")
    q = _check_int_q(q)
    n = coll.total
    rational = euler_coefficient(n, q) * v**n * plancherel_weight(coll, q)
    e = grand_prefactor(v, q, Fraction(tol) / max(rational, Fraction(1)))
    return e * rational
