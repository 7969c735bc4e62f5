"""Monic irreducible polynomials over F_q with nonzero constant term.

Only the counts N(d) enter the measures.  Explicit polynomials are produced for
prime fields only and serve as human-readable labels.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Optional

from .errors import DomainError, ResourceLimitError, UnsupportedError

__all__ = [
    "DegreeClass",
    "PolynomialLabel",
    "count_irreducibles",
    "formal_count",
    "enumerate_irreducibles",
    "render_polynomial",
    "mobius",
    "is_prime",
    "is_prime_power",
    "NonPrimePowerWarning",
    "ENUMERATION_CAP",
]

ENUMERATION_CAP = 2**20


class NonPrimePowerWarning(UserWarning):
    """N(d) was requested for a q that is not a field size; the count is purely formal."""


def _factorize(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def mobius(n: int) -> int:
    f = _factorize(n)
    if any(e > 1 for e in f.values()):
        return 0
    return -1 if len(f) % 2 else 1


def is_prime(n: int) -> bool:
    return n >= 2 and _factorize(n) == {n: 1}


def is_prime_power(n: int) -> bool:
    return n >= 2 and len(_factorize(n)) == 1


def _divisors(n: int) -> list[int]:
    return [e for e in range(1, n + 1) if n % e == 0]


@dataclass(frozen=True)
class DegreeClass:
    d: int
    count: int


@dataclass(frozen=True, order=True)
class PolynomialLabel:
    """The ``index``-th degree-``degree`` member of the index set, in canonical order.

    ``coeffs`` (descending, leading 1 included) is attached only when the
    polynomial was enumerated explicitly; it does not take part in equality.
    """

    degree: int
    index: int
    coeffs: Optional[tuple[int, ...]] = field(default=None, compare=False)

    def __post_init__(self):
        if self.degree < 1 or self.index < 0:
            raise ValueError(f"invalid polynomial label ({self.degree}, {self.index})")


def formal_count(d: int, q) -> Fraction:
    """Necklace formula evaluated at any rational q; agrees with :func:`count_irreducibles`."""
    if d < 1:
        raise ValueError("degree must be positive")
    q = Fraction(q)
    total = sum(mobius(e) * q ** (d // e) for e in _divisors(d)) / d
    return total - 1 if d == 1 else total


@lru_cache(maxsize=None)
def _count(d: int, q: int) -> int:
    total = sum(mobius(e) * q ** (d // e) for e in _divisors(d))
    assert total % d == 0
    n = total // d
    return n - 1 if d == 1 else n


def count_irreducibles(d: int, q: int) -> int:
    """N(d): number of monic irreducible degree-d polynomials over F_q, excluding ``x``.

    For q not a prime power the value is still the (integer) necklace count but
    has no field meaning; a :class:`NonPrimePowerWarning` is issued.
    """
    if d < 1:
        raise ValueError("degree must be positive")
    if not isinstance(q, int) or q < 2:
        raise DomainError("q must be an integer >= 2")
    if not is_prime_power(q):
        warnings.warn(f"q={q} is not a prime power; N(d) is formal", NonPrimePowerWarning, stacklevel=2)
    return _count(d, q)


def check_label(label: PolynomialLabel, q: int) -> None:
    if label.index >= _count(label.degree, q):
        raise ValueError(
            f"label index {label.index} out of range for degree {label.degree} at q={q}"
        )


# -- explicit polynomials over prime fields ----------------------------------
# polynomials are tuples of coefficients, descending, leading coefficient first


def _poly_rem(a: tuple[int, ...], b: tuple[int, ...], p: int) -> list[int]:
    r = list(a)
    inv_lead = pow(b[0], -1, p)
    db = len(b) - 1
    while len(r) - 1 >= db and r:
        c = r[0] * inv_lead % p
        if c:
            for i in range(len(b)):
                r[i] = (r[i] - c * b[i]) % p
        r.pop(0)
    while r and r[0] == 0:
        r.pop(0)
    return r


def _monic_candidates(d: int, p: int):
    # lexicographic on (c_{d-1}, ..., c_0), constant term nonzero
    for code in range(p**d):
        tail = []
        x = code
        for _ in range(d):
            x, c = divmod(x, p)
            tail.append(c)
        tail.reverse()
        if tail[-1] == 0:
            continue
        yield (1,) + tuple(tail)


@lru_cache(maxsize=None)
def _irreducibles(d: int, p: int) -> tuple[tuple[int, ...], ...]:
    if d == 1:
        return tuple(_monic_candidates(1, p))
    divisors = [f for e in range(1, d // 2 + 1) for f in _irreducibles(e, p)]
    return tuple(f for f in _monic_candidates(d, p) if all(_poly_rem(f, g, p) for g in divisors))


def enumerate_irreducibles(d: int, q: int, cap: int = ENUMERATION_CAP) -> list[PolynomialLabel]:
    """Explicit members of degree ``d`` for prime ``q``, lexicographically ordered."""
    if d < 1:
        raise ValueError("degree must be positive")
    if not isinstance(q, int) or q < 2:
        raise DomainError("q must be an integer >= 2")
    if not is_prime_power(q):
        raise DomainError(f"q={q} is not a prime power")
    if not is_prime(q):
        raise UnsupportedError(f"explicit polynomials over GF({q}) need extension-field arithmetic")
    if q**d > cap:
        raise ResourceLimitError(f"q^d = {q}^{d} exceeds the enumeration cap {cap}")
    return [PolynomialLabel(d, i, coeffs=f) for i, f in enumerate(_irreducibles(d, q))]


def polynomial_of(label: PolynomialLabel, q: int) -> Optional[tuple[int, ...]]:
    """Coefficients for ``label`` when they are cheaply available, else ``None``."""
    if label.coeffs is not None:
        return label.coeffs
    if not (isinstance(q, int) and is_prime(q)) or q**label.degree > ENUMERATION_CAP:
        return None
    polys = _irreducibles(label.degree, q)
    return polys[label.index] if label.index < len(polys) else None


def render_polynomial(coeffs: tuple[int, ...], p: int | None = None) -> str:
    """``(1, 0, 1, 1)`` -> ``"x^3+x+1"``."""
    d = len(coeffs) - 1
    terms = []
    for k, c in enumerate(coeffs):
        if p is not None:
            c %= p
        if c == 0:
            continue
        e = d - k
        mono = "" if e == 0 else ("x" if e == 1 else f"x^{e}")
        if not mono:
            terms.append(str(c))
        elif c == 1:
            terms.append(mono)
        else:
            terms.append(f"{c}{mono}")
    return "+".join(terms) or "0"
