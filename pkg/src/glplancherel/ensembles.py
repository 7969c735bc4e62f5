"""Global objects over all collections: enumeration, class generating functions,
exact marginals of mu_n, their n -> infinity limits, and identity verification.

The marginal of mu_n on a set of constrained slots is read off as a single
coefficient::

    mu_n(Lambda_phi_j = lambda_j, all j)
        = prod_{i<=n} (1 - q^{-i}) * [v^n] ( prod_{r>=0} (1 - v q^{-r})^{-1}
                                            * prod_j M_{v^d_j, q^d_j}(lambda_j) )

where each M factor is an exact constant times ``v^(d_j |lambda_j|)`` times the
series of ``prod_{r>=1} (1 - (v q^{-r})^d_j)^r``.  It depends on the slots only
through their degrees.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import prod
from typing import Iterable, Iterator, Optional, Sequence

from .collection import PartitionCollection
from .errors import DomainError, ResourceLimitError
from .fieldpolys import (
    PolynomialLabel,
    _count,
    check_label,
    formal_count,
    is_prime_power,
)
from .measures import (
    DEFAULT_TOL,
    CertifiedReal,
    euler_coefficient,
    gl_order,
    irrep_degree,
    m_exact_part,
    m_weight,
    plancherel_weight,
    schur_special,
)
from .partitions import Partition, iter_partitions
from .rationals import format_rational, parse_rational
from .series import ProductFactorSpec, TruncatedSeries, pochhammer_series

__all__ = [
    "PartitionCollection",
    "MarginalConstraint",
    "ConvergenceRow",
    "Discrepancy",
    "IdentityReport",
    "iter_collections",
    "enumerate_collections",
    "class_gf",
    "class_gf_by_partitions",
    "marginal_series",
    "marginal",
    "limit_weight",
    "joint_limit",
    "convergence_table",
    "verify_identity",
    "gauss_counts",
    "COLLECTION_CAP",
    "IDENTITY_ORDER",
]

COLLECTION_CAP = 6
IDENTITY_ORDER = 30
IDENTITY_KINDS = ("euler", "factorization", "cauchy", "plancherel_normalization")


def _int_q(q) -> int:
    q = Fraction(q)
    if q.denominator != 1 or q < 2:
        raise DomainError("this operation needs an integer q >= 2")
    return int(q)


def _degree_count(d: int, q: Fraction):
    """N(d), as an int for integer q and the formal necklace value otherwise."""
    if q.denominator == 1:
        return _count(d, int(q))
    return formal_count(d, q)


# -- enumeration of L_n --------------------------------------------------------


def iter_collections(n: int, q: int, cap: int = COLLECTION_CAP) -> Iterator[PartitionCollection]:
    """Stream every collection with ``|Lambda| = n`` exactly once.

    Degrees are processed in increasing order; within a degree the occupied
    slots are chosen with increasing label index, so nothing repeats.
    """
    q = _int_q(q)
    if not is_prime_power(q):
        raise DomainError(f"q={q} is not a prime power")
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n > cap:
        raise ResourceLimitError(f"enumerating L_{n} exceeds the cap n <= {cap}")
    counts = {d: _count(d, q) for d in range(1, n + 1)}

    def fill(d: int, size: int, start: int):
        if size == 0:
            yield ()
            return
        for i in range(start, counts[d]):
            label = PolynomialLabel(d, i)
            for m in range(size, 0, -1):
                for lam in iter_partitions(m):
                    for rest in fill(d, size - m, i + 1):
                        yield ((label, lam),) + rest

    def by_degree(d: int, rem: int, acc: tuple):
        if rem == 0:
            yield PartitionCollection(acc)
            return
        if d > rem:
            return
        for s in range(rem // d, -1, -1):
            for slots in fill(d, s, 0):
                yield from by_degree(d + 1, rem - d * s, acc + slots)

    yield from by_degree(1, n, ())


def enumerate_collections(n: int, q: int, cap: int = COLLECTION_CAP) -> list[PartitionCollection]:
    return list(iter_collections(n, q, cap))


# -- generating functions --------------------------------------------------------


def class_gf(d: int, q, order: int) -> TruncatedSeries:
    """``H_d(v) = prod_{r>=1} (1 - (v q^{-r})^d)^{-r}``, the per-polynomial generating function."""
    return pochhammer_series(ProductFactorSpec(d, 1, -1, 0, Fraction(q)), order)


def class_gf_by_partitions(d: int, q, order: int, with_size_weight: bool = True) -> TruncatedSeries:
    """``sum_lambda (Q^{|lambda|}) s_lambda(Q^-1, Q^-2, ...)^2 v^{d |lambda|}`` summed over partitions.

    With ``with_size_weight`` the ``Q^{|lambda|}`` factor is included (the Cauchy
    side of ``H_d``); without it the terms are the squared Schur values that
    make up mu_n directly.
    """
    q = Fraction(q)
    Q = q**d
    cs = [Fraction(0)] * (order + 1)
    for m in range(order // d + 1):
        total = sum((schur_special(lam, d, q) ** 2 for lam in iter_partitions(m)), Fraction(0))
        cs[d * m] = total * Q**m if with_size_weight else total
    return TruncatedSeries(tuple(cs))


# -- marginals -------------------------------------------------------------------


@dataclass(frozen=True)
class MarginalConstraint:
    """Pairwise distinct slots, each pinned to a partition (possibly empty)."""

    slots: tuple[tuple[PolynomialLabel, Partition], ...]

    def __post_init__(self):
        slots = []
        for label, lam in self.slots:
            if not isinstance(label, PolynomialLabel):
                label = PolynomialLabel(*label)
            if not isinstance(lam, Partition):
                lam = Partition(tuple(lam))
            slots.append((label, lam))
        labels = [lab for lab, _ in slots]
        if len(set(labels)) != len(labels):
            raise ValueError("constraint slots must be pairwise distinct")
        object.__setattr__(self, "slots", tuple(slots))

    @classmethod
    def by_degree(cls, pairs: Iterable[tuple[int, Partition]]) -> MarginalConstraint:
        """Assign fresh label indices 0, 1, ... per degree to ``(degree, lambda)`` pairs."""
        used: dict[int, int] = {}
        slots = []
        for d, lam in pairs:
            slots.append((PolynomialLabel(d, used.get(d, 0)), lam))
            used[d] = used.get(d, 0) + 1
        return cls(tuple(slots))

    @property
    def size(self) -> int:
        return sum(lab.degree * lam.size for lab, lam in self.slots)

    def check(self, q: int) -> None:
        for lab, _ in self.slots:
            check_label(lab, q)


def _as_constraint(constraints) -> MarginalConstraint:
    if isinstance(constraints, MarginalConstraint):
        return constraints
    return MarginalConstraint(tuple(constraints))


def marginal_series(q, constraints, order: int) -> TruncatedSeries:
    """Series whose ``v^n`` coefficient times ``prod_{i<=n}(1-q^{-i})`` is the marginal at n."""
    q = Fraction(q)
    cons = _as_constraint(constraints)
    s = pochhammer_series(ProductFactorSpec(1, 0, 0, -1, q), order)
    for label, lam in cons.slots:
        d = label.degree
        const = m_exact_part(lam, 1, q**d)
        m_series = pochhammer_series(ProductFactorSpec(d, 1, 1, 0, q), order)
        s = s * m_series.shift(d * lam.size).scale(const)
    return s


def _finite_euler(n: int, q: Fraction) -> Fraction:
    return prod((1 - q ** (-i) for i in range(1, n + 1)), start=Fraction(1))


def marginal(n: int, q: int, constraints) -> Fraction:
    """Exact ``mu_n(Lambda_phi_j = lambda_j for all j)``.

    A constraint heavier than ``n`` cannot be met and yields 0 rather than an error.
    """
    q = _int_q(q)
    cons = _as_constraint(constraints)
    cons.check(q)
    if n < 0:
        raise ValueError("n must be nonnegative")
    if cons.size > n:
        return Fraction(0)
    s = marginal_series(q, cons, n)
    return _finite_euler(n, Fraction(q)) * s[n]


def limit_weight(lam: Partition, d: int, q: int, tol=DEFAULT_TOL) -> CertifiedReal:
    """``M_{1, q^d}(lambda)``: the n -> infinity limit of a single-slot marginal."""
    q = _int_q(q)
    return m_weight(lam, 1, q**d, tol).value


def joint_limit(q: int, constraints, tol=DEFAULT_TOL) -> CertifiedReal:
    cons = _as_constraint(constraints)
    k = max(len(cons.slots), 1)
    out = CertifiedReal.exact(1)
    for label, lam in cons.slots:
        out = out * limit_weight(lam, label.degree, q, Fraction(tol) / (2 * k))
    return out


@dataclass(frozen=True)
class ConvergenceRow:
    n: int
    exact_marginal: Fraction
    limit_value: CertifiedReal
    abs_error: CertifiedReal

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "exact_marginal": format_rational(self.exact_marginal),
            "limit_value": self.limit_value.to_dict(),
            "abs_error": self.abs_error.to_dict(),
        }

    @classmethod
    def from_dict(cls, data: dict) -> ConvergenceRow:
        return cls(
            int(data["n"]),
            parse_rational(data["exact_marginal"]),
            CertifiedReal.from_dict(data["limit_value"]),
            CertifiedReal.from_dict(data["abs_error"]),
        )


def convergence_table(q: int, constraints, n_values: Sequence[int], tol=DEFAULT_TOL) -> list[ConvergenceRow]:
    """Exact marginals against the certified product of limit weights, one row per n."""
    q = _int_q(q)
    cons = _as_constraint(constraints)
    cons.check(q)
    n_values = list(n_values)
    if not n_values:
        return []
    limit = joint_limit(q, cons, tol)
    s = marginal_series(q, cons, max(n_values))
    rows = []
    for n in n_values:
        exact = _finite_euler(n, Fraction(q)) * s[n] if cons.size <= n else Fraction(0)
        rows.append(ConvergenceRow(n, exact, limit, abs(limit - exact)))
    return rows


# -- identity verification -------------------------------------------------------


@dataclass(frozen=True)
class Discrepancy:
    index: int
    lhs: Fraction
    rhs: Fraction
    where: str = ""

    def to_dict(self) -> dict:
        out = {"index": self.index, "lhs": format_rational(self.lhs), "rhs": format_rational(self.rhs)}
        if self.where:
            out["where"] = self.where
        return out

    @classmethod
    def from_dict(cls, data: dict) -> Discrepancy:
        return cls(
            int(data["index"]),
            parse_rational(data["lhs"]),
            parse_rational(data["rhs"]),
            data.get("where", ""),
        )


@dataclass(frozen=True)
class IdentityReport:
    kind: str
    q: Fraction
    order: int
    ok: bool
    first_discrepancy: Optional[Discrepancy] = None
    scalar_checks: tuple[tuple[int, Fraction, Fraction], ...] = field(default=())

    def to_dict(self) -> dict:
        out = {
            "kind": self.kind,
            "q": format_rational(self.q),
            "order": self.order,
            "ok": self.ok,
            "first_discrepancy": None if self.first_discrepancy is None else self.first_discrepancy.to_dict(),
        }
        if self.scalar_checks:
            out["scalar_checks"] = [
                {"k": k, "lhs": format_rational(a), "rhs": format_rational(b)} for k, a, b in self.scalar_checks
            ]
        return out

    @classmethod
    def from_dict(cls, data: dict) -> IdentityReport:
        fd = data.get("first_discrepancy")
        return cls(
            kind=data["kind"],
            q=parse_rational(data["q"]),
            order=int(data["order"]),
            ok=bool(data["ok"]),
            first_discrepancy=None if fd is None else Discrepancy.from_dict(fd),
            scalar_checks=tuple(
                (int(r["k"]), parse_rational(r["lhs"]), parse_rational(r["rhs"]))
                for r in data.get("scalar_checks", ())
            ),
        )


def _compare(lhs: Sequence[Fraction], rhs: Sequence[Fraction], where: str = "") -> Optional[Discrepancy]:
    for k, (a, b) in enumerate(zip(lhs, rhs)):
        if a != b:
            return Discrepancy(k, a, b, where)
    return None


def gauss_counts(q, kmax: int) -> list[tuple[int, Fraction, Fraction]]:
    """Rows ``(k, sum_{d|k} d N(d), q^k - 1)``."""
    q = Fraction(q)
    rows = []
    for k in range(1, kmax + 1):
        lhs = sum((d * _degree_count(d, q) for d in range(1, k + 1) if k % d == 0), Fraction(0))
        rows.append((k, Fraction(lhs), q**k - 1))
    return rows


def _verify_euler(q: Fraction, order: int) -> Optional[Discrepancy]:
    lhs = [euler_coefficient(n, q) for n in range(order + 1)]
    rhs = pochhammer_series(ProductFactorSpec(1, 0, 0, -1, q), order).coeffs
    return _compare(lhs, rhs)


def _verify_factorization(q: Fraction, order: int):
    lhs = pochhammer_series(ProductFactorSpec(1, 0, 0, -1, q), order)
    rhs = TruncatedSeries.one(order)
    for d in range(1, order + 1):
        rhs = rhs * class_gf(d, q, order).power(_degree_count(d, q))
    bad = _compare(lhs.coeffs, rhs.coeffs)
    scalars = tuple(gauss_counts(q, order))
    if bad is None:
        for k, a, b in scalars:
            if a != b:
                bad = Discrepancy(k, a, b, "gauss count")
                break
    return bad, scalars


def _verify_cauchy(q: Fraction, order: int) -> Optional[Discrepancy]:
    for d in range(1, order + 1):
        bad = _compare(class_gf(d, q, order).coeffs, class_gf_by_partitions(d, q, order).coeffs, f"d={d}")
        if bad is not None:
            return bad
    return None


def _verify_plancherel(q: int, order: int, n_enum: int) -> Optional[Discrepancy]:
    for n in range(min(n_enum, order) + 1):
        total_sq = 0
        total_mu = Fraction(0)
        for coll in iter_collections(n, q):
            total_sq += irrep_degree(coll, q) ** 2
            total_mu += plancherel_weight(coll, q)
        if total_sq != gl_order(n, q):
            return Discrepancy(n, Fraction(total_sq), Fraction(gl_order(n, q)), "sum of squared degrees")
        if total_mu != 1:
            return Discrepancy(n, total_mu, Fraction(1), "enumeration")
    qf = Fraction(q)
    gf = TruncatedSeries.one(order)
    for d in range(1, order + 1):
        gf = gf * class_gf_by_partitions(d, qf, order, with_size_weight=False).power(_count(d, q))
    for n in range(order + 1):
        total = gf[n] * prod(q**i - 1 for i in range(1, n + 1)) / Fraction(q) ** (n * (n - 1) // 2)
        if total != 1:
            return Discrepancy(n, total, Fraction(1), "generating function")
    return None


def verify_identity(kind: str, q, order: int = IDENTITY_ORDER, n_enum: int = 5) -> IdentityReport:
    """Check one identity coefficient by coefficient up to ``v^order``.

    ``plancherel_normalization`` sums mu_n over an explicit enumeration of L_n
    for ``n <= n_enum`` and over a partition-sum generating function for
    ``n <= order``.
    """
    q = Fraction(q)
    if q <= 1:
        raise DomainError("q must exceed 1")
    scalars: tuple = ()
    if kind == "euler":
        bad = _verify_euler(q, order)
    elif kind == "factorization":
        bad, scalars = _verify_factorization(q, order)
    elif kind == "cauchy":
        bad = _verify_cauchy(q, order)
    elif kind == "plancherel_normalization":
        bad = _verify_plancherel(_int_q(q), order, n_enum)
    else:
        raise ValueError(f"unknown identity {kind!r}; expected one of {IDENTITY_KINDS}")
    return IdentityReport(kind, q, order, bad is None, bad, scalars)
