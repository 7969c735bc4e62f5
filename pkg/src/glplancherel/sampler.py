"""Exact samplers for M_{v,q}, mu_n and P_{v,q}.

Every categorical choice compares a 128-bit uniform integer ``U`` against
``floor(2^128 * F_i)`` where ``F_i`` are exact rational cumulative
probabilities, selecting the first ``i`` with ``U <= floor(2^128 F_i)``
(equivalently, the first cumulative ``>= U / 2^128``).  Zero-weight outcomes
are dropped from each table, and a table with one outcome consumes no
randomness.

The 128-bit words come from numpy's Philox-4x64 bit generator keyed by
``SeedSequence(seed)``; numpy keeps BitGenerator output stable across
releases, so a given config reproduces the same stream.

mu_n is sampled backwards through its generating function: the size given to
each degree class, then the split of that size among the N(d) labelled slots
by repeated halving, then the partition in each slot.
"""

from __future__ import annotations

from bisect import bisect_left
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Hashable, Sequence

import numpy as np

from .collection import PartitionCollection
from .ensembles import class_gf, class_gf_by_partitions
from .errors import ConsistencyError, DomainError, ResourceLimitError
from .fieldpolys import PolynomialLabel, _count, is_prime_power
from .measures import (
    euler_coefficient,
    grand_prefactor,
    m_prefactor,
    schur_special,
)
from .partitions import Partition, enumerate_partitions
from .series import TruncatedSeries

__all__ = [
    "SamplerConfig",
    "UniformStream",
    "ExactCategorical",
    "PlancherelSampler",
    "m_size_law",
    "grand_size_law",
    "sample_m_partition",
    "sample_plancherel",
    "sample_grand",
    "STREAM_VERSION",
    "PLANCHEREL_CAP",
]

STREAM_VERSION = "philox4x64-seedseq-u128-v1"
UNIFORM_BITS = 128
PLANCHEREL_CAP = 40
DEFAULT_TAIL_EPS = Fraction(1, 10**6)


@dataclass(frozen=True)
class SamplerConfig:
    seed: int
    count: int = 1
    tail_eps: Fraction = DEFAULT_TAIL_EPS
    size_cap: int = 60

    def __post_init__(self):
        object.__setattr__(self, "tail_eps", Fraction(self.tail_eps))
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be a 64-bit unsigned integer")
        if self.count < 0:
            raise ValueError("count must be nonnegative")
        if not 0 < self.tail_eps <= Fraction(1, 1000):
            raise ValueError("tail_eps must lie in (0, 1e-3]")
        if self.size_cap < 0:
            raise ValueError("size_cap must be nonnegative")


class UniformStream:
    """128-bit uniform integers from a seeded Philox generator, buffered."""

    _CHUNK = 2048

    def __init__(self, seed: int):
        self._bitgen = np.random.Philox(seed)
        self._buf: list[int] = []

    def next_int(self) -> int:
        if not self._buf:
            raw = self._bitgen.random_raw(2 * self._CHUNK).tolist()
            words = [(raw[2 * i] << 64) | raw[2 * i + 1] for i in range(self._CHUNK)]
            words.reverse()
            self._buf = words
        return self._buf.pop()


class ExactCategorical:
    """Distribution over ``outcomes`` proportional to exact nonnegative ``weights``."""

    def __init__(self, outcomes: Sequence[Hashable], weights: Sequence):
        pairs = []
        for o, w in zip(outcomes, weights):
            w = Fraction(w)
            if w < 0:
                raise ValueError("negative weight")
            if w:
                pairs.append((o, w))
        if not pairs:
            raise ValueError("all weights are zero")
        total = sum((w for _, w in pairs), Fraction(0))
        self.total = total
        self.outcomes = [o for o, _ in pairs]
        self.probs = [w / total for _, w in pairs]
        self._index = {o: i for i, o in enumerate(self.outcomes)}
        cum = Fraction(0)
        self._thresholds = []
        for p in self.probs:
            cum += p
            self._thresholds.append((cum.numerator << UNIFORM_BITS) // cum.denominator)

    def draw(self, stream: UniformStream):
        if len(self.outcomes) == 1:
            return self.outcomes[0]
        return self.outcomes[bisect_left(self._thresholds, stream.next_int())]

    def probability(self, outcome) -> Fraction:
        i = self._index.get(outcome)
        return Fraction(0) if i is None else self.probs[i]


@lru_cache(maxsize=None)
def _slot_table(m: int, Q: Fraction) -> ExactCategorical:
    # partitions of m weighted by s_lambda(Q^-1, Q^-2, ...)^2
    lams = enumerate_partitions(m)
    return ExactCategorical(lams, [schur_special(lam, 1, Q) ** 2 for lam in lams])


# -- M_{v,q} ---------------------------------------------------------------------


@lru_cache(maxsize=None)
def _size_series(q: Fraction, order: int) -> TruncatedSeries:
    """``sum_lambda u^{|lambda|} q^{|lambda|} s_lambda^2 = prod_{r>=1} (1 - u q^{-r})^{-r}``.

    Checked against partition sums through ``u^16`` before use.
    """
    h = class_gf(1, q, order)
    check = min(order, 16)
    if h.truncate(check) != class_gf_by_partitions(1, q, check):
        raise ConsistencyError(f"size law of M at q={q}: product and partition sums disagree")
    return h


def m_size_law(v, q, tail_eps=DEFAULT_TAIL_EPS, size_cap: int = 60):
    """Relative size weights ``v^m [u^m] H`` for ``m <= M*`` and a certified bound on the mass beyond.

    ``M*`` is the smallest cutoff whose neglected mass is provably ``<= tail_eps``.
    """
    v, q, tail_eps = Fraction(v), Fraction(q), Fraction(tail_eps)
    c = m_prefactor(v, q, tail_eps / 4)
    h = _size_series(q, size_cap)
    weights = []
    partial = Fraction(0)
    tail = Fraction(1)
    for m in range(size_cap + 1):
        w = v**m * h[m]
        weights.append(w)
        partial += w
        tail = 1 - c.lower * partial
        if tail <= tail_eps:
            return weights, max(tail, Fraction(0))
    raise ResourceLimitError(
        f"size cap {size_cap} leaves up to {float(tail):.3g} of M mass uncovered (tail_eps={float(tail_eps):.3g})"
    )


def sample_m_partition(v, q, cfg: SamplerConfig) -> list[Partition]:
    """i.i.d. draws from M_{v,q} conditioned on ``|lambda| <= M*`` (mass >= 1 - tail_eps)."""
    v, q = Fraction(v), Fraction(q)
    if q <= 1 or not 0 < v < q:
        raise DomainError(f"M_(v,q) needs 0 < v < q and q > 1 (got v={v}, q={q})")
    weights, _ = m_size_law(v, q, cfg.tail_eps, cfg.size_cap)
    sizes = ExactCategorical(range(len(weights)), weights)
    stream = UniformStream(cfg.seed)
    out = []
    for _ in range(cfg.count):
        m = sizes.draw(stream)
        out.append(_slot_table(m, q).draw(stream))
    return out


# -- mu_n ------------------------------------------------------------------------


class PlancherelSampler:
    """Backward sampler for mu_n on L_n with exact stage-wise probabilities."""

    def __init__(self, n: int, q: int, cap: int = PLANCHEREL_CAP):
        if not isinstance(q, int) or not is_prime_power(q):
            raise DomainError(f"q must be a prime power integer (got {q})")
        if not 0 <= n <= cap:
            raise ResourceLimitError(f"n={n} outside the sampler range [0, {cap}]")
        self.n, self.q = n, q
        self.counts = {d: _count(d, q) for d in range(1, n + 1)}
        # per-slot series in w = v^d; coefficient m carries size d*m
        self._k = {d: class_gf(1, Fraction(q) ** d, n // d) for d in range(1, n + 1)}
        self._powers: dict[tuple[int, int], TruncatedSeries] = {}
        # T_d(v) = prod_{e >= d} G_e(v), G_e = slot series ^ N(e)
        suffix = [TruncatedSeries.one(n)] * (n + 2)
        for d in range(n, 0, -1):
            g = self._power(d, self.counts[d])
            g_v = TruncatedSeries.from_coeffs(
                [g.coeffs[k // d] if k % d == 0 else 0 for k in range(n + 1)], n
            )
            suffix[d] = g_v * suffix[d + 1]
        self._suffix = suffix
        self._tables: dict[tuple, ExactCategorical] = {}

    def _power(self, d: int, k: int) -> TruncatedSeries:
        key = (d, k)
        if key not in self._powers:
            self._powers[key] = self._k[d].power(k)
        return self._powers[key]

    def _degree_table(self, d: int, rem: int) -> ExactCategorical:
        key = ("deg", d, rem)
        if key not in self._tables:
            g = self._power(d, self.counts[d])
            nxt = self._suffix[d + 1]
            sizes = range(rem // d + 1)
            self._tables[key] = ExactCategorical(sizes, [g[s] * nxt[rem - d * s] for s in sizes])
        return self._tables[key]

    def _split_table(self, d: int, width: int, m: int) -> ExactCategorical:
        key = ("split", d, width, m)
        if key not in self._tables:
            left = self._power(d, width // 2)
            right = self._power(d, width - width // 2)
            self._tables[key] = ExactCategorical(range(m + 1), [left[j] * right[m - j] for j in range(m + 1)])
        return self._tables[key]

    def _slot(self, d: int, m: int) -> ExactCategorical:
        return _slot_table(m, Fraction(self.q) ** d)

    def dp_consistent(self) -> bool:
        """``sum_s [w^s]G_d [v^{rem-ds}]T_{d+1} == [v^rem]T_d`` for all d, rem."""
        for d in range(1, self.n + 1):
            g = self._power(d, self.counts[d])
            for rem in range(self.n + 1):
                lhs = sum((g[s] * self._suffix[d + 1][rem - d * s] for s in range(rem // d + 1)), Fraction(0))
                if lhs != self._suffix[d][rem]:
                    return False
        return True

    def draw(self, stream: UniformStream) -> PartitionCollection:
        rem = self.n
        slots = []
        for d in range(1, self.n + 1):
            if rem == 0:
                break
            s = self._degree_table(d, rem).draw(stream)
            rem -= d * s
            self._split(d, 0, self.counts[d], s, stream, slots)
        if rem != 0:
            raise ConsistencyError(f"allocated sizes do not add up to n={self.n}")
        return PartitionCollection(tuple(slots))

    def _split(self, d, lo, hi, m, stream, out):
        if m == 0:
            return
        if hi - lo == 1:
            out.append((PolynomialLabel(d, lo), self._slot(d, m).draw(stream)))
            return
        mid = lo + (hi - lo) // 2
        m_left = self._split_table(d, hi - lo, m).draw(stream)
        self._split(d, lo, mid, m_left, stream, out)
        self._split(d, mid, hi, m - m_left, stream, out)

    def probability(self, coll: PartitionCollection) -> Fraction:
        """Probability that :meth:`draw` returns ``coll``: the product of its stage-wise choices."""
        if coll.total != self.n:
            return Fraction(0)
        by_degree: dict[int, dict[int, Partition]] = {}
        for lab, lam in coll:
            if lab.degree > self.n or lab.index >= self.counts[lab.degree]:
                return Fraction(0)
            by_degree.setdefault(lab.degree, {})[lab.index] = lam
        p = Fraction(1)
        rem = self.n
        for d in range(1, self.n + 1):
            if rem == 0:
                break
            slots = by_degree.get(d, {})
            s = sum(lam.size for lam in slots.values())
            p *= self._degree_table(d, rem).probability(s)
            rem -= d * s
            p *= self._split_probability(d, 0, self.counts[d], s, slots)
        return p

    def _split_probability(self, d, lo, hi, m, slots) -> Fraction:
        if m == 0:
            return Fraction(1)
        if hi - lo == 1:
            return self._slot(d, m).probability(slots[lo])
        mid = lo + (hi - lo) // 2
        m_left = sum(lam.size for i, lam in slots.items() if lo <= i < mid)
        p = self._split_table(d, hi - lo, m).probability(m_left)
        if p == 0:
            return p
        return p * self._split_probability(d, lo, mid, m_left, slots) * self._split_probability(
            d, mid, hi, m - m_left, slots
        )


@lru_cache(maxsize=64)
def _plancherel_sampler(n: int, q: int) -> PlancherelSampler:
    return PlancherelSampler(n, q)


def sample_plancherel(n: int, q: int, cfg: SamplerConfig) -> list[PartitionCollection]:
    sampler = _plancherel_sampler(n, q)
    stream = UniformStream(cfg.seed)
    return [sampler.draw(stream) for _ in range(cfg.count)]


# -- P_{v,q} ---------------------------------------------------------------------


def grand_size_law(v, q: int, tail_eps=DEFAULT_TAIL_EPS, size_cap: int = PLANCHEREL_CAP):
    """Relative weights ``q^{n(n+1)/2} v^n / prod (q^i - 1)`` for ``n <= N*``, the certified
    normalizer ``prod_{r>=0}(1 - v q^{-r})`` and a bound on the neglected mass."""
    v, tail_eps = Fraction(v), Fraction(tail_eps)
    e = grand_prefactor(v, q, tail_eps / 4)
    weights = []
    partial = Fraction(0)
    tail = Fraction(1)
    for n in range(min(size_cap, PLANCHEREL_CAP) + 1):
        w = euler_coefficient(n, q) * v**n
        weights.append(w)
        partial += w
        tail = 1 - e.lower * partial
        if tail <= tail_eps:
            return weights, e, max(tail, Fraction(0))
    raise ResourceLimitError(
        f"size cap leaves up to {float(tail):.3g} of P mass uncovered (tail_eps={float(tail_eps):.3g})"
    )


def sample_grand(v, q: int, cfg: SamplerConfig) -> list[PartitionCollection]:
    """Draw the total size from the exact size law of P_{v,q}, then a mu_n collection."""
    v = Fraction(v)
    if not 0 < v < 1:
        raise DomainError(f"P_(v,q) needs 0 < v < 1 (got v={v})")
    if not isinstance(q, int) or not is_prime_power(q):
        raise DomainError(f"q must be a prime power integer (got {q})")
    weights, _, _ = grand_size_law(v, q, cfg.tail_eps, cfg.size_cap)
    sizes = ExactCategorical(range(len(weights)), weights)
    stream = UniformStream(cfg.seed)
    out = []
    for _ in range(cfg.count):
        n = sizes.draw(stream)
        out.append(_plancherel_sampler(n, q).draw(stream))
    return out
