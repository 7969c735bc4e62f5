"""Acceptance suite: one test per criterion, each at its stated tolerance and time budget."""

import time
from collections import Counter
from fractions import Fraction

import pytest
from scipy.stats import chisquare

from glplancherel.ensembles import (
    class_gf,
    class_gf_by_partitions,
    convergence_table,
    enumerate_collections,
    gauss_counts,
    verify_identity,
)
from glplancherel.fieldpolys import PolynomialLabel, count_irreducibles
from glplancherel.measures import gl_order, irrep_degree, plancherel_weight
from glplancherel.partitions import Partition, iter_partitions
from glplancherel.sampler import (
    PlancherelSampler,
    SamplerConfig,
    grand_size_law,
    sample_grand,
    sample_plancherel,
)
from glplancherel.series import ProductFactorSpec, pochhammer_series
from oracles import sieve_irreducibles

L = PolynomialLabel
ONE = Partition((1,))


class Budget:
    def __init__(self, seconds):
        self.seconds = seconds

    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.start
        if exc[0] is None:
            assert self.elapsed < self.seconds, f"took {self.elapsed:.1f}s, budget {self.seconds}s"


def _euler_coefficients(q, order):
    """q^{n(n+1)/2} / prod_{i<=n}(q^i - 1), straight from the closed form."""
    out, denom = [], 1
    for n in range(order + 1):
        if n:
            denom *= q**n - 1
        out.append(Fraction(q ** (n * (n + 1) // 2), denom))
    return out


@pytest.mark.criterion(1)
def test_criterion_1_plancherel_normalization():
    with Budget(30):
        for q in (2, 3, 5):
            for n in range(6):
                colls = enumerate_collections(n, q)
                assert sum(irrep_degree(c, q) ** 2 for c in colls) == gl_order(n, q)
                assert sum((plancherel_weight(c, q) for c in colls), Fraction(0)) == 1
            report = verify_identity("plancherel_normalization", q, order=25, n_enum=5)
            assert report.ok, report.first_discrepancy


@pytest.mark.criterion(2)
def test_criterion_2_small_group_degrees():
    d2 = sorted(irrep_degree(c, 2) for c in enumerate_collections(2, 2))
    assert d2 == [1, 1, 2] and sum(d * d for d in d2) == 6
    d3 = [irrep_degree(c, 2) for c in enumerate_collections(3, 2)]
    assert len(d3) == 6 and sum(d * d for d in d3) == 168


@pytest.mark.criterion(3)
def test_criterion_3_euler_identity():
    with Budget(1):
        for q in (2, 3):
            product = pochhammer_series(ProductFactorSpec(1, 0, 0, -1, q), 25)
            assert list(product.coeffs) == _euler_coefficients(q, 25)
            assert verify_identity("euler", q, order=25).ok


@pytest.mark.criterion(4)
def test_criterion_4_factorization_identity():
    with Budget(5):
        for q in (2, 3):
            for order in (5, 12, 20):
                report = verify_identity("factorization", q, order=order)
                assert report.ok, report.first_discrepancy
            for k, lhs, rhs in gauss_counts(q, 20):
                assert lhs == rhs == q**k - 1
            for d in range(1, 9):
                assert count_irreducibles(d, q) == len(sieve_irreducibles(d, q))


@pytest.mark.criterion(5)
def test_criterion_5_cauchy_specialization():
    with Budget(10):
        for q in (2, 3):
            for d in range(1, 17):
                assert class_gf(d, q, 16) == class_gf_by_partitions(d, q, 16)


def _strictly_decreasing(errors):
    # certified: every upper bound lies below the previous lower bound
    return all(b.upper < a.lower for a, b in zip(errors, errors[1:]))


@pytest.mark.criterion(6)
def test_criterion_6_convergence():
    tol = Fraction(1, 10**9)
    with Budget(120):
        slot = [(L(1, 0), ONE)]
        rows = convergence_table(2, slot, range(1, 26), tol)
        assert rows[0].limit_value.error_bound <= tol
        for row in rows[:5]:
            brute = sum(
                (plancherel_weight(c, 2) for c in enumerate_collections(row.n, 2) if c[L(1, 0)] == ONE),
                Fraction(0),
            )
            assert row.exact_marginal == brute
        assert _strictly_decreasing([r.abs_error for r in rows[9:]])
        assert rows[-1].abs_error.upper <= Fraction(1, 10**6)

        joint = [(L(1, 0), ONE), (L(2, 0), ONE)]
        rows = convergence_table(2, joint, range(10, 26), tol)
        assert _strictly_decreasing([r.abs_error for r in rows])
        assert rows[-1].abs_error.upper <= Fraction(1, 10**4)


def _size_chisquare(sizes, weights, min_expected=5):
    total = sum(weights, Fraction(0))
    counts = Counter(sizes)
    obs, exp = [], []
    acc_o, acc_e = 0, 0.0
    for m, w in enumerate(weights):
        acc_o += counts.get(m, 0)
        acc_e += float(w / total) * len(sizes)
        if acc_e >= min_expected:
            obs.append(acc_o)
            exp.append(acc_e)
            acc_o, acc_e = 0, 0.0
    obs[-1] += acc_o
    exp[-1] += acc_e
    scale = sum(obs) / sum(exp)
    return chisquare(obs, [e * scale for e in exp]).pvalue


@pytest.mark.criterion(7)
def test_criterion_7_samplers():
    with Budget(120):
        for n in range(5):
            sampler = PlancherelSampler(n, 2)
            for coll in enumerate_collections(n, 2):
                assert sampler.probability(coll) == plancherel_weight(coll, 2)

        draws = 10**5
        counts = Counter(sample_plancherel(3, 2, SamplerConfig(seed=42, count=draws)))
        support = enumerate_collections(3, 2)
        assert set(counts) <= set(support)
        tv = sum(abs(counts.get(c, 0) / draws - float(plancherel_weight(c, 2))) for c in support) / 2
        assert tv <= 0.02

        v = Fraction(1, 2)
        weights, _, _ = grand_size_law(v, 2)
        sample = sample_grand(v, 2, SamplerConfig(seed=42, count=draws))
        assert _size_chisquare([c.total for c in sample], weights) > 1e-3


@pytest.mark.criterion(8)
def test_criterion_8_hook_sum():
    with Budget(5):
        for m in range(21):
            for lam in iter_partitions(m):
                assert sum(lam.hooks) == lam.n_lambda + lam.n_conjugate + m
