import itertools
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from glplancherel.collection import PartitionCollection
from glplancherel.ensembles import enumerate_collections
from glplancherel.errors import DomainError
from glplancherel.measures import (
    CertifiedReal,
    certified_product,
    euler_coefficient,
    gl_order,
    grand_prefactor,
    grand_weight,
    irrep_degree,
    m_exact_part,
    m_prefactor,
    m_weight,
    plancherel_weight,
    schur_special,
)
from glplancherel.partitions import Partition, iter_partitions

P = lambda *parts: Partition(parts)


# -- Schur specialization --------------------------------------------------------


def _h_special(k, q):
    """Complete symmetric h_k(q^-1, q^-2, ...) = q^-k / prod_{i<=k} (1 - q^-i)."""
    out = Fraction(q) ** -k
    for i in range(1, k + 1):
        out /= 1 - Fraction(q) ** -i
    return out


def _det(m):
    m = [row[:] for row in m]
    n, det = len(m), Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if m[r][c]), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            det = -det
        det *= m[c][c]
        for r in range(c + 1, n):
            f = m[r][c] / m[c][c]
            for k in range(c, n):
                m[r][k] -= f * m[c][k]
    return det


def jacobi_trudi(lam, q):
    n = len(lam.parts)
    if n == 0:
        return Fraction(1)
    h = lambda k: Fraction(0) if k < 0 else (Fraction(1) if k == 0 else _h_special(k, q))
    return _det([[h(lam.parts[i] - i + j) for j in range(n)] for i in range(n)])


def test_schur_examples():
    assert schur_special(P(), 1, 2) == 1
    assert schur_special(P(1), 1, 5) == Fraction(1, 4)
    assert schur_special(P(1), 1, 2) == 1
    assert schur_special(P(2), 1, 2) == Fraction(2, 3)


def test_schur_two_row_by_truncated_monomials():
    # h_2(x) = sum_{i<=j} x_i x_j at x_i = 2^-i, i <= 30
    xs = [2.0**-i for i in range(1, 31)]
    h2 = sum(xs[i] * xs[j] for i in range(30) for j in range(i, 30))
    assert abs(h2 - 2 / 3) < 1e-8


@pytest.mark.parametrize("q", [2, 3, Fraction(5, 2)])
def test_schur_matches_jacobi_trudi(q):
    for m in range(8):
        for lam in iter_partitions(m):
            assert schur_special(lam, 1, q) == jacobi_trudi(lam, q)


def test_schur_degree_is_power_of_base():
    lam = P(3, 1)
    assert schur_special(lam, 3, 2) == schur_special(lam, 1, 8)


# -- M_{v,q} ---------------------------------------------------------------------


def test_m_exact_part_examples():
    assert m_exact_part(P(), Fraction(1, 3), 2) == 1
    for q, v in [(2, 1), (3, Fraction(1, 2)), (Fraction(7, 2), 3)]:
        q, v = Fraction(q), Fraction(v)
        assert m_exact_part(P(1), v, q) == q * v / (q - 1) ** 2


@settings(max_examples=20, deadline=None)
@given(
    q=st.sampled_from([Fraction(2), Fraction(3), Fraction(3, 2), Fraction(11, 4)]),
    v=st.fractions(min_value=Fraction(1, 10), max_value=Fraction(13, 10)),
    m=st.integers(0, 12),
)
def test_exact_part_is_squared_schur(q, v, m):
    for lam in iter_partitions(m):
        assert m_exact_part(lam, v, q) == (q * v) ** lam.size * schur_special(lam, 1, q) ** 2


def test_m_weight_empty_is_prefactor():
    w = m_weight(P(), Fraction(1, 2), 3)
    assert w.exact_part == 1
    assert w.value == w.prefactor


def test_m_weight_single_box_at_v1_q2():
    tol = Fraction(1, 10**9)
    w = m_weight(P(1), 1, 2, tol)
    assert w.exact_part == 2
    assert w.value.error_bound <= tol
    # oracle: 60-factor partial product, tail bounded by |log(1-y)| <= y/(1-y)
    partial = Fraction(1)
    for r in range(1, 61):
        partial *= (1 - Fraction(1, 2**r)) ** r
    tail = sum(Fraction(r, 2**r) for r in range(61, 400)) * 2
    assert abs(w.value.value - 2 * partial) <= tol + 2 * partial * tail


def test_m_weight_domain():
    with pytest.raises(DomainError):
        m_weight(P(1), 2, 2)
    with pytest.raises(DomainError):
        m_weight(P(1), 0, 2)
    with pytest.raises(DomainError):
        m_weight(P(1), Fraction(1, 2), 1)


@pytest.mark.parametrize(
    "x,q,r0,c_lin,c_const",
    [(1, 2, 1, 1, 0), (Fraction(1, 2), 2, 0, 0, 1), (Fraction(3, 2), 2, 1, 1, 0), (1, 3, 1, -1, 0), (Fraction(9, 10), Fraction(5, 4), 1, 2, -1)],
)
def test_certified_product_contains_high_precision_value(x, q, r0, c_lin, c_const):
    tol = Fraction(1, 10**12)
    c = certified_product(x, q, r0, c_lin, c_const, tol)
    assert c.error_bound <= tol
    with mpmath.workdps(60):
        xm, qm = mpmath.mpf(x.numerator if isinstance(x, int) else x.numerator) / (1 if isinstance(x, int) else x.denominator), mpmath.mpf(Fraction(q).numerator) / Fraction(q).denominator
        logv = mpmath.nsum(lambda r: (c_lin * r + c_const) * mpmath.log(1 - xm * qm ** (-r)), [r0, mpmath.inf])
        ref = mpmath.exp(logv)
        assert abs(mpmath.mpf(c.value.numerator) / c.value.denominator - ref) <= mpmath.mpf(c.error_bound.numerator) / c.error_bound.denominator


def test_certified_tolerance_scales():
    for k in (3, 9, 20, 40):
        c = m_prefactor(1, 2, Fraction(1, 10**k))
        assert c.error_bound <= Fraction(1, 10**k)


def test_certified_real_arithmetic():
    a = CertifiedReal(Fraction(1, 2), Fraction(1, 100))
    b = CertifiedReal(Fraction(1, 3), Fraction(1, 1000))
    prod_ = a * b
    for x in (a.lower, a.upper):
        for y in (b.lower, b.upper):
            assert prod_.contains(x * y)
    assert abs(a - 1).contains(Fraction(1, 2))
    roundtrip = CertifiedReal.from_dict(a.to_dict())
    assert roundtrip.lower <= a.lower and roundtrip.upper >= a.upper
    c = CertifiedReal(Fraction(1, 3), Fraction(1, 10**9))
    r = CertifiedReal.from_dict(c.to_dict())
    assert r.lower <= c.lower and r.upper >= c.upper


# -- group theory ------------------------------------------------------------------


def _brute_gl_order(n, p):
    count = 0
    for entries in itertools.product(range(p), repeat=n * n):
        rows = [list(entries[i * n : (i + 1) * n]) for i in range(n)]
        # rank over GF(p) by elimination
        rank, col = 0, 0
        for col in range(n):
            piv = next((r for r in range(rank, n) if rows[r][col] % p), None)
            if piv is None:
                continue
            rows[rank], rows[piv] = rows[piv], rows[rank]
            inv = pow(rows[rank][col], -1, p)
            for r in range(n):
                if r != rank and rows[r][col] % p:
                    f = rows[r][col] * inv % p
                    rows[r] = [(a - f * b) % p for a, b in zip(rows[r], rows[rank])]
            rank += 1
        count += rank == n
    return count


def test_gl_order():
    assert gl_order(1, 7) == 6
    assert gl_order(0, 2) == 1
    assert gl_order(2, 2) == _brute_gl_order(2, 2) == 6
    assert gl_order(3, 2) == _brute_gl_order(3, 2) == 168
    assert gl_order(2, 3) == _brute_gl_order(2, 3) == 48
    with pytest.raises(DomainError):
        gl_order(2, Fraction(5, 2))


def C(mapping):
    return PartitionCollection.of(mapping)


def test_degree_examples():
    assert irrep_degree(C({(1, 0): (1,)}), 2) == 1
    assert irrep_degree(C({(1, 0): (2,)}), 2) == 2
    assert irrep_degree(C({(1, 0): (1, 1)}), 2) == 1
    assert irrep_degree(C({(2, 0): (1,)}), 2) == 1
    degrees = [irrep_degree(c, 2) for c in enumerate_collections(3, 2)]
    assert len(degrees) == 6 and sum(d * d for d in degrees) == 168


def test_degree_rejects_bad_label():
    with pytest.raises(ValueError):
        irrep_degree(C({(1, 1): (1,)}), 2)  # only x+1 exists at q=2


@pytest.mark.parametrize("q", [2, 3, 4, 5])
def test_degrees_integral_and_routes_agree(q):
    for n in range(6):
        for coll in enumerate_collections(n, q):
            assert irrep_degree(coll, q) >= 1
            plancherel_weight(coll, q, check=True)


def test_plancherel_examples():
    assert plancherel_weight(C({(1, 0): (1,)}), 2) == 1
    ws = sorted(plancherel_weight(c, 2) for c in enumerate_collections(2, 2))
    assert ws == [Fraction(1, 6), Fraction(1, 6), Fraction(2, 3)]


# -- grand canonical -----------------------------------------------------------------


def test_grand_weight_empty_collection():
    v = Fraction(1, 2)
    g = grand_weight(C({}), v, 2)
    e = grand_prefactor(v, 2)
    assert g.value == e.value


def test_grand_size_distribution_rational_part():
    v, q = Fraction(1, 3), 3
    e = grand_prefactor(v, q, Fraction(1, 10**20))
    for n in range(5):
        total = sum(
            (euler_coefficient(n, q) * v**n * plancherel_weight(c, q) for c in enumerate_collections(n, q)),
            Fraction(0),
        )
        assert total == euler_coefficient(n, q) * v**n
        summed = sum((grand_weight(c, v, q, Fraction(1, 10**20)).value for c in enumerate_collections(n, q)), Fraction(0))
        assert abs(summed - e.value * total) < Fraction(1, 10**15)


def test_grand_total_mass_is_one():
    v, q = Fraction(1, 2), 2
    e = grand_prefactor(v, q, Fraction(1, 10**20))
    partial = sum((euler_coefficient(n, q) * v**n for n in range(80)), Fraction(0))
    assert abs(e.value * partial - 1) < Fraction(1, 10**15)


def test_grand_weight_domain():
    with pytest.raises(DomainError):
        grand_weight(C({}), 1, 2)
    with pytest.raises(DomainError):
        grand_prefactor(0, 2)
