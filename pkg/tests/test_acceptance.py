"""Exit criteria. Each test carries a ``criterion`` marker; the terminal summary
prints one PASS/FAIL line per criterion."""

import time

import pytest

from mexid import identities as ids
from mexid import mexstats as ms
from mexid.partitions import d2_counts, enumerate_colored_distinct, enumerate_partitions, p, q_distinct, triangular

criterion = pytest.mark.criterion


def _enum_mex(n):
    return [ms.mex(pi) for pi in enumerate_partitions(n)]


@criterion(1, "golden table values for n = 4 and n = 5")
def test_golden_values():
    start = time.perf_counter()
    assert ms.sigma_o_mex(4) == 5
    assert ms.sigma_e_mex(4) == 4
    assert d2_counts(4)[1:] == (5, 4)
    assert ms.sigma_o_mex(5) == 8
    assert ms.sigma_e_mex(5) == 6
    assert ms.sigma_mex(5) == 14
    # definition-level counterparts
    assert sum(m for m in _enum_mex(4) if m % 2) == 5
    assert sum(m for m in _enum_mex(5) if m % 2 == 0) == 6
    colored = list(enumerate_colored_distinct(4))
    assert sum(1 for c in colored if c.num_parts % 2 == 0) == 5
    assert time.perf_counter() - start < 1.0


@criterion(2, "all 11 registry identities pass at order 60 and order 200")
@pytest.mark.parametrize("order,budget", [(ids.DEFAULT_ORDER, 30.0), (ids.STRESS_ORDER, 600.0)])
def test_identity_suite(order, budget):
    start = time.perf_counter()
    reports = ids.verify_all(order)
    elapsed = time.perf_counter() - start
    assert len(reports) == 11
    failed = [r.to_dict() for r in reports if not r.passed]
    assert not failed
    assert all(r.order == order for r in reports)
    assert elapsed < budget


@criterion(3, "formula/series routes equal enumeration routes for n <= 40")
def test_oracle_equivalence():
    start = time.perf_counter()
    for n in range(41):
        vals = _enum_mex(n)
        assert ms.sigma_mex(n) == sum(vals)
        assert ms.sigma_bar_mex(n) == sum((-1) ** (m - 1) * m for m in vals)
        assert ms.sigma_o_mex(n) == sum(m for m in vals if m % 2)
        assert ms.sigma_e_mex(n) == sum(m for m in vals if m % 2 == 0)
        for k in (1, 2, 3):
            assert ms.sigma_moment(n, k) == sum(m**k for m in vals)
            assert ms.sigma_bar_moment(n, k) == sum((-1) ** (m - 1) * m**k for m in vals)
            assert ms.sigma_o_moment(n, k) == sum(m**k for m in vals if m % 2)
            assert ms.sigma_e_moment(n, k) == sum(m**k for m in vals if m % 2 == 0)
        m = 1
        while triangular(m - 1) <= n:
            assert ms.p_mex_series(m, n) == vals.count(m)
            m += 1
        o = sum(1 for v in vals if v % 2)
        o1 = sum(1 for v in vals if v % 4 == 1)
        assert ms.oe_counts(n) == (o, len(vals) - o)
        assert ms.oe_series_counts(n) == (o, len(vals) - o)
        assert ms.o1_o3_counts(n) == (o1, o - o1)
        assert ms.o1_o3_series_counts(n) == (o1, o - o1)
        assert ms.oe_diff_formula(n) == 2 * o - len(vals)
        d2, d2e, d2o = d2_counts(n)
        assert d2 == d2e + d2o
        assert ms.statistic_series("d2_even", 40)[n] == d2e
        assert ms.statistic_series("d2_odd", 40)[n] == d2o
        assert ms.sigma_o_mex(n) == d2e
        assert ms.sigma_e_mex(n) == d2o
    assert time.perf_counter() - start < 300


@criterion(4, "mex polynomial equals the master right-hand side for n <= 200")
def test_master_identity():
    for n in range(201):
        assert ms.mex_polynomial(n, "series") == ms.master_rhs_polynomial(n), n


@criterion(5, "o1(n) - o3(n) is 0 for odd n and q(n/2) for even n, n <= 60, by enumeration")
def test_o1_o3_proposition():
    for n in range(61):
        o1, o3 = ms.o1_o3_counts(n)
        assert o1 - o3 == (0 if n % 2 else q_distinct(n // 2)), n


@criterion(6, "o(n) - e(n) equals p(n) + 2 sum (-1)^m p(n - t_m) for n <= 45")
def test_oe_difference():
    for n in range(46):
        o, e = ms.oe_counts(n)
        formula = p(n) + 2 * sum((-1) ** m * p(n - triangular(m)) for m in range(1, n + 2))
        assert o - e == formula == ms.oe_diff_formula(n), n


@criterion(7, "asymptotic ratio approaches 1 monotonically over n = 100, 400, 1600, 6400")
def test_asymptotic_property():
    start = time.perf_counter()
    ratios = [float(r) for _, r in ids.asymptotic_ratios([100, 400, 1600, 6400])]
    dist = [abs(r - 1) for r in ratios]
    assert all(b < a for a, b in zip(dist, dist[1:]))
    assert dist[-1] * 2 <= dist[0]
    assert time.perf_counter() - start < 120


@criterion(8, "corrupted identity fails with the first mismatch located")
def test_negative_control():
    # right side gains q^9 (-(1 - q^9) + 1), so the first disagreement is at exponent 9
    bad = ids.parse_identity_line("CORRUPT: STAT(sigma_o) == HALF(QP(+,1,1)^2 + QP(-,1,1)^2) - QP(-,9,100) + 1")
    report = ids.verify(bad, 60)
    assert report.status == "fail"
    assert report.mismatch.exponent == 9
    assert int(report.mismatch.lhs) == ms.sigma_o_mex(9)
    assert int(report.mismatch.rhs) == ms.sigma_o_mex(9) + 1
