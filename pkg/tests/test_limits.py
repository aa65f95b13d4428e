import random
from fractions import Fraction

import pytest

from qcalc.limits import (
    Ratio,
    lemma_ratios,
    lemma_suite,
    limit_at_root,
    numeric_lemma,
    qexp_factorization_check,
    qexp_factorized_terms,
    qexp_limit_terms,
    qfact_ratio,
    qnum_ratio,
    reduce_theta_power,
    reduction_ratio,
)
from qcalc.scalar import CycloNum, PoleAtRoot, Poly, RatQ, cyclotomic, eval_at_root, qfact, qnum


def test_limit_examples():
    assert limit_at_root(qnum_ratio(6) / qnum_ratio(3), 3).value == 2
    res = limit_at_root(qfact_ratio(6) / qfact_ratio(3) ** 2, 3)
    assert res.value == 2
    assert res.cancelled_order >= 1
    with pytest.raises(PoleAtRoot):
        limit_at_root(RatQ(1) / qnum(3), 3)


def test_limit_rejects_even_n():
    with pytest.raises(ValueError):
        limit_at_root(RatQ(1), 4)


def test_canonical_input_reports_zero_order():
    # gcd cancellation already removed the common factor
    res = limit_at_root(qnum(6) / qnum(3), 3)
    assert res.value == 2 and res.cancelled_order == 0


def test_vanishing_limit():
    res = limit_at_root(qnum_ratio(3) * qnum_ratio(3) / qnum_ratio(6), 3)
    assert res.value == 0


@pytest.mark.parametrize("n", [3, 5, 7])
def test_consistent_with_eval_at_root(n):
    q = RatQ.q()
    for x in [q, (q + 2) / (q * q - 3), qfact(n - 1), qnum(n + 1) / qnum(2), RatQ(Fraction(5, 7))]:
        res = limit_at_root(x, n)
        assert res.value == eval_at_root(x, n)
        assert res.cancelled_order == 0


def _random_poly(rng, deg):
    return Poly([rng.randint(-4, 4) for _ in range(deg + 1)])


@pytest.mark.parametrize("n", [3, 5, 7, 9])
def test_lhopital_instances(n):
    rng = random.Random(100 + n)
    phi = cyclotomic(n)
    done = 0
    while done < 50:
        g, h = _random_poly(rng, rng.randint(0, 6)), _random_poly(rng, rng.randint(0, 6))
        if h.is_zero() or not eval_at_root(RatQ(h), n):
            continue
        res = limit_at_root(Ratio(phi * g, phi * h), n)
        assert res.value == eval_at_root(RatQ(g, h), n)
        if not g.is_zero():
            assert res.cancelled_order >= 1
        done += 1


def test_lemma_suite_examples():
    recs = lemma_suite(3, 4)
    assert recs and all(r.passed for r in recs)
    recs5 = lemma_suite(5, 3)
    assert all(r.passed for r in recs5)
    third = [r for r in recs5 if r.name == "qfact_power" and r.r == 3]
    assert third[0].got == "6"
    for name in ("qnum_ratio", "qfact_ratio", "qfact_power"):
        rec = next(r for r in lemma_suite(3, 1) if r.name == name)
        assert rec.got == "1"


def test_lemma_record_shape():
    d = lemma_suite(3, 1)[0].as_dict()
    assert set(d) >= {"name", "n", "r", "expected", "got", "pass"}


def test_observed_cancellation_orders():
    # frozen from the exact engine: ratio lemmas cancel r factors of Phi_n
    for n in (3, 5):
        for r in range(1, 5):
            ratios = lemma_ratios(n, r)
            assert limit_at_root(ratios["qnum_ratio"][0], n).cancelled_order == 1
            assert limit_at_root(ratios["qfact_ratio"][0], n).cancelled_order == r
            assert limit_at_root(ratios["qfact_power"][0], n).cancelled_order == r


NEAR_ROOT_CASES = [
    pytest.param(n, r, marks=pytest.mark.xfail(strict=True, reason="offset error is ~147e-6 here, first order in the offset"))
    if (n, r) == (7, 4) else (n, r)
    for n in (3, 5, 7) for r in range(1, 5)
]


@pytest.mark.parametrize("n, r", NEAR_ROOT_CASES)
def test_lemmas_numeric_cross_check(n, r):
    approx = numeric_lemma(n, r)
    for name, (ratio, want) in lemma_ratios(n, r).items():
        assert limit_at_root(ratio, n).value == want
        assert abs(approx[name] - float(want)) <= 1e-4 * abs(float(want))


def test_numeric_deviation_is_first_order_in_offset():
    # the gap shrinks tenfold with the offset, so it is approximation error, not a wrong limit
    errs = [abs(numeric_lemma(7, 4, s)["qfact_power"] - 24) / 24 for s in (1e-6, 1e-7, 1e-8)]
    assert 9 < errs[0] / errs[1] < 11 and 9 < errs[1] / errs[2] < 11
    assert errs[1] < 1e-4


def test_reduce_theta_power_examples():
    assert reduce_theta_power(7, 3) == (2, 1, Fraction(1, 2))
    assert reduce_theta_power(2, 3) == (0, 2, 1)
    assert reduce_theta_power(6, 3) == (2, 0, Fraction(1, 2))


@pytest.mark.parametrize("n", [3, 5, 7])
def test_reduce_theta_power_round_trip(n):
    for m in range(101):
        red = reduce_theta_power(m, n)
        assert red.r * n + red.p == m and 0 <= red.p < n


@pytest.mark.parametrize("n", [3, 5])
def test_reduction_coefficient_is_the_limit(n):
    for m in range(4 * n):
        red = reduce_theta_power(m, n)
        assert limit_at_root(reduction_ratio(m, n), n).value == red.coefficient


def test_qexp_factorization_examples():
    assert qexp_factorization_check(1, 3, 2)
    for n in (3, 5, 7):
        assert qexp_factorization_check(0, n, 2)
    assert qexp_factorization_check(2, 5, 1)
    assert qexp_limit_terms(2, 5, 1)[(1, 0)] == 32
    assert qexp_factorized_terms(2, 5, 1)[(1, 0)] == 32


def test_qexp_zero_argument_is_one():
    assert qexp_limit_terms(0, 3, 2) == {(0, 0): CycloNum.rational(3, 1)}


@pytest.mark.parametrize("C, n, r", [(1, 3, 2), (2, 3, 2), (1, 5, 1), (3, 5, 1), (Fraction(1, 2), 7, 1)])
def test_qexp_factorization(C, n, r):
    assert qexp_factorization_check(C, n, r)


def test_ratio_is_not_reduced():
    x = qnum_ratio(3) / qnum_ratio(3)
    assert x.reduced() == 1
    assert limit_at_root(x, 3).cancelled_order == 1
    assert limit_at_root(Ratio.of(5), 3).value == 5
