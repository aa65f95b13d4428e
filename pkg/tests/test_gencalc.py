import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qcalc.gencalc import (
    D,
    EPS,
    THETA,
    GradedElem,
    Monomial,
    d_theta,
    eps_bm,
    gamma,
    graded_bracket,
    identity_eq15,
    normal_order,
    qexp,
    qN,
    reorder_coefficients,
    theta_bm,
    translate_check,
    translate_residual,
    translation_generator,
    word_product,
)
from qcalc.representation import operator_matrix
from qcalc.scalar import RatQ, qfact, qnum
from qcalc.suites import leibniz_holds, random_generic_word, random_pure_grade

q = RatQ.q()
th, eps, d = GradedElem.gen(THETA), GradedElem.gen(EPS), GradedElem.gen(D)
one = GradedElem.scalar(1)


def mono(a=0, e=0, b=0, c=1):
    return GradedElem({Monomial(a, e, b): c})


def test_normal_order_examples():
    assert normal_order([D, THETA]) == mono(1, 0, 1, q) + one
    assert normal_order([D, D, THETA]) == mono(1, 0, 2, q * q) + mono(0, 0, 1, 1 + q)
    assert normal_order([EPS, THETA]) == mono(1, 1, 0, q.inverse())


def test_normal_order_scalars_commute():
    assert normal_order([D, q, THETA]) == (mono(1, 0, 1, q) + one).scale(q)
    assert normal_order([THETA, 0, D]) == GradedElem()


def _matmul(x, y):
    size = len(x)
    return [[sum((x[i][k] * y[k][j] for k in range(size)), RatQ()) for j in range(size)] for i in range(size)]


def _matadd(x, y, cx=1, cy=1):
    return [[a * cx + b * cy for a, b in zip(rx, ry)] for rx, ry in zip(x, y)]


def test_ddtheta_against_ket_matrices():
    # oracle: products of the exact ket matrices at cutoff 10, symbolic q;
    # columns j <= 8 never leave the truncated space
    cutoff = 10
    md, mt = operator_matrix("D", cutoff), operator_matrix("theta", cutoff)
    lhs = _matmul(md, _matmul(md, mt))
    rhs = _matadd(_matmul(mt, _matmul(md, md)), md, q * q, 1 + q)
    for j in range(cutoff - 1):
        assert [row[j] for row in lhs] == [row[j] for row in rhs]


def test_reorder_coefficients_small():
    # D theta = q theta D + 1
    assert reorder_coefficients(1, 1) == (q, RatQ(1))
    # D theta^2 = q^2 theta^2 D + [2] theta
    assert reorder_coefficients(1, 2) == (q * q, qnum(2))


def test_bracket_examples():
    assert graded_bracket(d, th) == one
    assert graded_bracket(d, theta_bm(2)) == th
    assert graded_bracket(th, th) == mono(2, c=1 - q.inverse())


def test_gamma():
    assert gamma(1, 1) == q.inverse()
    assert gamma(-1, 3) == q ** 3
    assert gamma(0, 5) == 1


@pytest.mark.parametrize("m", range(1, 21))
def test_divided_power_bracket(m):
    assert graded_bracket(d, theta_bm(m)) == theta_bm(m - 1)


def test_divided_power_theta_eps_bracket_has_d_residual():
    # with D eps = q^-1 eps D the bracket keeps a D term; oracle is naive rewriting
    for m in range(1, 6):
        x = theta_bm(m) * eps
        gx = m + 1
        naive = GradedElem()
        for mon, c in x.terms.items():
            left = normal_order([D] + [THETA] * mon.a + [EPS] * mon.e)
            right = normal_order([THETA] * mon.a + [EPS] * mon.e + [D])
            naive = naive + (left - right.scale(gamma(-1, gx))).scale(c)
        assert graded_bracket(d, x) == naive
        expected = theta_bm(m - 1) * eps + (theta_bm(m) * eps * d).scale(q ** (m - 1) - q ** (m + 1))
        assert naive == expected
        assert naive.filter(lambda mon: mon.b == 0) == theta_bm(m - 1) * eps


def test_d_theta_examples():
    assert d_theta(theta_bm(3)) == theta_bm(2)
    assert d_theta(one) == GradedElem()
    assert d_theta(th * th) == mono(1, c=1 + q)
    with pytest.raises(ValueError):
        d_theta(eps)


@pytest.mark.parametrize("m", range(0, 12))
def test_d_theta_matches_bracket(m):
    assert d_theta(theta_bm(m)) == graded_bracket(d, theta_bm(m))


def test_qexp_examples():
    assert qexp(1, 2) == one + th + mono(2, c=(1 + q).inverse())
    assert qexp(0, 5) == one


def test_qexp_is_eigenfunction():
    # d/dtheta exp_q(C theta) = C exp_q(C theta) up to truncation
    C = RatQ(3) / (q + 2)
    lhs = d_theta(qexp(C, 8))
    rhs = qexp(C, 7).scale(C)
    assert lhs == rhs


def test_qN_examples():
    assert qN() == one - mono(1, 0, 1, 1 - q)
    assert qN() * th - (th * qN()).scale(q) == GradedElem()
    assert qN() * d - (d * qN()).scale(q.inverse()) == GradedElem()


def test_eps_commutations():
    assert d * eps == (eps * d).scale(q.inverse())
    assert eps * th == (th * eps).scale(q.inverse())
    assert eps_bm(2) == mono(0, 2, 0, qfact(2).inverse())


@pytest.mark.parametrize("r", [1, 2, 5, 12])
def test_identity_eq15(r):
    assert identity_eq15(r)


def test_identity_eq15_r2_terms():
    # (1-q)/(1-q) [2]!/[1]! + (1-q)^2/(1-q^2) [2]! = (1+q) + (1-q)
    t1 = (1 - q) / (1 - q) * qfact(2)
    t2 = (1 - q) ** 2 / (1 - q ** 2) * qfact(2)
    assert t1 == 1 + q and t2 == 1 - q and t1 + t2 == 2


def test_translate_examples():
    for K in (0, 1, 3):
        assert translate_check(K)
    with pytest.raises(ValueError):
        translate_check(-1)


def test_translate_order_one_by_naive_rewriting():
    # (1 + eps D) theta - (theta + eps)(1 + eps D), normal ordered term by term
    words = [([THETA], 1), ([EPS, D, THETA], 1), ([THETA], -1), ([EPS], -1),
             ([THETA, EPS, D], -1), ([EPS, EPS, D], -1)]
    total = GradedElem()
    for w, c in words:
        total = total + normal_order(w).scale(c)
    assert all(m.e > 1 for m in total.terms)
    assert total == translate_residual(1)
    assert translation_generator(1) == one + eps * d


def test_grade_of_products():
    rng = random.Random(3)
    for _ in range(50):
        a = random_pure_grade(rng, rng.randint(-2, 2))
        b = random_pure_grade(rng, rng.randint(-2, 2))
        prod = a * b
        if prod:
            assert prod.pure_grade() == a.pure_grade() + b.pure_grade()


@settings(max_examples=40, deadline=None)
@given(st.randoms(use_true_random=False))
def test_word_product_agrees_with_rewriting(rng):
    word = random_generic_word(rng, max_len=6)
    left = normal_order(word, "left")
    assert normal_order(word, "right") == left
    assert word_product(word) == left


@settings(max_examples=25, deadline=None)
@given(st.randoms(use_true_random=False), st.integers(-2, 2), st.integers(-2, 2), st.integers(-2, 2))
def test_leibniz(rng, ga, gb, gc):
    A, B, C = (random_pure_grade(rng, g, max_exp=2) for g in (ga, gb, gc))
    assert leibniz_holds(A, B, C) == (True, True)


def test_associativity_random():
    rng = random.Random(11)
    for _ in range(30):
        a, b, c = (word_product(random_generic_word(rng, 4)) for _ in range(3))
        assert (a * b) * c == a * (b * c)
