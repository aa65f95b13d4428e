import cmath
import math
import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qcalc.scalar import (
    CycloNum,
    PoleAtRoot,
    Poly,
    RatQ,
    cyclotomic,
    eval_at_root,
    poly_gcd,
    q_half,
    qfact,
    qnum,
)

q = RatQ.q()


def test_qnum_examples():
    assert qnum(0) == 0
    assert qnum(1) == 1
    assert qnum(3) == 1 + q + q * q


def test_qfact_examples():
    assert qfact(0) == 1
    assert qfact(2) == 1 + q
    # (1+q)(1+q+q^2) multiplied out by hand
    assert qfact(3) == RatQ(Poly([1, 2, 2, 1]))


@pytest.mark.parametrize("fn", [qnum, qfact])
def test_negative_rejected(fn):
    with pytest.raises(ValueError):
        fn(-1)


def test_qnum_times_one_minus_q():
    for m in range(31):
        assert qnum(m) * (1 - q) == 1 - q ** m


def test_qfact_recurrence():
    for m in range(1, 21):
        assert qfact(m) == qfact(m - 1) * qnum(m)


def _cyclotomic_numeric(n):
    roots = [cmath.exp(2j * math.pi * k / n) for k in range(1, n + 1) if math.gcd(k, n) == 1]
    coeffs = np.poly(roots)[::-1]
    return [round(c.real) for c in coeffs]


@pytest.mark.parametrize("n, want", [(3, [1, 1, 1]), (5, [1, 1, 1, 1, 1]), (9, [1, 0, 0, 1, 0, 0, 1])])
def test_cyclotomic_examples(n, want):
    assert list(cyclotomic(n).coeffs) == want


@pytest.mark.parametrize("n", range(1, 31))
def test_cyclotomic_matches_product_over_primitive_roots(n):
    assert list(cyclotomic(n).coeffs) == _cyclotomic_numeric(n)


def test_eval_at_root_examples():
    assert eval_at_root(q, 3) == CycloNum(3, [0, 1])
    x = eval_at_root(1 / (1 - q), 3)
    assert x == CycloNum(3, [Fraction(2, 3), Fraction(1, 3)])
    assert abs(complex(x) - 1 / (1 - cmath.exp(2j * math.pi / 3))) < 1e-12
    assert eval_at_root(qnum(3), 3) == 0


def test_eval_at_root_pole():
    with pytest.raises(PoleAtRoot):
        eval_at_root(1 / qnum(3), 3)


@pytest.mark.parametrize("n", [3, 5, 7, 9, 11, 13, 15])
def test_qnum_vanishes_only_at_n(n):
    assert eval_at_root(qnum(n), n) == 0
    for p in range(1, n):
        assert eval_at_root(qnum(p), n) != 0


def test_q_half_examples():
    assert q_half(3) == CycloNum.zeta(3, 2)
    assert q_half(5) == CycloNum.zeta(5, 3)
    assert q_half(3) ** 2 == CycloNum.zeta(3)
    with pytest.raises(ValueError):
        q_half(4)


@pytest.mark.parametrize("n", [3, 5, 7, 9, 11, 13, 15])
def test_q_half_squares_to_q(n):
    assert q_half(n) ** 2 - eval_at_root(q, n) == 0


def _random_ratq(rng):
    def poly():
        return Poly([Fraction(rng.randint(-5, 5), rng.randint(1, 3)) for _ in range(rng.randint(1, 4))])
    while True:
        num, den = poly(), poly()
        if not num.is_zero() and not den.is_zero():
            return RatQ(num, den)


def test_field_inverse_random():
    rng = random.Random(7)
    for _ in range(200):
        x = _random_ratq(rng)
        assert x * x.inverse() == 1


def test_canonical_form():
    x = RatQ(Poly([2, 2]), Poly([4, 4, 0, 0]))
    assert x == RatQ(Fraction(1, 2))
    y = RatQ(Poly([1]), Poly([0, 3]))
    assert y.den.lc() == 1
    assert RatQ(0, Poly([1, 1])).den == Poly.const(1)


def test_rendering():
    assert str(1 + q + q * q) == "q^2 + q + 1"
    assert str((q - 1) / (q * q + 1)) == "(q - 1) / (q^2 + 1)"
    assert str(CycloNum(3, [2])) == "[2, 0] mod Phi_3"


coeff = st.fractions(min_value=-4, max_value=4, max_denominator=4)
polys = st.lists(coeff, min_size=1, max_size=5).map(Poly)


@settings(max_examples=60, deadline=None)
@given(polys, polys, polys)
def test_gcd_divides_and_is_maximal(a, b, c):
    if c.is_zero() or (a.is_zero() and b.is_zero()):
        return
    g = poly_gcd(a * c, b * c)
    assert ((a * c) % g).is_zero() and ((b * c) % g).is_zero()
    assert (g % c.monic()).is_zero()


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([3, 5, 7, 9]), st.lists(coeff, min_size=1, max_size=8))
def test_cyclonum_inverse(n, cs):
    x = CycloNum(n, cs)
    if x.is_zero():
        return
    assert x * x.inverse() == 1
    assert abs(complex(x) * complex(x.inverse()) - 1) < 1e-9
