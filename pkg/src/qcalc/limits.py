"""Exact limits q -> zeta_n (n odd) of rational functions, including 0/0 forms."""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import NamedTuple, Union

from .scalar import (
    CycloNum,
    PoleAtRoot,
    Poly,
    RatQ,
    _check_odd,
    cyclotomic,
    eval_at_root,
    qfact,
    qnum,
)


class Ratio(NamedTuple):
    """Unreduced quotient num/den of polynomials; common Phi_n factors are kept."""

    num: Poly
    den: Poly

    @classmethod
    def of(cls, x) -> Ratio:
        if isinstance(x, Ratio):
            return x
        x = RatQ.coerce(x)
        return cls(x.num, x.den)

    def __mul__(self, other) -> Ratio:
        other = Ratio.of(other)
        return Ratio(self.num * other.num, self.den * other.den)

    def __truediv__(self, other) -> Ratio:
        other = Ratio.of(other)
        if other.num.is_zero():
            raise ZeroDivisionError("Ratio division by zero")
        return Ratio(self.num * other.den, self.den * other.num)

    def __add__(self, other) -> Ratio:
        other = Ratio.of(other)
        return Ratio(self.num * other.den + other.num * self.den, self.den * other.den)

    def __sub__(self, other) -> Ratio:
        other = Ratio.of(other)
        return Ratio(self.num * other.den - other.num * self.den, self.den * other.den)

    def __neg__(self) -> Ratio:
        return Ratio(-self.num, self.den)

    def __pow__(self, k: int) -> Ratio:
        if k < 0:
            return Ratio(self.den ** -k, self.num ** -k)
        return Ratio(self.num ** k, self.den ** k)

    def reduced(self) -> RatQ:
        return RatQ(self.num, self.den)


def qnum_ratio(m: int) -> Ratio:
    return Ratio.of(qnum(m))


def qfact_ratio(m: int) -> Ratio:
    """[m]_q! as an unreduced product, so Phi_n multiplicities stay visible."""
    return Ratio.of(qfact(m))


@dataclass(frozen=True)
class LimitResult:
    value: CycloNum
    cancelled_order: int


def _strip(p: Poly, phi: Poly) -> tuple[Poly, int]:
    k = 0
    while not p.is_zero():
        quo, rem = p.divmod(phi)
        if not rem.is_zero():
            break
        p, k = quo, k + 1
    return p, k


def limit_at_root(x: Union[RatQ, Ratio, Poly, int, Fraction], n: int) -> LimitResult:
    """lim_{q -> zeta_n} x by removing common Phi_n factors exactly.

    ``cancelled_order`` counts the Phi_n factors divided out of both num and
    den; a canonical ``RatQ`` is already coprime so it reports 0.
    """
    _check_odd(n)
    num, den = Ratio.of(x)
    if den.is_zero():
        raise ZeroDivisionError("zero denominator")
    phi = cyclotomic(n)
    if num.is_zero():
        return LimitResult(CycloNum.rational(n, 0), 0)
    num, kn = _strip(num, phi)
    den, kd = _strip(den, phi)
    if kd > kn:
        raise PoleAtRoot(f"pole of order {kd - kn} at zeta_{n}", n)
    if kn > kd:
        return LimitResult(CycloNum.rational(n, 0), kd)
    return LimitResult(eval_at_root(RatQ(num, den), n), kd)


# -- the root-of-unity lemmas -------------------------------------------------

@dataclass
class LemmaRecord:
    name: str
    n: int
    r: int
    expected: str
    got: str
    passed: bool
    cancelled_order: int | None = None

    def as_dict(self) -> dict:
        return {
            "name": self.name,
            "n": self.n,
            "r": self.r,
            "expected": self.expected,
            "got": self.got,
            "pass": self.passed,
            "cancelled_order": self.cancelled_order,
        }


def lemma_factors(n: int, r: int) -> dict[str, tuple[tuple[int, ...], tuple[int, ...], Fraction]]:
    """The three ratio lemmas at (n, r) as q-number indices (numerator, denominator)
    paired with their limits r, r, r!."""
    fn = tuple(range(1, n + 1))
    frn = tuple(range(1, r * n + 1))
    return {
        "qnum_ratio": ((r * n,), (n,), Fraction(r)),
        "qfact_ratio": (frn, fn + tuple(range(1, (r - 1) * n + 1)), Fraction(r)),
        "qfact_power": (frn, fn * r, Fraction(factorial(r))),
    }


def _ratio_of_factors(num, den) -> Ratio:
    out = Ratio.of(1)
    for k in num:
        out = out * qnum_ratio(k)
    for k in den:
        out = out / qnum_ratio(k)
    return out


def lemma_ratios(n: int, r: int) -> dict[str, tuple[Ratio, Fraction]]:
    return {name: (_ratio_of_factors(num, den), want)
            for name, (num, den, want) in lemma_factors(n, r).items()}


def numeric_lemma(n: int, r: int, shrink: float = 1e-6) -> dict[str, complex]:
    """Lemma ratios in double precision at q = (1 - shrink) exp(2 pi i/n).

    Evaluated factor by factor; the expanded polynomials have coefficients far
    beyond double precision for r*n of a few dozen.
    """
    q = (1 - shrink) * cmath.exp(2j * math.pi / n)
    qn = lambda k: (1 - q ** k) / (1 - q)
    out = {}
    for name, (num, den, _) in lemma_factors(n, r).items():
        v = 1 + 0j
        for k in num:
            v *= qn(k)
        for k in den:
            v /= qn(k)
        out[name] = v
    return out


def lemma_suite(n: int, r_max: int) -> list[LemmaRecord]:
    _check_odd(n)
    if r_max < 1:
        raise ValueError("r_max must be >= 1")
    records = []
    for r in range(1, r_max + 1):
        for name, (ratio, want) in lemma_ratios(n, r).items():
            res = limit_at_root(ratio, n)
            got = res.value
            records.append(LemmaRecord(
                name, n, r, str(want),
                str(got.rational_value()) if got.is_rational() else str(got),
                got == want, res.cancelled_order,
            ))
        # [rn+p]_q = [p]_q at zeta_n, and [rn+p]_q!/[rn]_q! -> [p]_q!
        qn_ok, qf_ok = True, True
        for p in range(1, n):
            qn_ok &= eval_at_root(qnum(r * n + p), n) == eval_at_root(qnum(p), n)
            lim = limit_at_root(qfact_ratio(r * n + p) / qfact_ratio(r * n), n).value
            qf_ok &= lim == eval_at_root(qfact(p), n)
        rng = f"[p]_q for p=1..{n - 1}"
        records.append(LemmaRecord("qnum_shift", n, r, rng, rng if qn_ok else "mismatch", qn_ok))
        rng = f"[p]_q! for p=1..{n - 1}"
        records.append(LemmaRecord("qfact_shift", n, r, rng, rng if qf_ok else "mismatch", qf_ok))
    return records


class ThetaReduction(NamedTuple):
    """L theta^(m) = coefficient * z^r theta^(p)."""

    r: int
    p: int
    coefficient: Fraction


def reduce_theta_power(m: int, n: int) -> ThetaReduction:
    _check_odd(n)
    if m < 0:
        raise ValueError("m must be >= 0")
    r, p = divmod(m, n)
    return ThetaReduction(r, p, Fraction(1, factorial(r)))


def reduction_ratio(m: int, n: int) -> Ratio:
    """theta^(m) / (z^r theta^(p)) as a q-ratio: [n]!^r [p]! / [m]!."""
    r, p = divmod(m, n)
    return qfact_ratio(n) ** r * qfact_ratio(p) / qfact_ratio(m)


def qexp_limit_terms(C, n: int, r_max: int) -> dict[tuple[int, int], CycloNum]:
    """Coefficients of z^r theta^p in L exp_q(C theta) truncated at order r_max*n + n - 1.

    Each C^m theta^(m) is rewritten as C^m * ([n]!^r / [m]!) z^r theta^p and the
    q-ratio is sent to zeta_n exactly.
    """
    C = Fraction(C)
    out: dict[tuple[int, int], CycloNum] = {}
    for m in range(r_max * n + n):
        red = reduce_theta_power(m, n)
        ratio = qfact_ratio(n) ** red.r / qfact_ratio(m)
        coeff = limit_at_root(ratio, n).value * C ** m
        if coeff:
            out[(red.r, red.p)] = coeff
    return out


def qexp_factorized_terms(C, n: int, r_max: int) -> dict[tuple[int, int], CycloNum]:
    """Same coefficients from exp(z C^n) times the truncated series sum_{p<n} C^p theta^(p)."""
    C = Fraction(C)
    out = {}
    for r in range(r_max + 1):
        for p in range(n):
            coeff = C ** (n * r) / factorial(r) * C ** p / eval_at_root(qfact(p), n)
            if coeff:
                out[(r, p)] = coeff
    return out


def qexp_factorization_check(C, n: int, r_max: int) -> bool:
    _check_odd(n)
    return qexp_limit_terms(C, n, r_max) == qexp_factorized_terms(C, n, r_max)
