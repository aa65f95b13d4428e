"""Exact scalars: polynomials and rational functions in q over Q, q-numbers,
cyclotomic polynomials and the cyclotomic fields Q(zeta_n).

Nothing here touches floating point except the explicit ``__complex__``
conversions used for numeric cross-checks.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction
from functools import lru_cache
from numbers import Rational
from typing import Iterable, Union


class PoleAtRoot(ArithmeticError):
    """A denominator vanishes at the primitive root of unity zeta_n."""

    def __init__(self, message: str, n: int | None = None):
        super().__init__(message)
        self.n = n

    def record(self) -> dict:
        return {"error": "PoleAtRoot", "n": self.n, "message": str(self)}


def _frac(x):
    """Exact rational, kept as int when integral (int arithmetic is much faster)."""
    if isinstance(x, int):
        return x
    if isinstance(x, Rational):
        return int(x.numerator) if x.denominator == 1 else Fraction(x)
    raise TypeError(f"not an exact rational: {x!r}")


def _inv(c):
    if c == 1 or c == -1:
        return int(c)
    return _frac(Fraction(1) / c)


class Poly:
    """Dense univariate polynomial over Q (int or Fraction coefficients), lowest degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [_frac(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple = tuple(cs)

    @classmethod
    def _raw(cls, coeffs: tuple) -> Poly:
        p = object.__new__(cls)
        p.coeffs = coeffs
        return p

    @classmethod
    def const(cls, c) -> Poly:
        return cls((c,))

    @classmethod
    def monomial(cls, k: int, c=1) -> Poly:
        return cls([0] * k + [c])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_const(self) -> bool:
        return len(self.coeffs) <= 1

    def lc(self):
        return self.coeffs[-1] if self.coeffs else 0

    def low_order(self) -> int:
        """Largest k with q^k dividing self (0 for the zero polynomial)."""
        for k, c in enumerate(self.coeffs):
            if c:
                return k
        return 0

    def shift(self, k: int) -> Poly:
        """Multiply by q^k; negative k drops that many (zero) low coefficients."""
        if not self.coeffs:
            return self
        if k >= 0:
            return Poly._raw((0,) * k + self.coeffs)
        return Poly._raw(self.coeffs[-k:])

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Rational)):
            return self == Poly.const(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __add__(self, other) -> Poly:
        if not isinstance(other, Poly):
            other = Poly.const(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return Poly(out)

    __radd__ = __add__

    def __neg__(self) -> Poly:
        return Poly._raw(tuple(-c for c in self.coeffs))

    def __sub__(self, other) -> Poly:
        if not isinstance(other, Poly):
            other = Poly.const(other)
        return self + (-other)

    def __rsub__(self, other) -> Poly:
        return Poly.const(other) - self

    def __mul__(self, other) -> Poly:
        if not isinstance(other, Poly):
            c = _frac(other)
            if c == 0:
                return Poly()
            return Poly._raw(tuple(x * c for x in self.coeffs))
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly()
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> Poly:
        if k < 0:
            raise ValueError("negative polynomial power")
        result, base = Poly.const(1), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def divmod(self, other: Poly) -> tuple[Poly, Poly]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dv = other.coeffs
        dl, inv = len(dv), _inv(dv[-1])
        if len(rem) < dl:
            return Poly(), self
        quot = [0] * (len(rem) - dl + 1)
        for i in range(len(rem) - dl, -1, -1):
            c = rem[i + dl - 1] * inv
            quot[i] = c
            if c:
                for j, d in enumerate(dv):
                    rem[i + j] -= c * d
        return Poly(quot), Poly(rem[: dl - 1])

    def __floordiv__(self, other: Poly) -> Poly:
        return self.divmod(other)[0]

    def __mod__(self, other: Poly) -> Poly:
        return self.divmod(other)[1]

    def monic(self) -> Poly:
        if not self.coeffs or self.coeffs[-1] == 1:
            return self
        return self * _inv(self.coeffs[-1])

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def subs_power(self, k: int) -> Poly:
        """p(q) -> p(q^k)."""
        out = [0] * (k * self.degree + 1) if self.coeffs else []
        for i, c in enumerate(self.coeffs):
            out[i * k] = c
        return Poly(out)

    def __repr__(self) -> str:
        return f"Poly({[str(c) for c in self.coeffs]})"

    def __str__(self) -> str:
        return render_poly(self)


def render_poly(p: Poly, var: str = "q") -> str:
    if p.is_zero():
        return "0"
    parts = []
    for k in range(p.degree, -1, -1):
        c = p.coeffs[k]
        if not c:
            continue
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        if k == 0:
            body = str(mag)
        else:
            mono = var if k == 1 else f"{var}^{k}"
            body = mono if mag == 1 else f"{mag}*{mono}"
        parts.append((sign, body))
    first_sign, first = parts[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd; gcd(0, 0) = 0."""
    if a.is_zero():
        return b.monic()
    if b.is_zero():
        return a.monic()
    if a.is_const() or b.is_const():
        return Poly.const(1)
    # monomial fast path: Laurent denominators are pure powers of q
    if len(a.coeffs) - a.low_order() == 1:
        return Poly.monomial(min(a.degree, b.low_order()))
    if len(b.coeffs) - b.low_order() == 1:
        return Poly.monomial(min(b.degree, a.low_order()))
    # primitive remainder sequence over Z keeps coefficients integral
    x, y = _primitive(a.coeffs), _primitive(b.coeffs)
    if len(x) < len(y):
        x, y = y, x
    while y:
        x, y = y, _primitive(_pseudo_rem(x, y))
    return Poly(x).monic()


def _primitive(cs) -> list[int]:
    """Integer polynomial with content 1 and positive leading coefficient."""
    if not cs:
        return []
    den = 1
    for c in cs:
        if isinstance(c, Fraction):
            den = den * c.denominator // math.gcd(den, c.denominator)
    ints = [int(c * den) for c in cs]
    g = 0
    for c in ints:
        g = math.gcd(g, c)
    if ints[-1] < 0:
        g = -g
    return [c // g for c in ints]


def _pseudo_rem(x: list[int], y: list[int]) -> list[int]:
    r = list(x)
    ly, lc = len(y), y[-1]
    while len(r) >= ly:
        c = r[-1]
        shift = len(r) - ly
        r = [v * lc for v in r]
        for j, d in enumerate(y):
            r[shift + j] -= c * d
        r.pop()
        while r and r[-1] == 0:
            r.pop()
    return r


Q_POLY = Poly((0, 1))
ONE_POLY = Poly.const(1)


class RatQ:
    """Element of Q(q) in canonical form: coprime num/den, den monic."""

    __slots__ = ("num", "den")

    def __init__(self, num=0, den=None, *, _canonical: bool = False):
        if not isinstance(num, Poly):
            num = Poly.const(num)
        if den is None:
            den = ONE_POLY
        elif not isinstance(den, Poly):
            den = Poly.const(den)
        if not _canonical:
            if den.is_zero():
                raise ZeroDivisionError("RatQ with zero denominator")
            if num.is_zero():
                num, den = Poly(), ONE_POLY
            else:
                g = poly_gcd(num, den)
                if g.degree > 0:
                    num, den = num // g, den // g
                lc = den.lc()
                if lc != 1:
                    num, den = num * _inv(lc), den * _inv(lc)
        self.num = num
        self.den = den

    @classmethod
    def q(cls) -> RatQ:
        return cls(Q_POLY, _canonical=True)

    @classmethod
    def q_power(cls, k: int) -> RatQ:
        if k >= 0:
            return cls(Poly.monomial(k), _canonical=True)
        return cls(ONE_POLY, Poly.monomial(-k), _canonical=True)

    @classmethod
    def coerce(cls, x) -> RatQ:
        if isinstance(x, RatQ):
            return x
        if isinstance(x, Poly):
            return cls(x, _canonical=True)
        return cls(Poly.const(x), _canonical=True)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_const(self) -> bool:
        return self.num.is_const() and self.den.is_const()

    def is_poly(self) -> bool:
        return self.den.is_const()

    def __bool__(self) -> bool:
        return not self.num.is_zero()

    def __eq__(self, other) -> bool:
        if isinstance(other, RatQ):
            return self.num == other.num and self.den == other.den
        if isinstance(other, (int, Rational, Poly)):
            return self == RatQ.coerce(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    def __add__(self, other) -> RatQ:
        if not isinstance(other, RatQ):
            if isinstance(other, (int, Rational, Poly)):
                other = RatQ.coerce(other)
            else:
                return NotImplemented
        if self.den == other.den:
            return RatQ(self.num + other.num, self.den)
        return RatQ(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self) -> RatQ:
        return RatQ(-self.num, self.den, _canonical=True)

    def __sub__(self, other) -> RatQ:
        return self + (-RatQ.coerce(other) if not isinstance(other, RatQ) else -other)

    def __rsub__(self, other) -> RatQ:
        return RatQ.coerce(other) - self

    def __mul__(self, other) -> RatQ:
        if not isinstance(other, RatQ):
            if isinstance(other, (int, Rational)):
                c = _frac(other)
                return RatQ(self.num * c, self.den, _canonical=True) if c else RatQ()
            if isinstance(other, Poly):
                other = RatQ.coerce(other)
            else:
                return NotImplemented
        if self.den.is_const() and other.den.is_const():
            return RatQ(self.num * other.num, _canonical=True)
        # cross-cancel first so the final gcd stays small
        g1 = poly_gcd(self.num, other.den)
        g2 = poly_gcd(other.num, self.den)
        n1, d2 = (self.num // g1, other.den // g1) if g1.degree > 0 else (self.num, other.den)
        n2, d1 = (other.num // g2, self.den // g2) if g2.degree > 0 else (other.num, self.den)
        num, den = n1 * n2, d1 * d2
        if num.is_zero():
            return RatQ()
        lc = den.lc()
        if lc != 1:
            num, den = num * _inv(lc), den * _inv(lc)
        return RatQ(num, den, _canonical=True)

    __rmul__ = __mul__

    def inverse(self) -> RatQ:
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero RatQ")
        return RatQ(self.den, self.num)

    def __truediv__(self, other) -> RatQ:
        return self * RatQ.coerce(other).inverse()

    def __rtruediv__(self, other) -> RatQ:
        return RatQ.coerce(other) * self.inverse()

    def __pow__(self, k: int) -> RatQ:
        if k < 0:
            return self.inverse() ** (-k)
        return RatQ(self.num ** k, self.den ** k, _canonical=True)

    def subs_power(self, k: int) -> RatQ:
        """x(q) -> x(q^k), e.g. k = 2 to rewrite in terms of a square root of q."""
        return RatQ(self.num.subs_power(k), self.den.subs_power(k))

    def __complex__(self) -> complex:
        raise TypeError("use evaluate(value) for numeric evaluation")

    def evaluate(self, value):
        return self.num(value) / self.den(value)

    def constant(self) -> Fraction:
        if not self.is_const():
            raise ValueError(f"{self} is not constant")
        return (self.num.coeffs[0] if self.num.coeffs else Fraction(0)) / self.den.coeffs[0]

    def __repr__(self) -> str:
        return f"RatQ({self})"

    def __str__(self) -> str:
        if self.den == ONE_POLY:
            return str(self.num)
        num, den = str(self.num), str(self.den)
        if len([c for c in self.num.coeffs if c]) > 1:
            num = f"({num})"
        if len([c for c in self.den.coeffs if c]) > 1 or self.den.lc() != 1:
            den = f"({den})"
        return f"{num} / {den}"


def qnum(m: int) -> RatQ:
    """[m]_q = 1 + q + ... + q^(m-1)."""
    if m < 0:
        raise ValueError(f"qnum needs m >= 0, got {m}")
    return RatQ(Poly([1] * m), _canonical=True)


@lru_cache(maxsize=None)
def qfact(m: int) -> RatQ:
    if m < 0:
        raise ValueError(f"qfact needs m >= 0, got {m}")
    if m == 0:
        return RatQ(ONE_POLY, _canonical=True)
    return qfact(m - 1) * qnum(m)


@lru_cache(maxsize=None)
def qbinom(m: int, k: int) -> RatQ:
    """Gaussian binomial [m choose k]_q, a polynomial in q."""
    if k < 0 or k > m:
        return RatQ()
    if k == 0 or k == m:
        return RatQ(ONE_POLY, _canonical=True)
    # q-Pascal keeps everything polynomial
    return qbinom(m - 1, k - 1) + RatQ.q_power(k) * qbinom(m - 1, k)


@lru_cache(maxsize=None)
def cyclotomic(n: int) -> Poly:
    """Phi_n as (q^n - 1) divided by Phi_d for every proper divisor d of n."""
    if n < 1:
        raise ValueError(f"cyclotomic needs n >= 1, got {n}")
    p = Poly.monomial(n) - 1
    for d in range(1, n):
        if n % d == 0:
            p, r = p.divmod(cyclotomic(d))
            assert r.is_zero()
    return p


def totient(n: int) -> int:
    return cyclotomic(n).degree


def _check_odd(n: int) -> None:
    if not isinstance(n, int) or n < 3 or n % 2 == 0:
        raise ValueError(f"n must be an odd integer >= 3, got {n!r}")


class CycloNum:
    """Element of Q(zeta_n), stored as a polynomial in zeta reduced mod Phi_n."""

    __slots__ = ("n", "poly")

    def __init__(self, n: int, coeffs=(), *, _reduced: bool = False):
        _check_odd(n)
        poly = coeffs if isinstance(coeffs, Poly) else Poly(coeffs)
        if not _reduced and poly.degree >= totient(n):
            poly = poly % cyclotomic(n)
        self.n = n
        self.poly = poly

    @classmethod
    def zeta(cls, n: int, k: int = 1) -> CycloNum:
        return cls(n, Poly.monomial(k % n))

    @classmethod
    def rational(cls, n: int, c) -> CycloNum:
        return cls(n, Poly.const(c), _reduced=True)

    @property
    def coeffs(self) -> list[Fraction]:
        """Coefficients c_0..c_{phi(n)-1}, zero padded."""
        cs = list(self.poly.coeffs)
        return cs + [Fraction(0)] * (totient(self.n) - len(cs))

    def _coerce(self, other) -> CycloNum:
        if isinstance(other, CycloNum):
            if other.n != self.n:
                raise ValueError(f"mixing Q(zeta_{self.n}) and Q(zeta_{other.n})")
            return other
        if isinstance(other, (int, Rational)):
            return CycloNum.rational(self.n, other)
        raise TypeError(f"cannot coerce {other!r} into Q(zeta_{self.n})")

    def is_zero(self) -> bool:
        return self.poly.is_zero()

    def __bool__(self) -> bool:
        return not self.poly.is_zero()

    def is_rational(self) -> bool:
        return self.poly.is_const()

    def rational_value(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.poly.coeffs[0] if self.poly.coeffs else Fraction(0)

    def __eq__(self, other) -> bool:
        if isinstance(other, CycloNum):
            return self.n == other.n and self.poly == other.poly
        if isinstance(other, (int, Rational)):
            return self.poly == Poly.const(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.n, self.poly))

    def __add__(self, other) -> CycloNum:
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return CycloNum(self.n, self.poly + other.poly, _reduced=True)

    __radd__ = __add__

    def __neg__(self) -> CycloNum:
        return CycloNum(self.n, -self.poly, _reduced=True)

    def __sub__(self, other) -> CycloNum:
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> CycloNum:
        return self._coerce(other) - self

    def __mul__(self, other) -> CycloNum:
        if isinstance(other, (int, Rational)):
            return CycloNum(self.n, self.poly * other, _reduced=True)
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return CycloNum(self.n, self.poly * other.poly)

    __rmul__ = __mul__

    def inverse(self) -> CycloNum:
        if self.is_zero():
            raise ZeroDivisionError(f"inverse of zero in Q(zeta_{self.n})")
        return CycloNum(self.n, poly_inverse_mod(self.poly, cyclotomic(self.n)))

    def __truediv__(self, other) -> CycloNum:
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other) -> CycloNum:
        return self._coerce(other) * self.inverse()

    def __pow__(self, k: int) -> CycloNum:
        if k < 0:
            return self.inverse() ** (-k)
        result, base = CycloNum.rational(self.n, 1), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __complex__(self) -> complex:
        z = cmath.exp(2j * math.pi / self.n)
        return complex(sum(float(c) * z**k for k, c in enumerate(self.poly.coeffs)))

    def __repr__(self) -> str:
        return f"CycloNum({self.n}, {[str(c) for c in self.coeffs]})"

    def __str__(self) -> str:
        return f"[{', '.join(str(c) for c in self.coeffs)}] mod Phi_{self.n}"


def poly_inverse_mod(a: Poly, m: Poly) -> Poly:
    """Inverse of a modulo m by the extended Euclidean algorithm."""
    r0, r1 = m, a % m
    s0, s1 = Poly(), Poly.const(1)
    while not r1.is_zero():
        quo, rem = r0.divmod(r1)
        r0, r1 = r1, rem
        s0, s1 = s1, s0 - quo * s1
    if r0.degree != 0:
        raise ZeroDivisionError("not invertible modulo the given polynomial")
    return (s0 * _inv(r0.coeffs[0])) % m


Scalar = Union[RatQ, CycloNum]


def eval_at_root(x, n: int) -> CycloNum:
    """Value of x at q = zeta_n; raises PoleAtRoot when Phi_n divides den(x)."""
    _check_odd(n)
    if isinstance(x, CycloNum):
        return x
    x = RatQ.coerce(x)
    phi = cyclotomic(n)
    den = x.den % phi
    if den.is_zero():
        raise PoleAtRoot(f"denominator of {x} vanishes at zeta_{n}", n)
    num = CycloNum(n, x.num)
    if den == ONE_POLY:
        return num
    return num * CycloNum(n, poly_inverse_mod(den, phi), _reduced=True)


def q_half(n: int) -> CycloNum:
    """zeta_n^((n+1)/2), the square root of q = zeta_n lying in Q(zeta_n)."""
    if n % 2 == 0:
        raise ValueError(f"q_half needs odd n, got {n}")
    return CycloNum.zeta(n, (n + 1) // 2)
