"""The algebra at q = zeta_n (n odd): nilpotent theta, eps, dtheta plus the
grade-zero bosonic pair z, dz and the parameter zeps.

Normal order is z < zeps < theta < eps < dtheta < dz, with

    dtheta theta = q theta dtheta + 1,   dz z = z dz + 1,
    eps theta = q^-1 theta eps,          dtheta eps = q^-1 eps dtheta,

everything else commuting, and theta^n = eps^n = dtheta^n = 0.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from numbers import Rational
from typing import NamedTuple, Sequence

from .gencalc import GradedElem, render_terms, reorder_coefficients, rewrite_words
from .limits import limit_at_root, reduce_theta_power
from .scalar import CycloNum, RatQ, _check_odd, eval_at_root, qfact, render_poly

Z, ZEPS, THETA, EPS, DTHETA, DZ = "z", "zeps", "theta", "eps", "dtheta", "dz"
FS_GENERATORS = (Z, ZEPS, THETA, EPS, DTHETA, DZ)
FS_GRADE = {Z: 0, ZEPS: 0, THETA: 1, EPS: 1, DTHETA: -1, DZ: 0}
_RANK = {g: i for i, g in enumerate(FS_GENERATORS)}
_NILPOTENT = (THETA, EPS, DTHETA)


class FsMonomial(NamedTuple):
    k: int = 0  # z
    j: int = 0  # zeps
    p: int = 0  # theta
    e: int = 0  # eps
    s: int = 0  # dtheta
    t: int = 0  # dz

    @property
    def grade(self) -> int:
        return self.p + self.e - self.s


@lru_cache(maxsize=None)
def _zeta_reorder(n: int, s: int, p: int) -> tuple[CycloNum, ...]:
    return tuple(eval_at_root(c, n) for c in reorder_coefficients(s, p))


def _zeta_power(n: int, k: int) -> CycloNum:
    return CycloNum.zeta(n, k % n)


def _mono_product(n: int, x: FsMonomial, y: FsMonomial):
    out = []
    for i in range(min(x.t, y.k) + 1):
        weyl = comb(x.t, i) * comb(y.k, i) * factorial(i)
        for l, a in enumerate(_zeta_reorder(n, x.s, y.p)):
            p, e, s = x.p + y.p - l, x.e + y.e, x.s - l + y.s
            if p >= n or e >= n or s >= n:
                continue
            k = -(x.s - l) * y.e - x.e * (y.p - l)
            c = a * _zeta_power(n, k) * weyl if k % n else a * weyl
            out.append((FsMonomial(x.k + y.k - i, x.j + y.j, p, e, s, x.t - i + y.t), c))
    return out


class FsElem:
    """Finite linear combination of normal-ordered monomials over Q(zeta_n)."""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: dict | None = None):
        _check_odd(n)
        clean = {}
        for m, c in (terms or {}).items():
            m = FsMonomial(*m)
            if m.p >= n or m.e >= n or m.s >= n:
                continue
            c = _coerce_scalar(n, c)
            if c:
                clean[m] = c
        self.n = n
        self.terms = clean

    @classmethod
    def scalar(cls, n: int, c) -> FsElem:
        return cls(n, {FsMonomial(): c})

    @classmethod
    def gen(cls, n: int, name: str, power: int = 1) -> FsElem:
        idx = FS_GENERATORS.index(name)
        exps = [0] * 6
        exps[idx] = power
        return cls(n, {FsMonomial(*exps): 1})

    @classmethod
    def _from_acc(cls, n: int, acc: dict) -> FsElem:
        out = object.__new__(cls)
        out.n = n
        out.terms = {m: c for m, c in acc.items() if c}
        return out

    def _coerce(self, other) -> FsElem:
        if isinstance(other, FsElem):
            if other.n != self.n:
                raise ValueError(f"mixing n={self.n} and n={other.n}")
            return other
        return FsElem.scalar(self.n, other)

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, FsElem):
            return self.n == other.n and self.terms == other.terms
        if isinstance(other, (int, Rational, CycloNum)):
            return self == self._coerce(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.n, frozenset(self.terms.items())))

    def __add__(self, other) -> FsElem:
        other = self._coerce(other)
        acc = dict(self.terms)
        for m, c in other.terms.items():
            acc[m] = acc[m] + c if m in acc else c
        return FsElem._from_acc(self.n, acc)

    __radd__ = __add__

    def __neg__(self) -> FsElem:
        return FsElem._from_acc(self.n, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other) -> FsElem:
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> FsElem:
        return self._coerce(other) - self

    def scale(self, c) -> FsElem:
        c = _coerce_scalar(self.n, c)
        return FsElem._from_acc(self.n, {m: v * c for m, v in self.terms.items()})

    def __mul__(self, other) -> FsElem:
        if isinstance(other, (int, Rational, CycloNum)):
            return self.scale(other)
        if not isinstance(other, FsElem):
            return NotImplemented
        other = self._coerce(other)
        acc: dict = {}
        for x, cx in self.terms.items():
            for y, cy in other.terms.items():
                cxy = cx * cy
                for m, c in _mono_product(self.n, x, y):
                    v = c * cxy
                    acc[m] = acc[m] + v if m in acc else v
        return FsElem._from_acc(self.n, acc)

    def __rmul__(self, other) -> FsElem:
        if isinstance(other, (int, Rational, CycloNum)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, k: int) -> FsElem:
        out = FsElem.scalar(self.n, 1)
        for _ in range(k):
            out = out * self
        return out

    def grade_components(self) -> dict[int, FsElem]:
        parts: dict[int, dict] = {}
        for m, c in self.terms.items():
            parts.setdefault(m.grade, {})[m] = c
        return {g: FsElem._from_acc(self.n, t) for g, t in parts.items()}

    def filter(self, keep) -> FsElem:
        return FsElem._from_acc(self.n, {m: c for m, c in self.terms.items() if keep(m)})

    def coefficient(self, m) -> CycloNum:
        return self.terms.get(FsMonomial(*m), CycloNum.rational(self.n, 0))

    def __repr__(self) -> str:
        return f"FsElem(n={self.n}, {self})"

    def __str__(self) -> str:
        # coefficients print as reduced polynomials in q = zeta_n
        def word(m):
            parts = [g if k == 1 else f"{g}^{k}" for g, k in zip(FS_GENERATORS, m) if k]
            return "*".join(parts)
        items = [(m, render_poly(c.poly)) for m, c in sorted(self.terms.items())]
        return render_terms(items, word)


def _coerce_scalar(n: int, c) -> CycloNum:
    if isinstance(c, CycloNum):
        if c.n != n:
            raise ValueError(f"scalar lives in Q(zeta_{c.n}), expected n={n}")
        return c
    if isinstance(c, RatQ):
        return eval_at_root(c, n)
    return CycloNum.rational(n, c)


# -- naive rewriting -----------------------------------------------------------

def _rules(n: int):
    q, qinv, one = CycloNum.zeta(n), CycloNum.zeta(n, n - 1), CycloNum.rational(n, 1)
    special = {
        (DTHETA, THETA): [(q, (THETA, DTHETA)), (one, ())],
        (DZ, Z): [(one, (Z, DZ)), (one, ())],
        (EPS, THETA): [(qinv, (THETA, EPS))],
        (DTHETA, EPS): [(qinv, (EPS, DTHETA))],
    }

    def rule(left, right):
        return special.get((left, right), [(one, (right, left))])

    return rule


def _killer(n: int):
    runs = [(g,) * n for g in _NILPOTENT]

    def kill(w):
        return any(w[i:i + n] == run for run in runs for i in range(len(w) - n + 1))

    return kill


def _expand_word(n: int, word: Sequence) -> dict:
    """Split scalars off and expand each D into dtheta + theta^(n-1) dz."""
    words = {(): CycloNum.rational(n, 1)}
    d_tail = _coerce_scalar(n, qfact(n - 1).inverse())
    for item in word:
        if isinstance(item, str):
            if item == "D":
                choices = [((DTHETA,), 1), ((THETA,) * (n - 1) + (DZ,), d_tail)]
            elif item in FS_GENERATORS:
                choices = [((item,), 1)]
            else:
                raise ValueError(f"unknown generator {item!r}")
        else:
            choices = [((), _coerce_scalar(n, item))]
        nxt: dict = {}
        for w, c in words.items():
            for tail, k in choices:
                nw = w + tail
                v = c * k
                nxt[nw] = nxt[nw] + v if nw in nxt else v
        words = nxt
    return words


def fs_normal_order(word: Sequence, n: int, strategy: str = "left") -> FsElem:
    """Normal form of a product of generators (and D) by direct rewriting."""
    _check_odd(n)
    words = rewrite_words(_expand_word(n, word), _rules(n), _RANK, strategy, _killer(n))
    acc: dict = {}
    for w, c in words.items():
        m = FsMonomial(*(w.count(g) for g in FS_GENERATORS))
        acc[m] = acc[m] + c if m in acc else c
    return FsElem(n, acc)


def fs_word_product(word: Sequence, n: int) -> FsElem:
    out = FsElem.scalar(n, 1)
    for item in word:
        if item == "D":
            out = out * fs_D(n)
        elif isinstance(item, str):
            out = out * FsElem.gen(n, item)
        else:
            out = out * FsElem.scalar(n, item)
    return out


# -- derived elements and checks ----------------------------------------------

def fs_graded_bracket(A: FsElem, B: FsElem) -> FsElem:
    """AB - q^(-g(A) g(B)) BA with integer grades, q = zeta_n."""
    out = FsElem(A.n)
    for g, a in A.grade_components().items():
        for h, b in B.grade_components().items():
            out = out + a * b - (b * a).scale(_zeta_power(A.n, -g * h))
    return out


def fs_theta_bm(m: int, n: int) -> FsElem:
    """L theta^(m) = z^r/r! theta^(p) with m = rn + p."""
    r, p, c = reduce_theta_power(m, n)
    return FsElem(n, {FsMonomial(k=r, p=p): c / eval_at_root(qfact(p), n)})


def fs_eps_bm(m: int, n: int) -> FsElem:
    """L eps^(m) = zeps^r/r! eps^(p) with m = rn + p."""
    r, p, c = reduce_theta_power(m, n)
    return FsElem(n, {FsMonomial(j=r, e=p): c / eval_at_root(qfact(p), n)})


@lru_cache(maxsize=None)
def fs_D(n: int) -> FsElem:
    """Total derivative dtheta + theta^(n-1) dz."""
    _check_odd(n)
    return FsElem(n, {
        FsMonomial(s=1): 1,
        FsMonomial(p=n - 1, t=1): eval_at_root(qfact(n - 1).inverse(), n),
    })


@lru_cache(maxsize=None)
def fs_D_power(n: int, k: int) -> FsElem:
    if k < 0:
        raise ValueError("k must be >= 0")
    if k == 0:
        return FsElem.scalar(n, 1)
    return fs_D_power(n, k - 1) * fs_D(n)


def g_L(n: int, r_max: int) -> FsElem:
    """Translation generator exp(zeps dz) sum_{p<n} eps^(p) D^p, truncated at zeps^r_max."""
    _check_odd(n)
    fermionic = FsElem(n)
    for p in range(n):
        fermionic = fermionic + fs_eps_bm(p, n) * fs_D_power(n, p)
    bosonic = FsElem(n, {FsMonomial(j=r, t=r): Fraction(1, factorial(r)) for r in range(r_max + 1)})
    return bosonic * fermionic


def fsusy_image_of_z(n: int) -> FsElem:
    """z + zeps + sum_{p=1}^{n-1} eps^(p) theta^(n-p)."""
    out = FsElem.gen(n, Z) + FsElem.gen(n, ZEPS)
    for p in range(1, n):
        out = out + fs_eps_bm(p, n) * fs_theta_bm(n - p, n)
    return out


def fsusy_residual(n: int, r_max: int) -> FsElem:
    g = g_L(n, r_max)
    return g * FsElem.gen(n, Z) - fsusy_image_of_z(n) * g


def fsusy_transform_check(n: int, r_max: int) -> bool:
    """G_L z = (z + zeps + sum eps^(p) theta^(n-p)) G_L through zeps-order r_max."""
    return all(m.j > r_max for m in fsusy_residual(n, r_max).terms)


def transfer_from_generic(x: GradedElem, n: int) -> FsElem:
    """Image under q -> zeta_n of an element in theta and eps only.

    theta^a eps^e is first written as [a]![e]! theta^(a) eps^(e); the divided
    powers reduce to z^r/r! theta^(p) and zeps^r'/r'! eps^(p'), and the q-dependent
    coefficient c [a]! [e]! is sent to zeta_n exactly.
    """
    _check_odd(n)
    out = FsElem(n)
    for m, c in x.terms.items():
        if m.b:
            raise ValueError("transfer_from_generic takes theta/eps elements only")
        coeff = limit_at_root(c * qfact(m.a) * qfact(m.e), n).value
        if coeff:
            out = out + (fs_theta_bm(m.a, n) * fs_eps_bm(m.e, n)).scale(coeff)
    return out
