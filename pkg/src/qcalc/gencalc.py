"""The graded algebra generated by theta, eps and D at generic q.

Relations (normal order theta < eps < D):

    D theta = q theta D + 1,    D eps = q^-1 eps D,    eps theta = q^-1 theta eps

Elements are finite sums of normal-ordered words theta^a eps^e D^b with
``RatQ`` coefficients.
"""

from __future__ import annotations

from functools import lru_cache
from numbers import Rational
from typing import Iterable, NamedTuple, Sequence

from .scalar import RatQ, qfact, qnum

THETA, EPS, D = "theta", "eps", "D"
GENERATORS = (THETA, EPS, D)
GRADE = {THETA: 1, EPS: 1, D: -1}
_RANK = {THETA: 0, EPS: 1, D: 2}


class Monomial(NamedTuple):
    a: int = 0  # theta
    e: int = 0  # eps
    b: int = 0  # D

    @property
    def grade(self) -> int:
        return self.a + self.e - self.b

    def letters(self) -> tuple[str, ...]:
        return (THETA,) * self.a + (EPS,) * self.e + (D,) * self.b


@lru_cache(maxsize=None)
def reorder_coefficients(b: int, c: int) -> tuple[RatQ, ...]:
    """Coefficients A_l in D^b theta^c = sum_l A_l theta^(c-l) D^(b-l).

    Built from D^b theta^c = q^c (D^(b-1) theta^c) D + [c] D^(b-1) theta^(c-1);
    every A_l is a polynomial in q.
    """
    if b == 0 or c == 0:
        return (RatQ(1),)
    top = min(b, c)
    prev_same = reorder_coefficients(b - 1, c)
    prev_lower = reorder_coefficients(b - 1, c - 1)
    qc, nc = RatQ.q_power(c), qnum(c)
    out = []
    for l in range(top + 1):
        v = RatQ()
        if l < len(prev_same):
            v = v + qc * prev_same[l]
        if 1 <= l <= len(prev_lower):
            v = v + nc * prev_lower[l - 1]
        out.append(v)
    return tuple(out)


def _mono_product(x: Monomial, y: Monomial) -> list[tuple[Monomial, RatQ]]:
    out = []
    for l, coeff in enumerate(reorder_coefficients(x.b, y.a)):
        # D^(b-l) past eps^f, then eps^e past theta^(c-l)
        k = -(x.b - l) * y.e - x.e * (y.a - l)
        c = coeff * RatQ.q_power(k) if k else coeff
        out.append((Monomial(x.a + y.a - l, x.e + y.e, x.b - l + y.b), c))
    return out


class GradedElem:
    """Finite linear combination of normal-ordered monomials."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict | None = None):
        clean: dict[Monomial, RatQ] = {}
        for m, c in (terms or {}).items():
            c = RatQ.coerce(c)
            if c:
                clean[Monomial(*m)] = c
        self.terms = clean

    @classmethod
    def scalar(cls, c) -> GradedElem:
        return cls({Monomial(): c})

    @classmethod
    def gen(cls, name: str, power: int = 1) -> GradedElem:
        counts = {THETA: 0, EPS: 0, D: 0}
        counts[name] = power
        return cls({Monomial(counts[THETA], counts[EPS], counts[D]): 1})

    @classmethod
    def _from_acc(cls, acc: dict) -> GradedElem:
        out = object.__new__(cls)
        out.terms = {m: c for m, c in acc.items() if c}
        return out

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, GradedElem):
            if isinstance(other, (int, Rational, RatQ)):
                other = GradedElem.scalar(other)
            else:
                return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def _coerce(self, other) -> GradedElem:
        if isinstance(other, GradedElem):
            return other
        return GradedElem.scalar(other)

    def __add__(self, other) -> GradedElem:
        other = self._coerce(other)
        acc = dict(self.terms)
        for m, c in other.terms.items():
            acc[m] = acc[m] + c if m in acc else c
        return GradedElem._from_acc(acc)

    __radd__ = __add__

    def __neg__(self) -> GradedElem:
        return GradedElem._from_acc({m: -c for m, c in self.terms.items()})

    def __sub__(self, other) -> GradedElem:
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> GradedElem:
        return self._coerce(other) - self

    def scale(self, c) -> GradedElem:
        c = RatQ.coerce(c)
        return GradedElem._from_acc({m: v * c for m, v in self.terms.items()})

    def __mul__(self, other) -> GradedElem:
        if isinstance(other, (int, Rational, RatQ)):
            return self.scale(other)
        if not isinstance(other, GradedElem):
            return NotImplemented
        acc: dict[Monomial, RatQ] = {}
        for x, cx in self.terms.items():
            for y, cy in other.terms.items():
                cxy = cx * cy
                for m, c in _mono_product(x, y):
                    v = c * cxy
                    acc[m] = acc[m] + v if m in acc else v
        return GradedElem._from_acc(acc)

    def __rmul__(self, other) -> GradedElem:
        if isinstance(other, (int, Rational, RatQ)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, k: int) -> GradedElem:
        out = GradedElem.scalar(1)
        for _ in range(k):
            out = out * self
        return out

    def grade_components(self) -> dict[int, GradedElem]:
        parts: dict[int, dict] = {}
        for m, c in self.terms.items():
            parts.setdefault(m.grade, {})[m] = c
        return {g: GradedElem._from_acc(t) for g, t in parts.items()}

    def pure_grade(self) -> int | None:
        grades = {m.grade for m in self.terms}
        return grades.pop() if len(grades) == 1 else None

    def filter(self, keep) -> GradedElem:
        return GradedElem._from_acc({m: c for m, c in self.terms.items() if keep(m)})

    def coefficient(self, m: Iterable[int]) -> RatQ:
        return self.terms.get(Monomial(*m), RatQ())

    def __repr__(self) -> str:
        return f"GradedElem({self})"

    def __str__(self) -> str:
        return render_terms(
            sorted(self.terms.items()),
            lambda m: _render_word(((THETA, m.a), (EPS, m.e), (D, m.b))),
        )


def _render_word(factors) -> str:
    parts = [name if k == 1 else f"{name}^{k}" for name, k in factors if k]
    return "*".join(parts)


def render_terms(items, word) -> str:
    """Shared text form: ``coef*word + coef*word``; coefficients parenthesised when compound."""
    if not items:
        return "0"
    out = []
    for m, c in items:
        w = word(m)
        s = str(c)
        if " " in s or s.startswith("-") or s.startswith("["):
            s = f"({s})"
        if not w:
            out.append(s)
        elif s == "1":
            out.append(w)
        else:
            out.append(f"{s}*{w}")
    return " + ".join(out)


# -- naive rewriting ---------------------------------------------------------

def _rule(left: str, right: str) -> list[tuple[RatQ, tuple[str, ...]]] | None:
    if (left, right) == (D, THETA):
        return [(RatQ.q(), (THETA, D)), (RatQ(1), ())]
    if (left, right) == (D, EPS):
        return [(RatQ.q_power(-1), (EPS, D))]
    if (left, right) == (EPS, THETA):
        return [(RatQ.q_power(-1), (THETA, EPS))]
    return None


def rewrite_words(words: dict, rule, rank, strategy: str = "left", kill=None) -> dict:
    """Rewrite a sum of words to normal form one redex at a time.

    ``strategy`` picks the leftmost or rightmost out-of-order adjacent pair;
    ``kill`` optionally marks words that are zero in the algebra.
    """
    if strategy not in ("left", "right"):
        raise ValueError(f"unknown strategy {strategy!r}")
    done: dict = {}
    todo = dict(words)
    while todo:
        w, c = todo.popitem()
        if kill is not None and kill(w):
            continue
        idx = range(len(w) - 1)
        if strategy == "right":
            idx = reversed(idx)
        pos = next((i for i in idx if rank[w[i]] > rank[w[i + 1]]), None)
        if pos is None:
            done[w] = done[w] + c if w in done else c
            continue
        for coeff, repl in rule(w[pos], w[pos + 1]):
            nw = w[:pos] + repl + w[pos + 2:]
            v = c * coeff
            todo[nw] = todo[nw] + v if nw in todo else v
    return {w: c for w, c in done.items() if c}


def _split_word(word: Sequence) -> tuple[RatQ, tuple[str, ...]]:
    coeff, letters = RatQ(1), []
    for item in word:
        if isinstance(item, str):
            if item not in GENERATORS:
                raise ValueError(f"unknown generator {item!r}")
            letters.append(item)
        else:
            coeff = coeff * RatQ.coerce(item)
    return coeff, tuple(letters)


def normal_order(word: Sequence, strategy: str = "left") -> GradedElem:
    """Normal form of a product of generators and RatQ scalars by direct rewriting."""
    coeff, letters = _split_word(word)
    if not coeff:
        return GradedElem()
    words = rewrite_words({letters: coeff}, _rule, _RANK, strategy)
    acc: dict[Monomial, RatQ] = {}
    for w, c in words.items():
        m = Monomial(w.count(THETA), w.count(EPS), w.count(D))
        acc[m] = acc[m] + c if m in acc else c
    return GradedElem(acc)


def word_product(word: Sequence) -> GradedElem:
    """Same normal form, reached by multiplying single-letter elements left to right."""
    out = GradedElem.scalar(1)
    for item in word:
        out = out * (GradedElem.gen(item) if isinstance(item, str) else GradedElem.scalar(item))
    return out


# -- brackets, derivative, exponentials --------------------------------------

def gamma(g: int, h: int) -> RatQ:
    return RatQ.q_power(-g * h)


def graded_bracket(A: GradedElem, B: GradedElem) -> GradedElem:
    """[A, B] = AB - q^(-g(A) g(B)) BA, extended bilinearly over grade components."""
    out = GradedElem()
    for g, a in A.grade_components().items():
        for h, b in B.grade_components().items():
            out = out + a * b - (b * a).scale(gamma(g, h))
    return out


def theta_bm(m: int) -> GradedElem:
    """Divided power theta^(m) = theta^m / [m]_q!."""
    return GradedElem({Monomial(m, 0, 0): qfact(m).inverse()})


def eps_bm(m: int) -> GradedElem:
    return GradedElem({Monomial(0, m, 0): qfact(m).inverse()})


def d_theta(f: GradedElem) -> GradedElem:
    """df/dtheta for f a polynomial in theta: theta^m -> [m]_q theta^(m-1)."""
    acc = {}
    for m, c in f.terms.items():
        if m.e or m.b:
            raise ValueError("d_theta takes polynomials in theta only")
        if m.a:
            acc[Monomial(m.a - 1)] = c * qnum(m.a)
    return GradedElem(acc)


def qexp(C, order: int) -> GradedElem:
    """Truncated q-exponential sum_{m <= order} C^m theta^(m)."""
    C = RatQ.coerce(C)
    return GradedElem({Monomial(m): C ** m * qfact(m).inverse() for m in range(order + 1)})


def qN() -> GradedElem:
    """q^N = D theta - theta D."""
    th, d = GradedElem.gen(THETA), GradedElem.gen(D)
    return d * th - th * d


def identity_eq15(r: int) -> bool:
    """Whether sum_{m=1..r} (1-q)^m/(1-q^m) [r]!/[r-m]! is exactly the constant r."""
    if r < 1:
        raise ValueError("r must be >= 1")
    one_minus_q = RatQ(1) - RatQ.q()
    total = RatQ()
    for m in range(1, r + 1):
        total = total + one_minus_q ** m / (RatQ(1) - RatQ.q_power(m)) * qfact(r) / qfact(r - m)
    return total == RatQ(r)


def translation_generator(K: int) -> GradedElem:
    """G_L truncated at eps^K: sum_{m <= K} eps^(m) D^m."""
    return GradedElem({Monomial(0, m, m): qfact(m).inverse() for m in range(K + 1)})


def translate_residual(K: int) -> GradedElem:
    g = translation_generator(K)
    th = GradedElem.gen(THETA)
    return g * th - (th + GradedElem.gen(EPS)) * g


def translate_check(K: int) -> bool:
    """G_L theta = (theta + eps) G_L through eps-order K."""
    if K < 0:
        raise ValueError("K must be >= 0")
    return all(m.e > K for m in translate_residual(K).terms)
