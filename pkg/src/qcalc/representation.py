"""Ket representations: |m> at generic q or at q = zeta_n, the product-space
labels |r, p> with m = rn + p, and the hermitian q^(1/2)-oscillator on V^n.

Exact kets never truncate: operators act on finite supports. Matrices appear
only in ``operator_matrix`` and the numeric oscillator, which is the one place
double precision is used (square roots of q-numbers).
"""

from __future__ import annotations

import cmath
import math

import numpy as np

from .gencalc import GradedElem
from .limits import limit_at_root
from .scalar import (
    CycloNum,
    RatQ,
    _check_odd,
    eval_at_root,
    q_half,
    qbinom,
    qnum,
)

KET_OPS = ("D", "theta", "qN", "theta_bm", "dtheta", "z", "dz")
PRODUCT_OPS = ("z", "dz", "theta", "dtheta", "D")


class Ket:
    """Finitely supported sum of basis kets |m>.

    ``n`` is None for amplitudes in Q(q) and the root order for amplitudes in Q(zeta_n).
    """

    __slots__ = ("amps", "n")

    def __init__(self, amps: dict | None = None, n: int | None = None):
        self.n = n
        self.amps = {}
        for m, c in (amps or {}).items():
            if m < 0:
                raise ValueError(f"negative basis label {m}")
            c = _scalar(c, n)
            if c:
                self.amps[m] = c

    @classmethod
    def basis(cls, m: int, n: int | None = None) -> Ket:
        return cls({m: 1}, n)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Ket):
            return NotImplemented
        return self.n == other.n and self.amps == other.amps

    def __add__(self, other: Ket) -> Ket:
        acc = dict(self.amps)
        for m, c in other.amps.items():
            acc[m] = acc[m] + c if m in acc else c
        return Ket(acc, self.n)

    def __sub__(self, other: Ket) -> Ket:
        return self + other.scale(-1)

    def scale(self, c) -> Ket:
        c = _scalar(c, self.n)
        return Ket({m: v * c for m, v in self.amps.items()}, self.n)

    def is_zero(self) -> bool:
        return not self.amps

    def __repr__(self) -> str:
        body = " + ".join(f"({c})|{m}>" for m, c in sorted(self.amps.items()))
        return f"Ket({body or '0'})"


def _scalar(c, n):
    if n is None:
        return RatQ.coerce(c)
    if isinstance(c, CycloNum):
        return c
    return eval_at_root(c, n) if isinstance(c, RatQ) else CycloNum.rational(n, c)


def _op_rule(op: str, m: int, n: int | None, k: int | None):
    """(target, q-coefficient) for op on |m>, or None when |m> is annihilated."""
    if op == "D":
        return (m - 1, RatQ(1)) if m > 0 else None
    if op == "theta":
        return m + 1, qnum(m + 1)
    if op == "qN":
        return m, RatQ.q_power(m)
    if op == "theta_bm":
        if k is None:
            raise ValueError("theta_bm needs the divided-power order k")
        return m + k, qbinom(m + k, k)
    if n is None:
        raise ValueError(f"operator {op!r} is defined relative to a root order n")
    if op == "z":
        # theta^(n)
        return m + n, qbinom(m + n, n)
    if op == "dz":
        # D^n
        return (m - n, RatQ(1)) if m >= n else None
    if op == "dtheta":
        # D - theta^(n-1) D^n
        if m == 0:
            return None
        coeff = RatQ(1) - (qbinom(m - 1, n - 1) if m >= n else RatQ())
        return m - 1, coeff
    raise ValueError(f"unknown ket operator {op!r}; expected one of {KET_OPS}")


def act(op: str, ket: Ket, n: int | None = None, k: int | None = None) -> Ket:
    """Apply a basis operator to a ket.

    For a ket over Q(zeta_n) every q-coefficient is sent to zeta_n through
    ``limit_at_root`` (theta^(n) stays finite there).
    """
    root = ket.n
    if root is not None:
        n = root if n is None else n
    acc: dict = {}
    for m, c in ket.amps.items():
        hit = _op_rule(op, m, n, k)
        if hit is None:
            continue
        target, coeff = hit
        if root is not None:
            coeff = limit_at_root(coeff, root).value
        v = c * coeff
        acc[target] = acc[target] + v if target in acc else v
    return Ket(acc, root)


def act_element(x: GradedElem, ket: Ket) -> Ket:
    """Apply a theta/D element of the generic algebra (no eps) to a ket."""
    out = Ket({}, ket.n)
    for mono, c in x.terms.items():
        if mono.e:
            raise ValueError("eps has no action on kets")
        v = ket
        for _ in range(mono.b):
            v = act("D", v)
        for _ in range(mono.a):
            v = act("theta", v)
        out = out + v.scale(c)
    return out


def ket_limit(ket: Ket, n: int) -> Ket:
    """Send generic amplitudes to q = zeta_n."""
    if ket.n is not None:
        return ket
    return Ket({m: limit_at_root(c, n).value for m, c in ket.amps.items()}, n)


# -- product space ---------------------------------------------------------------

class ProductKet:
    """Finitely supported sum of |r, p> in V_HO (x) V^n, 0 <= p < n."""

    __slots__ = ("amps", "n")

    def __init__(self, amps: dict | None, n: int):
        _check_odd(n)
        self.n = n
        self.amps = {}
        for (r, p), c in (amps or {}).items():
            if r < 0 or not 0 <= p < n:
                raise ValueError(f"bad product label {(r, p)} for n={n}")
            c = _scalar(c, n)
            if c:
                self.amps[(r, p)] = c

    def __eq__(self, other) -> bool:
        if not isinstance(other, ProductKet):
            return NotImplemented
        return self.n == other.n and self.amps == other.amps

    def __repr__(self) -> str:
        body = " + ".join(f"({c})|{r},{p}>" for (r, p), c in sorted(self.amps.items()))
        return f"ProductKet({body or '0'})"


def reduce_ket(ket: Ket, n: int) -> ProductKet:
    """Relabel |rn + p> as |r, p>; amplitudes must already live in Q(zeta_n)."""
    _check_odd(n)
    if ket.n != n:
        raise ValueError("reduce_ket needs amplitudes in Q(zeta_n); apply ket_limit first")
    return ProductKet({divmod(m, n): c for m, c in ket.amps.items()}, n)


def expand_ket(pket: ProductKet) -> Ket:
    n = pket.n
    return Ket({r * n + p: c for (r, p), c in pket.amps.items()}, n)


def _grassmann_raise(p: int, k: int, n: int):
    """theta^(k)|p> on V^n."""
    if p + k >= n:
        return None
    return p + k, eval_at_root(qbinom(p + k, k), n)


def act_product(op: str, pket: ProductKet) -> ProductKet:
    n = pket.n
    acc: dict = {}

    def add(label, v):
        acc[label] = acc[label] + v if label in acc else v

    for (r, p), c in pket.amps.items():
        if op == "z":
            add((r + 1, p), c * (r + 1))
        elif op == "dz":
            if r > 0:
                add((r - 1, p), c)
        elif op == "theta":
            hit = _grassmann_raise(p, 1, n)
            if hit:
                add((r, hit[0]), c * hit[1])
        elif op == "dtheta":
            if p > 0:
                add((r, p - 1), c)
        elif op == "D":
            # 1 (x) dtheta + dz (x) theta^(n-1)
            if p > 0:
                add((r, p - 1), c)
            hit = _grassmann_raise(p, n - 1, n)
            if hit and r > 0:
                add((r - 1, hit[0]), c * hit[1])
        else:
            raise ValueError(f"unknown product operator {op!r}; expected one of {PRODUCT_OPS}")
    return ProductKet(acc, n)


# -- deformed oscillator ---------------------------------------------------------

class _Field:
    """Scalars needed by the oscillator identities: q, a square root s of q, and [m]_q."""

    def __init__(self, n: int | None):
        self.n = n
        if n is None:
            # generic: the indeterminate is s = q^(1/2), so q = s^2
            self.s = RatQ.q()
            self.qnum = lambda m: qnum(m).subs_power(2)
        else:
            self.s = q_half(n)
            self.qnum = lambda m: eval_at_root(qnum(m), n)

    def s_power(self, k: int):
        return self.s ** k


def _osc_a(ket: Ket, f: _Field) -> Ket:
    """a = q^(-N/2) D."""
    return Ket({m - 1: c * f.s_power(-(m - 1)) for m, c in ket.amps.items() if m > 0}, ket.n)


def _osc_adag(ket: Ket, f: _Field) -> Ket:
    """a^dagger = theta."""
    return Ket({m + 1: c * f.qnum(m + 1) for m, c in ket.amps.items()}, ket.n)


def _q_half_N(ket: Ket, f: _Field, sign: int) -> Ket:
    return Ket({m: c * f.s_power(sign * m) for m, c in ket.amps.items()}, ket.n)


def defcr_check_exact(cutoff: int, n: int | None = None) -> dict:
    """Both sign choices of a a^+ - q^(-+1/2) a^+ a = q^(+-N/2) on |m>, m < cutoff.

    With n=None the scalars are rational functions of s = q^(1/2); otherwise
    s = zeta_n^((n+1)/2).
    """
    if cutoff < 2:
        raise ValueError("cutoff must be >= 2")
    f = _Field(n)
    failures = []
    for sign in (1, -1):
        for m in range(cutoff):
            ket = Ket.basis(m, n)
            lhs = _osc_a(_osc_adag(ket, f), f) - _osc_adag(_osc_a(ket, f), f).scale(f.s_power(-sign))
            if lhs != _q_half_N(ket, f, sign):
                failures.append({"sign": sign, "m": m})
    return {"field": "generic" if n is None else f"Q(zeta_{n})", "cutoff": cutoff,
            "pass": not failures, "failures": failures}


def symmetric_qnum(p: int, n: int) -> float:
    """(q^(p/2) - q^(-p/2)) / (q^(1/2) - q^(-1/2)) at q^(1/2) = e^(i pi/n): sin(p pi/n)/sin(pi/n)."""
    return math.sin(p * math.pi / n) / math.sin(math.pi / n)


def oscillator_a(n: int) -> np.ndarray:
    """n x n matrix of a on V^n in the positive-metric basis: a|p> = sqrt([p]) |p-1>."""
    _check_odd(n)
    a = np.zeros((n, n), dtype=complex)
    for p in range(1, n):
        a[p - 1, p] = math.sqrt(symmetric_qnum(p, n))
    return a


def oscillator_adag(n: int) -> np.ndarray:
    """a^dagger built from its own action a^dagger|p> = sqrt([p+1]) |p+1>, not by transposing a."""
    _check_odd(n)
    ad = np.zeros((n, n), dtype=complex)
    for p in range(n - 1):
        ad[p + 1, p] = math.sqrt(symmetric_qnum(p + 1, n))
    return ad


def q_half_N_matrix(n: int, sign: int = 1) -> np.ndarray:
    s = cmath.exp(1j * math.pi / n)
    return np.diag([s ** (sign * p) for p in range(n)])


def defcr_check_numeric(n: int) -> dict:
    """Residual norms of the deformed relation (both signs) and of a^+ - a^H."""
    a, ad = oscillator_a(n), oscillator_adag(n)
    s = cmath.exp(1j * math.pi / n)
    res = {
        sign: float(np.linalg.norm(a @ ad - s ** (-sign) * ad @ a - q_half_N_matrix(n, sign)))
        for sign in (1, -1)
    }
    adj = float(np.linalg.norm(ad - a.conj().T))
    positive = all(symmetric_qnum(p, n) > 0 for p in range(1, n))
    return {"n": n, "residual_upper": res[1], "residual_lower": res[-1],
            "adjoint_residual": adj, "positive": positive}


def bargmann_matrices(n: int) -> tuple[np.ndarray, np.ndarray]:
    """a = q^(-N/2) dtheta and theta on V^n, numeric with q^(1/2) = e^(i pi/n)."""
    s = cmath.exp(1j * math.pi / n)
    q = s * s
    a = np.zeros((n, n), dtype=complex)
    th = np.zeros((n, n), dtype=complex)
    for p in range(1, n):
        a[p - 1, p] = s ** (-(p - 1))
        th[p, p - 1] = (1 - q ** p) / (1 - q)
    return a, th


def similarity_transform(n: int) -> np.ndarray:
    """Diagonal S with S a_B S^-1 = a_herm, solved entry by entry down the superdiagonal."""
    a_b, _ = bargmann_matrices(n)
    a_h = oscillator_a(n)
    diag = [1.0 + 0j]
    for p in range(1, n):
        # (S a_B S^-1)[p-1, p] = S_{p-1} a_B[p-1, p] / S_p
        diag.append(diag[p - 1] * a_b[p - 1, p] / a_h[p - 1, p])
    return np.diag(diag)


def similarity_residuals(n: int) -> dict:
    S = similarity_transform(n)
    Si = np.linalg.inv(S)
    a_b, th = bargmann_matrices(n)
    return {
        "a": float(np.linalg.norm(S @ a_b @ Si - oscillator_a(n))),
        "theta": float(np.linalg.norm(S @ th @ Si - oscillator_adag(n))),
    }


# -- matrix export ----------------------------------------------------------------

def operator_matrix(op: str, cutoff: int, n: int | None = None, k: int | None = None,
                    product: bool = False) -> list[list]:
    """Exact matrix <i|op|j> on |m>, m < cutoff; images beyond the cutoff are dropped."""
    rows = [[_scalar(0, n) for _ in range(cutoff)] for _ in range(cutoff)]
    for j in range(cutoff):
        if product:
            pk = reduce_ket(Ket.basis(j, n), n)
            image = expand_ket(act_product(op, pk))
        else:
            image = act(op, Ket.basis(j, n), n=n, k=k)
        for i, c in image.amps.items():
            if i < cutoff:
                rows[i][j] = c
    return rows


def _numeric_scalar(c) -> complex:
    if isinstance(c, CycloNum):
        return complex(c)
    return complex(float(RatQ.coerce(c).constant()))


def matrix_json(op: str, *, n: int | None = None, cutoff: int | None = None,
                numeric: bool = False, k: int | None = None, product: bool = False) -> dict:
    if op in ("a", "adag"):
        if n is None or not numeric:
            raise ValueError(f"{op} is the hermitian oscillator: needs -n and --numeric")
        mat = oscillator_a(n) if op == "a" else oscillator_adag(n)
        entries = [[[v.real, v.imag] for v in row] for row in mat]
        return {"n": n, "cutoff": n, "operator": op, "numeric": True, "entries": entries}
    if cutoff is None:
        cutoff = n if n is not None else 6
    rows = operator_matrix(op, cutoff, n=n, k=k, product=product)
    if numeric:
        if n is None:
            raise ValueError("--numeric needs -n (generic q has no numeric value)")
        entries = [[[_numeric_scalar(c).real, _numeric_scalar(c).imag] for c in row] for row in rows]
    else:
        entries = [[str(c) for c in row] for row in rows]
    return {"n": n, "cutoff": cutoff, "operator": op, "numeric": numeric, "entries": entries}
