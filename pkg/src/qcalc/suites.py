"""Verification suites reachable from ``qcalc verify``.

Each suite returns a list of ``Check`` records; randomized suites draw from a
``random.Random`` seeded by ``QCALC_SEED`` (default 1996) so runs are repeatable.
"""

from __future__ import annotations

import os
import random
import time
from dataclasses import asdict, dataclass
from fractions import Fraction

from .fsusy import (
    DZ,
    FS_GENERATORS,
    FsElem,
    fs_D,
    fs_D_power,
    fs_graded_bracket,
    fs_normal_order,
    fs_theta_bm,
    fs_word_product,
    fsusy_transform_check,
)
from .gencalc import (
    D,
    EPS,
    THETA,
    GradedElem,
    Monomial,
    gamma,
    graded_bracket,
    identity_eq15,
    normal_order,
    translate_check,
    word_product,
)
from .limits import lemma_suite, qexp_factorization_check
from .representation import (
    Ket,
    act,
    act_element,
    act_product,
    defcr_check_exact,
    defcr_check_numeric,
    ket_limit,
    reduce_ket,
    similarity_residuals,
)
from .scalar import CycloNum, RatQ, qfact, qnum

DEFAULT_SEED = 1996


def seed_from_env() -> int:
    return int(os.environ.get("QCALC_SEED", DEFAULT_SEED))


@dataclass
class Check:
    suite: str
    name: str
    passed: bool
    detail: str = ""
    seconds: float = 0.0

    def as_dict(self) -> dict:
        return asdict(self)


# -- random inputs -----------------------------------------------------------------

def random_ratq(rng: random.Random) -> RatQ:
    q = RatQ.q()
    pool = [RatQ(1), RatQ(-1), RatQ(2), RatQ(Fraction(1, 2)), q, q.inverse(),
            q + 1, (q + 1).inverse(), q * q - 3, (q - 2) / (q * q + 1)]
    return rng.choice(pool)


def random_cyclo(rng: random.Random, n: int) -> CycloNum:
    coeffs = [rng.randint(-2, 2) for _ in range(rng.randint(1, 3))]
    c = CycloNum(n, coeffs)
    return c if c else CycloNum.rational(n, 1)


def random_generic_word(rng: random.Random, max_len: int = 8) -> list:
    word = []
    for _ in range(rng.randint(1, max_len)):
        if rng.random() < 0.15:
            word.append(random_ratq(rng))
        else:
            word.append(rng.choice((THETA, EPS, D, D)))
    return word


def random_fs_word(rng: random.Random, n: int, max_len: int = 8) -> list:
    letters = FS_GENERATORS + ("D",)
    word = []
    for _ in range(rng.randint(1, max_len)):
        if rng.random() < 0.15:
            word.append(random_cyclo(rng, n))
        else:
            word.append(rng.choice(letters))
    return word


def random_pure_grade(rng: random.Random, grade: int, max_exp: int = 3) -> GradedElem:
    terms = {}
    for _ in range(rng.randint(1, 3)):
        while True:
            a, e = rng.randint(0, max_exp), rng.randint(0, max_exp)
            b = a + e - grade
            if 0 <= b <= max_exp:
                break
        terms[Monomial(a, e, b)] = random_ratq(rng)
    out = GradedElem(terms)
    return out if out else GradedElem({Monomial(max(grade, 0), 0, max(-grade, 0)): 1})


# -- suites ----------------------------------------------------------------------------

def _timed(suite, name, fn) -> Check:
    t0 = time.perf_counter()
    passed, detail = fn()
    return Check(suite, name, bool(passed), detail, time.perf_counter() - t0)


def suite_eq15(r_max: int = 12, **_) -> list[Check]:
    def run():
        bad = [r for r in range(1, r_max + 1) if not identity_eq15(r)]
        return not bad, f"r=1..{r_max}" + (f" failing {bad}" if bad else "")
    return [_timed("eq15", "number-operator identity", run)]


def suite_lemmas(r_max: int = 4, ns=(3, 5, 7), **_) -> list[Check]:
    out = []
    for n in ns:
        def run(n=n):
            recs = lemma_suite(n, r_max)
            bad = [(r.name, r.r) for r in recs if not r.passed]
            return not bad, f"{len(recs)} records" + (f", failing {bad}" if bad else "")
        out.append(_timed("lemmas", f"n={n} r<={r_max}", run))
    return out


def suite_expfact(cases=((1, 3, 2), (2, 3, 2), (1, 5, 1), (3, 5, 1)), **_) -> list[Check]:
    return [_timed("expfact", f"C={C} n={n} r_max={r}", lambda C=C, n=n, r=r: (qexp_factorization_check(C, n, r), ""))
            for C, n, r in cases]


def _generic_confluent(word, rng) -> bool:
    left = normal_order(word, "left")
    if normal_order(word, "right") != left or word_product(word) != left:
        return False
    k = rng.randint(0, len(word))
    return word_product(word[:k]) * word_product(word[k:]) == left


def _fs_confluent(word, n, rng) -> bool:
    left = fs_normal_order(word, n, "left")
    if fs_normal_order(word, n, "right") != left or fs_word_product(word, n) != left:
        return False
    k = rng.randint(0, len(word))
    return fs_word_product(word[:k], n) * fs_word_product(word[k:], n) == left


def suite_confluence(generic: int = 500, fs: int = 300, seed: int | None = None, **_) -> list[Check]:
    rng = random.Random(seed_from_env() if seed is None else seed)

    def run_generic():
        bad = [w for w in (random_generic_word(rng) for _ in range(generic)) if not _generic_confluent(w, rng)]
        return not bad, f"{generic} words" + (f", first failure {bad[0]}" if bad else "")

    def run_fs():
        bad = []
        for _ in range(fs):
            n = rng.choice((3, 5))
            w = random_fs_word(rng, n)
            if not _fs_confluent(w, n, rng):
                bad.append((n, w))
        return not bad, f"{fs} words" + (f", first failure {bad[0]}" if bad else "")

    return [_timed("confluence", "generic words", run_generic), _timed("confluence", "root-of-unity words", run_fs)]


def leibniz_holds(A: GradedElem, B: GradedElem, C: GradedElem) -> tuple[bool, bool]:
    gA, gB, gC = A.pure_grade(), B.pure_grade(), C.pure_grade()
    left = graded_bracket(A * B, C)
    left_rhs = A * graded_bracket(B, C) + (graded_bracket(A, C) * B).scale(gamma(gB, gC))
    right = graded_bracket(A, B * C)
    right_rhs = graded_bracket(A, B) * C + (B * graded_bracket(A, C)).scale(gamma(gA, gB))
    return left == left_rhs, right == right_rhs


def suite_leibniz(count: int = 100, seed: int | None = None, **_) -> list[Check]:
    rng = random.Random(seed_from_env() if seed is None else seed)

    def run():
        fails = 0
        for _ in range(count):
            A, B, C = (random_pure_grade(rng, rng.randint(-2, 2)) for _ in range(3))
            lft, rgt = leibniz_holds(A, B, C)
            fails += (not lft) + (not rgt)
        return fails == 0, f"{count} triples, {fails} failing identities"

    return [_timed("leibniz", "both graded Leibniz rules", run)]


def suite_structure(ns=(3, 5), **_) -> list[Check]:
    out = []
    for n in ns:
        def bracket(n=n):
            ok = fs_graded_bracket(fs_D(n), FsElem.gen(n, "z")) == fs_theta_bm(n - 1, n)
            return ok, "[D, z] = theta^(n-1)"

        def power(n=n):
            dz = FsElem.gen(n, DZ)
            product = fs_D_power(n, n)
            rewritten = fs_normal_order(["D"] * n, n)
            residue = product - dz
            return product == dz and rewritten == dz, "D^n - dz = " + str(residue)

        out.append(_timed("structure", f"n={n} [D,z]", bracket))
        out.append(_timed("structure", f"n={n} D^n", power))
    return out


def suite_fsusy(ns=(3, 5), r_max: int = 2, **_) -> list[Check]:
    return [_timed("fsusy", f"n={n} zeps-order {r_max}", lambda n=n: (fsusy_transform_check(n, r_max), ""))
            for n in ns]


def suite_repr(m_max: int = 30, r_max: int = 12, **_) -> list[Check]:
    q = RatQ.q()

    def commutator():
        for m in range(m_max + 1):
            k = Ket.basis(m)
            if act("D", act("theta", k)) - act("theta", act("D", k)).scale(q) != k:
                return False, f"m={m}"
        return True, f"m<={m_max}"

    def q_power_N():
        from .gencalc import qN
        for m in range(m_max + 1):
            k = Ket.basis(m)
            lhs = act("D", act("theta", k)) - act("theta", act("D", k))
            want = k.scale(q ** m)
            if lhs != want or act("qN", k) != want or act_element(qN(), k) != want:
                return False, f"m={m}"
        return True, f"m<={m_max}"

    def number_operator():
        for r in range(r_max + 1):
            k = Ket.basis(r)
            if act("theta", act("D", k)) != k.scale(qnum(r)):
                return False, f"theta D on |{r}>"
            for m in range(r + 1):
                v = k
                for _ in range(m):
                    v = act("D", v)
                for _ in range(m):
                    v = act("theta", v)
                if v != k.scale(qfact(r) / qfact(r - m)):
                    return False, f"theta^{m} D^{m} on |{r}>"
        return True, f"m<=r<={r_max}"

    def divided_power():
        for n in range(1, 8):
            for m in range(11):
                v = Ket.basis(m)
                for _ in range(n):
                    v = act("theta", v)
                by_steps = v.scale(qfact(n).inverse())
                formula = Ket({m + n: qfact(m + n) / (qfact(m) * qfact(n))})
                if act("theta_bm", Ket.basis(m), k=n) != formula or by_steps != formula:
                    return False, f"n={n} m={m}"
        return True, "m<=10, n<=7"

    return [_timed("repr", name, fn) for name, fn in
            (("D theta - q theta D = 1", commutator), ("q^N = D theta - theta D", q_power_N),
             ("theta^m D^m = [N]!/[N-m]!", number_operator), ("theta^(n) coefficients", divided_power))]


def suite_product(ns=(3, 5), ops=("theta", "dtheta", "D"), **_) -> list[Check]:
    out = []
    for n in ns:
        def run(n=n):
            for m in range(3 * n + 1):
                for op in ops:
                    generic = ket_limit(act(op, Ket.basis(m), n=n), n)
                    if reduce_ket(generic, n) != act_product(op, reduce_ket(Ket.basis(m, n), n)):
                        return False, f"op={op} m={m}"
            return True, f"ops {ops}, m<={3 * n}"
        out.append(_timed("product", f"n={n} intertwining", run))
    return out


def suite_defcr(cutoff: int = 10, tol: float = 1e-12, **_) -> list[Check]:
    def exact():
        rep = defcr_check_exact(cutoff)
        return rep["pass"], f"generic q, cutoff {cutoff}"

    def numeric():
        worst = 0.0
        for n in range(3, 14, 2):
            d = defcr_check_numeric(n)
            worst = max(worst, d["residual_upper"], d["residual_lower"])
        return worst < tol, f"max residual {worst:.3e} for odd n<=13"

    def adjoint():
        worst, positive = 0.0, True
        for n in range(3, 14, 2):
            d = defcr_check_numeric(n)
            worst = max(worst, d["adjoint_residual"])
            positive &= d["positive"]
        return worst < tol and positive, f"max |a^+ - a^H| {worst:.3e}"

    def similarity():
        worst = max(max(similarity_residuals(n).values()) for n in range(3, 14, 2))
        return worst < 1e-10, f"max residual {worst:.3e}"

    return [_timed("defcr", name, fn) for name, fn in
            (("exact generic", exact), ("numeric hermitian", numeric),
             ("adjointness", adjoint), ("diagonal intertwiner", similarity))]


def suite_translate(k_max: int = 3, **_) -> list[Check]:
    return [_timed("translate", f"eps-order {k}", lambda k=k: (translate_check(k), "")) for k in range(1, k_max + 1)]


SUITES = {
    "eq15": suite_eq15,
    "lemmas": suite_lemmas,
    "expfact": suite_expfact,
    "confluence": suite_confluence,
    "leibniz": suite_leibniz,
    "structure": suite_structure,
    "fsusy": suite_fsusy,
    "repr": suite_repr,
    "product": suite_product,
    "defcr": suite_defcr,
    "translate": suite_translate,
}


def run_suite(name: str, r_max: int | None = None) -> list[Check]:
    names = list(SUITES) if name == "all" else [name]
    out = []
    for s in names:
        if s not in SUITES:
            raise KeyError(s)
        kwargs = {"r_max": r_max} if r_max is not None and s in ("eq15", "lemmas") else {}
        out.extend(SUITES[s](**kwargs))
    return out
