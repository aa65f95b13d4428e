"""Evaluate parsed expressions in the generic algebra, the algebra at zeta_n,
or (for ``limit``) as unreduced scalar ratios."""

from __future__ import annotations

from .fsusy import FsElem, fs_D, fs_eps_bm, fs_graded_bracket, fs_theta_bm
from .gencalc import GradedElem, graded_bracket, qexp
from .limits import Ratio
from .parser import BinOp, Bracket, Call, Neg, Num, Pow, Sym
from .scalar import CycloNum, PoleAtRoot, Poly, RatQ, eval_at_root, qfact, qnum

GENERIC_SYMBOLS = ("theta", "eps", "D")
ROOT_SYMBOLS = ("z", "zeps", "theta", "eps", "dtheta", "dz", "D")


class EvalError(ValueError):
    def record(self) -> dict:
        return {"error": "EvalError", "message": str(self)}


def _scalar_of(value, n):
    """The scalar behind a grade-zero constant element, or None."""
    terms = value.terms
    if not terms:
        return RatQ() if n is None else CycloNum.rational(n, 0)
    if len(terms) == 1:
        (m, c), = terms.items()
        if not any(m):
            return c
    return None


def evaluate(node, n: int | None = None):
    """GradedElem when n is None, otherwise FsElem over Q(zeta_n)."""
    if n is None:
        return _Generic().eval(node)
    return _Root(n).eval(node)


class _Evaluator:
    symbols: tuple = ()

    def const(self, c):
        raise NotImplementedError

    def eval(self, node):
        if isinstance(node, Num):
            return self.const(node.value)
        if isinstance(node, Sym):
            if node.name == "q":
                return self.q()
            if node.name not in self.symbols:
                raise EvalError(f"{node.name} is not available in {self.mode} mode")
            return self.gen(node.name)
        if isinstance(node, Neg):
            return -self.eval(node.operand)
        if isinstance(node, Pow):
            return self.eval(node.base) ** node.exp
        if isinstance(node, BinOp):
            left, right = self.eval(node.left), self.eval(node.right)
            if node.op == "+":
                return left + right
            if node.op == "-":
                return left - right
            if node.op == "*":
                return left * right
            c = _scalar_of(right, self.n)
            if c is None:
                raise EvalError("division is only by scalars")
            if not c:
                if self.n is not None:
                    raise PoleAtRoot(f"division by a scalar vanishing at zeta_{self.n}", self.n)
                raise EvalError("division by zero")
            return left.scale(1 / c if isinstance(c, CycloNum) else c.inverse())
        if isinstance(node, Bracket):
            return self.bracket(self.eval(node.left), self.eval(node.right))
        if isinstance(node, Call):
            return self.call(node)
        raise EvalError(f"cannot evaluate {node!r}")

    def scalar_arg(self, node):
        c = _scalar_of(self.eval(node), self.n)
        if c is None:
            raise EvalError("expected a scalar argument")
        return c


class _Generic(_Evaluator):
    symbols = GENERIC_SYMBOLS
    mode = "generic"
    n = None

    def const(self, c):
        return GradedElem.scalar(c)

    def q(self):
        return GradedElem.scalar(RatQ.q())

    def gen(self, name):
        return GradedElem.gen(name)

    def bracket(self, a, b):
        return graded_bracket(a, b)

    def call(self, node: Call):
        if node.name == "qnum":
            return GradedElem.scalar(qnum(node.args[0]))
        if node.name == "qfact":
            return GradedElem.scalar(qfact(node.args[0]))
        if node.name == "be":
            base, m = node.args
            return (self.eval(base) ** m).scale(qfact(m).inverse())
        if node.name == "qexp":
            return qexp(self.scalar_arg(node.args[0]), node.args[1])
        raise EvalError(f"unknown function {node.name}")


class _Root(_Evaluator):
    symbols = ROOT_SYMBOLS
    mode = "root-of-unity"

    def __init__(self, n: int):
        self.n = n

    def const(self, c):
        return FsElem.scalar(self.n, c)

    def q(self):
        return FsElem.scalar(self.n, CycloNum.zeta(self.n))

    def gen(self, name):
        return fs_D(self.n) if name == "D" else FsElem.gen(self.n, name)

    def bracket(self, a, b):
        return fs_graded_bracket(a, b)

    def call(self, node: Call):
        n = self.n
        if node.name == "qnum":
            return FsElem.scalar(n, eval_at_root(qnum(node.args[0]), n))
        if node.name == "qfact":
            return FsElem.scalar(n, eval_at_root(qfact(node.args[0]), n))
        if node.name == "be":
            base, m = node.args
            # divided powers of theta and eps survive the limit as z^r/r! theta^(p)
            if base == Sym("theta"):
                return fs_theta_bm(m, n)
            if base == Sym("eps"):
                return fs_eps_bm(m, n)
            return (self.eval(base) ** m).scale(eval_at_root(qfact(m).inverse(), n))
        if node.name == "qexp":
            C = self.scalar_arg(node.args[0])
            out = FsElem(n)
            for m in range(node.args[1] + 1):
                out = out + fs_theta_bm(m, n).scale(C ** m)
            return out
        raise EvalError(f"unknown function {node.name}")


def scalar_ratio(node) -> Ratio:
    """Scalar expression as an unreduced num/den pair, keeping common factors."""
    if isinstance(node, Num):
        return Ratio.of(node.value)
    if isinstance(node, Sym):
        if node.name == "q":
            return Ratio(Poly((0, 1)), Poly.const(1))
        raise EvalError(f"{node.name} is not a scalar; limit takes expressions in q only")
    if isinstance(node, Neg):
        return -scalar_ratio(node.operand)
    if isinstance(node, Pow):
        return scalar_ratio(node.base) ** node.exp
    if isinstance(node, BinOp):
        left, right = scalar_ratio(node.left), scalar_ratio(node.right)
        if node.op == "+":
            return left + right
        if node.op == "-":
            return left - right
        if node.op == "*":
            return left * right
        if right.num.is_zero():
            raise EvalError("division by zero")
        return left / right
    if isinstance(node, Call) and node.name in ("qnum", "qfact"):
        return Ratio.of((qnum if node.name == "qnum" else qfact)(node.args[0]))
    raise EvalError("limit takes scalar expressions in q only")

