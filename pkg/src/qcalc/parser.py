"""Expression language for the command line.

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := '-' unary | power
    power  := atom ('^' INT)?
    atom   := INT | NAME | NAME '(' args ')' | '(' expr ')' | '[' expr ',' expr ']'

Multiplication is always explicit. Error offsets are 1-based byte positions
in the UTF-8 encoding of the input.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

SYMBOLS = ("q", "theta", "eps", "D", "z", "zeps", "dtheta", "dz")
# name -> argument kinds; "int" must be a nonnegative integer literal
FUNCTIONS = {
    "qnum": ("int",),
    "qfact": ("int",),
    "be": ("expr", "int"),
    "qexp": ("expr", "int"),
}
_PUNCT = set("+-*/^()[],")


class ParseError(ValueError):
    def __init__(self, message: str, offset: int, expected: set[str] | frozenset = frozenset()):
        self.offset = offset
        self.expected = frozenset(expected)
        detail = f" (expected one of: {', '.join(sorted(self.expected))})" if self.expected else ""
        super().__init__(f"syntax error at offset {offset}: {message}{detail}")

    def record(self) -> dict:
        return {"error": "ParseError", "offset": self.offset,
                "expected": sorted(self.expected), "message": str(self)}


@dataclass(frozen=True)
class Num:
    value: int


@dataclass(frozen=True)
class Sym:
    name: str


@dataclass(frozen=True)
class Neg:
    operand: "Expr"


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Pow:
    base: "Expr"
    exp: int


@dataclass(frozen=True)
class Bracket:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Call:
    name: str
    args: tuple


Expr = Union[Num, Sym, Neg, BinOp, Pow, Bracket, Call]


@dataclass
class Token:
    kind: str  # "int", "name", "op", "eof"
    text: str
    offset: int  # 1-based byte offset


def tokenize(text: str) -> list[Token]:
    tokens = []
    i, byte = 0, 1
    while i < len(text):
        c = text[i]
        width = len(c.encode("utf-8"))
        if c.isspace():
            i, byte = i + 1, byte + width
            continue
        if c == "−":
            c = "-"
        if c in _PUNCT:
            tokens.append(Token("op", c, byte))
            i, byte = i + 1, byte + width
            continue
        if c.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            tokens.append(Token("int", text[i:j], byte))
            byte += j - i
            i = j
            continue
        if c.isalpha() or c == "_":
            j = i
            while j < len(text) and (text[j].isalnum() or text[j] == "_"):
                j += 1
            word = text[i:j]
            tokens.append(Token("name", word, byte))
            byte += len(word.encode("utf-8"))
            i = j
            continue
        raise ParseError(f"unexpected character {c!r}", byte)
    tokens.append(Token("eof", "", byte))
    return tokens


_ATOM_START = {"integer", "name", "(", "[", "-"}


class _Parser:
    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.pos = 0

    @property
    def tok(self) -> Token:
        return self.tokens[self.pos]

    def advance(self) -> Token:
        t = self.tok
        self.pos += 1
        return t

    def expect_op(self, op: str) -> Token:
        if self.tok.kind == "op" and self.tok.text == op:
            return self.advance()
        raise self.error({op})

    def error(self, expected) -> ParseError:
        t = self.tok
        what = "end of input" if t.kind == "eof" else repr(t.text)
        return ParseError(f"unexpected {what}", t.offset, expected)

    def at_op(self, *ops: str) -> bool:
        return self.tok.kind == "op" and self.tok.text in ops

    def parse(self) -> Expr:
        node = self.expr()
        if self.tok.kind != "eof":
            raise self.error({"+", "-", "*", "/", "^", "end of input"})
        return node

    def expr(self) -> Expr:
        node = self.term()
        while self.at_op("+", "-"):
            op = self.advance().text
            node = BinOp(op, node, self.term())
        return node

    def term(self) -> Expr:
        node = self.unary()
        while self.at_op("*", "/"):
            op = self.advance().text
            node = BinOp(op, node, self.unary())
        return node

    def unary(self) -> Expr:
        if self.at_op("-"):
            self.advance()
            return Neg(self.unary())
        return self.power()

    def power(self) -> Expr:
        node = self.atom()
        if self.at_op("^"):
            self.advance()
            node = Pow(node, self.integer())
        return node

    def integer(self) -> int:
        if self.tok.kind != "int":
            raise self.error({"integer"})
        return int(self.advance().text)

    def atom(self) -> Expr:
        t = self.tok
        if t.kind == "int":
            self.advance()
            return Num(int(t.text))
        if t.kind == "name":
            self.advance()
            if t.text in FUNCTIONS:
                return self.call(t)
            if t.text in SYMBOLS:
                return Sym(t.text)
            raise ParseError(f"unknown name {t.text!r}", t.offset, set(SYMBOLS) | set(FUNCTIONS))
        if self.at_op("("):
            self.advance()
            node = self.expr()
            self.expect_op(")")
            return node
        if self.at_op("["):
            self.advance()
            left = self.expr()
            self.expect_op(",")
            right = self.expr()
            self.expect_op("]")
            return Bracket(left, right)
        raise self.error(_ATOM_START)

    def call(self, name_tok: Token) -> Call:
        kinds = FUNCTIONS[name_tok.text]
        self.expect_op("(")
        args = []
        for i, kind in enumerate(kinds):
            if i:
                self.expect_op(",")
            args.append(self.integer() if kind == "int" else self.expr())
        self.expect_op(")")
        return Call(name_tok.text, tuple(args))


def parse(text: str) -> Expr:
    return _Parser(text).parse()


# -- printer ----------------------------------------------------------------------

_PREC = {"+": 1, "-": 1, "*": 2, "/": 2}


def _prec(node: Expr) -> int:
    if isinstance(node, BinOp):
        return _PREC[node.op]
    if isinstance(node, Neg):
        return 3
    if isinstance(node, Pow):
        return 4
    return 5


def to_text(node: Expr) -> str:
    """Canonical text; reparses to a structurally identical tree."""
    if isinstance(node, Num):
        return str(node.value)
    if isinstance(node, Sym):
        return node.name
    if isinstance(node, Neg):
        inner = to_text(node.operand)
        # "--x" would also reparse, but keep nested negation readable
        return f"-({inner})" if _prec(node.operand) < 3 or isinstance(node.operand, Neg) else f"-{inner}"
    if isinstance(node, Pow):
        base = to_text(node.base)
        if _prec(node.base) < 5:
            base = f"({base})"
        return f"{base}^{node.exp}"
    if isinstance(node, BinOp):
        p = _PREC[node.op]
        left, right = to_text(node.left), to_text(node.right)
        if _prec(node.left) < p:
            left = f"({left})"
        if _prec(node.right) <= p:
            right = f"({right})"
        return f"{left} {node.op} {right}"
    if isinstance(node, Bracket):
        return f"[{to_text(node.left)}, {to_text(node.right)}]"
    if isinstance(node, Call):
        args = ", ".join(str(a) if isinstance(a, int) else to_text(a) for a in node.args)
        return f"{node.name}({args})"
    raise TypeError(f"not an expression node: {node!r}")
