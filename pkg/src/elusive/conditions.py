"""Parser and evaluator for the congruence conditions in the case tables.

Grammar (ASCII; '±' may also be written '+-')::

    expr    := term ('|' term)*
    term    := atom ('&' atom)*
    atom    := 'true' | 'false'
             | 'legendre(' arith ',' arith ')' rel arith
             | arith rel signed (',' signed)* '(' arith ')'     congruence
             | arith cmp arith                                  comparison
    signed  := ['±'] arith
    rel     := '=' | '!='
    cmp     := rel | '<' | '<=' | '>' | '>='
    arith   := sum of products of powers of ints, variables, gcd(a, b)
               and parenthesised arith; '5e' abbreviates 5*e, '/' is exact
               integer division

A congruence holds when the left side is congruent to one of the listed
values (= form) or to none of them (!= form).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from math import gcd

from .numth import legendre

__all__ = ["ConditionError", "CongruenceExpr", "parse_condition", "eval_condition",
           "parse_arith", "eval_arith", "free_symbols"]


class ConditionError(ValueError):
    pass


_TOKEN = re.compile(r"\s*(?:(\d+)(e)?(?![A-Za-z0-9_])|([A-Za-z_][A-Za-z0-9_]*)|(!=|<=|>=|\+-|±|[-+*/^(),=<>&|]))")


def _tokens(text: str) -> list[str]:
    out, pos = [], 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ConditionError(f"bad character at {pos} in {text!r}")
        num, scaled, name, op = m.groups()
        if num is not None:
            out.append(num)
            if scaled:
                out += ["*", "e"]
        else:
            out.append(name or ("±" if op == "+-" else op))
        pos = m.end()
        while pos < len(text) and text[pos].isspace():
            pos += 1
    return out


# arithmetic nodes -----------------------------------------------------------

@dataclass(frozen=True)
class Num:
    value: int


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class BinOp:
    op: str
    left: object
    right: object


@dataclass(frozen=True)
class Neg:
    arg: object


@dataclass(frozen=True)
class Call:
    name: str
    args: tuple


# boolean nodes --------------------------------------------------------------

@dataclass(frozen=True)
class Const:
    value: bool


@dataclass(frozen=True)
class Congruence:
    lhs: object
    negated: bool
    values: tuple  # of (arith, plus_minus)
    modulus: object


@dataclass(frozen=True)
class Compare:
    lhs: object
    op: str
    rhs: object


@dataclass(frozen=True)
class Legendre:
    top: object
    prime: object
    op: str
    rhs: object


@dataclass(frozen=True)
class BoolOp:
    op: str  # "&" or "|"
    args: tuple


@dataclass(frozen=True)
class CongruenceExpr:
    source: str
    tree: object

    def __call__(self, **env) -> bool:
        return eval_condition(self, env)

    def __str__(self):
        return self.source


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = _tokens(text)
        self.i = 0

    def peek(self, k=0):
        j = self.i + k
        return self.toks[j] if j < len(self.toks) else None

    def take(self, want=None):
        tok = self.peek()
        if tok is None or (want is not None and tok != want):
            raise ConditionError(f"expected {want or 'token'} at token {self.i} in {self.text!r}")
        self.i += 1
        return tok

    def done(self):
        if self.peek() is not None:
            raise ConditionError(f"trailing input {self.toks[self.i:]} in {self.text!r}")

    # boolean layer
    def expr(self):
        args = [self.term()]
        while self.peek() == "|":
            self.take()
            args.append(self.term())
        return args[0] if len(args) == 1 else BoolOp("|", tuple(args))

    def term(self):
        args = [self.atom()]
        while self.peek() == "&":
            self.take()
            args.append(self.atom())
        return args[0] if len(args) == 1 else BoolOp("&", tuple(args))

    def atom(self):
        tok = self.peek()
        if tok in ("true", "false"):
            self.take()
            return Const(tok == "true")
        if tok == "legendre" and self.peek(1) == "(":
            self.take()
            self.take("(")
            top = self.arith()
            self.take(",")
            prime = self.arith()
            self.take(")")
            op = self.take()
            if op not in ("=", "!="):
                raise ConditionError(f"legendre needs = or != in {self.text!r}")
            return Legendre(top, prime, op, self.arith())
        lhs = self.arith()
        op = self.take()
        if op not in ("=", "!=", "<", "<=", ">", ">="):
            raise ConditionError(f"expected a relation, got {op!r} in {self.text!r}")
        values = [self.signed()]
        while self.peek() == ",":
            self.take()
            values.append(self.signed())
        if self.peek() == "(":
            if op not in ("=", "!="):
                raise ConditionError(f"congruence needs = or != in {self.text!r}")
            self.take("(")
            mod = self.arith()
            self.take(")")
            return Congruence(lhs, op == "!=", tuple(values), mod)
        if len(values) > 1 or values[0][1]:
            raise ConditionError(f"value lists and ± need a modulus in {self.text!r}")
        return Compare(lhs, op, values[0][0])

    def signed(self):
        pm = self.peek() == "±"
        if pm:
            self.take()
        return (self.arith(), pm)

    # arithmetic layer
    def arith(self):
        node = self.product()
        while self.peek() in ("+", "-"):
            op = self.take()
            node = BinOp(op, node, self.product())
        return node

    def product(self):
        node = self.unary()
        while self.peek() in ("*", "/"):
            op = self.take()
            node = BinOp(op, node, self.unary())
        return node

    def unary(self):
        if self.peek() == "-":
            self.take()
            return Neg(self.unary())
        return self.power()

    def power(self):
        base = self.primary()
        if self.peek() == "^":
            self.take()
            return BinOp("^", base, self.unary())
        return base

    def primary(self):
        tok = self.take()
        if tok.isdigit():
            return Num(int(tok))
        if tok == "(":
            node = self.arith()
            self.take(")")
            return node
        if re.fullmatch(r"[A-Za-z_]\w*", tok):
            if tok == "gcd" and self.peek() == "(":
                self.take()
                args = [self.arith()]
                while self.peek() == ",":
                    self.take()
                    args.append(self.arith())
                self.take(")")
                return Call(tok, tuple(args))
            return Var(tok)
        raise ConditionError(f"unexpected {tok!r} in {self.text!r}")


def parse_condition(text: str) -> CongruenceExpr:
    parser = _Parser(text)
    tree = parser.expr()
    parser.done()
    return CongruenceExpr(text, tree)


def parse_arith(text: str):
    parser = _Parser(text)
    tree = parser.arith()
    parser.done()
    return tree


def eval_arith(node, env: dict) -> int:
    if isinstance(node, str):
        node = parse_arith(node)
    if isinstance(node, Num):
        return node.value
    if isinstance(node, Var):
        if node.name not in env:
            raise ConditionError(f"unbound symbol {node.name!r}")
        return int(env[node.name])
    if isinstance(node, Neg):
        return -eval_arith(node.arg, env)
    if isinstance(node, Call):
        return gcd(*(eval_arith(a, env) for a in node.args))
    a, b = eval_arith(node.left, env), eval_arith(node.right, env)
    if node.op == "+":
        return a + b
    if node.op == "-":
        return a - b
    if node.op == "*":
        return a * b
    if node.op == "/":
        if b == 0 or a % b:
            raise ConditionError(f"{a}/{b} is not an exact division")
        return a // b
    if b < 0:
        raise ConditionError("negative exponent")
    return a**b


_CMP = {
    "=": lambda a, b: a == b, "!=": lambda a, b: a != b, "<": lambda a, b: a < b,
    "<=": lambda a, b: a <= b, ">": lambda a, b: a > b, ">=": lambda a, b: a >= b,
}


def _eval(node, env) -> bool:
    if isinstance(node, Const):
        return node.value
    if isinstance(node, BoolOp):
        results = [_eval(a, env) for a in node.args]  # evaluate all: unbound symbols always surface
        return all(results) if node.op == "&" else any(results)
    if isinstance(node, Compare):
        return _CMP[node.op](eval_arith(node.lhs, env), eval_arith(node.rhs, env))
    if isinstance(node, Legendre):
        val = legendre(eval_arith(node.top, env), eval_arith(node.prime, env))
        return _CMP[node.op](val, eval_arith(node.rhs, env))
    m = eval_arith(node.modulus, env)
    if m <= 0:
        raise ConditionError("modulus must be positive")
    lhs = eval_arith(node.lhs, env) % m
    hit = False
    for value, pm in node.values:
        v = eval_arith(value, env)
        hit |= lhs == v % m or (pm and lhs == -v % m)
    return hit != node.negated


def eval_condition(expr, env: dict) -> bool:
    """Evaluate a condition (text or parsed) under the bindings env."""
    if isinstance(expr, str):
        expr = parse_condition(expr)
    return _eval(expr.tree, env)


def free_symbols(expr) -> set[str]:
    if isinstance(expr, str):
        expr = parse_condition(expr)
    out: set[str] = set()

    def walk(node):
        if isinstance(node, Var):
            out.add(node.name)
        elif isinstance(node, tuple):
            for x in node:
                walk(x)
        elif hasattr(node, "__dataclass_fields__"):
            for name in node.__dataclass_fields__:
                walk(getattr(node, name))

    walk(expr.tree)
    return out
