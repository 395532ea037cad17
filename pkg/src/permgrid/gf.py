"""Closed-form generating functions expanded with exact series arithmetic.

Expressions use ``z``, rational constants, ``+ - * /``, integer powers
``^`` and ``sqrt``, e.g. ``(1+z-sqrt(1-6*z+5*z^2))/(2*z*(2-z))``.
Division by a series with a zero constant term is allowed when the
numerator vanishes to the same order (a removable ``z^k`` factor).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .grammar import CLASS_GRAMMARS, builtin_grammar, residuals, solve_series
from .series import SeriesError, TruncatedSeries

CLOSED_FORMS = {
    "A": "(1+z-sqrt(1-6*z+5*z^2))/(2*z*(2-z))",
    "B": "-(1-sqrt(1-4*z)+z*(-4+sqrt(1-4*z)+sqrt(1-5*z)/sqrt(1-z)))/(2*z^2)",
}

# Obtained by eliminating m, b, c and the decorated Catalan series from the
# class C system; not a printed formula.
DERIVED_CLOSED_FORMS = {
    "C": "(1+3*sqrt(1-4*z)+sqrt(1-5*z)/sqrt(1-z)-sqrt(1-4*z)*sqrt(1-5*z)/sqrt(1-z))"
         "/(2*(sqrt(1-4*z)+z+sqrt(1-6*z+5*z^2)))",
}


class ExpressionError(ValueError):
    pass


# --------------------------------------------------------------------------
# expression trees


@dataclass(frozen=True)
class Node:
    op: str                   # const, z, add, sub, mul, div, neg, pow, sqrt
    args: tuple = ()
    value: Fraction | int = 0

    def __str__(self) -> str:
        return _render(self, 0)


_PREC = {"add": 1, "sub": 1, "mul": 2, "div": 2, "neg": 3, "pow": 4}


def _render(node: Node, parent: int) -> str:
    op = node.op
    if op == "const":
        text = str(node.value)
        return f"({text})" if "/" in text and parent >= 2 else text
    if op == "z":
        return "z"
    if op == "sqrt":
        return f"sqrt({_render(node.args[0], 0)})"
    p = _PREC[op]
    if op == "neg":
        text = "-" + _render(node.args[0], p)
    elif op == "pow":
        text = f"{_render(node.args[0], p + 1)}^{node.value}"
    else:
        sym = {"add": "+", "sub": "-", "mul": "*", "div": "/"}[op]
        # right operand of - and / binds tighter
        right = p + 1 if op in ("sub", "div") else p
        text = f"{_render(node.args[0], p)}{sym}{_render(node.args[1], right)}"
    return f"({text})" if p < parent else text


_TOKEN = re.compile(r"\s*(?:(\d+(?:\.\d+)?)|(sqrt|z)|(.))")


def _tokenize(text: str) -> list[str]:
    pos, out = 0, []
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            break
        tok = m.group(1) or m.group(2) or m.group(3)
        if tok.strip():
            out.append(tok)
        pos = m.end()
    return out


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else None

    def take(self, expected: str | None = None) -> str:
        tok = self.peek()
        if tok is None or (expected is not None and tok != expected):
            raise ExpressionError(f"expected {expected or 'token'}, got {tok!r}")
        self.i += 1
        return tok

    def parse(self) -> Node:
        node = self.expr()
        if self.peek() is not None:
            raise ExpressionError(f"unexpected token {self.peek()!r}")
        return node

    def expr(self) -> Node:
        node = self.term()
        while self.peek() in ("+", "-"):
            op = "add" if self.take() == "+" else "sub"
            node = Node(op, (node, self.term()))
        return node

    def term(self) -> Node:
        node = self.unary()
        while self.peek() in ("*", "/"):
            op = "mul" if self.take() == "*" else "div"
            node = Node(op, (node, self.unary()))
        return node

    def unary(self) -> Node:
        if self.peek() == "-":
            self.take()
            return Node("neg", (self.unary(),))
        if self.peek() == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self) -> Node:
        node = self.atom()
        if self.peek() == "^":
            self.take()
            exp = self.take()
            if not exp.isdigit():
                raise ExpressionError(f"exponent must be a nonnegative integer, got {exp!r}")
            node = Node("pow", (node,), int(exp))
        return node

    def atom(self) -> Node:
        tok = self.take()
        if tok == "(":
            node = self.expr()
            self.take(")")
            return node
        if tok == "z":
            return Node("z")
        if tok == "sqrt":
            self.take("(")
            node = self.expr()
            self.take(")")
            return Node("sqrt", (node,))
        if re.fullmatch(r"\d+(\.\d+)?", tok):
            return Node("const", (), Fraction(tok))
        raise ExpressionError(f"unexpected token {tok!r}")


def parse_expr(text: str) -> Node:
    return _Parser(text).parse()


# --------------------------------------------------------------------------
# evaluation


def _eval(node: Node, prec: int) -> TruncatedSeries:
    op = node.op
    if op == "const":
        return TruncatedSeries.constant(node.value, prec)
    if op == "z":
        return TruncatedSeries.z(prec)
    if op == "neg":
        return -_eval(node.args[0], prec)
    if op == "add":
        return _eval(node.args[0], prec) + _eval(node.args[1], prec)
    if op == "sub":
        return _eval(node.args[0], prec) - _eval(node.args[1], prec)
    if op == "mul":
        return _eval(node.args[0], prec) * _eval(node.args[1], prec)
    if op == "pow":
        return _eval(node.args[0], prec) ** node.value
    if op == "sqrt":
        return _eval(node.args[0], prec).sqrt()
    if op == "div":
        den = _eval(node.args[1], prec)
        k = den.valuation()
        if k is None:
            raise SeriesError(f"division by a series that vanishes to order {prec}")
        if k:
            den = _eval(node.args[1], prec + k).shift_down(k)
            num = _eval(node.args[0], prec + k).shift_down(k)
        else:
            num = _eval(node.args[0], prec)
        return num / den
    raise ExpressionError(f"unknown node {op!r}")


class SeriesExpr:
    """A parsed closed-form expression in ``z``."""

    def __init__(self, text: str | Node):
        self.tree = parse_expr(text) if isinstance(text, str) else text

    def __str__(self) -> str:
        return str(self.tree)

    def __repr__(self) -> str:
        return f"SeriesExpr({str(self)!r})"

    def expand(self, order: int) -> TruncatedSeries:
        return expand(self, order)


def expand(expr: SeriesExpr | str, order: int, counting: bool = False) -> TruncatedSeries:
    """Exact coefficients up to ``z^order``.

    With ``counting=True`` the coefficients must be nonnegative integers and
    are returned as ints.
    """
    if isinstance(expr, str):
        expr = SeriesExpr(expr)
    out = _eval(expr.tree, order)
    if counting:
        out = out.to_integers()
        if any(c < 0 for c in out):
            raise SeriesError("counting series has a negative coefficient")
    return out


def closed_form(label: str, derived: bool = False) -> SeriesExpr:
    if label in CLOSED_FORMS:
        return SeriesExpr(CLOSED_FORMS[label])
    if derived and label in DERIVED_CLOSED_FORMS:
        return SeriesExpr(DERIVED_CLOSED_FORMS[label])
    raise KeyError(
        f"no closed form for class {label}; use verify_algebraic to check it"
    )


def verify_algebraic(label: str, order: int) -> bool:
    """The grammar-solved series of a class satisfy its polynomial system
    with zero residual up to ``z^order``."""
    g = builtin_grammar(CLASS_GRAMMARS.get(label, label))
    values = solve_series(g, order)
    return all(not any(r) for r in residuals(g, values, order).values())
