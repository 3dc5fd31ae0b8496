"""Univariate expression parser and the built-in test functions.

Grammar: + - * / ^ (right-associative), unary minus, the functions
sin cos tan log exp sqrt abs, the constant pi, numeric literals, and the
variable x.  Precedence from loosest to tightest: + -, * /, unary -, ^.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

import numpy as np

_FUNCTIONS = ("sin", "cos", "tan", "log", "exp", "sqrt", "abs")


class ParseError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class EvalDomainError(ValueError):
    """Evaluation left the mathematical domain (log, sqrt, division)."""


# AST nodes are plain tuples:
#   ("num", value) ("x",) ("pi",) ("neg", expr)
#   ("bin", op, left, right) ("call", name, expr)
Node = tuple


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    pos: int


def _tokenize(source: str):
    tokens = []
    i = 0
    n = len(source)
    while i < n:
        ch = source[i]
        if ch.isspace():
            i += 1
            continue
        if ch in "+-*/^()":
            tokens.append(Token(ch, ch, i))
            i += 1
            continue
        if ch.isdigit() or ch == ".":
            j = i
            while j < n and (source[j].isdigit() or source[j] == "."):
                j += 1
            if j < n and source[j] in "eE":
                k = j + 1
                if k < n and source[k] in "+-":
                    k += 1
                if k < n and source[k].isdigit():
                    j = k
                    while j < n and source[j].isdigit():
                        j += 1
            text = source[i:j]
            try:
                float(text)
            except ValueError:
                raise ParseError(f"bad numeric literal {text!r}", i)
            tokens.append(Token("num", text, i))
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (source[j].isalnum() or source[j] == "_"):
                j += 1
            tokens.append(Token("ident", source[i:j], i))
            i = j
            continue
        raise ParseError(f"unexpected character {ch!r}", i)
    tokens.append(Token("end", "", n))
    return tokens


class _Parser:
    def __init__(self, source: str):
        self.tokens = _tokenize(source)
        self.i = 0

    def peek(self) -> Token:
        return self.tokens[self.i]

    def next(self) -> Token:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, kind: str) -> Token:
        tok = self.peek()
        if tok.kind != kind:
            raise ParseError(f"expected {kind!r}, found {tok.text or 'end'!r}", tok.pos)
        return self.next()

    # Precedence-climbing over binary levels: additive < multiplicative.
    def parse_expr(self) -> Node:
        node = self.parse_term()
        while self.peek().kind in ("+", "-"):
            op = self.next().kind
            node = ("bin", op, node, self.parse_term())
        return node

    def parse_term(self) -> Node:
        node = self.parse_unary()
        while self.peek().kind in ("*", "/"):
            op = self.next().kind
            node = ("bin", op, node, self.parse_unary())
        return node

    def parse_unary(self) -> Node:
        if self.peek().kind == "-":
            self.next()
            return ("neg", self.parse_unary())
        return self.parse_power()

    def parse_power(self) -> Node:
        base = self.parse_atom()
        if self.peek().kind == "^":
            self.next()
            # Right-associative; the exponent may carry its own unary minus.
            return ("bin", "^", base, self.parse_unary())
        return base

    def parse_atom(self) -> Node:
        tok = self.peek()
        if tok.kind == "num":
            self.next()
            return ("num", float(tok.text))
        if tok.kind == "(":
            self.next()
            node = self.parse_expr()
            self.expect(")")
            return node
        if tok.kind == "ident":
            self.next()
            if tok.text == "x":
                return ("x",)
            if tok.text == "pi":
                return ("pi",)
            if tok.text in _FUNCTIONS:
                self.expect("(")
                arg = self.parse_expr()
                self.expect(")")
                return ("call", tok.text, arg)
            raise ParseError(f"unknown identifier {tok.text!r}", tok.pos)
        raise ParseError(f"expected expression, found {tok.text or 'end'!r}", tok.pos)


def _eval(node: Node, x):
    kind = node[0]
    if kind == "num":
        return np.full_like(x, node[1]) if np.ndim(x) else node[1]
    if kind == "x":
        return x
    if kind == "pi":
        return np.full_like(x, np.pi) if np.ndim(x) else np.pi
    if kind == "neg":
        return -_eval(node[1], x)
    if kind == "call":
        arg = np.asarray(_eval(node[2], x), dtype=float)
        name = node[1]
        if name == "log":
            if np.any(arg <= 0.0):
                raise EvalDomainError("log of a nonpositive value")
            return np.log(arg)
        if name == "sqrt":
            if np.any(arg < 0.0):
                raise EvalDomainError("sqrt of a negative value")
            return np.sqrt(arg)
        return getattr(np, name)(arg)
    _, op, left, right = node
    a = np.asarray(_eval(left, x), dtype=float)
    b = np.asarray(_eval(right, x), dtype=float)
    if op == "+":
        return a + b
    if op == "-":
        return a - b
    if op == "*":
        return a * b
    if op == "/":
        if np.any(b == 0.0):
            raise EvalDomainError("division by zero")
        return a / b
    # op == "^"
    if np.any((a < 0.0) & (b != np.floor(b))):
        raise EvalDomainError("negative base with non-integer exponent")
    return np.power(a, b)


_PRECEDENCE = {"+": 1, "-": 1, "*": 2, "/": 2, "neg": 3, "^": 4}


def _print(node: Node, parent_prec: int = 0) -> str:
    kind = node[0]
    if kind == "num":
        v = node[1]
        return repr(int(v)) if v == int(v) and abs(v) < 1e15 else repr(v)
    if kind == "x":
        return "x"
    if kind == "pi":
        return "pi"
    if kind == "neg":
        inner = _print(node[1], _PRECEDENCE["neg"])
        text = f"-{inner}"
        return f"({text})" if parent_prec > _PRECEDENCE["neg"] else text
    if kind == "call":
        return f"{node[1]}({_print(node[2])})"
    _, op, left, right = node
    prec = _PRECEDENCE[op]
    if op == "^":
        text = f"{_print(left, prec + 1)}^{_print(right, prec)}"
    else:
        text = f"{_print(left, prec)}{op}{_print(right, prec + 1)}"
    return f"({text})" if parent_prec > prec else text


@dataclass(frozen=True)
class FunctionExpr:
    source: str
    ast: Node

    def __call__(self, x):
        val = _eval(self.ast, np.asarray(x, dtype=float) if np.ndim(x) else float(x))
        return val if np.ndim(x) else float(val)

    def canonical(self) -> str:
        return _print(self.ast)


def parse(source: str) -> FunctionExpr:
    """Parse an expression in the variable x."""
    if not source.strip():
        raise ParseError("empty expression", 0)
    parser = _Parser(source)
    ast = parser.parse_expr()
    end = parser.peek()
    if end.kind != "end":
        raise ParseError(f"unexpected trailing input {end.text!r}", end.pos)
    return FunctionExpr(source, ast)


BUILTIN_SOURCES = {
    "runge": "1/(1+25*x^2)",
    "sqrt105": "sqrt(1.05+x)",
    "logsin": "log(sin(10*x)+2)+sin(x)",
    "cos36": "cos(36*sqrt(2)*x+1/3)",
}

BUILTINS = {name: parse(src) for name, src in BUILTIN_SOURCES.items()}


def resolve(name_or_expr: Union[str, FunctionExpr]) -> FunctionExpr:
    """Look up a builtin by name, or parse the argument as an expression.

    Non-string callables (e.g. coefficient vectors) pass through so the
    pipeline can run on synthetic targets.
    """
    if not isinstance(name_or_expr, str):
        if callable(name_or_expr):
            return name_or_expr
        raise TypeError("expected an expression string or a callable")
    if name_or_expr in BUILTINS:
        return BUILTINS[name_or_expr]
    return parse(name_or_expr)
