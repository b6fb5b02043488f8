"""A small symbolic expression engine for single-variable elementary
functions: construction, node counting, evaluation, differentiation,
rendering, and parsing.

Trees are plain nested tuples:
    ("const", value)          value: int or float
    ("x",)
    (op, child)               op in {"neg","sin","cos","exp","log","sqrt"}
    (op, left, right)         op in {"add","sub","mul","div","pow"}
For "pow" the right child must be a constant (the exponent).

The rendering dialect uses explicit `*` for every product and `**` for
powers; `^` is not emitted.  The parser accepts the same dialect (plus `^`
as a leniency) so render/parse round-trips structurally.
"""

import math
import re
from typing import Optional, Tuple

UNARY_OPS = ("neg", "sin", "cos", "exp", "log", "sqrt")
BINARY_OPS = ("add", "sub", "mul", "div", "pow")

_MAX_PARSE_LEN = 20000
_MAGNITUDE_LIMIT = 1e12


class DomainError(ValueError):
    """Evaluation left the function's real domain (log<=0, sqrt<0, /0, ...)."""


class ExprParseError(ValueError):
    """Text is not a well-formed expression in the supported dialect."""


def node_count(tree) -> int:
    kind = tree[0]
    if kind in ("const", "x"):
        return 1
    return 1 + sum(node_count(child) for child in tree[1:])


def contains_x(tree) -> bool:
    kind = tree[0]
    if kind == "x":
        return True
    if kind == "const":
        return False
    return any(contains_x(child) for child in tree[1:])


def evaluate(tree, x: float) -> float:
    """Evaluate at a point; raises DomainError outside the real domain or on
    magnitude blow-ups."""
    kind = tree[0]
    try:
        if kind == "const":
            value = float(tree[1])
        elif kind == "x":
            value = x
        elif kind == "neg":
            value = -evaluate(tree[1], x)
        elif kind == "sin":
            value = math.sin(evaluate(tree[1], x))
        elif kind == "cos":
            value = math.cos(evaluate(tree[1], x))
        elif kind == "exp":
            value = math.exp(evaluate(tree[1], x))
        elif kind == "log":
            inner = evaluate(tree[1], x)
            if inner <= 0.0:
                raise DomainError("log of non-positive value")
            value = math.log(inner)
        elif kind == "sqrt":
            inner = evaluate(tree[1], x)
            if inner < 0.0:
                raise DomainError("sqrt of negative value")
            value = math.sqrt(inner)
        elif kind == "add":
            value = evaluate(tree[1], x) + evaluate(tree[2], x)
        elif kind == "sub":
            value = evaluate(tree[1], x) - evaluate(tree[2], x)
        elif kind == "mul":
            value = evaluate(tree[1], x) * evaluate(tree[2], x)
        elif kind == "div":
            denominator = evaluate(tree[2], x)
            if denominator == 0.0:
                raise DomainError("division by zero")
            value = evaluate(tree[1], x) / denominator
        elif kind == "pow":
            base = evaluate(tree[1], x)
            exponent = float(tree[2][1])
            if base == 0.0 and exponent < 0:
                raise DomainError("zero base with negative exponent")
            if base < 0.0 and exponent != int(exponent):
                raise DomainError("negative base with fractional exponent")
            value = math.pow(base, exponent)
        else:
            raise ValueError(f"unknown node kind: {kind!r}")
    except OverflowError as err:
        raise DomainError(str(err)) from err
    if math.isnan(value) or abs(value) > _MAGNITUDE_LIMIT:
        raise DomainError("magnitude out of range")
    return value


# Smart constructors fold constants and drop identity operands so derivative
# trees stay readable.

def const(value):
    if isinstance(value, float) and value.is_integer():
        value = int(value)
    return ("const", value)


def add(a, b):
    if a[0] == "const" and b[0] == "const":
        return const(a[1] + b[1])
    if a == ("const", 0):
        return b
    if b == ("const", 0):
        return a
    return ("add", a, b)


def sub(a, b):
    if a[0] == "const" and b[0] == "const":
        return const(a[1] - b[1])
    if b == ("const", 0):
        return a
    if a == ("const", 0):
        return neg(b)
    return ("sub", a, b)


def neg(a):
    if a[0] == "const":
        return const(-a[1])
    if a[0] == "neg":
        return a[1]
    return ("neg", a)


def mul(a, b):
    if a[0] == "const" and b[0] == "const":
        return const(a[1] * b[1])
    if a == ("const", 0) or b == ("const", 0):
        return const(0)
    if a == ("const", 1):
        return b
    if b == ("const", 1):
        return a
    return ("mul", a, b)


def div(a, b):
    if a == ("const", 0):
        return const(0)
    if b == ("const", 1):
        return a
    return ("div", a, b)


def pow_(base, exponent: int):
    if exponent == 1:
        return base
    if exponent == 0:
        return const(1)
    return ("pow", base, const(exponent))


def differentiate(tree):
    """Symbolic derivative with respect to x; total on all constructible
    trees."""
    kind = tree[0]
    if kind == "const":
        return const(0)
    if kind == "x":
        return const(1)
    if kind == "neg":
        return neg(differentiate(tree[1]))
    if kind == "sin":
        return mul(("cos", tree[1]), differentiate(tree[1]))
    if kind == "cos":
        return neg(mul(("sin", tree[1]), differentiate(tree[1])))
    if kind == "exp":
        return mul(("exp", tree[1]), differentiate(tree[1]))
    if kind == "log":
        return div(differentiate(tree[1]), tree[1])
    if kind == "sqrt":
        return div(differentiate(tree[1]), mul(const(2), ("sqrt", tree[1])))
    if kind == "add":
        return add(differentiate(tree[1]), differentiate(tree[2]))
    if kind == "sub":
        return sub(differentiate(tree[1]), differentiate(tree[2]))
    if kind == "mul":
        f, g = tree[1], tree[2]
        return add(mul(differentiate(f), g), mul(f, differentiate(g)))
    if kind == "div":
        f, g = tree[1], tree[2]
        numerator = sub(mul(differentiate(f), g), mul(f, differentiate(g)))
        return div(numerator, pow_(g, 2))
    if kind == "pow":
        base, exponent = tree[1], tree[2][1]
        return mul(mul(const(exponent), pow_(base, exponent - 1)),
                   differentiate(base))
    raise ValueError(f"unknown node kind: {kind!r}")


def render(tree) -> str:
    """Fully parenthesized infix with explicit `*` and `**`."""
    text = _render(tree)
    if text.startswith("(") and text.endswith(")") and _balanced_span(text):
        text = text[1:-1]
    return text


def _balanced_span(text: str) -> bool:
    # True when the outermost parens wrap the whole string
    depth = 0
    for i, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth == 0 and i != len(text) - 1:
                return False
    return True


def _render(tree) -> str:
    kind = tree[0]
    if kind == "const":
        value = tree[1]
        if isinstance(value, float):
            return repr(value) if value >= 0 else f"({value!r})"
        return str(value) if value >= 0 else f"({value})"
    if kind == "x":
        return "x"
    if kind == "neg":
        return f"(-{_render(tree[1])})"
    if kind in ("sin", "cos", "exp", "log", "sqrt"):
        return f"{kind}({render(tree[1])})"
    symbol = {"add": " + ", "sub": " - ", "mul": "*", "div": "/", "pow": "**"}[kind]
    return f"({_render(tree[1])}{symbol}{_render(tree[2])})"


# --- parser ---

_TOKEN_RE = re.compile(
    r"\s*(?:(?P<number>\d+(?:\.\d+)?(?:[eE][+-]?\d+)?)"
    r"|(?P<name>[A-Za-z_][A-Za-z_0-9]*)"
    r"|(?P<op>\*\*|\^|[-+*/()]))"
)

_FUNCTIONS = {"sin", "cos", "exp", "log", "ln", "sqrt"}


def _tokenize(text: str):
    tokens = []
    pos = 0
    while pos < len(text):
        match = _TOKEN_RE.match(text, pos)
        if match is None:
            if text[pos:].strip():
                raise ExprParseError(f"unexpected character at {pos}: {text[pos]!r}")
            break
        pos = match.end()
        if match.group("number") is not None:
            literal = match.group("number")
            value = float(literal) if ("." in literal or "e" in literal.lower()) else int(literal)
            tokens.append(("number", value))
        elif match.group("name") is not None:
            tokens.append(("name", match.group("name")))
        else:
            op = match.group("op")
            tokens.append(("op", "**" if op == "^" else op))
    return tokens


class _Parser:
    def __init__(self, tokens):
        self.tokens = tokens
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self):
        token = self.peek()
        if token is None:
            raise ExprParseError("unexpected end of expression")
        self.pos += 1
        return token

    def expect(self, op):
        token = self.take()
        if token != ("op", op):
            raise ExprParseError(f"expected {op!r}, got {token!r}")

    def parse(self):
        tree = self.expression()
        if self.peek() is not None:
            raise ExprParseError(f"trailing tokens: {self.peek()!r}")
        return tree

    def expression(self):
        tree = self.term()
        while self.peek() in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            right = self.term()
            tree = ("add" if op == "+" else "sub", tree, right)
        return tree

    def term(self):
        tree = self.unary()
        while self.peek() in (("op", "*"), ("op", "/")):
            op = self.take()[1]
            right = self.unary()
            tree = ("mul" if op == "*" else "div", tree, right)
        return tree

    def unary(self):
        if self.peek() == ("op", "-"):
            self.take()
            return ("neg", self.unary())
        if self.peek() == ("op", "+"):
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek() == ("op", "**"):
            self.take()
            exponent = self.unary()
            exponent = _as_constant(exponent)
            return ("pow", base, exponent)
        return base

    def atom(self):
        token = self.take()
        if token[0] == "number":
            return ("const", token[1])
        if token[0] == "name":
            name = token[1]
            if name == "x":
                return ("x",)
            if name in _FUNCTIONS:
                self.expect("(")
                inner = self.expression()
                self.expect(")")
                return ("log" if name == "ln" else name, inner)
            raise ExprParseError(f"unknown symbol: {name!r}")
        if token == ("op", "("):
            inner = self.expression()
            self.expect(")")
            return inner
        raise ExprParseError(f"unexpected token: {token!r}")


def _as_constant(tree):
    # exponents must reduce to a numeric constant
    if tree[0] == "const":
        return tree
    if tree[0] == "neg":
        inner = _as_constant(tree[1])
        return const(-inner[1])
    raise ExprParseError("exponent must be a numeric constant")


def parse(text: str):
    """Parse the supported dialect into a tree; raises ExprParseError."""
    if not isinstance(text, str):
        raise ExprParseError("expression must be text")
    if len(text) > _MAX_PARSE_LEN:
        raise ExprParseError("expression too long")
    tokens = _tokenize(text)
    if not tokens:
        raise ExprParseError("empty expression")
    return _Parser(tokens).parse()
