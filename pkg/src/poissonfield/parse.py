"""Parser for the expression grammar.

    expr   := term (("+" | "-") term)*
    term   := unary (("*" | "/") unary)*
    unary  := ("-" | "+") unary | power
    power  := atom ("^" exponent)?
    exponent := ["-" | "+"] INT | "(" ["-" | "+"] INT ")"
    atom   := INT | "x" | "y" | "t" | "(" expr ")"

Multiplication is never implicit.  ``a/b`` with integer literals is a
rational constant.  The parser builds a small tuple AST first so that
callers can inspect the syntactic product structure of a flag.
"""

from fractions import Fraction

from .arith import ONE, RatFunc2, var
from .errors import DivisionByZero, ExpressionSyntaxError, UnknownVariable

MODES = ("q", "qt")


def tokenize(text):
    tokens = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(("int", int(text[i:j]), i))
            i = j
        elif ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(("name", text[i:j], i))
            i = j
        elif ch in "+-*/^()":
            tokens.append((ch, ch, i))
            i += 1
        else:
            raise ExpressionSyntaxError(f"unexpected character {ch!r}", i)
    tokens.append(("end", None, n))
    return tokens


class _Parser:
    def __init__(self, text, mode):
        self.tokens = tokenize(text)
        self.pos = 0
        self.mode = mode

    def peek(self):
        return self.tokens[self.pos]

    def take(self, kind=None):
        tok = self.tokens[self.pos]
        if kind is not None and tok[0] != kind:
            what = "end of input" if tok[0] == "end" else repr(tok[1])
            raise ExpressionSyntaxError(f"expected {kind!r} but found {what}", tok[2])
        self.pos += 1
        return tok

    def parse(self):
        if self.peek()[0] == "end":
            raise ExpressionSyntaxError("empty expression", 0)
        node = self.expr()
        tok = self.peek()
        if tok[0] != "end":
            raise ExpressionSyntaxError(f"unexpected {tok[1]!r}", tok[2])
        return node

    def expr(self):
        node = self.term()
        while self.peek()[0] in "+-":
            op = self.take()[0]
            node = ("add" if op == "+" else "sub", node, self.term())
        return node

    def term(self):
        node = self.unary()
        while self.peek()[0] in ("*", "/"):
            op = self.take()[0]
            node = ("mul" if op == "*" else "div", node, self.unary())
        return node

    def unary(self):
        kind = self.peek()[0]
        if kind == "-":
            self.take()
            return ("neg", self.unary())
        if kind == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek()[0] == "^":
            self.take()
            return ("pow", base, self.exponent())
        return base

    def exponent(self):
        paren = self.peek()[0] == "("
        if paren:
            self.take()
        sign = 1
        if self.peek()[0] in "+-":
            sign = -1 if self.take()[0] == "-" else 1
        tok = self.peek()
        if tok[0] != "int":
            raise ExpressionSyntaxError("exponent must be an integer", tok[2])
        self.take()
        if paren:
            self.take(")")
        return sign * tok[1]

    def atom(self):
        tok = self.peek()
        kind = tok[0]
        if kind == "int":
            self.take()
            nxt = self.peek()
            if nxt[0] in ("int", "name", "("):
                raise ExpressionSyntaxError("missing '*' between factors", nxt[2])
            return ("num", Fraction(tok[1]))
        if kind == "name":
            self.take()
            name = tok[1]
            if name not in ("x", "y", "t"):
                raise UnknownVariable(f"unknown variable {name!r}", tok[2])
            if name == "t" and self.mode == "q":
                raise UnknownVariable("t is only available in Q(t) mode", tok[2])
            nxt = self.peek()
            if nxt[0] in ("int", "name", "("):
                raise ExpressionSyntaxError("missing '*' between factors", nxt[2])
            return ("var", name)
        if kind == "(":
            self.take()
            node = self.expr()
            self.take(")")
            nxt = self.peek()
            if nxt[0] in ("int", "name", "("):
                raise ExpressionSyntaxError("missing '*' between factors", nxt[2])
            return node
        if kind == "end":
            raise ExpressionSyntaxError("unexpected end of input", tok[2])
        raise ExpressionSyntaxError(f"unexpected {tok[1]!r}", tok[2])


def parse_ast(text, mode="q"):
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}")
    return _Parser(text, mode).parse()


def evaluate(node):
    kind = node[0]
    if kind == "num":
        return RatFunc2(node[1])
    if kind == "var":
        return var(node[1])
    if kind == "neg":
        return -evaluate(node[1])
    if kind == "pow":
        base = evaluate(node[1])
        if node[2] < 0 and not base:
            raise DivisionByZero("zero raised to a negative power")
        return base ** node[2] if node[2] else ONE
    a, b = evaluate(node[1]), evaluate(node[2])
    if kind == "add":
        return a + b
    if kind == "sub":
        return a - b
    if kind == "mul":
        return a * b
    if not b:
        raise DivisionByZero("division by zero")
    return a / b


def parse(text, mode="q"):
    """Parse an expression into a reduced :class:`RatFunc2`.

    >>> str(parse("x^2*y - 1/2"))
    'x^2*y - 1/2'
    >>> str(parse("(x^2 - 1)/(x - 1)"))
    'x + 1'
    """
    return evaluate(parse_ast(text, mode))


def to_string(f):
    """Canonical text of a value; ``parse(to_string(f)) == f``."""
    return str(RatFunc2(f))
