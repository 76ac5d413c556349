"""Recursive-descent parser for the psi expression language.

Grammar (lowest precedence first):

    expr   := term { ("+"|"-") term }
    term   := factor { ("*"|"/") factor }
    factor := ["-"] power
    power  := atom [ "^" rational ]
    atom   := NUMBER | "x" | "phi" | "(" expr ")" | FUNC "(" expr { "," expr } ")"
    FUNC   := "sqrt" | "cbrt" | "root" | "ln" | "log"

NUMBER is an unsigned decimal integer or a finite decimal fraction, stored
as an exact rational. The p/q ratio form is recognized only where a
rational literal is required, i.e. in the exponent after "^" (elsewhere
"1/2" is ordinary division, producing a Div node). root(k, e) needs an
integer literal k >= 2; log(b, e) needs a constant base b > 1.

Every failure raises ParseError carrying the offset of the offending
token; no input raises anything else.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .evaluation import certainly_greater_one
from .expr import Expr, Var, Phi, Number, Neg, Add, Sub, Mul, Div, Pow, Sqrt, Root, Ln, Log, contains_var


class ParseError(Exception):
    """Lexical, syntactic or semantic rejection of an input expression."""

    def __init__(self, position: int, expected: str, found: str):
        self.position = position
        self.expected = expected
        self.found = found
        super().__init__(f"at offset {position}: expected {expected}, found {found or 'end of input'}")


_FUNCS = ("sqrt", "cbrt", "root", "ln", "log")


@dataclass
class _Token:
    kind: str  # "num", "ident", one of "+-*/^(),", or "eof"
    text: str
    pos: int
    value: Fraction | None = None
    is_int: bool = False


def _is_digit(c: str) -> bool:
    return "0" <= c <= "9"  # ASCII only; unicode digits are not literals


def _is_ident(c: str) -> bool:
    return ("a" <= c <= "z") or ("A" <= c <= "Z") or c == "_"


def _tokenize(text: str) -> list[_Token]:
    tokens: list[_Token] = []
    i = 0
    n = len(text)
    while i < n:
        c = text[i]
        if c.isspace():
            i += 1
            continue
        if _is_digit(c):
            start = i
            while i < n and _is_digit(text[i]):
                i += 1
            is_int = True
            if i + 1 < n and text[i] == "." and _is_digit(text[i + 1]):
                is_int = False
                i += 1
                while i < n and _is_digit(text[i]):
                    i += 1
            lexeme = text[start:i]
            tokens.append(_Token("num", lexeme, start, value=Fraction(lexeme), is_int=is_int))
            continue
        if _is_ident(c):
            start = i
            while i < n and (_is_ident(text[i]) or _is_digit(text[i])):
                i += 1
            tokens.append(_Token("ident", text[start:i], start))
            continue
        if c in "+-*/^(),":
            tokens.append(_Token(c, c, i))
            i += 1
            continue
        raise ParseError(i, "a number, name or operator", c)
    tokens.append(_Token("eof", "", n))
    return tokens


class _Parser:
    def __init__(self, tokens: list[_Token]):
        self.tokens = tokens
        self.i = 0

    def peek(self, ahead: int = 0) -> _Token:
        return self.tokens[min(self.i + ahead, len(self.tokens) - 1)]

    def advance(self) -> _Token:
        tok = self.tokens[self.i]
        if tok.kind != "eof":
            self.i += 1
        return tok

    def expect(self, kind: str, expected: str) -> _Token:
        tok = self.peek()
        if tok.kind != kind:
            raise ParseError(tok.pos, expected, tok.text)
        return self.advance()

    def expr(self) -> Expr:
        node = self.term()
        while self.peek().kind in ("+", "-"):
            op = self.advance().kind
            rhs = self.term()
            node = Add(node, rhs) if op == "+" else Sub(node, rhs)
        return node

    def term(self) -> Expr:
        node = self.factor()
        while self.peek().kind in ("*", "/"):
            op = self.advance().kind
            rhs = self.factor()
            node = Mul(node, rhs) if op == "*" else Div(node, rhs)
        return node

    def factor(self) -> Expr:
        if self.peek().kind == "-":
            self.advance()
            return Neg(self.power())
        return self.power()

    def power(self) -> Expr:
        base = self.atom()
        if self.peek().kind == "^":
            self.advance()
            return Pow(base, self.exponent_rational())
        return base

    def exponent_rational(self) -> Fraction:
        sign = 1
        if self.peek().kind == "-":
            self.advance()
            sign = -1
        tok = self.expect("num", "a rational exponent")
        q = tok.value
        # Greedy p/q form: take "/" only when an integer literal follows.
        if tok.is_int and self.peek().kind == "/" and self.peek(1).kind == "num" and self.peek(1).is_int:
            self.advance()
            den = self.advance()
            if den.value == 0:
                raise ParseError(den.pos, "a nonzero denominator", den.text)
            q = Fraction(tok.value, den.value)
        return sign * q

    def atom(self) -> Expr:
        tok = self.peek()
        if tok.kind == "num":
            self.advance()
            return Number(tok.value)
        if tok.kind == "(":
            self.advance()
            node = self.expr()
            self.expect(")", "')'")
            return node
        if tok.kind == "ident":
            self.advance()
            if tok.text == "x":
                return Var()
            if tok.text == "phi":
                return Phi()
            if tok.text in _FUNCS:
                return self.call(tok)
            raise ParseError(tok.pos, "'x', 'phi' or a function name", tok.text)
        raise ParseError(tok.pos, "a number, name or '('", tok.text)

    def call(self, func: _Token) -> Expr:
        self.expect("(", "'('")
        arg_positions = [self.peek().pos]
        args = [self.expr()]
        while self.peek().kind == ",":
            self.advance()
            arg_positions.append(self.peek().pos)
            args.append(self.expr())
        self.expect(")", "')' or ','")

        name = func.text
        unary = {"sqrt": Sqrt, "ln": Ln}
        if name in unary or name == "cbrt":
            if len(args) != 1:
                raise ParseError(func.pos, f"exactly one argument to {name}", f"{len(args)} arguments")
            return Root(3, args[0]) if name == "cbrt" else unary[name](args[0])
        if len(args) != 2:
            raise ParseError(func.pos, f"exactly two arguments to {name}", f"{len(args)} arguments")
        if name == "root":
            k = args[0]
            if not (isinstance(k, Number) and k.value.denominator == 1 and k.value >= 2):
                raise ParseError(arg_positions[0], "an integer root degree >= 2", str(args[0]))
            return Root(int(k.value), args[1])
        # log(base, e)
        if contains_var(args[0]):
            raise ParseError(arg_positions[0], "a constant log base (no x)", str(args[0]))
        if not certainly_greater_one(args[0]):
            raise ParseError(arg_positions[0], "a log base greater than 1", str(args[0]))
        return Log(args[0], args[1])


def parse(text: str) -> Expr:
    """Parse text into an Expr; raise ParseError on any malformed input."""
    parser = _Parser(_tokenize(text))
    node = parser.expr()
    tok = parser.peek()
    if tok.kind != "eof":
        raise ParseError(tok.pos, "end of input", tok.text)
    return node
