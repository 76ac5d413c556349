"""Expression trees for the inverse maps psi used by the floor generators.

The language is deliberately tiny: one variable x, exact rational
constants, the golden ratio as a named constant, field operations,
rational-exponent powers, roots and logarithms. Trees are immutable
and compare structurally.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


class Expr:
    """Base class for all nodes."""

    __slots__ = ()

    def __str__(self) -> str:
        return unparse(self)


@dataclass(frozen=True)
class Number(Expr):
    """An exact rational constant."""

    value: Fraction

    def __post_init__(self) -> None:
        if not isinstance(self.value, Fraction):
            object.__setattr__(self, "value", Fraction(self.value))


@dataclass(frozen=True)
class Var(Expr):
    """The single free variable x."""


@dataclass(frozen=True)
class Phi(Expr):
    """The golden ratio (1 + sqrt 5)/2, evaluated at working precision."""


@dataclass(frozen=True)
class Neg(Expr):
    operand: Expr


@dataclass(frozen=True)
class Add(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Sub(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Mul(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Div(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Pow(Expr):
    """base raised to a fixed exact rational exponent."""

    base: Expr
    exponent: Fraction

    def __post_init__(self) -> None:
        if not isinstance(self.exponent, Fraction):
            object.__setattr__(self, "exponent", Fraction(self.exponent))


@dataclass(frozen=True)
class Sqrt(Expr):
    operand: Expr


@dataclass(frozen=True)
class Root(Expr):
    """k-th root, k an integer >= 2."""

    degree: int
    operand: Expr

    def __post_init__(self) -> None:
        if self.degree < 2:
            raise ValueError(f"root degree must be >= 2, got {self.degree}")


@dataclass(frozen=True)
class Ln(Expr):
    operand: Expr


@dataclass(frozen=True)
class Log(Expr):
    """Logarithm to a constant base > 1; the base may not contain x."""

    base: Expr
    operand: Expr

    def __post_init__(self) -> None:
        if contains_var(self.base):
            raise ValueError("log base must be a constant expression")


def contains_var(e: Expr) -> bool:
    match e:
        case Var():
            return True
        case Number() | Phi():
            return False
        case Neg(operand=a) | Sqrt(operand=a) | Ln(operand=a):
            return contains_var(a)
        case Root(operand=a):
            return contains_var(a)
        case Pow(base=a):
            return contains_var(a)
        case Add(left=a, right=b) | Sub(left=a, right=b) | Mul(left=a, right=b) | Div(left=a, right=b):
            return contains_var(a) or contains_var(b)
        case Log(base=a, operand=b):
            return contains_var(a) or contains_var(b)
    raise TypeError(f"not an Expr: {e!r}")


def free_var_count(e: Expr) -> int:
    """Number of distinct free variables: 0 or 1 (x is the only variable)."""
    return 1 if contains_var(e) else 0


def _rational_text(q: Fraction) -> str:
    """Exponent-position rational: '3', '-3', '1/2', '-1/2'."""
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def _number_text(q: Fraction) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    # Exact finite decimal when the denominator is 2^a * 5^b.
    den = q.denominator
    twos = fives = 0
    while den % 2 == 0:
        den //= 2
        twos += 1
    while den % 5 == 0:
        den //= 5
        fives += 1
    if den == 1 and q.numerator >= 0:
        k = max(twos, fives)
        digits = q.numerator * 10**k // q.denominator
        text = str(digits).rjust(k + 1, "0")
        return f"{text[:-k]}.{text[-k:]}"
    # No literal form exists for other rationals (the parser builds them as
    # quotients), so the emitted text re-parses as Div, not Number.
    return f"({q.numerator}/{q.denominator})"


def unparse(e: Expr) -> str:
    """Canonical fully parenthesized text.

    parse(unparse(e)) is structurally equal to e for every tree the parser
    can produce (Number nodes holding nonnegative integers or exact finite
    decimals; general rationals enter trees as Div nodes).
    """
    match e:
        case Number(value=q):
            return _number_text(q)
        case Var():
            return "x"
        case Phi():
            return "phi"
        case Neg(operand=a):
            return f"(-{unparse(a)})"
        case Add(left=a, right=b):
            return f"({unparse(a)} + {unparse(b)})"
        case Sub(left=a, right=b):
            return f"({unparse(a)} - {unparse(b)})"
        case Mul(left=a, right=b):
            return f"({unparse(a)}*{unparse(b)})"
        case Div(left=a, right=b):
            return f"({unparse(a)}/{unparse(b)})"
        case Pow(base=a, exponent=q):
            return f"({unparse(a)}^{_rational_text(q)})"
        case Sqrt(operand=a):
            return f"sqrt({unparse(a)})"
        case Root(degree=k, operand=a):
            return f"root({k}, {unparse(a)})"
        case Ln(operand=a):
            return f"ln({unparse(a)})"
        case Log(base=a, operand=b):
            return f"log({unparse(a)}, {unparse(b)})"
    raise TypeError(f"not an Expr: {e!r}")
