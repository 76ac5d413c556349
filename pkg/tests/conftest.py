"""Shared test oracles, independent of the library's evaluation path.

mp_eval walks an expression tree with mpmath (a different
multiple-precision library than the one the package uses), giving a
direct, non-interval reference value. fib_iter is the plain linear
recurrence. Both exist so the certified machinery is checked against
something it shares no code with.
"""

from __future__ import annotations

from fractions import Fraction

import mpmath
import pytest

from cseq.expr import Add, Div, Expr, Ln, Log, Mul, Neg, Number, Phi, Pow, Root, Sqrt, Sub, Var


def mp_eval(e: Expr, x: Fraction | int | None, prec: int = 512) -> mpmath.mpf:
    """Direct mpmath evaluation of e at x with `prec` bits."""
    with mpmath.workprec(prec):
        return _mp_eval(e, None if x is None else Fraction(x))


def _frac(q: Fraction) -> mpmath.mpf:
    return mpmath.mpf(q.numerator) / mpmath.mpf(q.denominator)


def _mp_eval(e: Expr, x: Fraction | None) -> mpmath.mpf:
    match e:
        case Number(value=q):
            return _frac(q)
        case Var():
            assert x is not None
            return _frac(x)
        case Phi():
            return (1 + mpmath.sqrt(5)) / 2
        case Neg(operand=a):
            return -_mp_eval(a, x)
        case Add(left=a, right=b):
            return _mp_eval(a, x) + _mp_eval(b, x)
        case Sub(left=a, right=b):
            return _mp_eval(a, x) - _mp_eval(b, x)
        case Mul(left=a, right=b):
            return _mp_eval(a, x) * _mp_eval(b, x)
        case Div(left=a, right=b):
            return _mp_eval(a, x) / _mp_eval(b, x)
        case Pow(base=a, exponent=q):
            return _mp_eval(a, x) ** _frac(q)
        case Sqrt(operand=a):
            return mpmath.sqrt(_mp_eval(a, x))
        case Root(degree=k, operand=a):
            return mpmath.root(_mp_eval(a, x), k)
        case Ln(operand=a):
            return mpmath.log(_mp_eval(a, x))
        case Log(base=b, operand=a):
            return mpmath.log(_mp_eval(a, x)) / mpmath.log(_mp_eval(b, x))
    raise TypeError(f"not an Expr: {e!r}")


def fib_iter(n: int) -> int:
    """Linear-recurrence Fibonacci, the oracle for fast doubling."""
    a, b = 0, 1
    for _ in range(n):
        a, b = b, a + b
    return a


def canonical_builtin_asts() -> dict[str, Expr]:
    """Hand-built trees for every built-in psi, the reference the parsed
    formula texts must match structurally."""
    half = Div(Number(Fraction(1)), Number(Fraction(2)))
    fib_inner = Add(
        Sub(
            Mul(Sqrt(Number(Fraction(5))), Add(Log(Phi(), Mul(Sqrt(Number(Fraction(5))), Var())), Var())),
            Number(Fraction(5)),
        ),
        Div(Number(Fraction(3)), Var()),
    )
    return {
        "squares": Add(Sqrt(Var()), half),
        "triangular": Add(Sqrt(Mul(Number(Fraction(2)), Var())), half),
        "cubes": Add(
            Root(3, Var()),
            Div(Number(Fraction(1)), Mul(Number(Fraction(3)), Root(3, Add(Var(), Number(Fraction(1)))))),
        ),
        "rth-powers(r=4)": Root(4, Add(Var(), Root(4, Var()))),
        "powers-of(a=3)": Log(Number(Fraction(3)), Add(Var(), Log(Number(Fraction(3)), Var()))),
        "fibonacci": Sub(Log(Phi(), fib_inner), Number(Fraction(2))),
    }


@pytest.fixture
def mp512():
    return lambda e, x: mp_eval(e, x, 512)
