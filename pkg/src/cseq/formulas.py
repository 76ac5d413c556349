"""The built-in complement formulas.

Each entry pairs a psi expression with the sequence family it
complements and its starting index n0 (= first term + 1, the smallest
index the floor generator is valid from). The psi source texts below are
the single source of truth; the constructors parse them once and cache
the result.

Built-ins:

    squares      floor(n + sqrt(n) + 1/2)                       n >= 1
    triangular   floor(n + sqrt(2n) + 1/2)                      n >= 1
    r-th powers  floor(n + (n + n^(1/r))^(1/r))                 n >= 1
    cubes        floor(n + cbrt(n) + 1/(3 cbrt(n+1)))           n >= 1
    powers of a  floor(n + log_a(n + log_a n))                  n >= 2
    fibonacci    floor(n + log_phi(sqrt5 (log_phi(sqrt5 n) + n)
                               - 5 + 3/n) - 2)                  n >= 2

The generating range for powers of a starts at n = 2 even though n = 1
evaluates fine: the generated value there would be 1 = a^0, which is a
power of a, so emitting it would break complementarity.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .expr import Expr
from .parser import parse
from .sequences import (
    Custom,
    FibonacciShifted,
    PowersOf,
    RthPowers,
    SequenceFamily,
    Triangular,
)

PSI_SQUARES = "sqrt(x) + 1/2"
PSI_TRIANGULAR = "sqrt(2*x) + 1/2"
PSI_CUBES = "cbrt(x) + 1/(3*cbrt(x + 1))"
PSI_RTH_POWERS = "root({r}, x + root({r}, x))"
PSI_POWERS_OF = "log({a}, x + log({a}, x))"
PSI_FIBONACCI = "log(phi, sqrt(5)*(log(phi, sqrt(5)*x) + x) - 5 + 3/x) - 2"


class NoBuiltinFormulaError(LookupError):
    """Raised when a family has no closed-form psi (Custom families)."""


@dataclass(frozen=True)
class ComplementFormula:
    """A psi expression claiming to generate the complement of a family.

    floor(n + psi(n)) for n >= n0 enumerates, in order, the integers
    that are not terms of the family. hypothesis_start is the first
    index at which the bracketing condition on psi's inverse is checked
    by the verifier (index 0 is anomalous for every built-in, see
    engine.verify_hypothesis).
    """

    psi: Expr
    n0: int
    family: SequenceFamily | None
    hypothesis_start: int = 1

    def __post_init__(self) -> None:
        if self.hypothesis_start < 0:
            raise ValueError(f"hypothesis_start must be >= 0, got {self.hypothesis_start}")


@lru_cache(maxsize=None)
def squares_formula() -> ComplementFormula:
    return ComplementFormula(parse(PSI_SQUARES), n0=1, family=RthPowers(2))


@lru_cache(maxsize=None)
def triangular_formula() -> ComplementFormula:
    return ComplementFormula(parse(PSI_TRIANGULAR), n0=1, family=Triangular())


@lru_cache(maxsize=None)
def cubes_formula() -> ComplementFormula:
    return ComplementFormula(parse(PSI_CUBES), n0=1, family=RthPowers(3))


@lru_cache(maxsize=None)
def rth_powers_formula(r: int) -> ComplementFormula:
    return ComplementFormula(parse(PSI_RTH_POWERS.format(r=r)), n0=1, family=RthPowers(r))


@lru_cache(maxsize=None)
def powers_of_formula(a: int) -> ComplementFormula:
    return ComplementFormula(parse(PSI_POWERS_OF.format(a=a)), n0=2, family=PowersOf(a))


@lru_cache(maxsize=None)
def fibonacci_formula() -> ComplementFormula:
    return ComplementFormula(parse(PSI_FIBONACCI), n0=2, family=FibonacciShifted())


def builtin_formula(family: SequenceFamily) -> ComplementFormula:
    """The best built-in formula for a family.

    RthPowers(2) and RthPowers(3) get the dedicated square/cube formulas
    (simpler than the general r-th power form); rth_powers_formula(r)
    remains available for the general form at any r >= 2.
    """
    match family:
        case RthPowers(2):
            return squares_formula()
        case RthPowers(3):
            return cubes_formula()
        case RthPowers(r):
            return rth_powers_formula(r)
        case PowersOf(a):
            return powers_of_formula(a)
        case Triangular():
            return triangular_formula()
        case FibonacciShifted():
            return fibonacci_formula()
        case Custom():
            raise NoBuiltinFormulaError("custom families have no closed-form psi")
    raise TypeError(f"not a sequence family: {family!r}")


def family_label(family: SequenceFamily | None) -> str:
    match family:
        case RthPowers(r):
            return f"rth-powers(r={r})"
        case PowersOf(a):
            return f"powers-of(a={a})"
        case Triangular():
            return "triangular"
        case FibonacciShifted():
            return "fibonacci"
        case Custom(terms):
            return f"custom({len(terms)} terms)"
        case None:
            return "ad-hoc"
    raise TypeError(f"not a sequence family: {family!r}")
