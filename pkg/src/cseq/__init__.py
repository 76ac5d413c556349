"""Complements of integer sequences via certified floor formulas.

Generate the integers missing from a base sequence (non-squares,
non-cubes, non-r-th-powers, non-powers-of-a, non-triangular,
non-Fibonacci) through closed-form floor generators, with every floor
certified by outward-rounded interval arithmetic, a per-index verifier
for the bracketing inequalities the generators rest on, and a
brute-force sieve oracle for ground truth.
"""

from .engine import (
    CrosscheckMismatch,
    CrosscheckReport,
    GouldRow,
    HypothesisFailure,
    UncertifiedError,
    VerificationReport,
    crosscheck,
    generate,
    generate_records,
    gould_F,
    gould_compare,
    gould_term,
    oracle_first,
    verify_hypothesis,
)
from .evaluation import (
    CertifiedOutcome,
    Comparison,
    Determined,
    EvalConfig,
    Uncertified,
    certified_compare,
    certified_floor,
    eval_interval,
)
from .expr import (
    Add,
    Div,
    Expr,
    Ln,
    Log,
    Mul,
    Neg,
    Number,
    Phi,
    Pow,
    Root,
    Sqrt,
    Sub,
    Var,
    free_var_count,
    unparse,
)
from .formulas import (
    ComplementFormula,
    NoBuiltinFormulaError,
    builtin_formula,
    cubes_formula,
    family_label,
    fibonacci_formula,
    powers_of_formula,
    rth_powers_formula,
    squares_formula,
    triangular_formula,
)
from .intervals import DomainError, Interval
from .parser import ParseError, parse
from .sequences import (
    Custom,
    FibonacciShifted,
    PowersOf,
    RthPowers,
    SequenceFamily,
    Triangular,
    fib,
    is_member,
    load_custom_terms,
    oracle_complement,
    term,
)

__version__ = "0.1.0"

__all__ = [
    "Add",
    "CertifiedOutcome",
    "Comparison",
    "ComplementFormula",
    "CrosscheckMismatch",
    "CrosscheckReport",
    "Custom",
    "Determined",
    "Div",
    "DomainError",
    "EvalConfig",
    "Expr",
    "FibonacciShifted",
    "GouldRow",
    "HypothesisFailure",
    "Interval",
    "Ln",
    "Log",
    "Mul",
    "Neg",
    "NoBuiltinFormulaError",
    "Number",
    "ParseError",
    "Phi",
    "Pow",
    "PowersOf",
    "Root",
    "RthPowers",
    "SequenceFamily",
    "Sqrt",
    "Sub",
    "Triangular",
    "Uncertified",
    "UncertifiedError",
    "Var",
    "VerificationReport",
    "builtin_formula",
    "certified_compare",
    "certified_floor",
    "crosscheck",
    "cubes_formula",
    "eval_interval",
    "family_label",
    "fib",
    "fibonacci_formula",
    "free_var_count",
    "generate",
    "generate_records",
    "gould_F",
    "gould_compare",
    "gould_term",
    "is_member",
    "load_custom_terms",
    "oracle_complement",
    "oracle_first",
    "parse",
    "powers_of_formula",
    "rth_powers_formula",
    "squares_formula",
    "term",
    "triangular_formula",
    "unparse",
    "verify_hypothesis",
]
