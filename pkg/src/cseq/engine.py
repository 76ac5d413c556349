"""Complement generation, hypothesis verification and oracle cross-checks.

The floor generator floor(n + psi(n)) enumerates the complement of a
family provided psi's inverse phi brackets the family's terms:

    u_n - n < phi(n) <= u_n - n + 1        for every checked index n,

equivalently, in the psi form actually checked here,

    psi(u_n - n) < n   and   psi(u_n - n + 1) >= n.

verify_hypothesis certifies both inequalities per index with exact u_n.
Index 0 is anomalous: every built-in fails the first inequality there
(e.g. for squares psi(0) = 1/2 is not < 0), while the generated range
n >= n0 >= 1 never relies on it; hypothesis_start makes the checked
range explicit instead of hiding that. Uncertified indices count
against verification: a verifier that skips hard cases is not a
verifier.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .evaluation import (
    Comparison,
    Determined,
    DomainError,
    EvalConfig,
    DEFAULT_CONFIG,
    _Memo,
    certified_compare,
    certified_floor,
)
from .expr import Add, Var
from .formulas import ComplementFormula, family_label
from .parser import parse
from .sequences import FibonacciShifted, oracle_complement, term


class UncertifiedError(ArithmeticError):
    """A floor could not be certified at max precision; generation aborts
    at the offending index rather than emit a guess."""

    def __init__(self, index: int, bits_used: int):
        self.index = index
        self.bits_used = bits_used
        super().__init__(f"uncertified floor at index {index} (max precision {bits_used} bits)")


@dataclass(frozen=True)
class HypothesisFailure:
    n: int
    inequality: str  # "first": psi(u_n - n) < n; "second": psi(u_n - n + 1) >= n
    direction: str  # the certified direction that contradicts, or "domain-error"


@dataclass
class VerificationReport:
    family: str
    n_lo: int
    n_hi: int
    failures: list[HypothesisFailure]
    uncertified: list[int]

    @property
    def passed(self) -> bool:
        return not self.failures and not self.uncertified


@dataclass(frozen=True)
class CrosscheckMismatch:
    n: int
    formula_value: int
    oracle_value: int


@dataclass
class CrosscheckReport:
    family: str
    n_from: int
    n_to: int
    mismatches: list[CrosscheckMismatch]

    @property
    def passed(self) -> bool:
        return not self.mismatches


def generate_records(
    f: ComplementFormula,
    n_from: int,
    n_to: int,
    cfg: EvalConfig = DEFAULT_CONFIG,
) -> list[tuple[int, int, int]]:
    """Certified floor(n + psi(n)) for n in [n_from, n_to], as
    (n, value, bits_used) triples in index order."""
    if n_from < f.n0:
        raise ValueError(f"start index {n_from} is below the formula's n0 = {f.n0}")
    if n_from > n_to:
        raise ValueError(f"empty index range [{n_from}, {n_to}]")
    generator = Add(Var(), f.psi)
    memo = _Memo()
    out: list[tuple[int, int, int]] = []
    for n in range(n_from, n_to + 1):
        outcome = certified_floor(generator, n, cfg, memo)
        if not isinstance(outcome, Determined):
            raise UncertifiedError(n, outcome.bits_used)
        out.append((n, outcome.value, outcome.bits_used))
    return out


def generate(
    f: ComplementFormula,
    n_from: int,
    n_to: int,
    cfg: EvalConfig = DEFAULT_CONFIG,
) -> list[int]:
    """The generated complement values for n in [n_from, n_to]."""
    return [value for _, value, _ in generate_records(f, n_from, n_to, cfg)]


def verify_hypothesis(
    f: ComplementFormula,
    n_max: int,
    cfg: EvalConfig = DEFAULT_CONFIG,
) -> VerificationReport:
    """Certify psi(u_n - n) < n and psi(u_n - n + 1) >= n for every
    n in [f.hypothesis_start, n_max], with exact sequence terms."""
    if f.family is None:
        raise ValueError("formula has no family to verify against")
    if n_max < f.hypothesis_start:
        raise ValueError(f"n_max {n_max} is below hypothesis_start {f.hypothesis_start}")
    failures: list[HypothesisFailure] = []
    uncertified: list[int] = []
    memo = _Memo()
    for n in range(f.hypothesis_start, n_max + 1):
        u = term(f.family, n)
        checks = (
            ("first", Fraction(u - n), Comparison.STRICTLY_LESS),
            ("second", Fraction(u - n + 1), Comparison.GREATER_OR_EQUAL),
        )
        for name, arg, wanted in checks:
            try:
                got = certified_compare(f.psi, arg, n, cfg, memo)
            except DomainError:
                failures.append(HypothesisFailure(n, name, "domain-error"))
                continue
            if got is Comparison.UNCERTIFIED:
                uncertified.append(n)
            elif got is not wanted:
                failures.append(HypothesisFailure(n, name, got.value))
    return VerificationReport(family_label(f.family), f.hypothesis_start, n_max, failures, uncertified)


def oracle_first(family, count: int) -> list[int]:
    """The first `count` complement values by sieve, growing the bound
    until enough appear."""
    if count < 1:
        raise ValueError(f"count must be >= 1, got {count}")
    hi = term(family, 0) + count
    while True:
        comp = oracle_complement(family, hi)
        if len(comp) >= count:
            return comp[:count]
        hi += count - len(comp) + 1


def crosscheck(
    f: ComplementFormula,
    count: int,
    cfg: EvalConfig = DEFAULT_CONFIG,
) -> CrosscheckReport:
    """Element-wise comparison of the formula's first `count` values
    against the sieve oracle's first `count` complement values."""
    if f.family is None:
        raise ValueError("formula has no family to cross-check against")
    if count < 1:
        raise ValueError(f"count must be >= 1, got {count}")
    formula_values = generate(f, f.n0, f.n0 + count - 1, cfg)
    oracle_values = oracle_first(f.family, count)
    mismatches = [
        CrosscheckMismatch(f.n0 + i, g, o)
        for i, (g, o) in enumerate(zip(formula_values, oracle_values))
        if g != o
    ]
    return CrosscheckReport(family_label(f.family), f.n0, f.n0 + count - 1, mismatches)


GOULD_STEP_TEXT = "log(phi, x) + log(phi, 5)/2 - 1"


@lru_cache(maxsize=1)
def _gould_step():
    return parse(GOULD_STEP_TEXT)


def gould_F(n: int, cfg: EvalConfig = DEFAULT_CONFIG, memo: _Memo | None = None) -> int:
    """Certified floor(log_phi(n) + log_phi(5)/2 - 1), n >= 1."""
    if n < 1:
        raise ValueError(f"gould_F needs n >= 1, got {n}")
    outcome = certified_floor(_gould_step(), n, cfg, memo)
    if not isinstance(outcome, Determined):
        raise UncertifiedError(n, outcome.bits_used)
    return outcome.value


def gould_term(n: int, cfg: EvalConfig = DEFAULT_CONFIG, memo: _Memo | None = None) -> int:
    """Gould's approximate n-th non-Fibonacci value n + F(n + F(n + F(n)))."""
    if n < 1:
        raise ValueError(f"gould_term needs n >= 1, got {n}")
    inner = gould_F(n, cfg, memo)
    middle = gould_F(n + inner, cfg, memo)
    outer = gould_F(n + middle, cfg, memo)
    return n + outer


@dataclass(frozen=True)
class GouldRow:
    n: int
    gould_value: int
    oracle_value: int
    equal: bool


def gould_compare(n_max: int, cfg: EvalConfig = DEFAULT_CONFIG) -> list[GouldRow]:
    """Side-by-side table of Gould's approximation against the sieve
    oracle for n in [1, n_max]. Informational only: the approximation is
    not expected to match everywhere and nothing is asserted."""
    if n_max < 1:
        return []
    oracle = oracle_first(FibonacciShifted(), n_max)
    memo = _Memo()
    rows = []
    for n in range(1, n_max + 1):
        g = gould_term(n, cfg, memo)
        rows.append(GouldRow(n, g, oracle[n - 1], g == oracle[n - 1]))
    return rows
