"""Certified evaluation of psi expressions at exact rational points.

Evaluation is hybrid: any subexpression built purely from rational
operations (and roots, powers or logs that happen to land on exact
rationals) is computed in exact rational arithmetic; everything else is
enclosed by outward-rounded intervals. Exact parts are only widened to
intervals at the moment they combine with an irrational part. This is
what makes half-integer values like sqrt(4) + 1/2 and hits like
log_2(1) = 0 certifiable instead of forever-straddling.

Floors and comparisons escalate the working precision by doubling, from
EvalConfig.initial_bits up to EvalConfig.max_bits, and report
Uncertified rather than ever guessing. A DomainError can also be
precision-dependent (an interval may straddle a forbidden region only
because it is still too wide), so escalation retries those too and
re-raises only at max precision.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .expr import Expr, Var, Phi, Number, Neg, Add, Sub, Mul, Div, Pow, Sqrt, Root, Ln, Log, contains_var
from .intervals import (
    DomainError,
    Interval,
    iv_add,
    iv_div,
    iv_from_rational,
    iv_ln,
    iv_mul,
    iv_neg,
    iv_phi,
    iv_pow_rational,
    iv_root,
    iv_sqrt,
    iv_sub,
)
from .sequences import int_root


@dataclass(frozen=True)
class EvalConfig:
    """Precision escalation policy: start at initial_bits, double up to max_bits."""

    initial_bits: int = 96
    max_bits: int = 8192

    def __post_init__(self) -> None:
        if not 32 <= self.initial_bits <= self.max_bits:
            raise ValueError(f"need 32 <= initial_bits <= max_bits, got {self}")


DEFAULT_CONFIG = EvalConfig()


@dataclass(frozen=True)
class Determined:
    """A floor value that provably excludes every other integer."""

    value: int
    bits_used: int


@dataclass(frozen=True)
class Uncertified:
    """The enclosure still admitted more than one answer at max precision."""

    interval: Interval
    bits_used: int


CertifiedOutcome = Determined | Uncertified


class Comparison(enum.Enum):
    STRICTLY_LESS = "strictly-less"
    GREATER_OR_EQUAL = "greater-or-equal"
    UNCERTIFIED = "uncertified"


class _Memo:
    """Per-run cache: constant-subtree values keyed by (node id, bits).

    Values keep a reference to their node so the id keys stay valid for
    the memo's lifetime.
    """

    def __init__(self) -> None:
        self.const: dict = {}
        self.hasvar: dict = {}


def _floor_exact(x) -> int:
    """Exact floor of an mpfr of any precision.

    int() truncates exactly; gmpy2.floor() would round its result to the
    ambient context's precision and give wrong integers beyond 2**53.
    """
    t = int(x)
    return t if x >= t else t - 1


@lru_cache(maxsize=64)
def _phi(bits: int) -> Interval:
    return iv_phi(bits)


def _has_var(e: Expr, memo: _Memo) -> bool:
    hit = memo.hasvar.get(id(e))
    if hit is None:
        hit = (e, contains_var(e))
        memo.hasvar[id(e)] = hit
    return hit[1]


def _exact_root(q: Fraction, k: int) -> Fraction | None:
    """q**(1/k) when it is rational, else None. Caller handles q < 0."""
    if q < 0:
        r = _exact_root(-q, k)
        return -r if r is not None else None
    rn, exact_n = int_root(q.numerator, k)
    if not exact_n:
        return None
    rd, exact_d = int_root(q.denominator, k)
    if not exact_d:
        return None
    return Fraction(rn, rd)


def _exact_pow(v: Fraction, q: Fraction) -> Fraction | None:
    if v == 0 and q < 0:
        raise DomainError("zero raised to a negative power")
    if q.denominator == 1:
        return v ** q.numerator
    if v < 0 and q.denominator % 2 == 0:
        return None  # interval path raises the domain error
    return _exact_root(v ** q.numerator, q.denominator)


def _exact_log(base: Fraction, v: Fraction) -> Fraction | None:
    """log_base(v) when it is an exact integer, else None (base > 1, v > 0)."""
    if v == 1:
        return Fraction(0)
    if v < 1:
        r = _exact_log(base, 1 / v)
        return -r if r is not None else None
    acc = Fraction(1)
    k = 0
    while acc < v:
        acc *= base
        k += 1
    return Fraction(k) if acc == v else None


def _to_iv(v: Fraction | Interval, bits: int) -> Interval:
    if isinstance(v, Interval):
        return v
    return iv_from_rational(v, bits)


def _eval(e: Expr, x: Fraction | None, bits: int, memo: _Memo) -> Fraction | Interval:
    key = None
    if not _has_var(e, memo):
        key = (id(e), bits)
        hit = memo.const.get(key)
        if hit is not None:
            return hit[1]
    v = _eval_node(e, x, bits, memo)
    if key is not None:
        memo.const[key] = (e, v)
    return v


def _eval_node(e: Expr, x: Fraction | None, bits: int, memo: _Memo) -> Fraction | Interval:
    match e:
        case Number(value=q):
            return q
        case Var():
            if x is None:
                raise ValueError("expression has a free variable but no point was given")
            return x
        case Phi():
            return _phi(bits)
        case Neg(operand=a):
            v = _eval(a, x, bits, memo)
            return -v if isinstance(v, Fraction) else iv_neg(v)
        case Add(left=a, right=b) | Sub(left=a, right=b) | Mul(left=a, right=b) | Div(left=a, right=b):
            va = _eval(a, x, bits, memo)
            vb = _eval(b, x, bits, memo)
            if isinstance(va, Fraction) and isinstance(vb, Fraction):
                match e:
                    case Add():
                        return va + vb
                    case Sub():
                        return va - vb
                    case Mul():
                        return va * vb
                    case _:
                        if vb == 0:
                            raise DomainError("division by exact zero")
                        return va / vb
            ia, ib = _to_iv(va, bits), _to_iv(vb, bits)
            match e:
                case Add():
                    return iv_add(ia, ib)
                case Sub():
                    return iv_sub(ia, ib)
                case Mul():
                    return iv_mul(ia, ib)
                case _:
                    return iv_div(ia, ib)
        case Pow(base=a, exponent=q):
            v = _eval(a, x, bits, memo)
            if isinstance(v, Fraction):
                r = _exact_pow(v, q)
                if r is not None:
                    return r
            return iv_pow_rational(_to_iv(v, bits), q)
        case Sqrt(operand=a):
            v = _eval(a, x, bits, memo)
            if isinstance(v, Fraction):
                if v < 0:
                    raise DomainError(f"square root of exact negative {v}")
                r = _exact_root(v, 2)
                if r is not None:
                    return r
            return iv_sqrt(_to_iv(v, bits))
        case Root(degree=k, operand=a):
            v = _eval(a, x, bits, memo)
            if isinstance(v, Fraction):
                if v < 0 and k % 2 == 0:
                    raise DomainError(f"even root of exact negative {v}")
                r = _exact_root(v, k)
                if r is not None:
                    return r
            return iv_root(k, _to_iv(v, bits))
        case Ln(operand=a):
            v = _eval(a, x, bits, memo)
            if isinstance(v, Fraction):
                if v <= 0:
                    raise DomainError(f"logarithm of exact nonpositive {v}")
                if v == 1:
                    return Fraction(0)
            return iv_ln(_to_iv(v, bits))
        case Log(base=b, operand=a):
            vb = _eval(b, x, bits, memo)
            if isinstance(vb, Fraction):
                if vb <= 1:
                    raise DomainError(f"log base {vb} is not > 1")
            elif vb.lo <= 1:
                raise DomainError(f"log base not certifiably > 1: {vb}")
            va = _eval(a, x, bits, memo)
            if isinstance(va, Fraction):
                if va <= 0:
                    raise DomainError(f"logarithm of exact nonpositive {va}")
                if va == 1:
                    return Fraction(0)
                if isinstance(vb, Fraction):
                    r = _exact_log(vb, va)
                    if r is not None:
                        return r
            ln_base = _ln_of_base(b, vb, bits, memo)
            return iv_div(iv_ln(_to_iv(va, bits)), ln_base)
    raise TypeError(f"not an Expr: {e!r}")


def _ln_of_base(base_node: Expr, base_val: Fraction | Interval, bits: int, memo: _Memo) -> Interval:
    key = (id(base_node), bits, "ln")
    hit = memo.const.get(key)
    if hit is None:
        hit = (base_node, iv_ln(_to_iv(base_val, bits)))
        memo.const[key] = hit
    return hit[1]


def eval_interval(e: Expr, x: Fraction | int | None, bits: int, memo: _Memo | None = None) -> Interval:
    """Enclose the exact value of e at the point x with bits of working
    precision (single shot, no escalation)."""
    if x is not None:
        x = Fraction(x)
    v = _eval(e, x, bits, memo if memo is not None else _Memo())
    return _to_iv(v, bits)


def certified_floor(
    e: Expr,
    x: Fraction | int | None,
    cfg: EvalConfig = DEFAULT_CONFIG,
    memo: _Memo | None = None,
) -> CertifiedOutcome:
    """The floor of e at x, reported only when provable.

    Determined(m) requires m <= lo and hi < m + 1 for the refined
    enclosure [lo, hi], or an exact rational value. Escalates precision
    by doubling; never converts a straddling enclosure into a guess.
    """
    if x is not None:
        x = Fraction(x)
    memo = memo if memo is not None else _Memo()
    bits = cfg.initial_bits
    while True:
        try:
            v = _eval(e, x, bits, memo)
        except DomainError:
            if bits >= cfg.max_bits:
                raise
            bits = min(bits * 2, cfg.max_bits)
            continue
        if isinstance(v, Fraction):
            return Determined(v.numerator // v.denominator, bits)
        m = _floor_exact(v.lo)
        if v.hi < m + 1:
            return Determined(m, bits)
        if bits >= cfg.max_bits:
            return Uncertified(v, bits)
        bits = min(bits * 2, cfg.max_bits)


def certified_compare(
    e: Expr,
    x: Fraction | int | None,
    n: int,
    cfg: EvalConfig = DEFAULT_CONFIG,
    memo: _Memo | None = None,
) -> Comparison:
    """Certified position of e(x) against the integer n: strictly below,
    or at-or-above, or uncertified if still straddling at max precision."""
    if x is not None:
        x = Fraction(x)
    memo = memo if memo is not None else _Memo()
    bits = cfg.initial_bits
    while True:
        try:
            v = _eval(e, x, bits, memo)
        except DomainError:
            if bits >= cfg.max_bits:
                raise
            bits = min(bits * 2, cfg.max_bits)
            continue
        if isinstance(v, Fraction):
            return Comparison.STRICTLY_LESS if v < n else Comparison.GREATER_OR_EQUAL
        if v.hi < n:
            return Comparison.STRICTLY_LESS
        if v.lo >= n:
            return Comparison.GREATER_OR_EQUAL
        if bits >= cfg.max_bits:
            return Comparison.UNCERTIFIED
        bits = min(bits * 2, cfg.max_bits)


def certainly_greater_one(e: Expr) -> bool:
    """True only when the constant expression e is certifiably > 1.

    Used to validate log bases; tops out at 512 bits and answers False on
    any domain problem or unresolved straddle.
    """
    bits = 96
    while True:
        try:
            v = _eval(e, None, bits, _Memo())
        except (DomainError, ValueError):
            return False
        if isinstance(v, Fraction):
            return v > 1
        if v.lo > 1:
            return True
        if v.hi <= 1:
            return False
        if bits >= 512:
            return False
        bits = min(bits * 2, 512)
