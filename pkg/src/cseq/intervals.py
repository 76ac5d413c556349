"""Arbitrary-precision interval arithmetic with outward rounding.

Endpoints are MPFR floats (via gmpy2) computed under explicit
directed-rounding contexts: lower endpoints round toward -inf, upper
endpoints toward +inf, so every primitive returns an interval that
contains the exact image of its operands. Precision is always an
explicit parameter; there is no global rounding or precision state,
which keeps everything here safe to call from multiple threads.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import gmpy2
from gmpy2 import mpfr, mpq


class DomainError(ArithmeticError):
    """An operand interval touches a region where the operation is undefined
    (log of a nonpositive value, division by zero, even root of a negative)."""


@lru_cache(maxsize=None)
def _down(bits: int) -> gmpy2.context:
    return gmpy2.context(precision=bits, round=gmpy2.RoundDown)


@lru_cache(maxsize=None)
def _up(bits: int) -> gmpy2.context:
    return gmpy2.context(precision=bits, round=gmpy2.RoundUp)


@dataclass(frozen=True)
class Interval:
    """A closed enclosure [lo, hi] of one real number, at a working precision."""

    lo: mpfr
    hi: mpfr
    bits: int

    def __post_init__(self) -> None:
        if not (gmpy2.is_finite(self.lo) and gmpy2.is_finite(self.hi)):
            raise DomainError(f"non-finite interval endpoint: [{self.lo}, {self.hi}]")
        if self.lo > self.hi:
            raise AssertionError(f"inverted interval [{self.lo}, {self.hi}]")

    def width(self) -> mpfr:
        return _up(self.bits).sub(self.hi, self.lo)

    def __str__(self) -> str:
        return f"[{self.lo}, {self.hi}]@{self.bits}"


def iv_from_rational(q: Fraction | int, bits: int) -> Interval:
    """Tightest bits-wide enclosure of an exact rational (width 0 when
    the value is exactly representable)."""
    v = mpq(q)
    return Interval(mpfr(v, context=_down(bits)), mpfr(v, context=_up(bits)), bits)


def iv_add(a: Interval, b: Interval) -> Interval:
    bits = max(a.bits, b.bits)
    return Interval(_down(bits).add(a.lo, b.lo), _up(bits).add(a.hi, b.hi), bits)


def iv_sub(a: Interval, b: Interval) -> Interval:
    bits = max(a.bits, b.bits)
    return Interval(_down(bits).sub(a.lo, b.hi), _up(bits).sub(a.hi, b.lo), bits)


def iv_neg(a: Interval) -> Interval:
    # explicit contexts: gmpy2's bare unary minus rounds to the ambient
    # (53-bit) context, which would corrupt high-precision endpoints
    return Interval(_down(a.bits).minus(a.hi), _up(a.bits).minus(a.lo), a.bits)


def iv_mul(a: Interval, b: Interval) -> Interval:
    bits = max(a.bits, b.bits)
    d, u = _down(bits), _up(bits)
    pairs = ((a.lo, b.lo), (a.lo, b.hi), (a.hi, b.lo), (a.hi, b.hi))
    return Interval(min(d.mul(x, y) for x, y in pairs), max(u.mul(x, y) for x, y in pairs), bits)


def iv_div(a: Interval, b: Interval) -> Interval:
    if b.lo <= 0 <= b.hi:
        raise DomainError(f"division by an interval containing 0: {b}")
    bits = max(a.bits, b.bits)
    d, u = _down(bits), _up(bits)
    pairs = ((a.lo, b.lo), (a.lo, b.hi), (a.hi, b.lo), (a.hi, b.hi))
    return Interval(min(d.div(x, y) for x, y in pairs), max(u.div(x, y) for x, y in pairs), bits)


def iv_sqrt(a: Interval) -> Interval:
    if a.lo < 0:
        raise DomainError(f"square root of an interval reaching below 0: {a}")
    return Interval(_down(a.bits).sqrt(a.lo), _up(a.bits).sqrt(a.hi), a.bits)


def iv_root(k: int, a: Interval) -> Interval:
    if k < 2:
        raise ValueError(f"root degree must be >= 2, got {k}")
    if k % 2 == 0 and a.lo < 0:
        raise DomainError(f"even root of an interval reaching below 0: {a}")
    return Interval(_down(a.bits).rootn(a.lo, k), _up(a.bits).rootn(a.hi, k), a.bits)


def iv_ln(a: Interval) -> Interval:
    if a.lo <= 0:
        raise DomainError(f"logarithm of an interval reaching 0 or below: {a}")
    return Interval(_down(a.bits).log(a.lo), _up(a.bits).log(a.hi), a.bits)


def iv_log(base: Interval, a: Interval) -> Interval:
    """log_base(a) as ln(a)/ln(base); the base must be certifiably > 1."""
    if base.lo <= 1:
        raise DomainError(f"log base not certifiably > 1: {base}")
    return iv_div(iv_ln(a), iv_ln(base))


def iv_pow_int(a: Interval, n: int) -> Interval:
    d, u = _down(a.bits), _up(a.bits)
    if n == 0:
        one = mpfr(1, context=d)
        return Interval(one, one, a.bits)
    if n < 0:
        return iv_div(iv_from_rational(1, a.bits), iv_pow_int(a, -n))
    if n % 2 == 1 or a.lo >= 0:
        return Interval(d.pow(a.lo, n), u.pow(a.hi, n), a.bits)
    if a.hi <= 0:  # even power of a nonpositive interval: decreasing
        return Interval(d.pow(a.hi, n), u.pow(a.lo, n), a.bits)
    # even power straddling 0: minimum is exactly 0
    return Interval(mpfr(0, context=d), max(u.pow(a.lo, n), u.pow(a.hi, n)), a.bits)


def iv_pow_rational(a: Interval, q: Fraction) -> Interval:
    """a**q for an exact rational exponent, via integer power then root."""
    if q.denominator == 1:
        return iv_pow_int(a, q.numerator)
    if q.denominator % 2 == 0 and a.lo < 0:
        raise DomainError(f"fractional power with even root of a negative-reaching interval: {a}")
    return iv_root(q.denominator, iv_pow_int(a, q.numerator))


def iv_phi(bits: int) -> Interval:
    """The golden ratio (1 + sqrt 5)/2 enclosed at the working precision."""
    five = iv_from_rational(5, bits)
    return iv_div(iv_add(iv_from_rational(1, bits), iv_sqrt(five)), iv_from_rational(2, bits))
