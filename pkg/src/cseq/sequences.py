"""Exact integer sequences and the brute-force complement oracle.

Every value in this module is an exact Python int; nothing here rounds.
The supported base sequences are r-th powers, powers of a fixed base,
triangular numbers, the shifted Fibonacci sequence u_n = F(n+2) (shifted
so the terms are strictly increasing), and user-supplied term lists.
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass
from math import isqrt
from pathlib import Path


@dataclass(frozen=True)
class RthPowers:
    """u_n = n**r for a fixed integer r >= 2."""

    r: int

    def __post_init__(self) -> None:
        if self.r < 2:
            raise ValueError(f"r-th power family needs r >= 2, got {self.r}")


@dataclass(frozen=True)
class PowersOf:
    """u_n = a**n for a fixed integer base a >= 2."""

    a: int

    def __post_init__(self) -> None:
        if self.a < 2:
            raise ValueError(f"powers family needs base >= 2, got {self.a}")


@dataclass(frozen=True)
class Triangular:
    """u_n = n*(n+1)/2."""


@dataclass(frozen=True)
class FibonacciShifted:
    """u_n = F(n+2): the Fibonacci numbers 1, 2, 3, 5, 8, ...

    The shift by two drops F(0) = 0 and the repeated 1 (F(1) = F(2) = 1),
    which is what makes the sequence strictly increasing.
    """


@dataclass(frozen=True)
class Custom:
    """An explicit, strictly increasing list of nonnegative terms."""

    terms: tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.terms:
            raise ValueError("custom family needs at least one term")
        if self.terms[0] < 0:
            raise ValueError("custom terms must be nonnegative")
        for a, b in zip(self.terms, self.terms[1:]):
            if b <= a:
                raise ValueError(f"custom terms must be strictly increasing ({a} then {b})")


SequenceFamily = RthPowers | PowersOf | Triangular | FibonacciShifted | Custom


def fib(n: int) -> int:
    """Exact F(n) by fast doubling: O(log n) big-integer multiplications.

    Uses F(2k) = F(k)*(2*F(k+1) - F(k)) and F(2k+1) = F(k)**2 + F(k+1)**2.
    """
    if n < 0:
        raise ValueError(f"fib index must be >= 0, got {n}")
    a, b = 0, 1  # F(0), F(1)
    for i in range(n.bit_length() - 1, -1, -1):
        c = a * (2 * b - a)
        d = a * a + b * b
        if (n >> i) & 1:
            a, b = d, c + d
        else:
            a, b = c, d
    return a


def term(family: SequenceFamily, n: int) -> int:
    """The exact n-th term u_n (n >= 0)."""
    if n < 0:
        raise ValueError(f"term index must be >= 0, got {n}")
    match family:
        case RthPowers(r):
            return n**r
        case PowersOf(a):
            return a**n
        case Triangular():
            return n * (n + 1) // 2
        case FibonacciShifted():
            return fib(n + 2)
        case Custom(terms):
            if n >= len(terms):
                raise IndexError(f"custom family has {len(terms)} terms, index {n} out of range")
            return terms[n]
    raise TypeError(f"not a sequence family: {family!r}")


def int_root(v: int, k: int) -> tuple[int, bool]:
    """Floor k-th root of v >= 0 plus an exactness flag, all in integers."""
    if v < 0:
        raise ValueError("int_root needs v >= 0")
    if k < 1:
        raise ValueError("int_root needs k >= 1")
    if v in (0, 1) or k == 1:
        return v, True
    if k == 2:
        r = isqrt(v)
        return r, r * r == v
    # Newton iteration from a bit-length overestimate; monotone decreasing.
    x = 1 << (v.bit_length() + k - 1) // k
    while True:
        y = ((k - 1) * x + v // x ** (k - 1)) // k
        if y >= x:
            break
        x = y
    while x**k > v:  # guard against overshoot on tiny inputs
        x -= 1
    return x, x**k == v


def is_member(family: SequenceFamily, v: int) -> bool:
    """True iff v equals u_n for some n, decided exactly."""
    if v < 0:
        return False
    match family:
        case RthPowers(r):
            return int_root(v, r)[1]
        case PowersOf(a):
            if v < 1:
                return False
            while v % a == 0:
                v //= a
            return v == 1
        case Triangular():
            s = isqrt(8 * v + 1)
            return s * s == 8 * v + 1
        case FibonacciShifted():
            a, b = 1, 2  # F(2), F(3)
            while a < v:
                a, b = b, a + b
            return a == v
        case Custom(terms):
            i = bisect.bisect_left(terms, v)
            return i < len(terms) and terms[i] == v
    raise TypeError(f"not a sequence family: {family!r}")


def oracle_complement(family: SequenceFamily, hi: int) -> list[int]:
    """All integers in [u_0, hi] that are not terms of the family.

    Ground-truth sieve: marks every term <= hi and returns the unmarked
    integers in order. A Custom family is treated as the whole sequence,
    so integers past its last term count as complement members.
    """
    u0 = term(family, 0)
    if hi < u0:
        raise ValueError(f"sieve bound {hi} is below the first term {u0}")
    marked = bytearray(hi - u0 + 1)
    n = 0
    while True:
        try:
            t = term(family, n)
        except IndexError:  # Custom ran out of terms
            break
        if t > hi:
            break
        marked[t - u0] = 1
        n += 1
    return [u0 + i for i, m in enumerate(marked) if not m]


def load_custom_terms(path: str | Path) -> Custom:
    """Read a Custom family from a text file: one unsigned decimal integer
    per line, strictly increasing; blank lines are ignored."""
    terms: list[int] = []
    for lineno, raw in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if not line.isdigit():
            raise ValueError(f"{path}:{lineno}: not an unsigned decimal integer: {line!r}")
        terms.append(int(line))
    return Custom(tuple(terms))
