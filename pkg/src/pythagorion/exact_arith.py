"""Exact numbers of the form 3^b / 2^a.

Every note and every step in a Pythagorean scale is such a number, so the
whole library works with exponent pairs.  Ordering is decided with exact
big-integer arithmetic; cents are computed for display only.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from decimal import ROUND_HALF_UP, Decimal, localcontext
from fractions import Fraction

__all__ = [
    "Monomial",
    "ONE",
    "OCTAVE",
    "compare",
    "mul",
    "cents",
    "cents_decimal",
    "format_cents",
    "octave_exponent",
    "pow3",
    "pow2",
    "LOG2_3",
]

_CENTS_PREC = 60
_QUANTUM = Decimal("0.000001")


def _log2_3() -> Decimal:
    with localcontext() as ctx:
        ctx.prec = _CENTS_PREC
        return Decimal(3).ln() / Decimal(2).ln()


LOG2_3: Decimal = _log2_3()


@functools.lru_cache(maxsize=None)
def pow3(e: int) -> int:
    """Memoized ``3**e`` for ``e >= 0``."""
    if e < 0:
        raise ValueError(f"negative exponent {e}")
    return 3**e


def pow2(e: int) -> int:
    if e < 0:
        raise ValueError(f"negative exponent {e}")
    return 1 << e


@functools.total_ordering
@dataclass(frozen=True, slots=True)
class Monomial:
    """The exact number ``3**pow3 / 2**pow2``.

    log2(3) is irrational, so two monomials are equal as real numbers exactly
    when their exponent pairs match; dataclass equality is value equality.
    """

    pow3: int
    pow2: int

    def __lt__(self, other: object) -> bool:
        if not isinstance(other, Monomial):
            return NotImplemented
        return compare(self, other) < 0

    def __mul__(self, other: Monomial) -> Monomial:
        if not isinstance(other, Monomial):
            return NotImplemented
        return Monomial(self.pow3 + other.pow3, self.pow2 + other.pow2)

    def __truediv__(self, other: Monomial) -> Monomial:
        if not isinstance(other, Monomial):
            return NotImplemented
        return Monomial(self.pow3 - other.pow3, self.pow2 - other.pow2)

    def __pow__(self, k: int) -> Monomial:
        return Monomial(self.pow3 * k, self.pow2 * k)

    def inverse(self) -> Monomial:
        return Monomial(-self.pow3, -self.pow2)

    @property
    def exponents(self) -> tuple[int, int]:
        return (self.pow3, self.pow2)

    def fraction(self) -> Fraction:
        """Exact rational value."""
        num = pow3(self.pow3) if self.pow3 >= 0 else 1
        den = pow3(-self.pow3) if self.pow3 < 0 else 1
        if self.pow2 >= 0:
            den <<= self.pow2
        else:
            num <<= -self.pow2
        return Fraction(num, den)

    def __float__(self) -> float:
        return float(self.fraction())

    def cents(self) -> float:
        return cents(self)

    def __str__(self) -> str:
        return f"3^{self.pow3}/2^{self.pow2}"


ONE = Monomial(0, 0)
OCTAVE = Monomial(0, -1)


def compare(m1: Monomial, m2: Monomial) -> int:
    """Return -1, 0 or 1 as ``m1`` is less than, equal to or greater than ``m2``.

    ``3^b1/2^a1 <=> 3^b2/2^a2`` reduces to ``3^db * 2^-da <=> 1`` with the
    negative exponents moved across, so only non-negative integer powers are
    ever formed.
    """
    db = m1.pow3 - m2.pow3
    da = m1.pow2 - m2.pow2
    if db == 0 and da == 0:
        return 0
    lhs = pow3(max(db, 0)) << max(-da, 0)
    rhs = pow3(max(-db, 0)) << max(da, 0)
    # lhs == rhs would need 3^x == 2^y with (x, y) != (0, 0)
    return -1 if lhs < rhs else 1


def mul(m1: Monomial, m2: Monomial) -> Monomial:
    return m1 * m2


def cents_decimal(m: Monomial) -> Decimal:
    """Cents as a high-precision Decimal (60 significant digits)."""
    with localcontext() as ctx:
        ctx.prec = _CENTS_PREC
        return 1200 * (m.pow3 * LOG2_3 - m.pow2)


def cents(m: Monomial) -> float:
    """``1200 * log2(m)`` as a float."""
    return float(cents_decimal(m))


def format_cents(m: Monomial) -> str:
    """Cents rounded half away from zero to six decimals, e.g. ``'701.955001'``."""
    with localcontext() as ctx:
        ctx.prec = _CENTS_PREC
        q = cents_decimal(m).quantize(_QUANTUM, rounding=ROUND_HALF_UP)
    # Decimal keeps the sign of a rounded-away negative zero
    if q == 0:
        q = abs(q)
    return f"{q:f}"


def octave_exponent(b: int) -> int:
    """The unique ``a`` with ``2**a < 3**b < 2**(a+1)``.

    ``b = 0`` has no unique answer (1 and 2 both lie on the boundary) and is
    rejected.
    """
    if b < 1:
        raise ValueError(f"octave_exponent needs b >= 1, got {b}")
    p = pow3(b)
    a = p.bit_length() - 1
    # 3^b is odd and > 1, so it is never a power of two
    assert (1 << a) < p < (1 << (a + 1))
    return a
