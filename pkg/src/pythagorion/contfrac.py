"""Continued fraction of log2(3), its convergents and semi-convergents.

Partial quotients come from a Stern-Brocot descent: at each mediant p/q the
direction is decided by the exact comparison ``2**p`` vs ``3**q``, and the
run lengths of same-direction moves are the partial quotients.
"""

from __future__ import annotations

import functools
import os
from dataclasses import dataclass
from typing import Iterator, Optional

from .exact_arith import pow3

__all__ = [
    "ContinuedFraction",
    "Convergent",
    "SemiConvergent",
    "CapExceededError",
    "DEFAULT_CF_CAP",
    "CF_CAP_ENV",
    "cf_cap",
    "cf_log2_3",
    "convergents",
    "convergent_table",
    "semiconvergents",
    "semiconvergent_denominators",
    "is_semiconvergent_denominator",
    "below_log2_3",
]

DEFAULT_CF_CAP = 12
CF_CAP_ENV = "PYTHAGORION_CF_CAP"


class CapExceededError(ValueError):
    """More continued-fraction terms were needed than the configured cap allows."""


def cf_cap() -> int:
    raw = os.environ.get(CF_CAP_ENV)
    if raw is None or raw.strip() == "":
        return DEFAULT_CF_CAP
    try:
        cap = int(raw)
    except ValueError:
        raise ValueError(f"{CF_CAP_ENV} must be an integer, got {raw!r}") from None
    if cap < 1:
        raise ValueError(f"{CF_CAP_ENV} must be >= 1, got {cap}")
    return cap


@dataclass(frozen=True)
class ContinuedFraction:
    terms: tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.terms:
            raise ValueError("a continued fraction needs at least one term")
        if any(t < 1 for t in self.terms):
            raise ValueError(f"partial quotients must be positive: {self.terms}")

    def __len__(self) -> int:
        return len(self.terms)

    def __getitem__(self, i: int) -> int:
        return self.terms[i]


@dataclass(frozen=True)
class Convergent:
    index: int
    numerator: int
    denominator: int

    def __str__(self) -> str:
        return f"{self.numerator}/{self.denominator}"


@dataclass(frozen=True)
class SemiConvergent:
    """``(a[i-1] + k*a[i]) / (b[i-1] + k*b[i])`` with ``0 <= k <= k[i+1]``."""

    numerator: int
    denominator: int
    i: int
    k: int

    @property
    def is_convergent(self) -> bool:
        return self.k == 0

    def __str__(self) -> str:
        return f"{self.numerator}/{self.denominator}"


def below_log2_3(p: int, q: int) -> bool:
    """True iff ``p/q < log2(3)``, i.e. ``2**p < 3**q`` (``q >= 1``, ``p >= 0``)."""
    return (1 << p) < pow3(q)


@functools.lru_cache(maxsize=None)
def _descend(num_terms: int) -> tuple[int, ...]:
    # Bounds start at 0/1 and 1/0. The first run counts moves to the right,
    # so k0 = 0 would be emitted for a number below 1.
    lp, lq, rp, rq = 0, 1, 1, 0
    terms: list[int] = []
    going_right = True
    run = 0
    while len(terms) < num_terms:
        p, q = lp + rp, lq + rq
        right = below_log2_3(p, q)
        if right != going_right:
            terms.append(run)
            going_right = right
            run = 0
        run += 1
        if right:
            lp, lq = p, q
        else:
            rp, rq = p, q
    return tuple(terms)


def cf_log2_3(num_terms: int, cap: Optional[int] = None) -> ContinuedFraction:
    """First ``num_terms`` partial quotients of log2(3), computed exactly.

    >>> cf_log2_3(4).terms
    (1, 1, 1, 2)
    """
    if cap is None:
        cap = cf_cap()
    if num_terms < 1:
        raise ValueError(f"num_terms must be >= 1, got {num_terms}")
    if num_terms > cap:
        raise CapExceededError(
            f"{num_terms} terms requested but the cap is {cap} (set {CF_CAP_ENV} to raise it)"
        )
    return ContinuedFraction(_descend(num_terms))


def convergents(cf: ContinuedFraction) -> list[Convergent]:
    """Convergents for ``i = -1 .. len(cf)-1`` via the standard recursion."""
    out = [Convergent(-1, 1, 0)]
    a_prev, b_prev = 1, 0
    a, b = cf[0], 1
    out.append(Convergent(0, a, b))
    for i in range(1, len(cf)):
        k = cf[i]
        a, a_prev = k * a + a_prev, a
        b, b_prev = k * b + b_prev, b
        out.append(Convergent(i, a, b))
    return out


@dataclass(frozen=True)
class ConvergentTable:
    """Partial quotients plus convergents, indexable by convergent index ``i >= -1``."""

    cf: ContinuedFraction
    rows: tuple[Convergent, ...]

    def a(self, i: int) -> int:
        return self.rows[i + 1].numerator

    def b(self, i: int) -> int:
        return self.rows[i + 1].denominator

    def k(self, i: int) -> int:
        return self.cf[i]

    @property
    def last_index(self) -> int:
        return len(self.cf) - 1

    def has_index(self, i: int) -> bool:
        return -1 <= i <= self.last_index

    def index_for(self, n: int) -> int:
        """Index ``i >= 1`` with ``b[i-1] < n <= b[i]`` (needs ``n >= 2``)."""
        if n < 2:
            raise ValueError(f"no convergent bracket for n={n}")
        for i in range(1, self.last_index + 1):
            if self.b(i - 1) < n <= self.b(i):
                return i
        raise CapExceededError(f"n={n} exceeds the largest computed denominator {self.b(self.last_index)}")


@functools.lru_cache(maxsize=None)
def _table(num_terms: int) -> ConvergentTable:
    cf = ContinuedFraction(_descend(num_terms))
    return ConvergentTable(cf, tuple(convergents(cf)))


def convergent_table(num_terms: Optional[int] = None) -> ConvergentTable:
    """Shared table of the first ``num_terms`` terms (default: the configured cap)."""
    cap = cf_cap()
    if num_terms is None:
        num_terms = cap
    cf_log2_3(num_terms, cap)  # validates against the cap
    return _table(num_terms)


def _table_covering(max_denominator: int) -> ConvergentTable:
    """Smallest table whose semi-convergent families exhaust ``max_denominator``.

    Family ``i`` needs ``k[i+1]`` unless even its first intermediate is out of
    range, so terms are added until ``b[i-1] + b[i] > max_denominator`` for the
    last family.
    """
    cap = cf_cap()
    n = 2
    while True:
        if n > cap:
            raise CapExceededError(
                f"denominators up to {max_denominator} need more than {cap} terms "
                f"(set {CF_CAP_ENV} to raise it)"
            )
        t = _table(n)
        last = t.last_index
        if t.b(last - 1) + t.b(last) > max_denominator:
            return t
        n += 1


def _families(t: ConvergentTable) -> Iterator[SemiConvergent]:
    # Family i runs from a[i-1]/b[i-1] (k = 0) to a[i+1]/b[i+1] (k = k[i+1]).
    # Emitted in the listing order c[1], family-2 intermediates, c[2],
    # family-3 intermediates, ...: every convergent once, the i = 1 family's
    # 1/1 left out.
    last = t.last_index
    for i in range(2, last + 2):
        yield SemiConvergent(t.a(i - 1), t.b(i - 1), i, 0)
        if i > last:
            return
        a0, b0 = t.a(i - 1), t.b(i - 1)
        a1, b1 = t.a(i), t.b(i)
        # k[i+1] is unknown for the last family; k[i+1] >= 1 makes k = 1
        # valid, and the covering table guarantees it is already out of range
        k_top = t.k(i + 1) if t.has_index(i + 1) else 2
        for k in range(1, k_top):
            yield SemiConvergent(a0 + k * a1, b0 + k * b1, i, k)


def semiconvergents(max_denominator: int) -> list[SemiConvergent]:
    """All semi-convergents with denominator ``<= max_denominator``, each fraction once.

    >>> [str(s) for s in semiconvergents(12)]
    ['2/1', '5/3', '3/2', '11/7', '8/5', '19/12']
    """
    if max_denominator < 1:
        raise ValueError(f"max_denominator must be >= 1, got {max_denominator}")
    t = _table_covering(max_denominator)
    return [s for s in _families(t) if s.denominator <= max_denominator]


def semiconvergent_denominators(max_denominator: int) -> list[int]:
    return sorted({s.denominator for s in semiconvergents(max_denominator)})


def is_semiconvergent_denominator(n: int) -> Optional[tuple[int, int]]:
    """A witness ``(i, k)`` with ``b[i-1] + k*b[i] == n`` and ``0 <= k <= k[i+1]``, or None."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    t = _table_covering(n)
    for i in range(1, t.last_index + 1):
        b0, b1 = t.b(i - 1), t.b(i)
        if b0 > n:
            break
        k, rem = divmod(n - b0, b1)
        if rem:
            continue
        if t.has_index(i + 1):
            if k <= t.k(i + 1):
                return (i, k)
        elif k == 0:
            return (i, 0)
    return None
