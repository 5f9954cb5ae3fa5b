"""The n-note Pythagorean scale and its step sequence."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from .exact_arith import OCTAVE, ONE, Monomial, octave_exponent, pow3

__all__ = [
    "PythagoreanScale",
    "build_scale",
    "generation_order",
    "step_sequence",
    "sort_exact",
    "distinct_steps",
]


def generation_order(n: int) -> list[Monomial]:
    """Notes in circle-of-fifths order: 1, 3/2, 9/8, ... (pow3 = 0..n-1), then 2."""
    if n < 1:
        raise ValueError(f"a scale needs n >= 1, got {n}")
    return [ONE] + [Monomial(b, octave_exponent(b)) for b in range(1, n)] + [OCTAVE]


def sort_exact(notes: list[Monomial]) -> list[Monomial]:
    """Sort monomials ascending with exact integer keys.

    Each note is scaled by a common factor ``3**B * 2**A`` so that
    ``3**(b+B) * 2**(A-a)`` is a non-negative integer; the keys order the
    notes exactly as their real values do.
    """
    if not notes:
        return []
    top2 = max(m.pow2 for m in notes)
    low3 = min(m.pow3 for m in notes)
    return sorted(notes, key=lambda m: pow3(m.pow3 - low3) << (top2 - m.pow2))


@dataclass(frozen=True)
class PythagoreanScale:
    """``n`` steps, ``n + 1`` notes from 1 to 2 inclusive, strictly ascending."""

    n: int
    notes: tuple[Monomial, ...]

    @property
    def interior(self) -> tuple[Monomial, ...]:
        return self.notes[1:-1]

    @property
    def pitches(self) -> tuple[Monomial, ...]:
        """The n notes above the tonic, octave included (as listed in a tuning file)."""
        return self.notes[1:]

    def generation_order(self) -> list[Monomial]:
        return generation_order(self.n)

    def steps(self) -> list[Monomial]:
        return step_sequence(self)

    def exponent_pairs(self) -> list[tuple[int, int]]:
        return [m.exponents for m in self.notes]

    def __len__(self) -> int:
        return len(self.notes)


def build_scale(n: int) -> PythagoreanScale:
    """The n-note Pythagorean scale.

    >>> [str(m) for m in build_scale(5).notes]
    ['3^0/2^0', '3^2/2^3', '3^4/2^6', '3^1/2^1', '3^3/2^4', '3^0/2^-1']
    """
    notes = sort_exact(generation_order(n))
    return PythagoreanScale(n, tuple(notes))


def step_sequence(s: PythagoreanScale) -> list[Monomial]:
    """Successive ratios ``notes[j+1] / notes[j]``; their product is exactly 2."""
    return [hi / lo for lo, hi in zip(s.notes, s.notes[1:])]


def distinct_steps(steps: list[Monomial]) -> list[tuple[Monomial, int]]:
    """Distinct steps ascending by value, with multiplicities."""
    counts = Counter(steps)
    return [(m, counts[m]) for m in sort_exact(list(counts))]
