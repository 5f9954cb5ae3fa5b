"""Independent reference computations for the test suite.

Nothing here imports the package: continued fractions come from the
Euclidean algorithm on a 150-digit mpmath value, scales are sorted as
``fractions.Fraction`` values.
"""

from __future__ import annotations

from fractions import Fraction

import mpmath

_MP = mpmath.mp.clone()
_MP.dps = 150
LOG2_3 = _MP.log(3, 2)


def cf_terms(count: int) -> list[int]:
    x = LOG2_3
    out = []
    for _ in range(count):
        t = int(_MP.floor(x))
        out.append(t)
        x = 1 / (x - t)
    return out


def convergent_pairs(terms: list[int]) -> list[tuple[int, int]]:
    """(a_i, b_i) for i = -1 .. len(terms)-1."""
    pairs = [(1, 0), (terms[0], 1)]
    for k in terms[1:]:
        (a2, b2), (a1, b1) = pairs[-2], pairs[-1]
        pairs.append((k * a1 + a2, k * b1 + b2))
    return pairs


def semiconvergent_denominators(limit: int, terms: list[int]) -> set[int]:
    pairs = convergent_pairs(terms)
    b = lambda i: pairs[i + 1][1]
    out = set()
    for i in range(1, len(terms) - 1):
        for k in range(terms[i + 1] + 1):
            d = b(i - 1) + k * b(i)
            if d <= limit:
                out.add(d)
    return out


def fraction_scale(n: int) -> list[Fraction]:
    notes = [Fraction(1), Fraction(2)]
    for b in range(1, n):
        v = Fraction(3**b)
        while v >= 2:
            v /= 2
        notes.append(v)
    return sorted(notes)


def fraction_steps(n: int) -> list[Fraction]:
    s = fraction_scale(n)
    return [hi / lo for lo, hi in zip(s, s[1:])]


def step_count(n: int) -> int:
    return len(set(fraction_steps(n)))


def cents(pow3: int, pow2: int) -> float:
    return float(1200 * (pow3 * LOG2_3 - pow2))


def step_counts_float(limit: int) -> dict[int, int]:
    """Step counts for 2 <= n <= limit, sorting notes by frac(b*log2 3) at 150 digits."""
    x = LOG2_3
    frac = [_MP.frac(b * x) for b in range(limit + 1)]
    floor = [int(_MP.floor(b * x)) for b in range(limit + 1)]
    counts = {}
    for n in range(2, limit + 1):
        order = sorted(range(1, n), key=frac.__getitem__)
        notes = [(0, 0)] + [(b, floor[b]) for b in order] + [(0, -1)]
        counts[n] = len({(q[0] - p[0], q[1] - p[1]) for p, q in zip(notes, notes[1:])})
    return counts
