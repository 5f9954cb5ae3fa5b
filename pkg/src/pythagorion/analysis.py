"""Step-count classification and the block structure of Pythagorean scales.

The two-step scales are exactly those whose size is a semi-convergent
denominator of log2(3).  This module checks that claim, and the structure
behind it, by direct computation on exact scales:

* scales of convergent size ``b[i]`` split into ``b[i-1]`` blocks built from
  two generators ``I`` and ``J`` (type A) or their inverses (type B);
* deleting the notes with large powers of 3 from such a scale gives the
  smaller two-step scales;
* every other size ends up in the middle of such a deletion and shows three
  step sizes.
"""

from __future__ import annotations

import enum
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional

from .contfrac import ConvergentTable, convergent_table, is_semiconvergent_denominator
from .exact_arith import Monomial, pow3
from .scale import PythagoreanScale, build_scale, distinct_steps, step_sequence

__all__ = [
    "StructureError",
    "ScaleType",
    "StepProfile",
    "StepBasis",
    "BlockDecomposition",
    "Classification",
    "NRecord",
    "VerificationReport",
    "step_profile",
    "step_basis",
    "convergent_type",
    "decompose_blocks",
    "block_boundaries_check",
    "delete_to",
    "predicted_deletion_steps",
    "deleted_note_positions",
    "three_step_witness",
    "classify",
    "step_label",
    "verify_main_theorem",
]


class StructureError(AssertionError):
    """A computed scale does not have the block/step structure it must have."""


class ScaleType(str, enum.Enum):
    A = "A"
    B = "B"


@dataclass(frozen=True)
class StepProfile:
    n: int
    distinct_steps: tuple[tuple[Monomial, int], ...]

    @property
    def k(self) -> int:
        return len(self.distinct_steps)

    @property
    def steps(self) -> tuple[Monomial, ...]:
        return tuple(m for m, _ in self.distinct_steps)


def step_profile(n: int) -> StepProfile:
    steps = step_sequence(build_scale(n))
    return StepProfile(n, tuple(distinct_steps(steps)))


@dataclass(frozen=True)
class StepBasis:
    """Generators attached to convergent index ``i``.

    ``I = 3^b[i-1] / 2^a[i-1]`` and ``J = 3^(b[i-1]-b[i]) / 2^(a[i-1]-a[i])``.
    Their exponent matrix has determinant ``+-1``, so every monomial is a
    unique integer word ``I^x J^y``.
    """

    i: int
    I: Monomial
    J: Monomial

    def __post_init__(self) -> None:
        if self._det() not in (1, -1):
            raise StructureError(f"basis {self} is not unimodular")

    def _det(self) -> int:
        return self.I.pow3 * self.J.pow2 - self.I.pow2 * self.J.pow3

    def coordinates(self, m: Monomial) -> tuple[int, int]:
        """``(x, y)`` with ``m == I**x * J**y``."""
        det = self._det()
        x = (m.pow3 * self.J.pow2 - m.pow2 * self.J.pow3) * det
        y = (self.I.pow3 * m.pow2 - self.I.pow2 * m.pow3) * det
        return x, y

    def word(self, x: int, y: int) -> Monomial:
        return self.I**x * self.J**y


def _table_for(i: int) -> ConvergentTable:
    t = convergent_table()
    if i < 1 or i > t.last_index:
        raise ValueError(f"convergent index must be in 1..{t.last_index}, got {i}")
    return t


def step_basis(i: int) -> StepBasis:
    t = _table_for(i)
    I = Monomial(t.b(i - 1), t.a(i - 1))
    J = Monomial(t.b(i - 1) - t.b(i), t.a(i - 1) - t.a(i))
    return StepBasis(i, I, J)


def convergent_type(i: int) -> ScaleType:
    """Type A when ``a[i]/b[i]`` lies above log2(3) (``2^a[i] > 3^b[i]``), else B."""
    t = _table_for(i)
    return ScaleType.A if (1 << t.a(i)) > pow3(t.b(i)) else ScaleType.B


def _oriented(basis: StepBasis, scale_type: ScaleType) -> tuple[Monomial, Monomial]:
    """The two step values actually seen in the scale: (I, J) or (I^-1, J^-1)."""
    if scale_type is ScaleType.A:
        return basis.I, basis.J
    return basis.I.inverse(), basis.J.inverse()


def step_label(m: Monomial, basis: StepBasis, scale_type: Optional[ScaleType] = None) -> str:
    """Human-readable word for ``m`` in ``basis``, e.g. ``'I^2J'`` or ``'J^-1I^-1'``."""
    x, y = basis.coordinates(m)

    def part(sym: str, e: int) -> str:
        if e == 0:
            return ""
        return sym if e == 1 else f"{sym}^{e}"

    i_part, j_part = part("I", x), part("J", y)
    text = j_part + i_part if scale_type is ScaleType.B else i_part + j_part
    return text or "1"


@dataclass(frozen=True)
class BlockDecomposition:
    i: int
    scale_type: ScaleType
    basis: StepBasis
    blocks: tuple[tuple[Monomial, ...], ...]
    # index into the scale's notes at which each block starts
    block_starts: tuple[int, ...]

    @property
    def block_count(self) -> int:
        return len(self.blocks)

    def patterns(self) -> list[tuple[str, ...]]:
        """Blocks as label tuples, e.g. ``('I', 'I', 'J')`` or ``('J^-1', 'I^-1')``."""
        return [tuple(step_label(s, self.basis, self.scale_type) for s in blk) for blk in self.blocks]

    def steps(self) -> list[Monomial]:
        return [s for blk in self.blocks for s in blk]


def _split_blocks(steps: list[Monomial], marker: Monomial, marker_last: bool) -> tuple[list[tuple[Monomial, ...]], list[int]]:
    blocks: list[tuple[Monomial, ...]] = []
    starts: list[int] = []
    current: list[Monomial] = []
    start = 0
    for j, s in enumerate(steps):
        if not marker_last and s == marker and current:
            blocks.append(tuple(current))
            starts.append(start)
            current, start = [], j
        current.append(s)
        if marker_last and s == marker:
            blocks.append(tuple(current))
            starts.append(start)
            current, start = [], j + 1
    if current:
        blocks.append(tuple(current))
        starts.append(start)
    return blocks, starts


def decompose_blocks(i: int) -> BlockDecomposition:
    """Split the ``b[i]``-note scale into its ``b[i-1]`` blocks.

    Type A blocks are ``k[i]`` or ``k[i]-1`` steps ``I`` closed by one ``J``;
    type B blocks are one ``J^-1`` followed by ``k[i]`` or ``k[i]-1`` steps
    ``I^-1``.  The type is read off the first step and must agree with the
    side of log2(3) the convergent lies on.  Raises StructureError otherwise.
    """
    if i < 2:
        raise ValueError(f"block decomposition needs i >= 2, got {i}")
    t = _table_for(i)
    basis = step_basis(i)
    steps = step_sequence(build_scale(t.b(i)))
    if steps[0] == basis.I:
        scale_type = ScaleType.A
    elif steps[0] == basis.J.inverse():
        scale_type = ScaleType.B
    else:
        raise StructureError(f"first step {steps[0]} of the {t.b(i)}-note scale is neither I nor J^-1")
    expected = convergent_type(i)
    if scale_type is not expected:
        raise StructureError(f"i={i}: first step says type {scale_type.value}, convergent side says {expected.value}")

    step, jump = _oriented(basis, scale_type)
    blocks, starts = _split_blocks(steps, jump, marker_last=scale_type is ScaleType.A)
    allowed = {t.k(i), t.k(i) - 1}
    for blk in blocks:
        if scale_type is ScaleType.A:
            run, closing = blk[:-1], blk[-1:]
        else:
            closing, run = blk[:1], blk[1:]
        if closing != (jump,) or any(s != step for s in run) or len(run) not in allowed:
            raise StructureError(f"i={i}: malformed type {scale_type.value} block {[str(s) for s in blk]}")
    if len(blocks) != t.b(i - 1):
        raise StructureError(f"i={i}: {len(blocks)} blocks, expected b[i-1]={t.b(i - 1)}")
    return BlockDecomposition(i, scale_type, basis, tuple(blocks), tuple(starts))


def block_boundaries_check(i: int) -> bool:
    """True iff the block boundary notes of the ``b[i]``-note scale form the ``b[i-1]``-note scale."""
    t = _table_for(i)
    dec = decompose_blocks(i)
    notes = build_scale(t.b(i)).notes
    boundary = [notes[j] for j in dec.block_starts] + [notes[-1]]
    return boundary == list(build_scale(t.b(i - 1)).notes)


def _check_deletion_range(i: int, k: int, lowest: int) -> ConvergentTable:
    if i < 2:
        raise ValueError(f"deletion needs i >= 2, got {i}")
    t = _table_for(i)
    if not lowest <= k <= t.k(i) - 1:
        raise ValueError(f"k must be in {lowest}..{t.k(i) - 1} for i={i}, got {k}")
    return t


def predicted_deletion_steps(i: int, k: int) -> set[Monomial]:
    """``{I, I^k J}`` for type A, ``{I^-1, J^-1 I^-k}`` for type B."""
    basis = step_basis(i)
    if convergent_type(i) is ScaleType.A:
        return {basis.I, basis.word(k, 1)}
    return {basis.I.inverse(), basis.word(-k, -1)}


def delete_to(i: int, k: int) -> PythagoreanScale:
    """Drop the notes with ``pow3 >= b[i] - k*b[i-1]`` from the ``b[i]``-note scale.

    The result must be the ``(b[i] - k*b[i-1])``-note scale, with exactly the
    two predicted step sizes; StructureError is raised if not.
    """
    t = _check_deletion_range(i, k, 0)
    m = t.b(i) - k * t.b(i - 1)
    full = build_scale(t.b(i))
    # the octave has pow3 == 0 and always survives
    kept = tuple(note for note in full.notes if note.pow3 < m)
    result = PythagoreanScale(m, kept)
    if kept != build_scale(m).notes:
        raise StructureError(f"deleting down to {m} notes (i={i}, k={k}) did not give the {m}-note scale")
    observed = set(step_sequence(result))
    predicted = predicted_deletion_steps(i, k)
    if observed != predicted:
        raise StructureError(
            f"{m}-note scale steps {sorted(map(str, observed))} != predicted {sorted(map(str, predicted))}"
        )
    return result


def deleted_note_positions(i: int, k: int) -> bool:
    """True iff the deleted notes are exactly the ``k`` notes before each ``J`` (A) / after each ``J^-1`` (B)."""
    t = _check_deletion_range(i, k, 1)
    m = t.b(i) - k * t.b(i - 1)
    notes = build_scale(t.b(i)).notes
    steps = step_sequence(build_scale(t.b(i)))
    scale_type = convergent_type(i)
    _, jump = _oriented(step_basis(i), scale_type)
    expected: set[int] = set()
    for j, s in enumerate(steps):
        if s != jump:
            continue
        if scale_type is ScaleType.A:
            expected.update(range(j - k + 1, j + 1))
        else:
            expected.update(range(j + 1, j + k + 1))
    deleted = {j for j, note in enumerate(notes) if note.pow3 >= m}
    return deleted == expected


@dataclass(frozen=True)
class Classification:
    """Where ``n`` sits relative to the convergent denominators.

    ``i`` satisfies ``b[i-1] < n <= b[i]`` and ``k`` the bracket
    ``b[i] - k*b[i-1] <= n < b[i] - (k-1)*b[i-1]``; ``exact`` records whether
    the left end is hit (a deletion size, hence two steps).
    """

    n: int
    i: Optional[int]
    k: Optional[int]
    exact: bool
    scale_type: Optional[ScaleType]

    @property
    def basis(self) -> Optional[StepBasis]:
        return step_basis(self.i) if self.i is not None else None


def classify(n: int) -> Classification:
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if n == 1:
        return Classification(1, None, None, True, None)
    t = convergent_table()
    i = t.index_for(n)
    bi, bp = t.b(i), t.b(i - 1)
    # smallest k with b[i] - k*b[i-1] <= n
    k = -((n - bi) // bp)
    exact = bi - k * bp == n
    return Classification(n, i, k, exact, convergent_type(i))


def three_step_witness(n: int) -> Optional[tuple[Monomial, Monomial, Monomial]]:
    """The three steps of a non-two-step scale, checked against the deletion prediction.

    For ``b[i] - k*b[i-1] < n < b[i] - (k-1)*b[i-1]`` the steps are
    ``(I, I^(k-1) J, I^k J)`` for type A and the inverted triple for type B.
    Returns None when ``n`` is a semi-convergent denominator.
    """
    if n < 2:
        raise ValueError(f"n must be >= 2, got {n}")
    if is_semiconvergent_denominator(n) is not None:
        return None
    c = classify(n)
    assert c.i is not None and c.k is not None and c.basis is not None
    if c.exact:
        raise StructureError(f"n={n} is a deletion size but has no semi-convergent witness")
    basis, k = c.basis, c.k
    if c.scale_type is ScaleType.A:
        triple = (basis.I, basis.word(k - 1, 1), basis.word(k, 1))
    else:
        triple = (basis.I.inverse(), basis.word(-(k - 1), -1), basis.word(-k, -1))
    observed = set(step_profile(n).steps)
    if observed != set(triple):
        raise StructureError(
            f"n={n}: steps {sorted(map(str, observed))} != predicted {[str(m) for m in triple]}"
        )
    return triple


@dataclass(frozen=True)
class NRecord:
    n: int
    k: int
    witness: Optional[tuple[int, int]]

    @property
    def consistent(self) -> bool:
        return self.k in (2, 3) and (self.k == 2) == (self.witness is not None)


@dataclass
class VerificationReport:
    max_n: int
    records: dict[int, NRecord] = field(default_factory=dict)

    @property
    def counterexamples(self) -> list[NRecord]:
        return [self.records[n] for n in sorted(self.records) if not self.records[n].consistent]

    @property
    def verdict(self) -> bool:
        return not self.counterexamples

    @property
    def two_step(self) -> list[int]:
        return [n for n in sorted(self.records) if self.records[n].k == 2]

    @property
    def three_step(self) -> list[int]:
        return [n for n in sorted(self.records) if self.records[n].k == 3]

    def to_dict(self) -> dict:
        return {
            "range": [2, self.max_n],
            "verdict": self.verdict,
            "two_step": self.two_step,
            "three_step_count": len(self.three_step),
            "counterexamples": [
                {"n": r.n, "k": r.k, "witness": list(r.witness) if r.witness else None}
                for r in self.counterexamples
            ],
        }


def _record(n: int) -> NRecord:
    return NRecord(n, step_profile(n).k, is_semiconvergent_denominator(n))


def _records(ns: list[int]) -> list[NRecord]:
    return [_record(n) for n in ns]


def verify_main_theorem(
    max_n: int,
    jobs: int = 1,
    progress: Optional[Callable[[NRecord], None]] = None,
) -> VerificationReport:
    """Check ``two steps <=> semi-convergent denominator`` for every ``2 <= n <= max_n``.

    Also flags any ``n`` with a step count other than 2 or 3.  Disagreements
    are collected as counterexamples rather than raised.  With ``jobs > 1``
    the sizes are spread over worker processes.
    """
    if max_n < 2:
        raise ValueError(f"max_n must be >= 2, got {max_n}")
    ns = list(range(2, max_n + 1))
    # warm the shared table once so workers and the witness search agree
    convergent_table()
    is_semiconvergent_denominator(max_n)
    report = VerificationReport(max_n)
    results: Iterable[NRecord]
    if jobs > 1:
        # interleave sizes so chunks cost about the same
        chunks = [ns[j::jobs * 4] for j in range(jobs * 4)]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = [r for chunk in pool.map(_records, chunks) for r in chunk]
    else:
        results = map(_record, ns)
    for rec in results:
        report.records[rec.n] = rec
        if progress is not None:
            progress(rec)
    return report
