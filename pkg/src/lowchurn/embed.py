"""Densify sparse vectors into low-dimensional Hamming space via assignment.

A weight-``k`` binary vector in ``n`` dimensions becomes a length-``k`` code
over the alphabet ``[n]``: coordinate ``i`` is the task (vector position)
that worker ``i`` receives when the assignment function runs on the vector's
support. Because the code's coordinates are a permutation of the support,
``Ham(code_x, code_y) >= |T(x) \\ T(y)| >= Ham(x, y) / 2`` holds per pair
with no assumptions; the upper side is inherited from the assigner's
switching cost along a chain of adjacent supports, which the audit reports
next to the observed worst ratio.

Vectors with non-negative integer entries are supported too: the support
becomes a multiset (position repeated by its value) and the input metric is
the l1 distance.
"""
from __future__ import annotations

from dataclasses import dataclass

from .assigner import AssignResult, RoundSchedule, assign
from .core import TaskMultiset

__all__ = [
    "SparseVector",
    "DenseCode",
    "PairAudit",
    "DistortionReport",
    "embed",
    "embed_with_result",
    "hamming",
    "distortion_audit",
]


@dataclass(frozen=True)
class SparseVector:
    """A nonnegative integer vector stored as sorted (position, value) pairs.

    Binary vectors have all values equal to one; the weight ``k`` is the sum
    of values either way.
    """

    n: int
    entries: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("dimension must be >= 1")
        prev = 0
        for pos, val in self.entries:
            if not 1 <= pos <= self.n:
                raise ValueError(f"position {pos} outside [1, {self.n}]")
            if pos <= prev:
                raise ValueError("positions must be strictly increasing")
            if val < 1:
                raise ValueError("stored values must be >= 1")
            prev = pos

    @classmethod
    def from_support(cls, n: int, positions) -> "SparseVector":
        return cls(n, tuple((p, 1) for p in sorted(positions)))

    @classmethod
    def from_values(cls, n: int, values: dict[int, int]) -> "SparseVector":
        return cls(n, tuple(sorted((p, v) for p, v in values.items() if v != 0)))

    @classmethod
    def parse(cls, line: str) -> "SparseVector":
        """Parse ``"n k p1,p2,...,pk"`` or the valued form ``"n k p1:v1,p2:v2,..."``."""
        parts = line.split()
        if len(parts) != 3:
            raise ValueError(f"expected 'n k positions', got {line!r}")
        n, k = int(parts[0]), int(parts[1])
        entries: dict[int, int] = {}
        for tok in parts[2].split(","):
            if ":" in tok:
                pos_s, val_s = tok.split(":", 1)
                pos, val = int(pos_s), int(val_s)
            else:
                pos, val = int(tok), 1
            if pos in entries:
                raise ValueError(f"duplicate position {pos} in {line!r}")
            entries[pos] = val
        vec = cls.from_values(n, entries)
        if vec.weight != k:
            raise ValueError(f"declared weight {k} but entries sum to {vec.weight}")
        return vec

    @property
    def weight(self) -> int:
        return sum(val for _, val in self.entries)

    @property
    def is_binary(self) -> bool:
        return all(val == 1 for _, val in self.entries)

    def value_at(self, pos: int) -> int:
        return dict(self.entries).get(pos, 0)

    def to_multiset(self) -> TaskMultiset:
        """The support as a task multiset over ``[n]`` (position repeated by value)."""
        return TaskMultiset(self.entries, self.n)


@dataclass(frozen=True)
class DenseCode:
    """Length-``k`` code word; ``coords[i-1]`` is the task of worker ``i``."""

    coords: tuple[int, ...]


def hamming(u, v) -> int:
    """Coordinate disagreements between codes, or the input-side distance between vectors.

    For binary vectors this is Hamming distance over all ``n`` coordinates;
    for valued vectors it is the l1 distance (they coincide on binary input).
    """
    if isinstance(u, DenseCode) and isinstance(v, DenseCode):
        if len(u.coords) != len(v.coords):
            raise ValueError("codes of different length")
        return sum(1 for a, b in zip(u.coords, v.coords) if a != b)
    if isinstance(u, SparseVector) and isinstance(v, SparseVector):
        if u.n != v.n:
            raise ValueError("vectors of different dimension")
        positions = {p for p, _ in u.entries} | {p for p, _ in v.entries}
        return sum(abs(u.value_at(p) - v.value_at(p)) for p in positions)
    raise TypeError("hamming() needs two DenseCodes or two SparseVectors")


def embed_with_result(schedule: RoundSchedule, x: SparseVector) -> tuple[DenseCode, AssignResult]:
    """Embed ``x`` and keep the underlying assignment bookkeeping."""
    if x.weight != schedule.w:
        raise ValueError(f"vector weight {x.weight} does not match schedule workers {schedule.w}")
    if x.n != schedule.t:
        raise ValueError(f"vector dimension {x.n} does not match schedule tasks {schedule.t}")
    result = assign(schedule, x.to_multiset())
    coords = tuple(task for _, task in result.assignment.pairs)
    return DenseCode(coords), result


def embed(schedule: RoundSchedule, x: SparseVector) -> DenseCode:
    """The code whose i-th coordinate is the task assigned to worker ``i`` on the support of ``x``."""
    code, _ = embed_with_result(schedule, x)
    return code


@dataclass(frozen=True)
class PairAudit:
    input_distance: int
    code_distance: int
    ratio: float
    fallback: bool


@dataclass(frozen=True)
class DistortionReport:
    """Distortion summary over a sample of vector pairs.

    ``structural_ceiling`` is ``2 * total_rounds``: an adjacent support step
    can move at most ``4 * total_rounds`` assignments while each step covers
    input distance 2, so fallback-free ratios can never exceed it. Observed
    and structural numbers are reported separately so a regression in either
    is visible.
    """

    pairs: tuple[PairAudit, ...]
    min_ratio: float | None
    max_ratio: float | None
    structural_ceiling: float
    fallback_pairs: int
    skipped_identical: int

    @property
    def lower_bound_ok(self) -> bool:
        return self.min_ratio is None or self.min_ratio >= 0.5


def distortion_audit(
    schedule: RoundSchedule, pairs: list[tuple[SparseVector, SparseVector]]
) -> DistortionReport:
    """Measure ``distance(code_x, code_y) / distance(x, y)`` over the given pairs.

    Pairs with identical vectors are skipped (the ratio is undefined). Every
    audited pair is also checked against the exact per-pair floor
    ``code_distance >= |T(x) \\ T(y)|``.
    """
    rows: list[PairAudit] = []
    skipped = 0
    fallbacks = 0
    cache: dict[SparseVector, tuple[DenseCode, AssignResult]] = {}

    def embedded(x: SparseVector) -> tuple[DenseCode, AssignResult]:
        if x not in cache:
            cache[x] = embed_with_result(schedule, x)
        return cache[x]

    for x, y in pairs:
        d_in = hamming(x, y)
        if d_in == 0:
            skipped += 1
            continue
        code_x, res_x = embedded(x)
        code_y, res_y = embedded(y)
        d_code = hamming(code_x, code_y)
        one_sided = len(x.to_multiset().difference(y.to_multiset()))
        if d_code < one_sided:
            raise AssertionError(
                f"code distance {d_code} below exact floor {one_sided}; embedding is broken"
            )
        fallback = res_x.used_fallback or res_y.used_fallback
        fallbacks += fallback
        rows.append(PairAudit(d_in, d_code, d_code / d_in, fallback))

    ratios = [r.ratio for r in rows]
    return DistortionReport(
        pairs=tuple(rows),
        min_ratio=min(ratios) if ratios else None,
        max_ratio=max(ratios) if ratios else None,
        structural_ceiling=2.0 * schedule.total_rounds,
        fallback_pairs=fallbacks,
        skipped_identical=skipped,
    )
