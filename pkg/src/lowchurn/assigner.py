"""Multi-round balls-to-bins assignment and its disperser-backed explicit variant.

The randomized pipeline runs outer rounds ``i = 1..ceil(log_1.1 w)``; round
``i`` repeats a ``k_i``-bin hash ``c * ceil(log2 n)`` times with
``k_i = max(1, ceil(w / 1.1**i))`` and ``n = w*t``. Multisets are lifted to
sets over ``[n]`` first and the set assignment is projected back. Any input
left unmatched after the schedule ends is completed by a deterministic
fallback (sorted residual workers to sorted residual tasks); that policy
voids the worst-case switching guarantee, so every result reports how many
pairs it contributed.

The explicit variant replaces seeded hash functions with a per-level family
of verified strong dispersers, sweeping each family's seeds in order instead
of drawing fresh randomness. The repetition count per level is a caller
parameter; the per-sweep progress guarantee is what makes a finite count
sufficient.

Schedules and families are immutable; ``assign``, ``assign_set``, and
``assign_explicit`` are pure, so evaluating many inputs in parallel is safe.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from random import Random
from typing import Sequence

from .binhash import BinHash, StageOutcome, compose
from .core import Assignment, TaskMultiset, WorkerTaskInput
from .hashing import derive
from .reduction import decode, lift

__all__ = [
    "Round",
    "RoundSchedule",
    "AssignResult",
    "DisperserFamily",
    "build_schedule",
    "assign_set",
    "assign",
    "assign_explicit",
    "assign_explicit_set",
    "seed_sweep",
    "single_bin_family",
    "trivial_families",
    "outer_round_count",
    "bins_for_round",
]


def outer_round_count(w: int) -> int:
    """Smallest ``i >= 1`` with ``1.1**i >= w``, i.e. ``ceil(log_1.1 w)`` forced positive.

    Computed with exact integer powers (``11**i >= w * 10**i``) so boundary
    worker counts never fall victim to float rounding.
    """
    if w < 1:
        raise ValueError("worker count must be >= 1")
    i, p11, p10 = 1, 11, 10
    while p11 < w * p10:
        i += 1
        p11 *= 11
        p10 *= 10
    return i


def bins_for_round(w: int, i: int) -> int:
    """``max(1, ceil(w / 1.1**i))``, exactly."""
    p10 = 10**i
    p11 = 11**i
    return max(1, -((-w * p10) // p11))


@dataclass(frozen=True)
class Round:
    """One repetition of the k-bin hash inside the schedule."""

    i: int
    j: int
    k: int
    hash: BinHash


@dataclass(frozen=True)
class RoundSchedule:
    """The full grid of hashing rounds for one assignment function.

    A schedule is a deterministic function of ``(w, t, c, master_seed)``; the
    stage at ``(i, j)`` derives its hash seed from those coordinates, so
    rebuilding with equal inputs reproduces every bin placement.
    """

    w: int
    t: int
    c: int
    master_seed: int
    rounds: tuple[Round, ...] = field(repr=False)

    @property
    def n(self) -> int:
        return self.w * self.t

    @property
    def total_rounds(self) -> int:
        return len(self.rounds)


def build_schedule(w: int, t: int, c: int = 4, master_seed: int = 0) -> RoundSchedule:
    """Construct the round grid for ``w`` workers over ``t`` task kinds."""
    if w < 1 or t < 1 or c < 1:
        raise ValueError("w, t, c must all be >= 1")
    n = w * t
    reps = c * max(1, (n - 1).bit_length())
    rounds = []
    for i in range(1, outer_round_count(w) + 1):
        k = bins_for_round(w, i)
        for j in range(1, reps + 1):
            seed = derive(master_seed, i, j)
            rounds.append(Round(i, j, k, BinHash.from_seed(k, seed, provenance=(i, j))))
    return RoundSchedule(w, t, c, master_seed, tuple(rounds))


@dataclass(frozen=True)
class AssignResult:
    """An assignment plus the bookkeeping needed to audit how it was produced.

    ``per_round_pairs`` holds each executed round's matched pairs (in lifted
    task ids when a multiset was assigned); rounds after the input emptied are
    omitted. ``fallback_pairs == 0`` means every pair came from schedule
    rounds, so the switching-cost guarantee applies.
    """

    assignment: Assignment
    fallback_pairs: int
    per_round_pairs: tuple[frozenset[tuple[int, int]], ...]

    @property
    def per_round_matches(self) -> tuple[int, ...]:
        return tuple(len(p) for p in self.per_round_pairs)

    @property
    def used_fallback(self) -> bool:
        return self.fallback_pairs > 0


def _run_stages(
    stages: Sequence[BinHash], workers: set[int], tasks: set[int]
) -> tuple[list[tuple[int, int]], list[frozenset[tuple[int, int]]]]:
    """Engine loop shared by both variants; mutates the given sets."""
    pairs: list[tuple[int, int]] = []
    per_round: list[frozenset[tuple[int, int]]] = []
    for stage in stages:
        if not workers and not tasks:
            break
        matched = stage.match(workers, tasks)
        per_round.append(frozenset(matched))
        if matched:
            pairs.extend(matched)
            for worker, task in matched:
                workers.discard(worker)
                tasks.discard(task)
    return pairs, per_round


def _complete_and_pack(
    w: int,
    pairs: list[tuple[int, int]],
    per_round: list[frozenset[tuple[int, int]]],
    workers: set[int],
    tasks: set[int],
) -> AssignResult:
    fallback_pairs = len(workers)
    pairs.extend(zip(sorted(workers), sorted(tasks)))
    assignment = Assignment(w, tuple(sorted(pairs)))
    return AssignResult(assignment, fallback_pairs, tuple(per_round))


def assign_set(schedule: RoundSchedule, workers: Sequence[int], tasks: Sequence[int]) -> AssignResult:
    """Assign a plain worker set to an equal-size task set over ``[n]``.

    Runs the whole round grid on the pair, then completes any residual by
    rank-order matching. The result is always a perfect matching.
    """
    W = set(workers)
    T = set(tasks)
    if len(W) != len(T):
        raise ValueError(f"|workers| != |tasks|: {len(W)} vs {len(T)}")
    if W and not (1 <= min(W) and max(W) <= schedule.w):
        raise ValueError(f"workers outside [1, {schedule.w}]")
    if T and not (1 <= min(T) and max(T) <= schedule.n):
        raise ValueError(f"tasks outside [1, {schedule.n}]")
    stages = [r.hash for r in schedule.rounds]
    pairs, per_round = _run_stages(stages, W, T)
    return _complete_and_pack(schedule.w, pairs, per_round, W, T)


def assign(schedule: RoundSchedule, T: TaskMultiset) -> AssignResult:
    """Assign workers ``1..|T|`` to the task multiset ``T``.

    Lifts ``T`` to a set over ``[w*t]``, runs :func:`assign_set`, and projects
    back; workers ``|T|+1..w`` stay unassigned. ``per_round_pairs`` remains in
    lifted ids.
    """
    if T.t != schedule.t:
        raise ValueError(f"multiset universe {T.t} does not match schedule t={schedule.t}")
    size = len(T)
    if size > schedule.w:
        raise ValueError("multiset larger than worker count")
    lifted = lift(T, schedule.w)
    result = assign_set(schedule, range(1, size + 1), lifted)
    w = schedule.w
    projected = Assignment(
        w, tuple((worker, decode(task, w)[0]) for worker, task in result.assignment.pairs)
    )
    return AssignResult(projected, result.fallback_pairs, result.per_round_pairs)


@dataclass(frozen=True)
class DisperserFamily:
    """A seeded bin-placement family ``eval: [N] x [D] -> [M]``.

    The family qualifies as a ``(k_param, epsilon)`` strong disperser when for
    every subset ``S`` of the domain with ``|S| >= 2**k_param`` the
    seed-annotated image ``{(eval(s, d), d)}`` covers at least
    ``(1 - epsilon) * M * D`` of the ``M * D`` cells. ``oracle.verify_disperser``
    checks that exhaustively for small ``N``; nothing here assumes it.
    """

    N: int
    D: int
    M: int
    k_param: int
    epsilon: float
    table: tuple[tuple[int, ...], ...]  # table[element-1][seed-1] in [0, M)

    def __post_init__(self) -> None:
        if self.N < 1 or self.D < 1 or self.M < 1:
            raise ValueError("N, D, M must be >= 1")
        if self.k_param < 0 or not 0 <= self.epsilon < 1:
            raise ValueError("need k_param >= 0 and 0 <= epsilon < 1")
        if len(self.table) != self.N or any(len(row) != self.D for row in self.table):
            raise ValueError("table must be N rows of D seeds")
        if any(not 0 <= v < self.M for row in self.table for v in row):
            raise ValueError("table values must lie in [0, M)")

    def eval(self, element: int, seed: int) -> int:
        """Bin of ``element`` under seed ``seed``; all three are 1-based."""
        return self.table[element - 1][seed - 1] + 1

    @classmethod
    def random_table(
        cls, N: int, D: int, M: int, k_param: int, epsilon: float, rng: Random
    ) -> "DisperserFamily":
        """A uniformly random function table (not necessarily a verified disperser)."""
        table = tuple(tuple(rng.randrange(M) for _ in range(D)) for _ in range(N))
        return cls(N, D, M, k_param, epsilon, table)

    def stage(self, seed: int, provenance: tuple = ()) -> BinHash:
        """The partial-assignment stage using ``eval(., seed)`` for workers and tasks."""
        h = lambda x: self.eval(x, seed)  # noqa: E731
        return BinHash(self.M, h, h, provenance)


def single_bin_family(N: int, D: int, k_param: int = 0, epsilon: float = 0.25) -> DisperserFamily:
    """The one-bin family; every function with M=1 is a verified disperser."""
    return DisperserFamily(N, D, 1, k_param, epsilon, tuple((0,) * D for _ in range(N)))


def trivial_families(w: int, N: int, D: int = 4) -> tuple[DisperserFamily, ...]:
    """A full single-bin ladder covering levels ``k = ceil(log2 w)-1 .. 0``."""
    levels = max(1, (w - 1).bit_length())
    return tuple(single_bin_family(N, D, k_param=levels - i) for i in range(1, levels + 1))


def seed_sweep(
    family: DisperserFamily, wt: WorkerTaskInput, provenance: tuple = ()
) -> tuple[frozenset[tuple[int, int]], WorkerTaskInput, list[StageOutcome]]:
    """One full pass over the family's seeds, composing the D per-seed stages."""
    stages = [family.stage(j, provenance + (j,)) for j in range(1, family.D + 1)]
    return compose(stages, wt)


def _expected_levels(w: int) -> list[int]:
    levels = max(1, (w - 1).bit_length())  # ceil(log2 w), at least one level
    return [levels - i for i in range(1, levels + 1)]


def assign_explicit_set(
    families: Sequence[DisperserFamily],
    reps: int,
    workers: Sequence[int],
    tasks: Sequence[int],
    w: int,
) -> AssignResult:
    """Explicit-variant assignment of a worker set to an equal-size task set.

    ``families[i-1]`` drives level ``i`` and must be declared for min-entropy
    parameter ``ceil(log2 w) - i``; each level runs ``reps`` seed sweeps.
    Falls back like the randomized variant if anything remains.
    """
    if reps < 1:
        raise ValueError("reps must be >= 1")
    expected = _expected_levels(w)
    if len(families) != len(expected):
        raise ValueError(f"need {len(expected)} families for w={w}, got {len(families)}")
    for family, k_expected in zip(families, expected):
        if family.k_param != k_expected:
            raise ValueError(
                f"family declares k_param={family.k_param}, level requires {k_expected}"
            )
    W = set(workers)
    T = set(tasks)
    if len(W) != len(T):
        raise ValueError(f"|workers| != |tasks|: {len(W)} vs {len(T)}")
    needed = max(W | T, default=1)
    for family in families:
        if family.N < needed:
            raise ValueError(f"family domain N={family.N} smaller than needed {needed}")

    pairs: list[tuple[int, int]] = []
    per_round: list[frozenset[tuple[int, int]]] = []
    for level, family in enumerate(families, start=1):
        stages = [family.stage(j, (level, j)) for j in range(1, family.D + 1)]
        for _ in range(reps):
            if not W and not T:
                break
            got, rounds = _run_stages(stages, W, T)
            pairs.extend(got)
            per_round.extend(rounds)
    return _complete_and_pack(w, pairs, per_round, W, T)


def assign_explicit(
    families: Sequence[DisperserFamily], reps: int, T: TaskMultiset, w: int
) -> AssignResult:
    """Explicit-variant assignment of workers ``1..|T|`` to a task multiset."""
    size = len(T)
    if size > w:
        raise ValueError("multiset larger than worker count")
    lifted = lift(T, w)
    result = assign_explicit_set(families, reps, range(1, size + 1), lifted, w)
    projected = Assignment(
        w, tuple((worker, decode(task, w)[0]) for worker, task in result.assignment.pairs)
    )
    return AssignResult(projected, result.fallback_pairs, result.per_round_pairs)
