"""The k-bin hash partial-assignment stage and stage composition.

A stage hashes the unmatched workers and unmatched tasks into ``k`` bins with
two fixed functions and, in every bin holding at least one of each, matches
the smallest worker to the smallest task. The stage is deterministic given
its hash functions, tolerates ``|W| != |T|``, and two structural facts about
it carry the whole pipeline: outputs never drift further apart than inputs
(measured by :func:`difference_score`), and a single-element input change
perturbs the matching by at most two pairs.

``BinHash`` objects are immutable after construction and ``apply``/``compose``
are pure, so stages can be shared freely across threads.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

from .core import WorkerTaskInput
from .hashing import MASK64, derive, mix64

__all__ = ["BinHash", "StageOutcome", "difference_score", "compose", "is_matching"]

_TAG_WORKER = 0x57F00D
_TAG_TASK = 0x7A5CADE

_MUL1 = 0xBF58476D1CE4E5B9
_MUL2 = 0x94D049BB133111EB
_GOLD = 0x9E3779B97F4A7C15


@dataclass(frozen=True)
class StageOutcome:
    """Result of one stage: the pairs it matched and what remains."""

    matched: frozenset[tuple[int, int]]
    residual: WorkerTaskInput
    active_bins: int


class BinHash:
    """One k-bin hash stage.

    ``h1`` maps worker ids and ``h2`` maps task ids into ``[1, k]``; both must
    be total and stable for the lifetime of the object. :meth:`from_seed`
    builds the standard pair from a 64-bit seed; explicit callables are
    accepted so tests and disperser-backed stages can inject their own tables.
    """

    __slots__ = ("k", "h1", "h2", "provenance", "_seed_w", "_seed_t")

    def __init__(
        self,
        k: int,
        h1: Callable[[int], int],
        h2: Callable[[int], int],
        provenance: tuple = (),
    ) -> None:
        if k < 1:
            raise ValueError("bin count must be >= 1")
        self.k = k
        self.h1 = h1
        self.h2 = h2
        self.provenance = provenance
        self._seed_w: int | None = None
        self._seed_t: int | None = None

    @classmethod
    def from_seed(cls, k: int, seed: int, provenance: tuple = ()) -> "BinHash":
        seed_w = mix64(seed ^ _TAG_WORKER)
        seed_t = mix64(seed ^ _TAG_TASK)
        obj = cls(
            k,
            lambda x: _bin_of(seed_w, x, k),
            lambda x: _bin_of(seed_t, x, k),
            provenance,
        )
        obj._seed_w = seed_w
        obj._seed_t = seed_t
        return obj

    def match(self, workers: Iterable[int], tasks: Iterable[int]) -> list[tuple[int, int]]:
        """Matched (worker, task) pairs for this stage, unordered."""
        k = self.k
        best_w: dict[int, int] = {}
        best_t: dict[int, int] = {}
        if self._seed_w is not None:
            # Inlined mix64 keeps the per-element cost to a few int ops; this
            # loop dominates every large experiment.
            sw = self._seed_w
            st = self._seed_t
            for x in workers:
                v = (x * _GOLD) & MASK64 ^ sw
                v = ((v ^ (v >> 30)) * _MUL1) & MASK64
                v = ((v ^ (v >> 27)) * _MUL2) & MASK64
                b = (v ^ (v >> 31)) % k
                cur = best_w.get(b)
                if cur is None or x < cur:
                    best_w[b] = x
            for x in tasks:
                v = (x * _GOLD) & MASK64 ^ st
                v = ((v ^ (v >> 30)) * _MUL1) & MASK64
                v = ((v ^ (v >> 27)) * _MUL2) & MASK64
                b = (v ^ (v >> 31)) % k
                cur = best_t.get(b)
                if cur is None or x < cur:
                    best_t[b] = x
        else:
            h1, h2 = self.h1, self.h2
            for x in workers:
                b = h1(x)
                cur = best_w.get(b)
                if cur is None or x < cur:
                    best_w[b] = x
            for x in tasks:
                b = h2(x)
                cur = best_t.get(b)
                if cur is None or x < cur:
                    best_t[b] = x
        return [(worker, best_t[b]) for b, worker in best_w.items() if b in best_t]

    def apply(self, wt: WorkerTaskInput) -> StageOutcome:
        """Run the stage on one worker-task input."""
        pairs = self.match(wt.workers, wt.tasks)
        matched = frozenset(pairs)
        residual = WorkerTaskInput(
            wt.workers.difference(w for w, _ in pairs),
            wt.tasks.difference(t for _, t in pairs),
        )
        return StageOutcome(matched, residual, len(matched))


def _bin_of(seed: int, x: int, k: int) -> int:
    return mix64(seed ^ ((x * _GOLD) & MASK64)) % k


def schedule_stage_seed(master_seed: int, i: int, j: int) -> int:
    """Seed material for the stage at outer round ``i``, repetition ``j``."""
    return derive(master_seed, i, j)


def difference_score(i1: WorkerTaskInput, i2: WorkerTaskInput) -> int:
    """``|W1\\W2| + |W2\\W1| + |T1\\T2| + |T2\\T1|``, the drift between two inputs."""
    return (
        len(i1.workers ^ i2.workers)
        + len(i1.tasks ^ i2.tasks)
    )


def compose(
    stages: Sequence[BinHash], wt: WorkerTaskInput
) -> tuple[frozenset[tuple[int, int]], WorkerTaskInput, list[StageOutcome]]:
    """Thread the residual of each stage into the next.

    Returns the disjoint union of stage matchings, the final residual, and the
    per-stage trace. Once both residual sides are empty no later stage can
    match anything, so the trace stops there.
    """
    if not stages:
        raise ValueError("compose needs at least one stage")
    trace: list[StageOutcome] = []
    matched: set[tuple[int, int]] = set()
    current = wt
    for stage in stages:
        out = stage.apply(current)
        trace.append(out)
        matched.update(out.matched)
        current = out.residual
        if not current.workers and not current.tasks:
            break
    return frozenset(matched), current, trace


def is_matching(pairs: Iterable[tuple[int, int]]) -> bool:
    """True iff no worker and no task appears in more than one pair."""
    pairs = list(pairs)
    return len({w for w, _ in pairs}) == len(pairs) and len({t for _, t in pairs}) == len(pairs)
