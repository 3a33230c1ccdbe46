"""Task multisets, worker assignments, adjacency, and the switching-cost metric.

Workers are the integers ``1..w`` and tasks the integers ``1..t``. A
:class:`TaskMultiset` records the current demand per task; an
:class:`Assignment` realizes those demands, one worker per unit of demand,
assigning workers ``1..size`` and leaving workers ``size+1..w`` idle when the
demand is below ``w``. The switching cost between two assignments counts the
workers whose task changed, where moving between assigned and unassigned
counts as a change.

Everything in this module is a pure function of its arguments (random state
is always passed explicitly), so concurrent use needs no coordination.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from random import Random
from typing import Iterable, Iterator, Mapping

__all__ = [
    "TaskMultiset",
    "Assignment",
    "WorkerTaskInput",
    "multiset_algebra",
    "is_adjacent",
    "switching_cost",
    "adjacent_step",
    "random_multiset",
]


@dataclass(frozen=True)
class TaskMultiset:
    """Multiset over the task universe ``[1, t]``, stored as sorted (id, count) runs.

    The sorted-run form gives linear-time algebra and a canonical value for
    hashing and deduplication. Size caps (``|T| <= w``) are enforced by the
    assignment entry points, not here: multiset union can legitimately exceed
    any particular worker count.
    """

    entries: tuple[tuple[int, int], ...]
    t: int

    def __post_init__(self) -> None:
        if self.t < 1:
            raise ValueError("task universe size must be >= 1")
        prev = 0
        for task, count in self.entries:
            if not 1 <= task <= self.t:
                raise ValueError(f"task id {task} outside universe [1, {self.t}]")
            if task <= prev:
                raise ValueError("task ids must be strictly increasing")
            if count < 1:
                raise ValueError("multiplicities must be >= 1")
            prev = task

    @classmethod
    def from_elements(cls, elements: Iterable[int], t: int) -> "TaskMultiset":
        counts = Counter(elements)
        return cls(tuple(sorted(counts.items())), t)

    @classmethod
    def parse(cls, text: str, t: int) -> "TaskMultiset":
        """Parse the comma-separated text form, e.g. ``"1,2,2,5"``. Empty string is the empty multiset."""
        text = text.strip()
        if not text:
            return cls((), t)
        try:
            elements = [int(tok) for tok in text.split(",")]
        except ValueError as exc:
            raise ValueError(f"bad multiset text {text!r}: {exc}") from None
        if any(b < a for a, b in zip(elements, elements[1:])):
            raise ValueError(f"multiset text must be non-decreasing: {text!r}")
        return cls.from_elements(elements, t)

    def format(self) -> str:
        return ",".join(str(e) for e in self.elements())

    @cached_property
    def size(self) -> int:
        return sum(count for _, count in self.entries)

    def __len__(self) -> int:
        return self.size

    def __iter__(self) -> Iterator[int]:
        return iter(self.elements())

    def elements(self) -> tuple[int, ...]:
        out: list[int] = []
        for task, count in self.entries:
            out.extend([task] * count)
        return tuple(out)

    @cached_property
    def _counts(self) -> dict[int, int]:
        return dict(self.entries)

    def multiplicity(self, task: int) -> int:
        return self._counts.get(task, 0)

    def support(self) -> tuple[int, ...]:
        return tuple(task for task, _ in self.entries)

    def _require_same_universe(self, other: "TaskMultiset") -> None:
        if self.t != other.t:
            raise ValueError(f"multisets over different universes: {self.t} vs {other.t}")

    def difference(self, other: "TaskMultiset") -> "TaskMultiset":
        """Pointwise ``max(0, m_self - m_other)``."""
        self._require_same_universe(other)
        entries = []
        for task, count in self.entries:
            kept = count - other.multiplicity(task)
            if kept > 0:
                entries.append((task, kept))
        return TaskMultiset(tuple(entries), self.t)

    def union(self, other: "TaskMultiset") -> "TaskMultiset":
        """Pointwise ``max`` of multiplicities."""
        self._require_same_universe(other)
        tasks = sorted(set(self.support()) | set(other.support()))
        entries = tuple(
            (task, max(self.multiplicity(task), other.multiplicity(task))) for task in tasks
        )
        return TaskMultiset(entries, self.t)

    def intersection(self, other: "TaskMultiset") -> "TaskMultiset":
        """Pointwise ``min`` of multiplicities."""
        self._require_same_universe(other)
        entries = []
        for task, count in self.entries:
            both = min(count, other.multiplicity(task))
            if both > 0:
                entries.append((task, both))
        return TaskMultiset(tuple(entries), self.t)


def multiset_algebra(
    a: TaskMultiset, b: TaskMultiset
) -> tuple[TaskMultiset, TaskMultiset, TaskMultiset]:
    """Return ``(a - b, a | b, a & b)`` under the max/min multiplicity rules."""
    return a.difference(b), a.union(b), a.intersection(b)


@dataclass(frozen=True)
class Assignment:
    """A worker-to-task mapping; workers not listed are unassigned.

    ``pairs`` is sorted by worker id, one entry per assigned worker.
    """

    w: int
    pairs: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        if self.w < 0:
            raise ValueError("worker count must be >= 0")
        prev = 0
        for worker, _task in self.pairs:
            if not 1 <= worker <= self.w:
                raise ValueError(f"worker {worker} outside [1, {self.w}]")
            if worker <= prev:
                raise ValueError("pairs must be sorted by worker with no duplicates")
            prev = worker

    @classmethod
    def from_mapping(cls, mapping: Mapping[int, int], w: int) -> "Assignment":
        return cls(w, tuple(sorted(mapping.items())))

    @cached_property
    def mapping(self) -> dict[int, int]:
        return dict(self.pairs)

    def task_of(self, worker: int) -> int | None:
        return self.mapping.get(worker)

    def realizes(self, tasks: TaskMultiset) -> bool:
        """True iff the assigned tasks equal ``tasks`` with multiplicity and workers 1..|tasks| are used."""
        if len(self.pairs) != len(tasks):
            return False
        if any(worker != i + 1 for i, (worker, _) in enumerate(self.pairs)):
            return False
        return Counter(task for _, task in self.pairs) == Counter(tasks.elements())


def switching_cost(a1: Assignment, a2: Assignment) -> int:
    """Number of workers whose task differs between the two assignments.

    A worker assigned in exactly one of the two counts as differing, which is
    what the size-varying setting requires.
    """
    if a1.w != a2.w:
        raise ValueError("assignments over different worker universes")
    m1, m2 = a1.mapping, a2.mapping
    return sum(1 for worker in m1.keys() | m2.keys() if m1.get(worker) != m2.get(worker))


@dataclass(frozen=True)
class WorkerTaskInput:
    """A pair of plain sets: unmatched workers and unmatched tasks.

    Pipeline entry points require ``|workers| == |tasks|``; the partial
    assignment stages themselves tolerate unequal sizes, which the
    difference-score machinery relies on.
    """

    workers: frozenset[int]
    tasks: frozenset[int]

    def __post_init__(self) -> None:
        object.__setattr__(self, "workers", frozenset(self.workers))
        object.__setattr__(self, "tasks", frozenset(self.tasks))

    def is_balanced(self) -> bool:
        return len(self.workers) == len(self.tasks)


def is_adjacent(t1: TaskMultiset, t2: TaskMultiset) -> bool:
    """True for equal-size multisets swapping one element, or sizes differing by one with symmetric difference one."""
    t1._require_same_universe(t2)
    d12 = t1.difference(t2)
    d21 = t2.difference(t1)
    if len(t1) == len(t2):
        return len(d12) == 1 and len(d21) == 1
    if abs(len(t1) - len(t2)) == 1:
        return len(d12) + len(d21) == 1
    return False


def random_multiset(size: int, t: int, rng: Random) -> TaskMultiset:
    """Multiset of ``size`` tasks drawn iid uniform from ``[1, t]``."""
    return TaskMultiset.from_elements((rng.randint(1, t) for _ in range(size)), t)


def adjacent_step(
    T: TaskMultiset, rng: Random, *, w: int, size_varying: bool = False
) -> TaskMultiset:
    """One move of the random adjacent walk.

    Default move keeps the size fixed: remove one element chosen uniformly by
    multiplicity and insert one uniform task id, redrawing until the result
    actually differs. With ``size_varying`` the move kind is chosen uniformly
    among the feasible ones in {swap, insert, remove}, where insert requires
    ``len(T) < w`` and remove requires a nonempty multiset. The output is
    always adjacent to ``T``.
    """
    if len(T) > w:
        raise ValueError("multiset larger than worker count")
    moves = []
    if len(T) >= 1 and T.t >= 2:
        moves.append("swap")
    if size_varying:
        if len(T) < w:
            moves.append("insert")
        if len(T) >= 1:
            moves.append("remove")
    if not moves:
        raise ValueError("no adjacent multiset exists for this input")

    for _ in range(1000):
        move = moves[rng.randrange(len(moves))]
        if move == "insert":
            return TaskMultiset.from_elements(T.elements() + (rng.randint(1, T.t),), T.t)
        elements = list(T.elements())
        victim = elements.pop(rng.randrange(len(elements)))
        if move == "remove":
            return TaskMultiset.from_elements(elements, T.t)
        replacement = rng.randint(1, T.t)
        if replacement == victim:
            continue  # identical multiset is not adjacent; redraw
        elements.append(replacement)
        return TaskMultiset.from_elements(elements, T.t)
    raise RuntimeError("adjacent walk failed to move after 1000 draws")
