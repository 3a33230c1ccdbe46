"""Lift task multisets over ``[t]`` into plain task sets over ``[w*t]``.

Each demand unit becomes its own lifted task: the x-th copy of task ``i``
maps to the pair ``(i, x)``, encoded as the integer ``(i-1)*w + x``. Copies
of the same task are therefore contiguous in the encoded order, and the
encoding preserves the lexicographic order of ``(base, copy)``. Adjacent
multisets lift to adjacent sets, so any set assigner's switching behavior
survives the round trip; projecting an assignment back simply drops the copy
index.
"""
from __future__ import annotations

from dataclasses import dataclass

from .core import Assignment, TaskMultiset

__all__ = ["LiftedTaskId", "encode", "decode", "lift", "lift_ids", "project"]


def encode(base: int, copy: int, w: int) -> int:
    """Encode the ``copy``-th unit of task ``base`` into ``[1, w*t]``."""
    if not 1 <= copy <= w:
        raise ValueError(f"copy index {copy} outside [1, {w}]")
    if base < 1:
        raise ValueError("task ids start at 1")
    return (base - 1) * w + copy


def decode(encoded: int, w: int) -> tuple[int, int]:
    """Inverse of :func:`encode`: return ``(base, copy)``."""
    if encoded < 1:
        raise ValueError("encoded ids start at 1")
    return (encoded - 1) // w + 1, (encoded - 1) % w + 1


@dataclass(frozen=True)
class LiftedTaskId:
    base: int
    copy: int
    encoded: int

    @classmethod
    def make(cls, base: int, copy: int, w: int) -> "LiftedTaskId":
        return cls(base, copy, encode(base, copy, w))

    @classmethod
    def from_encoded(cls, encoded: int, w: int) -> "LiftedTaskId":
        base, copy = decode(encoded, w)
        return cls(base, copy, encoded)


def lift_ids(T: TaskMultiset, w: int) -> tuple[LiftedTaskId, ...]:
    """The lifted set as explicit (base, copy, encoded) triples, in encoded order."""
    out = []
    for task, count in T.entries:
        if count > w:
            raise ValueError(f"multiplicity {count} of task {task} exceeds worker count {w}")
        out.extend(LiftedTaskId.make(task, x, w) for x in range(1, count + 1))
    return tuple(out)


def lift(T: TaskMultiset, w: int) -> frozenset[int]:
    """The lifted set in encoded form; ``|lift(T)| == |T|``."""
    out = set()
    for task, count in T.entries:
        if count > w:
            raise ValueError(f"multiplicity {count} of task {task} exceeds worker count {w}")
        first = (task - 1) * w
        out.update(range(first + 1, first + count + 1))
    return frozenset(out)


def project(a: Assignment, T: TaskMultiset, w: int) -> Assignment:
    """Project an assignment over lifted ids back to the base tasks of ``T``.

    Rejects anything that is not a bijection from its workers onto
    ``lift(T)``.
    """
    lifted = lift(T, w)
    assigned = [task for _, task in a.pairs]
    if len(assigned) != len(lifted) or set(assigned) != lifted:
        raise ValueError("assignment is not a bijection onto the lifted task set")
    return Assignment(a.w, tuple((worker, decode(task, w)[0]) for worker, task in a.pairs))
