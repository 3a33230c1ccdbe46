"""Reference assignment functions to compare the pipeline against.

``sorted_order`` is the classic baseline: workers take tasks in numerical
order, which costs up to ``min(t-1, w)`` reassignments per adjacent move.
``random_permutation_assign`` gives every worker an implicit random
preference order over tasks and assigns workers one by one to their favorite
remaining task; its switching cost is small on average but has no worst-case
guarantee.

Preference orders are realized through keyed 64-bit priorities rather than
stored permutations, so a :class:`PriorityOracle` costs O(1) memory at any
universe size. Both functions are pure given their oracle.
"""
from __future__ import annotations

from typing import Sequence

import numpy as np

from .core import Assignment, TaskMultiset
from .hashing import GOLDEN, MASK64, mix64, mix64_np
from .reduction import decode, lift

__all__ = ["PriorityOracle", "sorted_order", "random_permutation_assign"]


class PriorityOracle:
    """Keyed priorities inducing, per worker, a total preference order on tasks.

    Lower key means more preferred; ties (absent in practice with 64-bit
    keys) break toward the smaller task id because tasks are scanned in
    ascending order.
    """

    __slots__ = ("seed",)

    def __init__(self, seed: int) -> None:
        self.seed = seed

    def priority(self, worker: int, task: int) -> int:
        return mix64(mix64(self.seed ^ ((worker * GOLDEN) & MASK64)) ^ ((task * GOLDEN) & MASK64))

    def priority_matrix(self, workers: Sequence[int], tasks: Sequence[int]) -> np.ndarray:
        """uint64 key matrix, bit-identical to :meth:`priority` entrywise."""
        ws = mix64_np(np.uint64(self.seed) ^ (np.asarray(workers, dtype=np.uint64) * np.uint64(GOLDEN)))
        ts = np.asarray(tasks, dtype=np.uint64) * np.uint64(GOLDEN)
        return mix64_np(ws[:, None] ^ ts[None, :])


def sorted_order(T: TaskMultiset, w: int) -> Assignment:
    """Worker ``i`` takes the i-th smallest element of ``T`` (with multiplicity)."""
    elements = T.elements()
    if len(elements) > w:
        raise ValueError("multiset larger than worker count")
    return Assignment(w, tuple((i + 1, task) for i, task in enumerate(elements)))


def _greedy_order(oracle, workers: Sequence[int], tasks: Sequence[int]) -> list[int]:
    """Tasks chosen by the greedy pass, in worker order. ``tasks`` must be sorted."""
    keys = oracle.priority_matrix(workers, tasks)
    taken_mask = np.zeros(len(tasks), dtype=bool)
    chosen: list[int] = []
    sentinel = np.uint64(0xFFFFFFFFFFFFFFFF)
    for row in range(len(workers)):
        masked = np.where(taken_mask, sentinel, keys[row])
        j = int(np.argmin(masked))
        taken_mask[j] = True
        chosen.append(tasks[j])
    return chosen


def random_permutation_assign(oracle: PriorityOracle, T: TaskMultiset, w: int) -> Assignment:
    """Greedy assignment by worker id: each takes its most-preferred remaining task.

    Multisets are supported through the lifted-set reduction, so preferences
    are over lifted task ids and the result is projected back to base tasks.
    """
    size = len(T)
    if size > w:
        raise ValueError("multiset larger than worker count")
    if size == 0:
        return Assignment(w, ())
    lifted = sorted(lift(T, w))
    workers = list(range(1, size + 1))
    chosen = _greedy_order(oracle, workers, lifted)
    return Assignment(w, tuple((i + 1, decode(task, w)[0]) for i, task in enumerate(chosen)))
