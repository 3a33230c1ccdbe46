"""Reproducible random-walk experiments emitting one JSONL record per step.

A walk starts from a seeded random multiset and repeatedly applies
:func:`lowchurn.core.adjacent_step`, measuring the switching cost of the
chosen assignment function across each move. All randomness derives from the
single master seed, so rerunning with identical parameters reproduces every
record except the wall-time field. Records are plain dict-backed JSON lines;
``parse(print(record)) == record`` is part of the contract.
"""
from __future__ import annotations

import json
import time
from dataclasses import asdict, dataclass
from itertools import zip_longest
from random import Random
from typing import Protocol

from .assigner import assign as pipeline_assign
from .assigner import build_schedule
from .baselines import PriorityOracle, random_permutation_assign, sorted_order
from .core import (
    Assignment,
    TaskMultiset,
    adjacent_step,
    random_multiset,
    switching_cost,
)
from .hashing import derive

__all__ = ["ExperimentRecord", "StepOutcome", "make_assigner", "run_walk", "ALGORITHMS"]

_EMPTY: frozenset = frozenset()


@dataclass(frozen=True)
class ExperimentRecord:
    """One measured transition between adjacent multisets."""

    experiment_id: str
    seed: int
    w: int
    t: int
    c: int
    algorithm: str
    t1: str
    t2: str
    switching_cost: int
    per_round_costs: tuple[int, ...]
    fallback_used: bool
    wall_time_us: int

    def to_json(self) -> str:
        return json.dumps(asdict(self), separators=(",", ":"))

    @classmethod
    def from_json(cls, line: str) -> "ExperimentRecord":
        obj = json.loads(line)
        obj["per_round_costs"] = tuple(obj["per_round_costs"])
        return cls(**obj)


@dataclass(frozen=True)
class StepOutcome:
    assignment: Assignment
    fallback_used: bool
    round_pairs: tuple[frozenset, ...]


class Assigner(Protocol):
    def __call__(self, T: TaskMultiset) -> StepOutcome: ...


def make_assigner(algorithm: str, w: int, t: int, c: int, seed: int) -> Assigner:
    """Build the named assignment function as a closure over its fixed randomness."""
    if algorithm == "sorted":
        return lambda T: StepOutcome(sorted_order(T, w), False, ())
    if algorithm == "randperm":
        oracle = PriorityOracle(derive(seed, 0x9E9))
        return lambda T: StepOutcome(random_permutation_assign(oracle, T, w), False, ())
    if algorithm == "mrbb":
        schedule = build_schedule(w, t, c, seed)

        def run(T: TaskMultiset) -> StepOutcome:
            res = pipeline_assign(schedule, T)
            return StepOutcome(res.assignment, res.used_fallback, res.per_round_pairs)

        return run
    raise ValueError(f"unknown algorithm {algorithm!r} (expected one of {sorted(ALGORITHMS)})")


ALGORITHMS = ("sorted", "randperm", "mrbb")


def _round_costs(a: tuple[frozenset, ...], b: tuple[frozenset, ...]) -> tuple[int, ...]:
    costs = [len(x ^ y) for x, y in zip_longest(a, b, fillvalue=_EMPTY)]
    while costs and costs[-1] == 0:
        costs.pop()
    return tuple(costs)


def run_walk(
    w: int,
    t: int,
    c: int,
    seed: int,
    algorithm: str,
    steps: int,
    size_varying: bool = False,
) -> tuple[list[ExperimentRecord], dict]:
    """Random adjacent walk of ``steps`` moves; returns the records and a summary."""
    if steps < 1:
        raise ValueError("steps must be >= 1")
    assigner = make_assigner(algorithm, w, t, c, seed)
    rng = Random(derive(seed, 0xA1C))
    current = random_multiset(w, t, rng)
    out_cur = assigner(current)

    records: list[ExperimentRecord] = []
    fallbacks = int(out_cur.fallback_used)
    total = 0
    worst = 0
    for step in range(steps):
        start = time.perf_counter_ns()
        nxt = adjacent_step(current, rng, w=w, size_varying=size_varying)
        out_nxt = assigner(nxt)
        cost = switching_cost(out_cur.assignment, out_nxt.assignment)
        elapsed_us = (time.perf_counter_ns() - start) // 1000
        fallback = out_cur.fallback_used or out_nxt.fallback_used
        records.append(
            ExperimentRecord(
                experiment_id=f"walk-{step:06d}",
                seed=seed,
                w=w,
                t=t,
                c=c,
                algorithm=algorithm,
                t1=current.format(),
                t2=nxt.format(),
                switching_cost=cost,
                per_round_costs=_round_costs(out_cur.round_pairs, out_nxt.round_pairs),
                fallback_used=fallback,
                wall_time_us=int(elapsed_us),
            )
        )
        fallbacks += int(out_nxt.fallback_used)
        total += cost
        worst = max(worst, cost)
        current, out_cur = nxt, out_nxt

    summary = {
        "summary": True,
        "algorithm": algorithm,
        "w": w,
        "t": t,
        "c": c,
        "seed": seed,
        "steps": steps,
        "max_switching_cost": worst,
        "mean_switching_cost": total / steps,
        "fallbacks": fallbacks,
    }
    return records, summary
