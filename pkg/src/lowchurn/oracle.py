"""Exact and exhaustive verification engines.

Four tools live here, all exact within their budgets:

* :func:`exact_feasible` decides by backtracking whether *any* assignment
  function on a small instance can keep every adjacent transition at or below
  a target switching cost. States are visited in BFS order from the
  lexicographically smallest one so each new state is already constrained by
  fixed neighbors, and the first state is pinned to sorted order (worker
  relabeling is a symmetry of the problem).
* :func:`exhaustive_max_switching` measures the true worst adjacent transition
  of a concrete assignment function by enumerating every adjacent pair.
* :func:`disperser_search` hunts for tiny verified strong-disperser tables by
  random restarts, with :func:`verify_disperser` as the exhaustive
  subset-by-subset check.
* :func:`ramsey_witness` scans for ``w+1`` tasks whose size-``w`` subsets all
  receive the same assignment pattern; such a configuration forces a
  transition that reassigns every worker.

Each search runs single-threaded; callers may explore independent instances
in parallel since nothing here shares mutable state.
"""
from __future__ import annotations

import time
from dataclasses import dataclass
from itertools import combinations, combinations_with_replacement, permutations
from random import Random
from typing import Callable, Iterable, Literal

from .assigner import DisperserFamily
from .core import Assignment, TaskMultiset, switching_cost

__all__ = [
    "SearchBudget",
    "FeasibilityResult",
    "RamseyWitness",
    "exact_feasible",
    "exhaustive_max_switching",
    "verify_disperser",
    "disperser_search",
    "ramsey_witness",
]

AssignFn = Callable[[TaskMultiset], Assignment]
Verdict = Literal["feasible", "infeasible", "budget_exhausted"]


@dataclass(frozen=True)
class SearchBudget:
    """Caps for the exact searches: explored nodes and wall-clock seconds."""

    node_limit: int = 50_000_000
    time_limit: float | None = None

    def __post_init__(self) -> None:
        if self.node_limit < 1:
            raise ValueError("node_limit must be >= 1")


@dataclass(frozen=True)
class FeasibilityResult:
    verdict: Verdict
    solution: dict[tuple[int, ...], tuple[int, ...]] | None
    nodes: int


class _BudgetExhausted(Exception):
    pass


def _states(w: int, t: int, multisets: bool) -> list[tuple[int, ...]]:
    if multisets:
        return [tuple(s) for s in combinations_with_replacement(range(1, t + 1), w)]
    if t < w:
        raise ValueError(f"no size-{w} task sets exist over [{t}]")
    return [tuple(s) for s in combinations(range(1, t + 1), w)]


def _adjacent_tuples(a: tuple[int, ...], b: tuple[int, ...]) -> bool:
    """Equal-size sorted tuples differing in exactly one element (as multisets)."""
    diff = 0
    i = j = 0
    n = len(a)
    while i < n and j < n:
        if a[i] == b[j]:
            i += 1
            j += 1
        elif a[i] < b[j]:
            diff += 1
            if diff > 1:
                return False
            i += 1
        else:
            j += 1
    diff += n - i
    return diff == 1


def _bfs_order(states: list[tuple[int, ...]], neighbors: list[list[int]]) -> list[int]:
    order: list[int] = []
    seen = [False] * len(states)
    queue = [0]
    seen[0] = True
    while queue:
        nxt: list[int] = []
        for idx in queue:
            order.append(idx)
            for nb in neighbors[idx]:
                if not seen[nb]:
                    seen[nb] = True
                    nxt.append(nb)
        queue = sorted(nxt)
    order.extend(i for i in range(len(states)) if not seen[i])
    return order


def exact_feasible(
    w: int,
    t: int,
    target_k: int,
    *,
    multisets: bool = False,
    budget: SearchBudget | None = None,
) -> FeasibilityResult:
    """Decide whether any assignment function on the instance has switching cost <= target_k.

    Enumerates every size-``w`` task state over ``[t]`` (sets by default;
    multisets on request), then backtracks over per-state bijections with
    forward checking on not-yet-assigned neighbors. ``feasible`` and
    ``infeasible`` verdicts are exact; ``budget_exhausted`` draws no
    conclusion.
    """
    if target_k < 0:
        raise ValueError("target switching cost must be >= 0")
    budget = budget or SearchBudget()
    deadline = None if budget.time_limit is None else time.monotonic() + budget.time_limit

    states = _states(w, t, multisets)
    neighbors: list[list[int]] = [[] for _ in states]
    for a_idx, b_idx in combinations(range(len(states)), 2):
        if _adjacent_tuples(states[a_idx], states[b_idx]):
            neighbors[a_idx].append(b_idx)
            neighbors[b_idx].append(a_idx)

    order = _bfs_order(states, neighbors)
    position = {idx: pos for pos, idx in enumerate(order)}

    all_candidates = [sorted(set(permutations(state))) for state in states]
    # Worker relabeling permutes every state's tuple the same way, so the
    # first state can be pinned to its sorted assignment.
    all_candidates[order[0]] = [states[order[0]]]

    # Per-position domains, rewritten destructively with an undo trail.
    domains: list[list[tuple[int, ...]]] = [all_candidates[idx] for idx in order]
    chosen: list[tuple[int, ...] | None] = [None] * len(order)
    nodes = 0

    def within(a: tuple[int, ...], b: tuple[int, ...]) -> bool:
        return sum(x != y for x, y in zip(a, b)) <= target_k

    def search(pos: int) -> bool:
        nonlocal nodes
        if pos == len(order):
            return True
        state_idx = order[pos]
        for cand in domains[pos]:
            nodes += 1
            if nodes > budget.node_limit:
                raise _BudgetExhausted
            if deadline is not None and nodes % 4096 == 0 and time.monotonic() > deadline:
                raise _BudgetExhausted
            chosen[pos] = cand
            trail: list[tuple[int, list[tuple[int, ...]]]] = []
            ok = True
            for nb in neighbors[state_idx]:
                nb_pos = position[nb]
                if chosen[nb_pos] is not None:
                    continue  # already checked when that neighbor was placed
                pruned = [c for c in domains[nb_pos] if within(c, cand)]
                if len(pruned) != len(domains[nb_pos]):
                    trail.append((nb_pos, domains[nb_pos]))
                    domains[nb_pos] = pruned
                if not pruned:
                    ok = False
                    break
            if ok and search(pos + 1):
                return True
            for nb_pos, old in trail:
                domains[nb_pos] = old
            chosen[pos] = None
        return False

    try:
        found = search(0)
    except _BudgetExhausted:
        return FeasibilityResult("budget_exhausted", None, nodes)

    if not found:
        return FeasibilityResult("infeasible", None, nodes)
    solution = {states[idx]: chosen[pos] for pos, idx in enumerate(order)}
    return FeasibilityResult("feasible", solution, nodes)


def _state_multisets(w: int, t: int, multisets: bool) -> list[TaskMultiset]:
    return [TaskMultiset.from_elements(s, t) for s in _states(w, t, multisets)]


def exhaustive_max_switching(
    assignfn: AssignFn, w: int, t: int, *, multisets: bool = False
) -> tuple[int, tuple[TaskMultiset, TaskMultiset] | None]:
    """Exact maximum switching cost of ``assignfn`` over every adjacent state pair.

    Returns the maximum and a witness pair, or ``(0, None)`` when the
    instance has no adjacent pairs at all (e.g. ``t == 1``).
    """
    states = _state_multisets(w, t, multisets)
    tuples = [s.elements() for s in states]
    results = [assignfn(s) for s in states]
    best = 0
    witness: tuple[TaskMultiset, TaskMultiset] | None = None
    for a_idx, b_idx in combinations(range(len(states)), 2):
        if not _adjacent_tuples(tuples[a_idx], tuples[b_idx]):
            continue
        cost = switching_cost(results[a_idx], results[b_idx])
        if cost > best or witness is None:
            best = cost
            witness = (states[a_idx], states[b_idx])
    return best, witness


def _qualifying_subsets(N: int, min_size: int) -> Iterable[tuple[int, ...]]:
    for size in range(min_size, N + 1):
        yield from combinations(range(1, N + 1), size)


def verify_disperser(family: DisperserFamily) -> bool:
    """Exhaustively check the covering property over every large-enough subset.

    For each ``S`` with ``|S| >= 2**k_param`` the seed-annotated image must
    cover at least ``(1 - epsilon) * M * D`` cells. Only feasible for small
    domains; cost grows with ``2**N``.
    """
    need = (1.0 - family.epsilon) * family.M * family.D
    table = family.table
    D = family.D
    min_size = 2**family.k_param
    if min_size > family.N:
        return True  # no qualifying subsets: vacuously a disperser
    for S in _qualifying_subsets(family.N, min_size):
        cells = 0
        for d in range(D):
            cells += len({table[s - 1][d] for s in S})
        if cells < need:
            return False
    return True


def disperser_search(
    N: int,
    D: int,
    M: int,
    k_param: int,
    epsilon: float,
    budget: SearchBudget | None = None,
    *,
    seed: int = 0,
) -> DisperserFamily | None:
    """Random-restart search for a verified disperser table; None if the budget ends first.

    Every returned family has passed :func:`verify_disperser`, so callers can
    treat it as ground truth for downstream checks.
    """
    if N > 32:
        raise ValueError("exhaustive verification is only feasible for N <= 32")
    budget = budget or SearchBudget(node_limit=20_000)
    deadline = None if budget.time_limit is None else time.monotonic() + budget.time_limit
    rng = Random(seed)
    for _ in range(budget.node_limit):
        if deadline is not None and time.monotonic() > deadline:
            return None
        candidate = DisperserFamily.random_table(N, D, M, k_param, epsilon, rng)
        if verify_disperser(candidate):
            return candidate
    return None


@dataclass(frozen=True)
class RamseyWitness:
    """``w+1`` tasks whose size-``w`` subsets all get the same assignment pattern.

    ``pattern[i-1]`` is the rank (1-based, within the sorted subset) of the
    task handed to worker ``i``; it is shared by every subset. The two extreme
    subsets then exhibit switching cost exactly ``w``.
    """

    vertices: tuple[int, ...]
    pattern: tuple[int, ...]


def _color_of(assignfn: AssignFn, subset: tuple[int, ...], t: int) -> tuple[int, ...]:
    T = TaskMultiset.from_elements(subset, t)
    rank = {task: r + 1 for r, task in enumerate(subset)}
    result = assignfn(T)
    return tuple(rank[task] for _, task in result.pairs)


def ramsey_witness(assignfn: AssignFn, w: int, t: int) -> RamseyWitness | None:
    """First ``w+1``-subset of ``[t]`` that is monochromatic under the assignment coloring.

    Colors each size-``w`` subset by the pattern of ranks its workers
    receive; a monochromatic ``w+1``-clique pins every worker to "shift one
    task up" between the two extreme subsets, which is verified before
    returning.
    """
    if t < w + 1:
        return None
    for vertices in combinations(range(1, t + 1), w + 1):
        colors = {
            _color_of(assignfn, tuple(v for k, v in enumerate(vertices) if k != skip), t)
            for skip in range(w + 1)
        }
        if len(colors) == 1:
            pattern = colors.pop()
            low = TaskMultiset.from_elements(vertices[:-1], t)
            high = TaskMultiset.from_elements(vertices[1:], t)
            got = switching_cost(assignfn(low), assignfn(high))
            assert got == w, f"monochromatic witness must force cost {w}, saw {got}"
            return RamseyWitness(vertices, pattern)
    return None
