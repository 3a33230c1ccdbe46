"""How much does one task swap move the workforce?

Builds the multi-round pipeline next to the sorted-order baseline and walks
both through the same sequence of adjacent task multisets, counting reassigned
workers at every step. Sorted order keeps drifting linearly with the universe;
the pipeline's churn stays flat.
"""
from random import Random

from lowchurn import (
    adjacent_step,
    assign,
    build_schedule,
    random_multiset,
    sorted_order,
    switching_cost,
)

W, T, C, SEED = 32, 128, 4, 2024

schedule = build_schedule(W, T, C, SEED)
print(f"pipeline: {schedule.total_rounds} hashing rounds for w={W}, t={T} (c={C})")

rng = Random(7)
tasks = random_multiset(W, T, rng)
print(f"start multiset: {tasks.format()}")

result = assign(schedule, tasks)
print(f"\nfirst few assignments: {dict(result.assignment.pairs[:6])} ...")
print(f"fallback pairs: {result.fallback_pairs} (0 means the guarantee applies)")

print("\nstep | pipeline churn | sorted-order churn")
prev_pipe = result.assignment
prev_sorted = sorted_order(tasks, W)
pipe_total = sorted_total = pipe_worst = sorted_worst = 0
STEPS = 400
for step in range(1, STEPS + 1):
    tasks = adjacent_step(tasks, rng, w=W)
    cur_pipe = assign(schedule, tasks).assignment
    cur_sorted = sorted_order(tasks, W)
    d_pipe = switching_cost(prev_pipe, cur_pipe)
    d_sorted = switching_cost(prev_sorted, cur_sorted)
    pipe_total += d_pipe
    sorted_total += d_sorted
    pipe_worst = max(pipe_worst, d_pipe)
    sorted_worst = max(sorted_worst, d_sorted)
    if step <= 5 or step % 100 == 0:
        print(f"{step:4d} | {d_pipe:14d} | {d_sorted:18d}")
    prev_pipe, prev_sorted = cur_pipe, cur_sorted

print(f"\nover {STEPS} adjacent steps:")
print(f"  pipeline:     mean {pipe_total / STEPS:.2f}, worst {pipe_worst}")
print(f"  sorted order: mean {sorted_total / STEPS:.2f}, worst {sorted_worst}")
print(f"  structural ceiling per step: 4R = {4 * schedule.total_rounds}")
