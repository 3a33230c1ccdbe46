"""Densifying sparse binary vectors into short codes over a large alphabet.

A weight-k vector in n dimensions becomes k symbols from [n]: worker i's task
when the assigner runs on the vector's support. Distances survive the trip:
the embedded distance never drops below half the original (exactly, per
pair), and on top it grows only with the assigner's churn. The same machinery
accepts integer-valued vectors, where the input metric is l1.
"""
from itertools import combinations
from random import Random

from lowchurn import SparseVector, build_schedule, distortion_audit, embed, hamming

K, N, SEED = 8, 64, 31
schedule = build_schedule(K, N, 4, SEED)

x = SparseVector.parse("64 8 3,9,17,22,40,41,55,62")
code = embed(schedule, x)
print(f"vector support {tuple(p for p, _ in x.entries)}")
print(f"code           {code.coords}   ({K} coordinates over [{N}])")

y = SparseVector.from_support(N, (3, 9, 17, 22, 40, 41, 55, 63))  # one position moved
print(f"\nneighbor distance: input {hamming(x, y)}, embedded {hamming(code, embed(schedule, y))}")

print("\n== distortion over 60 random weight-8 vectors, all pairs ==")
rng = Random(5)
vectors = [SparseVector.from_support(N, rng.sample(range(1, N + 1), K)) for _ in range(60)]
report = distortion_audit(schedule, list(combinations(vectors, 2)))
print(f"  pairs audited     {len(report.pairs)}")
print(f"  min ratio         {report.min_ratio:.3f}  (floor: 0.5, holds per pair)")
print(f"  max ratio         {report.max_ratio:.3f}  (structural ceiling {report.structural_ceiling:.0f})")
print(f"  fallback pairs    {report.fallback_pairs}")

print("\n== l1 mode: integer-valued vectors ==")
u = SparseVector.parse("64 8 3:4,9:3,17:1")
v = SparseVector.parse("64 8 3:2,9:3,17:1,20:2")
report = distortion_audit(schedule, [(u, v)])
row = report.pairs[0]
print(f"  l1 distance {row.input_distance}, embedded {row.code_distance}, ratio {row.ratio:.2f}")
