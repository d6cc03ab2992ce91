"""
Fixed points of the last bending action
=======================================

Type I fixed points lie flat in a plane with the first n-2 edges along one
line; type II fixed points have the last two edges aligned and form whole
circle-invariant submanifolds.
"""

import math

import numpy as np

from polycob import (
    LengthVector,
    bend_action,
    build_type1,
    build_type2,
    classify_fixed,
    enumerate_admissible,
    so3_equivalent,
    type2_submanifolds,
)

r = LengthVector([1, "1.5", "3.5", 3, "3.5"])
rng = np.random.default_rng(3)

for s in enumerate_admissible(r):
    P = build_type1(r, s)
    kind, found = classify_fixed(P)
    moved = np.max(np.abs(bend_action(P, r.n - 3, 1.0).edges - P.edges))
    print(f"I = {set(s.indices)!s:<10} sign {(-1) ** (r.n - s.cardinality):+d}  {kind.name}  motion {moved:.1e}")
    print(np.round(P.edges, 4))

###############################################################################
# Aligned last edges merge into one side of length a + b or |a - b|; only the
# merges that still close up give fixed submanifolds. Here neither does, so
# switch to a vector where both survive.

print("\nreduced vectors for", r.to_json(), ":", [v.to_json() for v in type2_submanifolds(r)])
r = LengthVector([2, "1/2", 4, "1/2", "5/2"])
a, b = r[-2], r[-1]
for v in type2_submanifolds(r):
    parallel = v[-1] == a + b
    P = build_type2(r, parallel=parallel, rng=rng)
    same = all(so3_equivalent(P, bend_action(P, r.n - 3, t)) for t in (math.pi / 7, 1.0, 3.0))
    print(f"{'parallel' if parallel else 'antiparallel'} pair, reduced lengths {v.to_json()}, "
          f"orbit stays in one SO(3) class: {same}")
