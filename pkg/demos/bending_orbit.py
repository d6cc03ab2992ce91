"""
Bending a hexagon
=================

The flow along a diagonal rotates the edges before it rigidly about that
diagonal. Lengths of all diagonals are conserved and the orbit closes after
time 2 pi / l_k.
"""

import math

import numpy as np

from polycob import LengthVector, action_angle, bend_flow, diagonals, random_polygon, check_gc

rng = np.random.default_rng(7)
r = LengthVector([3, 2, "5/2", 2, "3/2", 2])
P = random_polygon(r, rng)

aa = action_angle(P)
print("actions l  :", np.round(aa.ell, 6))
print("angles  th :", np.round(aa.theta, 6))

k = 2
ell = diagonals(P)[k - 1][1]
period = 2 * math.pi / ell
print(f"\nflow along mu_{k}, period {period:.6f}")

for t in np.linspace(0, period, 9):
    Q = bend_flow(P, k, t)
    th = action_angle(Q).theta
    print(f"t={t:7.4f}  theta={np.round(th, 4)}  closure={Q.closure_residual:.1e}  GC={check_gc(Q)}")

###############################################################################
# After one full period the polygon is back where it started.

back = bend_flow(P, k, period)
print("\nmax |phi_T(P) - P| =", np.max(np.abs(back.edges - P.edges)))
