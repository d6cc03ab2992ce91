"""
Moment polytope of a pentagon space
===================================

The two diagonals from the first vertex give a torus action. Its image is a
rectangle cut by three slope +-1 lines, computed here in exact rationals and
written out as SVG.
"""

import sys

from polycob import LengthVector, classify_shape, emit, moment_polygon
from polycob.lengths import format_rational

r = LengthVector([2, "1/2", 4, "1/2", "5/2"])
poly = moment_polygon(r)

for x, y in poly.vertices:
    print(f"({format_rational(x)}, {format_rational(y)})")
print(classify_shape(poly))

out = sys.argv[1] if len(sys.argv) > 1 else "pentagon_polytope.svg"
with open(out, "w") as fh:
    fh.write(emit(poly, "svg"))
print("wrote", out)
