"""
Cobordism classes of seven pentagon spaces
==========================================

Each length vector below is smooth, so the bending circle action along the
last diagonal has isolated fixed points indexed by admissible index sets.
Summing (-1)^(n - |I|) over them gives the class as a multiple of CP^2.
"""

from polycob import LengthVector, cobordism_class, enumerate_admissible, moment_polygon, classify_shape

vectors = [
    (1, "1.5", 4, 1, 2),
    ("0.5", 2, 4, 1, 2),
    (2, "0.5", 4, "0.5", "2.5"),
    (2, "3.5", 4, 1, 2),
    (2, "3.5", 4, "3.5", "2.5"),
    (5, 1, 4, 5, 1),
    (1, "1.5", "3.5", 3, "3.5"),
]

for raw in vectors:
    r = LengthVector(raw)
    c = cobordism_class(r)
    sets = [set(s.indices) for s in enumerate_admissible(r)]
    edges = classify_shape(moment_polygon(r))["edge_count"]
    label = "(" + ", ".join(r.to_json()) + ")"
    print(f"r = {label:<24} M_r ~ {c!s:<10} I_r = {sets or '{}'}, polytope with {edges} edges")

###############################################################################
# Classes of even-dimensional projective spaces survive; for n even every
# summand is odd dimensional and bounds, so the flag is set regardless.

r = LengthVector([3, 1, 1, 2])
print(cobordism_class(r))
