"""
The equilateral limit
=====================

Equilateral polygon spaces are singular for the bending action, but nudging
the last side gives a smooth space in the adjacent chamber whose class is
given by a closed binomial formula.
"""

from fractions import Fraction

from polycob import equilateral_class, perturbed_equilateral_check

for n in range(3, 22, 2):
    closed = equilateral_class(n).coefficient
    nudged = perturbed_equilateral_check(n, Fraction(1, 1000)).coefficient
    print(f"n={n:2d}  closed form {closed:>8d}  perturbed {nudged:>8d}")
