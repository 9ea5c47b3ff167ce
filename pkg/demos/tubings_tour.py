"""
Nested tubings and the coefficient 1/180
========================================

Walk through the tubings of two small forests and rebuild a coefficient
from its horizontal tubings by hand.
"""

from fractions import Fraction
from math import factorial

from postlie.forests import parse_forest
from postlie.tubings import (
    coeff_horizontal,
    coeff_vertical,
    enumerate_horizontal_tubings,
    enumerate_vertical_tubings,
    tube_stats,
)

F = parse_forest("(())(())")
print("vertical tubings of (())(()):", len(enumerate_vertical_tubings(F)))
for t in enumerate_horizontal_tubings(F):
    print("  horizontal", t.profile, [sorted(s) for s in t.tubes])

# vertices are numbered tree by tree, root first, left child before right
G = parse_forest("((()()()))")
total = Fraction(0)
for t in enumerate_horizontal_tubings(G):
    k = len(t)
    weight = Fraction((-1) ** (k - 1), k)
    for i, b in enumerate(t.boundaries):
        weight /= factorial(len(b))
        if i < k - 1:
            weight *= tube_stats(t, i).shuffle_factor
    print(f"  profile {t.profile}: {weight}")
    total += weight

print("sum:", total)
print("closed form:", coeff_horizontal(G), " recursion:", coeff_vertical(G))
