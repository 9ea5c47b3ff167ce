"""
The post-Lie Magnus expansion on planar forests
===============================================

Compute chi(x) for the free post-Lie algebra on one generator, print the
first few homogeneous parts, and check the four methods against each other.
"""

from postlie import chi, compare_methods, verify_defining_equation
from postlie.cli import format_element_text

# chi up to degree 4, by the direct logarithm log_*(exp_.(x))
result = chi(4)
for n in range(1, 5):
    print(f"chi_{n} =", format_element_text(result.component(n)))

# the defining equation exp_*(chi) = exp_.(x) holds term by term
print("defining equation holds to degree 6:", verify_defining_equation(6))

# recursive formula and both tubing formulas give the same coefficients
report = compare_methods(6)
print("methods agree to degree 6:", report.ok)
for method, seconds in report.timings.items():
    print(f"  {method:<11} {seconds:.3f}s")

# number of forests carrying a nonzero coefficient, per degree
full = chi(7).element
for n in range(1, 8):
    print(n, len(full.homogeneous(n)))
