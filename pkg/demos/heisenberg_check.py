"""
A concrete post-Lie algebra
===========================

The 3-dimensional Heisenberg algebra with x |> y = -[x, y].  Check the axioms,
push the universal coefficients of chi into it, and test the integration
identity relating the two BCH series.
"""

from postlie.concrete import (
    basis_vector,
    bch,
    check_post_lie_axioms,
    concrete_chi,
    concrete_chi_series,
    eval_element,
    exp_upsilon,
    format_rational,
    heisenberg_negative,
    verify_integration_theorem,
)
from postlie.magnus import chi


def show(v):
    return "(" + ", ".join(format_rational(c) for c in v) + ")"


sc = heisenberg_negative()
e1, e2, e3 = (basis_vector(3, i) for i in range(3))
print(check_post_lie_axioms(sc).summary())

# the bracket x |> y - y |> x + [x, y] is again a Lie bracket
print("bar bracket:", check_post_lie_axioms(sc.bar_bracket()).summary())

x = tuple(a + b for a, b in zip(e1, e2))
print("chi(e1 + e2) =", show(concrete_chi(sc, x, 4)))

# the same vector from the forest expansion, one forest at a time
universal = chi(4).element
print("matches forest expansion:", eval_element(sc, universal, x, 4) == concrete_chi_series(sc, x, 4))

print("Exp(e1 |>) e2 =", show(exp_upsilon(sc, e1, e2, 4)))
print("BCH(e1, e2) =", show(bch(sc, e1, e2, 4)))

pairs = [(a, b) for a in (e1, e2, e3) for b in (e1, e2, e3)]
print("integration identity on all basis pairs:",
      all(verify_integration_theorem(sc, a, b, 4) for a, b in pairs))
