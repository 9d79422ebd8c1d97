"""Growth tables and growth-degree estimates.

A presentation is a finite list of square matrices over a coefficient
ring; its level-n space is spanned by all products of at most n
generators (empty product included).  The dimension sequence of these
spaces is the growth table, and the degree of its polynomial tail is the
growth degree.
"""

from gkgrowth import (
    AlgebraPresentation,
    Matrix,
    PolyRing,
    RatFuncField,
    RationalField,
    gk_estimate,
    growth_sequence,
)

# --- a polynomial ring in two variables, presented as 1x1 matrices ----------

ring = PolyRing(("x1", "x2"))
poly2 = AlgebraPresentation(
    ring, 1, [Matrix(ring, [[g]]) for g in ring.gens()], "two-variables"
)
table = growth_sequence(poly2, 10)
print("two-variable polynomial ring")
print("  dims:", table.dims)  # 1, 3, 6, 10, ... = C(n+2, 2)
estimate = gk_estimate(table)
print(f"  growth degree: {estimate.value} via {estimate.method}")
print(f"  ({estimate.note})")

# --- a finite-dimensional algebra stabilizes --------------------------------

Q = RationalField()
mat2 = AlgebraPresentation(
    Q, 2, [Matrix.elementary(Q, 2, i, j) for i in range(2) for j in range(2)], "mat2"
)
table = growth_sequence(mat2, 8)
print("\nfull 2x2 matrix algebra")
print("  dims:", table.dims, "(stabilized at level", table.stabilized_at, ")")
print("  growth degree:", gk_estimate(table).value)

# --- rational-function entries: the pair x, 1/x -----------------------------

F = RatFuncField("x")
laurent = AlgebraPresentation(
    F, 1, [Matrix(F, [[F.gen()]]), Matrix(F, [[F.one / F.gen()]])], "laurent-pair"
)
table = growth_sequence(laurent, 10)
print("\nthe pair x, 1/x over QQ(x)")
print("  dims:", table.dims)  # 2n + 1: both power directions
print("  growth degree:", gk_estimate(table).value)

# --- membership levels -------------------------------------------------------

from gkgrowth import element_membership_at_level

ring_x = PolyRing(("x",))
line = AlgebraPresentation(ring_x, 1, [Matrix(ring_x, [[ring_x.gen(0)]])], "line")
x_cubed = Matrix(ring_x, [[ring_x.gen(0) ** 3]])
print("\nx^3 first appears at level:", element_membership_at_level(line, x_cubed, 6))
