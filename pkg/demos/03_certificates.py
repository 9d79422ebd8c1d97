"""Dominance windows and growth-equivalence certificates.

Window reports are empirical: they find the least constant K with
dims_lhs[n] <= K * dims_rhs[n] across the window.  The certificate
verifiers complement them with exact arithmetic: when a certificate
verifies, the dominance direction it covers holds for every level, not
just the inspected window.
"""

from gkgrowth import (
    AlgebraPresentation,
    Matrix,
    PolyRing,
    RatFuncField,
    RationalField,
    dominance_check,
    equivalence_check,
    growth_sequence,
    verify_bimodule_certificate,
    verify_central_multiplier_certificate,
    verify_nilpotent_adjoin_certificate,
)

F = RatFuncField("x")
Q = RationalField()

# --- window dominance for the inverted-variable extension -------------------

base = AlgebraPresentation(F, 1, [Matrix(F, [[F.gen()]])], "x-algebra")
extended = base.adjoin([Matrix(F, [[F.one / F.gen()]])], "x-inverted")
table_base = growth_sequence(base, 12)
table_ext = growth_sequence(extended, 12)
forward = dominance_check(table_base, table_ext, (1, 12))
backward = dominance_check(table_ext, table_base, (1, 12))
print("window constants:", forward.k_min, "and", backward.k_min)
print("verdict:", equivalence_check(table_base, table_ext, (1, 12)).verdict)

# --- the same fact as a certificate ------------------------------------------
# Multiplying by x clears the adjoined inverse back into the base
# algebra, x is regular and central, so the extension cannot grow faster.

multiplier = Matrix(F, [[F.gen()]])
certificate = verify_central_multiplier_certificate(
    base, [Matrix(F, [[F.one / F.gen()]])], multiplier, multiplier, window=(1, 12)
)
print("\ncentral-multiplier certificate verified:", certificate.verified)
for item in certificate.checked:
    print("  checked:", item)
for item in certificate.unchecked:
    print("  unchecked:", item)

# --- nilpotent adjunction -----------------------------------------------------
# Adjoining a corner matrix to the diagonal algebra cannot change growth:
# its products with the algebra square to zero.

diag = AlgebraPresentation(
    Q, 2, [Matrix.elementary(Q, 2, 0, 0), Matrix.elementary(Q, 2, 1, 1)], "diagonal"
)
corner = Matrix.elementary(Q, 2, 0, 1)
report = verify_nilpotent_adjoin_certificate(diag, [corner], 2, window=(1, 8))
print("\nnilpotent-adjoin certificate verified:", report.verified)

# --- bimodule evidence ---------------------------------------------------------
# The even-powers subalgebra dominates the full one-variable algebra:
# 1 and x generate the big algebra as a module over the even part.

ring = PolyRing(("x",))
all_powers = AlgebraPresentation(ring, 1, [Matrix(ring, [[ring.gen(0)]])], "all-powers")
even_powers = AlgebraPresentation(ring, 1, [Matrix(ring, [[ring.gen(0) ** 2]])], "even-powers")
one = Matrix(ring, [[ring.one]])
x = Matrix(ring, [[ring.gen(0)]])
x_squared = Matrix(ring, [[ring.gen(0) ** 2]])
zero = Matrix(ring, [[ring.zero]])
structure = [[[zero, x_squared], [one, zero]]]  # x*1 = x*1, x*x = 1*x^2
report = verify_bimodule_certificate(all_powers, even_powers, [one, x], structure)
print("\nbimodule certificate verified:", report.verified)
print("  predicted constant:", report.details["predicted_constant"])
print("  measured constant: ", report.equivalence.forward.k_min)
