"""Structure theory of finite-dimensional matrix spans over QQ.

Any presentation whose filtration stabilizes re-encodes as structure
constants; the radical falls out of the trace form of the left regular
representation, and a split complement with block idempotents is lifted
through the radical.  Everything is re-verified exactly before being
returned, so a wrong answer is impossible by construction (it would
raise instead).
"""

from gkgrowth import (
    AlgebraPresentation,
    Matrix,
    NotSplitOverBaseError,
    RatFuncField,
    RationalField,
    central_primitive_idempotents,
    close_to_fdalg,
    decompose_element,
    nilpotence_degree,
    radical,
    wedderburn_complement,
)

Q = RationalField()

# --- the upper-triangular algebra --------------------------------------------

upper = AlgebraPresentation(
    Q,
    3,
    [Matrix.elementary(Q, 3, i, j) for i in range(3) for j in range(i, 3)],
    "upper-triangular-3",
)
algebra = close_to_fdalg(upper)
print("dimension:", algebra.dim)
rad = radical(algebra)
print("radical basis:", [str(m) for m in rad])
print("nilpotence degree:", nilpotence_degree(algebra, rad))

data = wedderburn_complement(algebra)
print("complement basis:", [str(m) for m in data.complement_basis])
print("block idempotents:", [str(m) for m in data.idempotents])

element = Matrix(Q, [[1, 4, 7], [0, 2, 5], [0, 0, 3]])
semisimple_part, radical_part = decompose_element(algebra, data, element)
print("\ndecompose", element)
print("  semisimple part:", semisimple_part)
print("  radical part:   ", radical_part)

# --- a split semisimple pair --------------------------------------------------

pair = close_to_fdalg(
    AlgebraPresentation(Q, 2, [Matrix.elementary(Q, 2, 0, 0), Matrix.elementary(Q, 2, 1, 1)], "pair")
)
print("\nQQ x QQ idempotents:", [str(m) for m in central_primitive_idempotents(pair)])

# --- an extension that does not split over QQ ---------------------------------
# The companion matrix of t^2 - 2 generates a quadratic field extension;
# splitting it would need an irrational eigenvalue.

sqrt2 = close_to_fdalg(AlgebraPresentation(Q, 2, [Matrix(Q, [[0, 2], [1, 0]])], "sqrt2"))
try:
    central_primitive_idempotents(sqrt2)
except NotSplitOverBaseError as err:
    print("\nsplitting failure is a typed error:", err)

# --- rational-function scalars -------------------------------------------------
# Over QQ(x) the span closes under the scalar field.  diag(x, 0) puts x
# times a projection into the algebra, so the closure is the full
# upper-triangular algebra and splits with two blocks.

F = RatFuncField("x")
gens = [Matrix.diagonal(F, [F.gen(), F.zero]), Matrix.elementary(F, 2, 0, 1)]
scalar_algebra = close_to_fdalg(AlgebraPresentation(F, 2, gens, "ut2-x"))
print("\nscalar-field closure dimension:", scalar_algebra.dim)
data = wedderburn_complement(scalar_algebra)
print("idempotents:", [str(m) for m in data.idempotents])
bar, nil = decompose_element(scalar_algebra, data, gens[0])
print("diag(x,0) decomposes as", bar, "+", nil)
