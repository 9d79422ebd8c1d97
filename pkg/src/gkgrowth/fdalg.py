"""Structure theory of finite-dimensional associative algebras over QQ.

Algebras arrive as matrix presentations whose span closes up; they are
re-encoded as structure constants over QQ and all the structure theory
(radical, nilpotence degree, central primitive idempotents, complement)
runs on that abstract encoding.  The radical is the kernel of the trace
form of the left regular representation, which is exactly the radical in
characteristic zero.  Semisimple quotients must split over QQ: a
quotient that does not (an irrational-eigenvalue center, a division
algebra block) raises NotSplitOverBaseError instead of silently
extending the base field.

Presentations over QQ(x) are closed under the scalar field first; if the
resulting structure constants are all rational, the computation proceeds
on that rational form (idempotents and radical found there are genuine
ones for the scalar-field algebra, since the algebra is the rational
form tensored up), otherwise the same typed error is raised.

Every derived object is re-verified by exact arithmetic before being
returned; a failed verification raises InternalCheckError.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Optional, Sequence

from ._ratio import QQ, ZERO, as_ratio
from .algebras import AlgebraPresentation, growth_sequence
from .errors import (
    InternalCheckError,
    NonStabilizingError,
    NotSplitOverBaseError,
    RingMismatchError,
)
from .matrices import Matrix
from .poly import Poly, PolyRing, RatFuncField, uni_divmod, uni_gcd
from .spans import (
    EXTENDED,
    EchelonBasis,
    _gauss_solve,
    field_coordinates,
    matrix_from_vec,
    matrix_to_vec,
)

_T_RING = PolyRing(("t",))


# ---------------------------------------------------------------------------
# coordinate vectors


def _vec_add(u: tuple, v: tuple) -> tuple:
    return tuple(a + b for a, b in zip(u, v))


def _vec_sub(u: tuple, v: tuple) -> tuple:
    return tuple(a - b for a, b in zip(u, v))


def _vec_scale(u: tuple, c) -> tuple:
    return tuple(a * c for a in u)


def _vec_is_zero(u: tuple) -> bool:
    return not any(u)


def _vec_to_dict(u: tuple) -> dict:
    return {(i,): c for i, c in enumerate(u) if c}


def _coord_span(vectors: Sequence[tuple]):
    basis = EchelonBasis()
    reps = []
    for v in vectors:
        if basis.insert(_vec_to_dict(v)) == EXTENDED:
            reps.append(v)
    return basis, reps


def _kernel(rows: Sequence[Sequence]) -> list:
    """Canonical basis of the kernel of a QQ matrix (rows act on vectors)."""
    nrows = len(rows)
    ncols = len(rows[0]) if nrows else 0
    work = [[as_ratio(v) for v in row] for row in rows]
    pivots = []  # (row, col)
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, nrows) if work[i][c]), None)
        if pivot is None:
            continue
        work[r], work[pivot] = work[pivot], work[r]
        inv = work[r][c]
        work[r] = [v / inv for v in work[r]]
        for i in range(nrows):
            if i != r and work[i][c]:
                f = work[i][c]
                work[i] = [a - f * b for a, b in zip(work[i], work[r])]
        pivots.append((r, c))
        r += 1
        if r == nrows:
            break
    pivot_cols = {c for _, c in pivots}
    kernel = []
    for free in range(ncols):
        if free in pivot_cols:
            continue
        vec = [ZERO] * ncols
        vec[free] = QQ(1)
        for row_idx, col in pivots:
            vec[col] = -work[row_idx][free]
        kernel.append(tuple(vec))
    return kernel


# ---------------------------------------------------------------------------
# abstract structure-constant algebra


@dataclass(frozen=True)
class StructureAlgebra:
    """Finite-dimensional QQ-algebra given by structure constants."""

    dim: int
    table: tuple  # table[i][j] = coordinate tuple of basis_i * basis_j
    unit: tuple

    def mul(self, u: tuple, v: tuple) -> tuple:
        out = [ZERO] * self.dim
        for i, ui in enumerate(u):
            if not ui:
                continue
            ti = self.table[i]
            for j, vj in enumerate(v):
                if not vj:
                    continue
                c = ui * vj
                for k, t in enumerate(ti[j]):
                    if t:
                        out[k] = out[k] + c * t
        return tuple(out)

    def basis_vector(self, i: int) -> tuple:
        return tuple(QQ(1) if k == i else ZERO for k in range(self.dim))

    def lmul_matrix(self, u: tuple) -> list:
        """Rows of the left-multiplication operator of u."""
        cols = [self.mul(u, self.basis_vector(j)) for j in range(self.dim)]
        return [[cols[j][i] for j in range(self.dim)] for i in range(self.dim)]

    def power(self, u: tuple, n: int) -> tuple:
        result = self.unit
        base = u
        while n:
            if n & 1:
                result = self.mul(result, base)
            n >>= 1
            if n:
                base = self.mul(base, base)
        return result

    def min_poly(self, u: tuple, unit: Optional[tuple] = None) -> Poly:
        """Monic minimal polynomial of u (over a custom unit if given)."""
        one = self.unit if unit is None else unit
        powers = [one]
        while True:
            nxt = self.mul(powers[-1], u)
            sol = _gauss_solve(
                [_vec_to_dict(p) for p in powers], _vec_to_dict(nxt), ZERO, QQ(1)
            )
            if sol is not None:
                coeffs = [-c for c in sol] + [QQ(1)]
                return Poly.from_uni_coeffs(_T_RING, coeffs)
            powers.append(nxt)
            if len(powers) > self.dim + 1:
                raise InternalCheckError("minimal polynomial exceeds the algebra dimension")

    def evaluate(self, poly: Poly, u: tuple, unit: Optional[tuple] = None) -> tuple:
        """Horner evaluation of a univariate polynomial at u."""
        one = self.unit if unit is None else unit
        acc = tuple([ZERO] * self.dim)
        for c in reversed(poly.uni_coeffs()):
            acc = self.mul(acc, u)
            if c:
                acc = _vec_add(acc, _vec_scale(one, c))
        return acc


# ---------------------------------------------------------------------------
# building algebras from matrix presentations


@dataclass(frozen=True)
class FiniteDimAlgebra:
    """A closed matrix span with rational structure constants."""

    core: StructureAlgebra
    basis: tuple  # Matrix objects, canonical reduced-echelon family
    presentation: AlgebraPresentation = field(repr=False)

    @property
    def dim(self) -> int:
        return self.core.dim

    @property
    def ring(self):
        return self.presentation.ring

    @property
    def size(self) -> int:
        return self.presentation.size

    def from_coords(self, coords: Sequence) -> Matrix:
        out = Matrix.zeros(self.ring, self.size, self.size)
        for c, b in zip(coords, self.basis):
            if c:
                out = out + b.scale(c)
        return out

    def coords_of(self, mat: Matrix) -> list:
        """Scalar-field coordinates of ``mat`` in the stored basis."""
        coords = field_coordinates(self.basis, mat)
        if coords is None:
            raise ValueError("matrix does not lie in the algebra's scalar span")
        return coords


def close_to_fdalg(
    pres: AlgebraPresentation,
    *,
    level_cap: int = 30,
    basis_cap: int = 20000,
) -> FiniteDimAlgebra:
    """Close the presentation's span and encode it by structure constants.

    Over QQ (or a polynomial ring) the growth filtration must stabilize
    within ``level_cap`` levels; over QQ(x) the scalar-field span closes
    within matrix-size^2 steps but its structure constants must all be
    rational numbers.
    """
    if isinstance(pres.ring, RatFuncField):
        return _close_scalar_field(pres)
    table = growth_sequence(pres, level_cap, basis_cap=basis_cap)
    if table.stabilized_at is None:
        raise NonStabilizingError(
            f"{pres.label!r} did not stabilize within {level_cap} levels "
            f"(dimension reached {table.dims[-1]})"
        )
    snapshot = table.level(table.max_level).snapshot
    basis = tuple(
        matrix_from_vec(pres.ring, (pres.size, pres.size), row) for row in snapshot.rows
    )
    columns = [matrix_to_vec(b) for b in basis]
    struct_rows = []
    for bi in basis:
        row = []
        for bj in basis:
            sol = _gauss_solve(columns, matrix_to_vec(bi * bj), ZERO, QQ(1))
            if sol is None:
                raise InternalCheckError("closed span is not closed under products")
            row.append(tuple(sol))
        struct_rows.append(tuple(row))
    unit = _gauss_solve(columns, matrix_to_vec(pres.identity), ZERO, QQ(1))
    if unit is None:
        raise InternalCheckError("identity missing from a unital span closure")
    core = StructureAlgebra(len(basis), tuple(struct_rows), tuple(unit))
    return FiniteDimAlgebra(core, basis, pres)


def _mat_to_field_vec(mat: Matrix) -> dict:
    return {
        (i, j): e for i, row in enumerate(mat.rows) for j, e in enumerate(row) if e
    }


def _close_scalar_field(pres: AlgebraPresentation) -> FiniteDimAlgebra:
    ring = pres.ring
    ident = pres.identity
    basis_span = EchelonBasis()
    basis_span.insert(_mat_to_field_vec(ident))
    reps = [ident]
    frontier = [ident]
    while frontier:
        products = sorted(
            {g * b for g in pres.generators for b in frontier}, key=Matrix.sort_key
        )
        frontier = []
        for mat in products:
            if mat.is_zero:
                continue
            if basis_span.insert(_mat_to_field_vec(mat)) == EXTENDED:
                frontier.append(mat)
        reps.extend(frontier)
    rows = basis_span.rows()
    basis = []
    for row in rows:
        out = Matrix.zeros(ring, pres.size, pres.size)
        for (i, j), value in row.items():
            out = out + Matrix.elementary(ring, pres.size, i, j, value)
        basis.append(out)
    basis = tuple(basis)

    def rational_coords(mat: Matrix) -> tuple:
        coords = field_coordinates(basis, mat)
        if coords is None:
            raise InternalCheckError("scalar-field closure is not closed under products")
        rational = []
        for c in coords:
            if not c.is_constant:
                raise NotSplitOverBaseError(
                    f"{pres.label!r}: the scalar-field closure has no rational "
                    "structure constants in its canonical basis; structure theory "
                    "over the base field is not available for this input"
                )
            rational.append(c.constant_value())
        return tuple(rational)

    struct_rows = tuple(
        tuple(rational_coords(bi * bj) for bj in basis) for bi in basis
    )
    unit = rational_coords(ident)
    core = StructureAlgebra(len(basis), struct_rows, unit)
    return FiniteDimAlgebra(core, basis, pres)


# ---------------------------------------------------------------------------
# radical


def radical_coords(core: StructureAlgebra) -> list:
    """Canonical kernel basis of the regular trace form; equals the radical.

    Verified on every call: the result is a two-sided ideal and is
    nilpotent, otherwise InternalCheckError is raised.
    """
    lmuls = [core.lmul_matrix(core.basis_vector(i)) for i in range(core.dim)]
    gram = [
        [
            sum(
                (lmuls[i][k][l] * lmuls[j][l][k] for k in range(core.dim) for l in range(core.dim)),
                ZERO,
            )
            for j in range(core.dim)
        ]
        for i in range(core.dim)
    ]
    kernel = _kernel(gram)
    _verify_radical(core, kernel)
    return kernel


def _verify_radical(core: StructureAlgebra, rad: Sequence[tuple]):
    span, reps = _coord_span(rad)
    for z in reps:
        for i in range(core.dim):
            b = core.basis_vector(i)
            for product in (core.mul(z, b), core.mul(b, z)):
                if not span.contains(_vec_to_dict(product)):
                    raise InternalCheckError("trace-form kernel is not a two-sided ideal")
    if reps:
        degree = nilpotence_degree_coords(core, reps)
        if degree > core.dim + 1:
            raise InternalCheckError("trace-form kernel is not nilpotent")


def nilpotence_degree_coords(core: StructureAlgebra, rad: Sequence[tuple]) -> int:
    """Least m with (span of rad)^m = 0; 1 for the zero subspace."""
    _, reps = _coord_span(rad)
    if not reps:
        return 1
    current = reps
    degree = 1
    while current:
        degree += 1
        if degree > core.dim + 1:
            raise InternalCheckError("nilpotence degree exceeds the dimension bound")
        _, current = _coord_span([core.mul(u, v) for u in current for v in reps])
    return degree


# ---------------------------------------------------------------------------
# quotient by an ideal


def quotient_by_ideal(core: StructureAlgebra, ideal: Sequence[tuple]):
    """Quotient algebra plus the projection/section coordinate maps."""
    span, _ = _coord_span(ideal)
    pivot_positions = sorted(k[0] for k in span._pivot_rows)
    free_positions = [i for i in range(core.dim) if i not in set(pivot_positions)]
    index_of = {pos: idx for idx, pos in enumerate(free_positions)}

    def project(u: tuple) -> tuple:
        residue = span.reduce(_vec_to_dict(u))
        out = [ZERO] * len(free_positions)
        for (pos,), value in residue.items():
            out[index_of[pos]] = value
        return tuple(out)

    def section(ubar: tuple) -> tuple:
        out = [ZERO] * core.dim
        for idx, value in enumerate(ubar):
            out[free_positions[idx]] = value
        return tuple(out)

    dim_bar = len(free_positions)
    table = tuple(
        tuple(
            project(core.mul(section_i, section(_unit_tuple(dim_bar, j))))
            for j in range(dim_bar)
        )
        for section_i in (section(_unit_tuple(dim_bar, i)) for i in range(dim_bar))
    )
    bar = StructureAlgebra(dim_bar, table, project(core.unit))
    return bar, project, section


def _unit_tuple(dim: int, i: int) -> tuple:
    return tuple(QQ(1) if k == i else ZERO for k in range(dim))


# ---------------------------------------------------------------------------
# rational roots of integer polynomials


def _divisors(n: int) -> list:
    n = abs(n)
    out = set()
    f = 1
    while f * f <= n:
        if n % f == 0:
            out.add(f)
            out.add(n // f)
        f += 1
    return sorted(out)


def rational_roots(poly: Poly) -> list:
    """All rational roots of a nonzero univariate QQ-polynomial, sorted."""
    coeffs = poly.uni_coeffs()
    if not coeffs:
        raise ValueError("zero polynomial")
    roots = []
    if not coeffs[0]:
        roots.append(ZERO)
        while coeffs and not coeffs[0]:
            coeffs = coeffs[1:]
    if len(coeffs) <= 1:
        return sorted(set(roots))
    from math import gcd, lcm

    denominator_lcm = 1
    for c in coeffs:
        denominator_lcm = lcm(denominator_lcm, int(c.denominator))
    ints = [int(c.numerator) * (denominator_lcm // int(c.denominator)) for c in coeffs]
    g = 0
    for v in ints:
        g = gcd(g, v)
    ints = [v // g for v in ints]
    for p in _divisors(ints[0]):
        for q in _divisors(ints[-1]):
            if gcd(p, q) != 1:
                continue
            for candidate in (QQ(p, q), QQ(-p, q)):
                acc = ZERO
                for c in reversed(ints):
                    acc = acc * candidate + c
                if not acc:
                    roots.append(candidate)
    return sorted(set(roots))


def _uni_ext_gcd(a: Poly, b: Poly):
    """(g, x, y) with x*a + y*b = g, g the monic gcd."""
    ring = a.ring
    r0, r1 = a, b
    x0, x1 = ring.one, ring.zero
    y0, y1 = ring.zero, ring.one
    while not r1.is_zero:
        q, r = uni_divmod(r0, r1)
        r0, r1 = r1, r
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if r0.is_zero:
        return r0, x0, y0
    lead = r0.coefficient((r0.degree(),))
    inv = QQ(1) / lead
    return r0 * inv, x0 * inv, y0 * inv


# ---------------------------------------------------------------------------
# central primitive idempotents (semisimple input)


def central_primitive_idempotents_coords(
    core: StructureAlgebra, *, seed: int = 0, attempts: int = 12
) -> list:
    """Coordinates of the central primitive idempotents of a split
    semisimple algebra, via the spectral idempotents of a separating
    central element with a squarefree, fully rational minimal polynomial.
    """
    lmuls_kernel = radical_coords(core)
    if lmuls_kernel:
        raise ValueError("central_primitive_idempotents expects a semisimple algebra")
    center = _center_coords(core)
    if len(center) == 1:
        return [core.unit]
    rng = random.Random(seed)
    candidates = list(center)
    for _ in range(attempts):
        candidates.append(
            tuple(
                sum((QQ(rng.randint(-5, 5)) * z[k] for z in center), ZERO)
                for k in range(core.dim)
            )
        )
    last_failure = "no separating central element found"
    for u in candidates:
        mu = core.min_poly(u)
        if mu.degree() != len(center):
            continue
        if uni_gcd(mu, mu.derivative()).degree() != 0:
            raise InternalCheckError("center element has a non-squarefree minimal polynomial")
        roots = rational_roots(mu)
        if len(roots) != mu.degree():
            raise NotSplitOverBaseError(
                "the center's minimal polynomial has an irrational root; "
                "the semisimple quotient does not split over QQ"
            )
        idems = []
        for r in roots:
            value = core.unit
            for s in roots:
                if s == r:
                    continue
                shifted = _vec_sub(u, _vec_scale(core.unit, s))
                value = _vec_scale(core.mul(value, shifted), QQ(1) / (r - s))
            idems.append(value)
        _verify_idempotent_family(core, idems, center)
        return sorted(idems)
    raise NotSplitOverBaseError(last_failure)


def _center_coords(core: StructureAlgebra) -> list:
    rows = []
    for j in range(core.dim):
        bj = core.basis_vector(j)
        for k in range(core.dim):
            rows.append(
                [core.table[i][j][k] - core.table[j][i][k] for i in range(core.dim)]
            )
    return _kernel(rows)


def _verify_idempotent_family(core: StructureAlgebra, idems: Sequence[tuple], center):
    total = tuple([ZERO] * core.dim)
    for e in idems:
        if core.mul(e, e) != e:
            raise InternalCheckError("spectral projector is not idempotent")
        total = _vec_add(total, e)
    if total != core.unit:
        raise InternalCheckError("central idempotents do not sum to the unit")
    for a in idems:
        for b in idems:
            if a is not b and not _vec_is_zero(core.mul(a, b)):
                raise InternalCheckError("central idempotents are not orthogonal")
    for e in idems:
        _, reps = _coord_span([core.mul(z, e) for z in center])
        if len(reps) != 1:
            raise InternalCheckError("a spectral projector is not primitive in the center")


# ---------------------------------------------------------------------------
# primitive idempotents and matrix units inside a semisimple algebra


def _corner_basis(core: StructureAlgebra, e: tuple) -> list:
    vectors = [core.mul(e, core.mul(core.basis_vector(i), e)) for i in range(core.dim)]
    _, reps = _coord_span(vectors)
    return reps


def _primitive_idempotents(core: StructureAlgebra, block_idem: tuple, *, seed: int = 0,
                           attempts: int = 24) -> list:
    """Split a central idempotent of a semisimple algebra into primitive
    orthogonal idempotents, by spectral splitting of corner elements."""
    rng = random.Random(seed)
    finished = []
    stack = [block_idem]
    while stack:
        e = stack.pop()
        corner = _corner_basis(core, e)
        if len(corner) == 1:
            finished.append(e)
            continue
        split = _try_split(core, e, corner, rng, attempts)
        if split is None:
            raise NotSplitOverBaseError(
                "no rational splitting element found in a matrix block; "
                "the block may be a division algebra over QQ"
            )
        f = split
        stack.append(f)
        stack.append(_vec_sub(e, f))
    return sorted(finished)


def _try_split(core, e, corner, rng, attempts):
    candidates = list(corner)
    for _ in range(attempts):
        candidates.append(
            tuple(
                sum((QQ(rng.randint(-3, 3)) * v[k] for v in corner), ZERO)
                for k in range(core.dim)
            )
        )
    for u in candidates:
        mu = core.min_poly(u, unit=e)
        if mu.degree() < 2:
            continue
        for root in rational_roots(mu):
            shifted = Poly.from_uni_coeffs(_T_RING, [-root, QQ(1)])
            power = shifted
            multiplicity = 1
            while True:
                q, r = uni_divmod(mu, power * shifted)
                if not r.is_zero:
                    break
                power = power * shifted
                multiplicity += 1
            cofactor, r = uni_divmod(mu, power)
            if not r.is_zero:
                raise InternalCheckError("root multiplicity division failed")
            if cofactor.degree() < 1:
                continue  # mu is a power of (t - root): no splitting here
            g, x, y = _uni_ext_gcd(power, cofactor)
            if g.degree() != 0:
                raise InternalCheckError("coprime factors with a nontrivial gcd")
            # h = y*cofactor/g is 1 mod power and 0 mod cofactor.
            h = y * cofactor * (QQ(1) / g.constant_value())
            f = core.evaluate(h, u, unit=e)
            if _vec_is_zero(f) or f == e:
                continue
            if core.mul(f, f) != f:
                raise InternalCheckError("spectral splitting produced a non-idempotent")
            return f
    return None


def _matrix_units(core: StructureAlgebra, prims: Sequence[tuple]) -> dict:
    """Matrix units of one simple split block from its primitive idempotents."""
    k = len(prims)
    units = {(0, 0): prims[0]}
    firsts = {0: prims[0]}   # e_{0,t}
    backs = {0: prims[0]}    # e_{t,0}
    for t in range(1, k):
        f0, ft = prims[0], prims[t]
        x = None
        for i in range(core.dim):
            candidate = core.mul(f0, core.mul(core.basis_vector(i), ft))
            if not _vec_is_zero(candidate):
                x = candidate
                break
        if x is None:
            raise InternalCheckError("primitive idempotents of one block do not connect")
        y_space = []
        for i in range(core.dim):
            candidate = core.mul(ft, core.mul(core.basis_vector(i), f0))
            if not _vec_is_zero(candidate):
                y_space.append(candidate)
        _, y_reps = _coord_span(y_space)
        sol = _gauss_solve(
            [_vec_to_dict(core.mul(x, yr)) for yr in y_reps],
            _vec_to_dict(f0),
            ZERO,
            QQ(1),
        )
        if sol is None:
            raise InternalCheckError("matrix-unit equation x*y = e has no solution")
        y = tuple([ZERO] * core.dim)
        for c, yr in zip(sol, y_reps):
            if c:
                y = _vec_add(y, _vec_scale(yr, c))
        if core.mul(y, x) != ft:
            raise InternalCheckError("matrix-unit pair fails y*x = f")
        firsts[t] = x
        backs[t] = y
    for a in range(k):
        for b in range(k):
            units[(a, b)] = core.mul(backs[a], firsts[b])
    for a in range(k):
        if units[(a, a)] != prims[a]:
            raise InternalCheckError("diagonal matrix unit differs from its idempotent")
    return units


# ---------------------------------------------------------------------------
# the Wedderburn-style decomposition


@dataclass(frozen=True)
class WedderburnData:
    """Radical, nilpotence degree, split complement and its block idempotents."""

    algebra: FiniteDimAlgebra
    radical_basis: tuple          # matrices
    nilpotence_degree: int
    complement_basis: tuple       # matrices
    idempotents: tuple            # matrices, one per simple block
    radical_coords: tuple = field(repr=False)
    complement_coords: tuple = field(repr=False)
    idempotent_coords: tuple = field(repr=False)
    block_units_coords: tuple = field(repr=False)  # per block: dict (a,b) -> coords


def _newton_idempotent(core: StructureAlgebra, u: tuple, max_iter: int) -> tuple:
    for _ in range(max_iter):
        uu = core.mul(u, u)
        if uu == u:
            return u
        # u <- 3u^2 - 2u^3
        u = _vec_sub(_vec_scale(uu, QQ(3)), _vec_scale(core.mul(uu, u), QQ(2)))
    uu = core.mul(u, u)
    if uu != u:
        raise InternalCheckError("idempotent lifting did not become stationary")
    return u


def wedderburn_complement(algebra: FiniteDimAlgebra, *, seed: int = 0) -> WedderburnData:
    """Split complement of the radical, with lifted block matrix units.

    Primitive idempotents are computed in the semisimple quotient, lifted
    one at a time through the radical with the cubic Newton iteration
    (inside the corner cut out by the previously lifted ones, which keeps
    the family orthogonal), and the quotient's matrix units are lifted
    along them.  All the defining identities are re-checked exactly.
    """
    core = algebra.core
    rad = radical_coords(core)
    degree = nilpotence_degree_coords(core, rad)
    bar, project, section = quotient_by_ideal(core, rad)
    central_bar = central_primitive_idempotents_coords(bar, seed=seed)
    blocks_bar = [
        ( _primitive_idempotents(bar, e_bar, seed=seed), e_bar )
        for e_bar in central_bar
    ]

    max_iter = max(4, degree.bit_length() + 2)
    lifted_prims = []      # flat, in block order
    block_slices = []
    running = tuple([ZERO] * core.dim)
    one = core.unit
    for prims_bar, _e_bar in blocks_bar:
        start = len(lifted_prims)
        for p_bar in prims_bar:
            shield = _vec_sub(one, running)
            u = core.mul(shield, core.mul(section(p_bar), shield))
            f = _newton_idempotent(core, u, max_iter)
            if project(f) != p_bar:
                raise InternalCheckError("lifted idempotent has the wrong image")
            for g in lifted_prims:
                if not _vec_is_zero(core.mul(f, g)) or not _vec_is_zero(core.mul(g, f)):
                    raise InternalCheckError("lifted idempotents are not orthogonal")
            lifted_prims.append(f)
            running = _vec_add(running, f)
        block_slices.append((start, len(lifted_prims)))
    if running != core.unit:
        raise InternalCheckError("lifted idempotents do not sum to the identity")

    block_units = []
    for (prims_bar, _e_bar), (start, stop) in zip(blocks_bar, block_slices):
        prims = lifted_prims[start:stop]
        if len(prims) == 1:
            block_units.append({(0, 0): prims[0]})
            continue
        units_bar = _matrix_units(bar, prims_bar)
        lifted = {}
        f0 = prims[0]
        inv_cache = {}
        for t in range(1, len(prims)):
            ft = prims[t]
            x = core.mul(f0, core.mul(section(units_bar[(0, t)]), ft))
            y = core.mul(ft, core.mul(section(units_bar[(t, 0)]), f0))
            u = core.mul(x, y)
            nu = _vec_sub(f0, u)
            inv = f0
            power = nu
            while not _vec_is_zero(power):
                inv = _vec_add(inv, power)
                power = core.mul(power, nu)
            inv_cache[t] = (core.mul(inv, x), y)
        lifted[(0, 0)] = f0
        forwards = {0: f0}
        backs = {0: f0}
        for t, (e0t, et0) in inv_cache.items():
            forwards[t] = e0t
            backs[t] = et0
        for a in range(len(prims)):
            for b in range(len(prims)):
                lifted[(a, b)] = core.mul(backs[a], forwards[b])
        for a in range(len(prims)):
            if lifted[(a, a)] != prims[a]:
                raise InternalCheckError("lifted diagonal unit differs from its idempotent")
        for a in range(len(prims)):
            for b in range(len(prims)):
                for c in range(len(prims)):
                    for d in range(len(prims)):
                        product = core.mul(lifted[(a, b)], lifted[(c, d)])
                        expected = lifted[(a, d)] if b == c else tuple([ZERO] * core.dim)
                        if product != expected:
                            raise InternalCheckError("lifted matrix units break the relations")
        block_units.append(lifted)

    complement_vectors = [u for units in block_units for u in units.values()]
    comp_span, comp_reps = _coord_span(sorted(complement_vectors))
    if len(comp_reps) != bar.dim:
        raise InternalCheckError("complement dimension differs from the quotient dimension")
    for u in comp_reps:
        for v in comp_reps:
            if not comp_span.contains(_vec_to_dict(core.mul(u, v))):
                raise InternalCheckError("complement is not closed under multiplication")
    if not comp_span.contains(_vec_to_dict(core.unit)):
        raise InternalCheckError("complement does not contain the identity")
    rad_span, rad_reps = _coord_span(rad)
    combined, _ = _coord_span(list(comp_reps) + list(rad_reps))
    if combined.dimension != core.dim:
        raise InternalCheckError("complement plus radical do not fill the algebra")

    idempotent_vectors = []
    for units, (start, stop) in zip(block_units, block_slices):
        total = tuple([ZERO] * core.dim)
        for a in range(stop - start):
            total = _vec_add(total, units[(a, a)])
        idempotent_vectors.append(total)
    for i, e in enumerate(idempotent_vectors):
        for j, f in enumerate(idempotent_vectors):
            product = core.mul(e, f)
            expected = e if i == j else tuple([ZERO] * core.dim)
            if product != expected:
                raise InternalCheckError("block idempotents are not orthogonal idempotents")
        for u in comp_reps:
            if core.mul(e, u) != core.mul(u, e):
                raise InternalCheckError("a block idempotent is not central in the complement")

    return WedderburnData(
        algebra=algebra,
        radical_basis=tuple(algebra.from_coords(v) for v in rad_reps),
        nilpotence_degree=degree,
        complement_basis=tuple(algebra.from_coords(v) for v in comp_reps),
        idempotents=tuple(algebra.from_coords(v) for v in idempotent_vectors),
        radical_coords=tuple(rad_reps),
        complement_coords=tuple(comp_reps),
        idempotent_coords=tuple(idempotent_vectors),
        block_units_coords=tuple(block_units),
    )


# ---------------------------------------------------------------------------
# convenience wrappers on matrices


def radical(algebra: FiniteDimAlgebra) -> tuple:
    """Radical basis as matrices (canonical order)."""
    return tuple(algebra.from_coords(v) for v in radical_coords(algebra.core))


def nilpotence_degree(algebra: FiniteDimAlgebra, rad_matrices: Sequence[Matrix]) -> int:
    coords = [tuple(algebra.coords_of(m)) for m in rad_matrices]
    rational = []
    for vec in coords:
        rational.append(tuple(_require_rational(c) for c in vec))
    return nilpotence_degree_coords(algebra.core, rational)


def _require_rational(value):
    if isinstance(value, (int,)) or hasattr(value, "denominator"):
        return as_ratio(value)
    if value.is_constant:
        return value.constant_value()
    raise RingMismatchError("expected a rational coordinate")


def central_primitive_idempotents(algebra: FiniteDimAlgebra, *, seed: int = 0) -> list:
    """Central primitive idempotents of a semisimple algebra, as matrices."""
    coords = central_primitive_idempotents_coords(algebra.core, seed=seed)
    return [algebra.from_coords(v) for v in coords]


def decompose_element(
    algebra: FiniteDimAlgebra, data: WedderburnData, mat: Matrix
) -> tuple:
    """Split a matrix of the algebra as (complement part, radical part)."""
    coords = algebra.coords_of(mat)
    ring = algebra.ring
    if isinstance(ring, RatFuncField):
        zero, one = ring.zero, ring.one

        def lift(vec):
            return {(i,): ring.coerce(c) for i, c in enumerate(vec) if c}
    else:
        zero, one = ZERO, QQ(1)

        def lift(vec):
            return _vec_to_dict(vec)

    columns = [lift(v) for v in data.complement_coords] + [
        lift(v) for v in data.radical_coords
    ]
    target = {(i,): c for i, c in enumerate(coords) if c}
    sol = _gauss_solve(columns, target, zero, one)
    if sol is None:
        raise InternalCheckError("decomposition solve failed inside the algebra")
    ncomp = len(data.complement_coords)
    bar = Matrix.zeros(ring, algebra.size, algebra.size)
    for c, b in zip(sol[:ncomp], data.complement_basis):
        if c:
            bar = bar + b.scale(c)
    nil = Matrix.zeros(ring, algebra.size, algebra.size)
    for c, b in zip(sol[ncomp:], data.radical_basis):
        if c:
            nil = nil + b.scale(c)
    if bar + nil != mat:
        raise InternalCheckError("decomposition parts do not sum back to the element")
    return bar, nil
