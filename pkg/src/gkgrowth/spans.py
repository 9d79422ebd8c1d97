"""Exact QQ-linear algebra on sparse vectors indexed by ordered basis keys.

A vector is a dict mapping keys to nonzero scalars.  Keys are tuples
``(row, col, degree, exponents)`` built from matrix coordinates plus the
graded-lex position of a monomial, so any matrix over QQ or QQ[x...]
coordinatizes canonically.  Matrices over QQ(x) have no fixed monomial
coordinate system; a finite family is handled by clearing the least
common denominator of all entries first, which is injective on spans.

``EchelonBasis`` keeps a reduced row-echelon family: leading keys are
distinct, each leading coefficient is 1, and every stored vector is
fully reduced against all the others.  The reduced form of a span is
unique for a fixed key order, so bases are canonical regardless of
insertion history.  Stored row dicts are never mutated in place (rows
are replaced wholesale on re-reduction), so snapshots may share rows.
"""

from __future__ import annotations

from typing import Iterable, Optional, Sequence

from ._ratio import QQ, as_ratio
from .errors import ShapeMismatchError
from .matrices import Matrix
from .poly import (
    Poly,
    PolyRing,
    RatFuncField,
    RationalField,
    cleared_numerator,
    common_denominator,
)

EXTENDED = "extended"
DEPENDENT = "dependent"

_SCALAR_KEY = (0, ())


def matrix_to_vec(mat: Matrix) -> dict:
    """Sparse QQ-coordinates of a matrix over QQ or QQ[x...]."""
    ring = mat.ring
    vec = {}
    if isinstance(ring, RationalField):
        for i, row in enumerate(mat.rows):
            for j, e in enumerate(row):
                if e:
                    vec[(i, j) + _SCALAR_KEY] = e
        return vec
    if isinstance(ring, PolyRing):
        for i, row in enumerate(mat.rows):
            for j, e in enumerate(row):
                for mono, c in e.items_unordered():
                    vec[(i, j, sum(mono), mono)] = c
        return vec
    raise TypeError(f"no fixed coordinate system for matrices over {ring}")


def poly_to_vec(p: Poly) -> dict:
    """QQ-coordinates of a ring element, keyed like a 1x1 matrix."""
    return {(0, 0, sum(m), m): c for m, c in p.items_unordered()}


def cleared_vecs(mats: Sequence[Matrix]) -> list:
    """Coordinates of QQ(x) matrices after clearing their common denominator.

    Multiplying the whole family by one nonzero polynomial preserves all
    QQ-linear relations, so ranks and memberships computed on the result
    agree with the originals.
    """
    entries = [e for m in mats for row in m.rows for e in row]
    if not entries:
        return []
    lcd = common_denominator(entries)
    out = []
    for m in mats:
        vec = {}
        for i, row in enumerate(m.rows):
            for j, e in enumerate(row):
                p = cleared_numerator(e, lcd)
                for mono, c in p.items_unordered():
                    vec[(i, j, mono[0], mono)] = c
        out.append(vec)
    return out


def any_matrix_to_vecs(mats: Sequence[Matrix]) -> list:
    """Joint QQ-coordinates for a family of matrices over any ring kind."""
    if not mats:
        return []
    if isinstance(mats[0].ring, RatFuncField):
        return cleared_vecs(mats)
    return [matrix_to_vec(m) for m in mats]


def vec_sort_key(vec: dict) -> tuple:
    return tuple(sorted(vec.items()))


def _axpy(target: dict, coeff, source: dict) -> dict:
    """target - coeff * source, as a new dict."""
    out = dict(target)
    _axpy_inplace(out, coeff, source)
    return out


def _axpy_inplace(target: dict, coeff, source: dict):
    for k, v in source.items():
        cur = target.get(k)
        delta = coeff * v
        if cur is None:
            target[k] = -delta
        else:
            cur = cur - delta
            if cur:
                target[k] = cur
            else:
                del target[k]


def _reduce_against(v: dict, pivot_rows) -> dict:
    """Fully reduce the mutable dict ``v`` against reduced pivot rows.

    ``pivot_rows`` maps leading key -> row (leading coefficient 1, zero at
    every other pivot key).  Since reduction by a pivot introduces only
    non-pivot keys, a single sorted pass over the initial hits suffices;
    the loop guards against that invariant ever breaking.
    """
    hits = [k for k in v if k in pivot_rows]
    while hits:
        for k in sorted(hits):
            coeff = v.get(k)
            if coeff:
                _axpy_inplace(v, coeff, pivot_rows[k])
        hits = [k for k in v if k in pivot_rows]
    return v


class EchelonBasis:
    """Incremental reduced row-echelon basis over a field.

    Scalars default to QQ but any exact field element type with
    ``+ - * /``, truthiness-as-nonzero and total ordering of the keys
    works (QQ(x) elements are used for scalar-field computations).
    """

    def __init__(self):
        self._pivot_rows = {}  # leading key -> row dict (rows replaced, not mutated)
        self._occur = {}       # key -> set of leading keys of rows containing it

    @property
    def dimension(self) -> int:
        return len(self._pivot_rows)

    def rows(self) -> list:
        """Row dicts in increasing leading-key order (canonical)."""
        return [self._pivot_rows[k] for k in sorted(self._pivot_rows)]

    def reduce(self, vec: dict) -> dict:
        """Fully reduce a copy of ``vec`` against the basis."""
        return _reduce_against(dict(vec), self._pivot_rows)

    def contains(self, vec: dict) -> bool:
        return not self.reduce(vec)

    def insert(self, vec: dict) -> str:
        """Insert a vector; returns EXTENDED or DEPENDENT."""
        v = self.reduce(vec)
        if not v:
            return DEPENDENT
        lead = min(v)
        inv = v[lead]
        v = {k: val / inv for k, val in v.items()}
        # Back-substitution keeps the family fully reduced.  The new pivot
        # key is strictly larger than the pivot of any row containing it,
        # so existing leading keys never move.
        for other in list(self._occur.get(lead, ())):
            row = self._pivot_rows[other]
            new_row = _axpy(row, row[lead], v)
            for k in row:
                if k not in new_row:
                    self._occur[k].discard(other)
            for k in new_row:
                if k not in row:
                    self._occur.setdefault(k, set()).add(other)
            self._pivot_rows[other] = new_row
        self._pivot_rows[lead] = v
        for k in v:
            self._occur.setdefault(k, set()).add(lead)
        return EXTENDED

    def snapshot(self) -> "SpanSnapshot":
        return SpanSnapshot(tuple(self.rows()))


class SpanSnapshot:
    """Frozen reduced-echelon family supporting membership tests."""

    __slots__ = ("rows", "_pivot")

    def __init__(self, rows: tuple):
        self.rows = rows
        self._pivot = {min(r): r for r in rows if r}

    @property
    def dimension(self) -> int:
        return len(self.rows)

    def reduce(self, vec: dict) -> dict:
        return _reduce_against(dict(vec), self._pivot)

    def contains(self, vec: dict) -> bool:
        return not self.reduce(vec)


def span_dimension(vecs: Iterable[dict]) -> int:
    basis = EchelonBasis()
    for v in vecs:
        basis.insert(v)
    return basis.dimension


def _gauss_solve(columns: list, target: dict, zero, one) -> Optional[list]:
    """Solve sum_i x_i * columns[i] = target exactly; scalars form a field.

    Returns a coefficient list or None if the system is inconsistent.
    The solution (free variables set to zero) is verified by substitution
    before being returned.
    """
    keys = sorted(set(target).union(*columns) if columns else set(target))
    if not columns:
        return [] if not target else None
    key_pos = {k: i for i, k in enumerate(keys)}
    nrows, ncols = len(keys), len(columns)
    rows = [[zero] * (ncols + 1) for _ in range(nrows)]
    for j, col in enumerate(columns):
        for k, v in col.items():
            rows[key_pos[k]][j] = v
    for k, v in target.items():
        rows[key_pos[k]][ncols] = v

    pivot_cols = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, nrows) if rows[i][c]), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = rows[r][c]
        rows[r] = [v / inv for v in rows[r]]
        for i in range(nrows):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivot_cols.append(c)
        r += 1
        if r == nrows:
            break
    for i in range(r, nrows):
        if rows[i][ncols]:
            return None
    solution = [zero] * ncols
    for i, c in enumerate(pivot_cols):
        solution[c] = rows[i][ncols]
    # Verification by substitution.
    check = dict(target)
    for x, col in zip(solution, columns):
        if not x:
            continue
        for k, v in col.items():
            cur = check.get(k, zero)
            cur = cur - x * v
            if cur:
                check[k] = cur
            else:
                check.pop(k, None)
    if any(v for v in check.values()):
        return None
    return solution


def solve_q_linear(matrix: Sequence[Sequence], rhs: Sequence) -> Optional[list]:
    """Solve A z = b over QQ; returns the solution list or None if inconsistent."""
    nrows = len(matrix)
    if nrows != len(rhs):
        raise ShapeMismatchError("matrix and right-hand side sizes differ")
    ncols = len(matrix[0]) if nrows else 0
    columns = []
    for j in range(ncols):
        col = {}
        for i in range(nrows):
            v = as_ratio(matrix[i][j])
            if v:
                col[(i,)] = v
        columns.append(col)
    target = {}
    for i in range(nrows):
        v = as_ratio(rhs[i])
        if v:
            target[(i,)] = v
    return _gauss_solve(columns, target, QQ(0), QQ(1))


def membership_ratfunc(basis_mats: Sequence[Matrix], candidate: Matrix) -> Optional[list]:
    """QQ-coefficients expressing ``candidate`` in the span of ``basis_mats``.

    All matrices must share one shape over one QQ(x) field.  The linear
    system is cleared by the least common denominator of every entry and
    solved over QQ; returns the coefficient list, or None when the
    candidate is not in the QQ-span.
    """
    for m in basis_mats:
        if m.shape != candidate.shape:
            raise ShapeMismatchError(f"basis shape {m.shape} vs candidate {candidate.shape}")
        if m.ring != candidate.ring:
            raise ShapeMismatchError("basis and candidate over different rings")
    vecs = cleared_vecs(list(basis_mats) + [candidate])
    return _gauss_solve(vecs[:-1], vecs[-1], QQ(0), QQ(1))


def field_coordinates(basis_mats: Sequence[Matrix], candidate: Matrix) -> Optional[list]:
    """Coordinates of ``candidate`` in the scalar-field span of ``basis_mats``.

    Over QQ(x) the coefficients live in QQ(x) (contrast with
    ``membership_ratfunc``, whose coefficients are rational numbers).
    """
    ring = candidate.ring
    if isinstance(ring, RationalField):
        cols = [matrix_to_vec(m) for m in basis_mats]
        return _gauss_solve(cols, matrix_to_vec(candidate), QQ(0), QQ(1))
    if isinstance(ring, RatFuncField):
        def vec(m):
            return {
                (i, j): e
                for i, row in enumerate(m.rows)
                for j, e in enumerate(row)
                if e
            }
        return _gauss_solve([vec(m) for m in basis_mats], vec(candidate), ring.zero, ring.one)
    cols = [matrix_to_vec(m) for m in basis_mats]
    return _gauss_solve(cols, matrix_to_vec(candidate), QQ(0), QQ(1))


def matrix_from_vec(ring, size: tuple, vec: dict) -> Matrix:
    """Inverse of matrix_to_vec for QQ and QQ[x...] coordinates."""
    nrows, ncols = size
    if isinstance(ring, RationalField):
        rows = [[QQ(0)] * ncols for _ in range(nrows)]
        for (i, j, _deg, _mono), c in vec.items():
            rows[i][j] = rows[i][j] + c
        return Matrix(ring, rows)
    if isinstance(ring, PolyRing):
        cells = [[{} for _ in range(ncols)] for _ in range(nrows)]
        for (i, j, _deg, mono), c in vec.items():
            cells[i][j][mono] = c
        return Matrix(ring, [[Poly(ring, cell) for cell in row] for row in cells])
    raise TypeError(f"matrix_from_vec does not support {ring}")
