import random

import pytest

from gkgrowth._ratio import QQ
from gkgrowth.errors import ShapeMismatchError
from gkgrowth.matrices import Matrix
from gkgrowth.parse import parse_poly_expr, parse_ratfunc_expr
from gkgrowth.poly import PolyRing, RatFuncField
from gkgrowth.spans import (
    DEPENDENT,
    EXTENDED,
    EchelonBasis,
    matrix_to_vec,
    membership_ratfunc,
    solve_q_linear,
    vec_sort_key,
)

F = RatFuncField("x")


def vec(*pairs):
    return {(k,): QQ(v) for k, v in pairs if v}


def dense_rank_oracle(vectors, nkeys):
    """Naive dense Gaussian elimination, independent of EchelonBasis."""
    rows = [[v.get((k,), QQ(0)) for k in range(nkeys)] for v in vectors]
    rank = 0
    for col in range(nkeys):
        pivot = next((i for i in range(rank, len(rows)) if rows[i][col]), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        inv = rows[rank][col]
        rows[rank] = [x / inv for x in rows[rank]]
        for i in range(len(rows)):
            if i != rank and rows[i][col]:
                f = rows[i][col]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[rank])]
        rank += 1
    return rank


def test_insert_examples():
    basis = EchelonBasis()
    assert basis.insert(vec((0, 1))) == EXTENDED
    assert basis.insert(vec((0, 1))) == DEPENDENT
    assert basis.dimension == 1

    basis = EchelonBasis()
    assert basis.insert(vec((0, 1), (1, 1))) == EXTENDED
    assert basis.insert(vec((1, 1))) == EXTENDED
    assert basis.dimension == 2

    basis = EchelonBasis()
    for v in (vec((0, 1), (1, 2)), vec((0, 2), (1, 4)), vec((0, 0), (1, 1))):
        basis.insert(v)
    assert basis.dimension == 2


def test_rank_matches_dense_oracle():
    rng = random.Random(5)
    for _ in range(25):
        nkeys = rng.randint(1, 200)
        nvecs = rng.randint(1, 50)
        vectors = []
        for _ in range(nvecs):
            v = {}
            for _ in range(rng.randint(0, min(nkeys, 12))):
                v[(rng.randrange(nkeys),)] = QQ(rng.randint(-5, 5), rng.randint(1, 3))
            vectors.append({k: c for k, c in v.items() if c})
        basis = EchelonBasis()
        for v in vectors:
            basis.insert(v)
        assert basis.dimension == dense_rank_oracle(vectors, nkeys)


def test_span_invariant_under_insertion_order():
    rng = random.Random(9)
    vectors = []
    for _ in range(12):
        vectors.append({(rng.randrange(8),): QQ(rng.randint(-4, 4)) for _ in range(3)})
    vectors = [{k: c for k, c in v.items() if c} for v in vectors]
    reference = None
    for _ in range(6):
        rng.shuffle(vectors)
        basis = EchelonBasis()
        for v in vectors:
            basis.insert(v)
        rows = tuple(tuple(sorted(r.items())) for r in basis.rows())
        if reference is None:
            reference = (basis.dimension, rows)
        # Reduced echelon form is canonical: same span, same stored rows.
        assert (basis.dimension, rows) == reference


def test_rows_stay_fully_reduced():
    basis = EchelonBasis()
    basis.insert(vec((0, 1), (2, 3)))
    basis.insert(vec((1, 1), (2, 5)))
    basis.insert(vec((2, 1)))
    rows = basis.rows()
    assert rows[0] == vec((0, 1)) and rows[1] == vec((1, 1)) and rows[2] == vec((2, 1))


def test_solve_q_linear():
    assert solve_q_linear([[1, 0], [0, 1]], [4, 5]) == [QQ(4), QQ(5)]
    assert solve_q_linear([[1, 1], [2, 2]], [1, 3]) is None
    assert solve_q_linear([[1, 1], [1, -1]], [3, 1]) == [QQ(2), QQ(1)]
    with pytest.raises(ShapeMismatchError):
        solve_q_linear([[1, 1]], [1, 2])


def test_membership_ratfunc_examples():
    def rf(text):
        return Matrix(F, [[parse_ratfunc_expr(text, F)]])

    assert membership_ratfunc([rf("1/(x+1)")], rf("2/(x+1)")) == [QQ(2)]
    assert membership_ratfunc([rf("1/x")], rf("1/x^2")) is None
    assert membership_ratfunc([rf("x/(x-1)"), rf("1/(x-1)")], rf("(x+1)/(x-1)")) == [QQ(1), QQ(1)]


def test_membership_ratfunc_shape_errors():
    one = Matrix(F, [[F.one]])
    two = Matrix(F, [[F.one, F.zero]])
    with pytest.raises(ShapeMismatchError):
        membership_ratfunc([one], two)


def test_membership_agrees_with_polynomial_coordinates():
    # With all denominators 1 the cleared system is the polynomial one.
    rng = random.Random(13)
    ring = PolyRing(("x",))
    for _ in range(20):
        polys = [
            parse_poly_expr(text, ring)
            for text in ("x^2 + 1", "x - 2", "3*x^2 - x")
        ]
        coeffs = [QQ(rng.randint(-3, 3)) for _ in polys]
        target_poly = ring.zero
        for c, q in zip(coeffs, polys):
            target_poly = target_poly + q * c
        basis_poly = [Matrix(ring, [[q]]) for q in polys]
        target_mat = Matrix(ring, [[target_poly]])
        basis_q = EchelonBasis()
        for b in basis_poly:
            basis_q.insert(matrix_to_vec(b))
        in_poly_span = basis_q.contains(matrix_to_vec(target_mat))

        basis_rf = [Matrix(F, [[F.from_poly(parse_poly_expr(str(q), F.poly_ring))]]) for q in polys]
        target_rf = Matrix(F, [[F.from_poly(parse_poly_expr(str(target_poly), F.poly_ring))]])
        assert (membership_ratfunc(basis_rf, target_rf) is not None) == in_poly_span
        assert in_poly_span


def test_vec_sort_key_total_order():
    a = vec((0, 1))
    b = vec((0, 1), (1, 1))
    assert vec_sort_key(a) != vec_sort_key(b)
    assert sorted([vec_sort_key(b), vec_sort_key(a)])[0] == vec_sort_key(a)
