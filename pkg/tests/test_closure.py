import pytest

from gkgrowth._ratio import QQ
from gkgrowth.algebras import AlgebraPresentation, growth_sequence
from gkgrowth.closure import (
    build_diagonal_embedding_example,
    elementary_symmetric,
    module_finiteness_check,
    trace_algebra_generators,
)
from gkgrowth.growth import gk_estimate
from gkgrowth.matrices import Matrix
from gkgrowth.parse import parse_poly_expr
from gkgrowth.poly import PolyRing, RationalField
from gkgrowth.spans import EchelonBasis, poly_to_vec

Q = RationalField()
RX = PolyRing(("x",))


def span_of(values):
    basis = EchelonBasis()
    for v in values:
        basis.insert(poly_to_vec(v))
    return basis


def test_trace_generators_diagonal_m2():
    pres, _ = build_diagonal_embedding_example(2)
    closure = trace_algebra_generators(pres, 1)
    ring = pres.ring
    expected = [elementary_symmetric(ring, 1), elementary_symmetric(ring, 2)]
    got = span_of(closure.central_generators)
    want = span_of(expected)
    assert all(got.contains(poly_to_vec(v)) for v in expected)
    assert all(want.contains(poly_to_vec(v)) for v in closure.central_generators)
    assert len(closure.central_generators) == 2


def test_trace_generators_rational_entries_are_trivial():
    gens = [Matrix(Q, [[1, 0], [0, 2]]), Matrix.elementary(Q, 2, 0, 1)]
    closure = trace_algebra_generators(AlgebraPresentation(Q, 2, gens, "q"), 2)
    assert closure.central_generators == ()
    assert closure.closure.generators == closure.base.generators


def test_trace_generators_single_matrix():
    mat = Matrix(RX, [[RX.gen(0), RX.one], [RX.zero, RX.gen(0) ** 2]])
    closure = trace_algebra_generators(AlgebraPresentation(RX, 2, [mat], "tri"), 1)
    got = span_of(closure.central_generators)
    for text in ("x + x^2", "x^3"):
        assert got.contains(poly_to_vec(parse_poly_expr(text, RX)))
    assert len(closure.central_generators) == 2


def test_closure_presentation_adjoins_scalar_matrices():
    pres, _ = build_diagonal_embedding_example(2)
    closure = trace_algebra_generators(pres, 1)
    assert len(closure.closure.generators) == 3
    adjoined = closure.closure.generators[1]
    assert adjoined.entry(0, 0) == adjoined.entry(1, 1)
    assert not adjoined.entry(0, 1)


def test_module_finiteness_diagonal_examples():
    for m, expected_rank_bound in ((1, 1), (2, 2)):
        pres, _ = build_diagonal_embedding_example(m)
        closure = trace_algebra_generators(pres, 1)
        report = module_finiteness_check(closure)
        assert report.stabilized
        assert report.rank is not None and report.rank <= expected_rank_bound
        assert str(report.central_degree_cap) in report.note


def test_module_finiteness_finite_dimensional():
    gens = [Matrix.elementary(Q, 2, i, j) for i in range(2) for j in range(2)]
    closure = trace_algebra_generators(AlgebraPresentation(Q, 2, gens, "mat2"), 1)
    report = module_finiteness_check(closure)
    assert report.stabilized
    assert report.rank <= 4


def test_diagonal_embedding_growth():
    for m in (1, 2, 3):
        pres, _ = build_diagonal_embedding_example(m)
        closure = trace_algebra_generators(pres, 1)
        base_estimate = gk_estimate(growth_sequence(pres, 10))
        closure_estimate = gk_estimate(growth_sequence(closure.closure, 10))
        assert base_estimate.method == "difference-degree"
        assert base_estimate.value == QQ(1)
        assert closure_estimate.method == "difference-degree"
        assert closure_estimate.value == QQ(m)


def test_embedding_map():
    pres, embedding = build_diagonal_embedding_example(3)
    r = parse_poly_expr("x^2 - 2", RX)
    mat = embedding.embed(r)
    ring = pres.ring
    for i in range(3):
        expected = ring.gen(i) ** 2 - ring.constant(2)
        assert mat.entry(i, i) == expected
    assert pres.generators[0] == embedding.embed(parse_poly_expr("x", RX))


def test_elementary_symmetric_values():
    ring = PolyRing(("x1", "x2", "x3"))
    assert elementary_symmetric(ring, 0) == ring.one
    assert elementary_symmetric(ring, 1) == parse_poly_expr("x1 + x2 + x3", ring)
    assert elementary_symmetric(ring, 3) == parse_poly_expr("x1*x2*x3", ring)
    with pytest.raises(ValueError):
        elementary_symmetric(ring, 4)


def test_word_length_validation():
    pres, _ = build_diagonal_embedding_example(1)
    with pytest.raises(ValueError):
        trace_algebra_generators(pres, 0)
