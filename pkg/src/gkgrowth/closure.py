"""Characteristic closures: central generators harvested from
characteristic polynomials of generator words, module-finiteness
evidence for the closure, and the diagonal-embedding demonstration
algebra.

The closure of a presentation adjoins, as scalar matrices, the
nonconstant coefficients of the characteristic polynomials of all
generator words up to a cutoff length.  The coefficients generate a
central subalgebra over which the closure is module-finite; the cutoff
is a heuristic (reports always state it), since no finite bound is
canonical.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations_with_replacement
from typing import Optional, Sequence

from ._ratio import QQ
from .algebras import AlgebraPresentation
from .charpoly import char_poly
from .errors import CapExceededError
from .matrices import Matrix
from .poly import Poly, PolyRing, RatFuncField, RationalField
from .spans import (
    EXTENDED,
    EchelonBasis,
    cleared_numerator,
    common_denominator,
    matrix_to_vec,
    membership_ratfunc,
    poly_to_vec,
)

DEFAULT_WORD_CAP = 5000


def _element_is_constant(ring, value) -> bool:
    if isinstance(ring, RationalField):
        return True
    return value.is_constant


def _element_vecs(ring, values: Sequence) -> list:
    """Joint QQ-coordinates for ring elements (1x1-matrix keying)."""
    if isinstance(ring, PolyRing):
        return [poly_to_vec(v) for v in values]
    if isinstance(ring, RatFuncField):
        lcd = common_denominator(values)
        return [poly_to_vec(cleared_numerator(v, lcd)) for v in values]
    return [{(0, 0, 0, ()): v} for v in values if v]


@dataclass(frozen=True)
class TraceClosure:
    """A presentation together with its harvested central generators."""

    base: AlgebraPresentation
    word_length: int
    central_generators: tuple  # ring elements, in harvest order, span-reduced
    closure: AlgebraPresentation


def _generator_words(pres: AlgebraPresentation, max_length: int, word_cap: int):
    """All products of 1..max_length generators, in length-lex order."""
    current = list(pres.generators)
    total = 0
    for length in range(1, max_length + 1):
        for w in current:
            total += 1
            if total > word_cap:
                raise CapExceededError(
                    f"generator word count exceeds cap {word_cap} at length {length}"
                )
            yield w
        if length < max_length:
            current = [w * g for w in current for g in pres.generators]


def trace_algebra_generators(
    pres: AlgebraPresentation,
    word_length: int,
    *,
    word_cap: int = DEFAULT_WORD_CAP,
) -> TraceClosure:
    """Harvest central generators from char polys of generator words.

    Collects the nonconstant coefficients of the characteristic
    polynomial of every word of length <= word_length, deduplicated by
    their QQ-span (discarding a coefficient that is a rational
    combination of earlier ones never shrinks the generated algebra).
    The returned closure presentation adjoins the survivors as scalar
    matrices.
    """
    if word_length < 1:
        raise ValueError("word length must be at least 1")
    ring = pres.ring
    harvested = []
    seen = set()
    for word in _generator_words(pres, word_length, word_cap):
        poly = char_poly(word)
        for coeff in poly.coeffs[:-1]:
            if not coeff or _element_is_constant(ring, coeff):
                continue
            if coeff in seen:
                continue
            seen.add(coeff)
            harvested.append(coeff)
    kept = []
    if harvested:
        basis = EchelonBasis()
        for vec, value in zip(_element_vecs(ring, harvested), harvested):
            if basis.insert(vec) == EXTENDED:
                kept.append(value)
    ident = Matrix.identity(ring, pres.size)
    closure = pres.adjoin([ident.scale(c) for c in kept], pres.label + "+trace")
    return TraceClosure(pres, word_length, tuple(kept), closure)


@dataclass(frozen=True)
class ModuleFinitenessReport:
    """Truncated evidence that the closure is module-finite over its center.

    ``rank`` counts the generator words that were genuinely new as
    module generators over the (degree-capped) central span; evidence is
    truncated both in word length and in central degree, and the report
    says so.
    """

    stabilized: bool
    rank: Optional[int]
    stabilized_at_length: Optional[int]
    word_length_reached: int
    central_degree_cap: int
    note: str


def module_finiteness_check(
    closure: TraceClosure,
    *,
    length_cap: int = 6,
    central_degree_cap: int = 4,
    word_cap: int = DEFAULT_WORD_CAP,
) -> ModuleFinitenessReport:
    """Check that new generator words stop enlarging the central-span module.

    Builds the QQ-span of {central monomial * module generator} and walks
    generator words in length-lex order; a word not in the span becomes a
    new module generator.  One full length with no new generators means
    every longer word is also captured (modulo the central degree cap),
    so the filtration has stabilized at the reported rank.
    """
    pres = closure.base
    ring = pres.ring
    ident = Matrix.identity(ring, pres.size)

    central = [ring.coerce(1) if not isinstance(ring, RationalField) else QQ(1)]
    for degree in range(1, central_degree_cap + 1):
        for combo in combinations_with_replacement(closure.central_generators, degree):
            value = combo[0]
            for extra in combo[1:]:
                value = value * extra
            central.append(value)
    central_reps = []
    if central:
        basis = EchelonBasis()
        for vec, value in zip(_element_vecs(ring, central), central):
            if basis.insert(vec) == EXTENDED:
                central_reps.append(value)

    use_coords = not isinstance(ring, RatFuncField)
    span = EchelonBasis() if use_coords else None
    span_mats: list = []
    module_rank = 0

    def in_span(mat: Matrix) -> bool:
        if use_coords:
            return span.contains(matrix_to_vec(mat))
        if not span_mats:
            return False
        return membership_ratfunc(span_mats, mat) is not None

    def admit(mat: Matrix):
        for c in central_reps:
            scaled = mat.scale(c)
            if use_coords:
                span.insert(matrix_to_vec(scaled))
            else:
                if not span_mats or membership_ratfunc(span_mats, scaled) is None:
                    span_mats.append(scaled)

    admit(ident)
    module_rank = 1
    words = [ident]
    total_words = 0
    for length in range(1, length_cap + 1):
        words = [w * g for w in words for g in pres.generators]
        total_words += len(words)
        if total_words > word_cap:
            raise CapExceededError(f"module check exceeded the word cap {word_cap}")
        new_at_this_length = 0
        for w in sorted(set(words), key=Matrix.sort_key):
            if w.is_zero or in_span(w):
                continue
            admit(w)
            module_rank += 1
            new_at_this_length += 1
        if new_at_this_length == 0:
            return ModuleFinitenessReport(
                True,
                module_rank,
                length,
                length,
                central_degree_cap,
                f"no new module generators at word length {length}; "
                f"central span truncated at degree {central_degree_cap}",
            )
    return ModuleFinitenessReport(
        False,
        None,
        None,
        length_cap,
        central_degree_cap,
        f"still acquiring module generators at word length {length_cap}",
    )


def elementary_symmetric(ring: PolyRing, k: int) -> Poly:
    """k-th elementary symmetric polynomial in all ring variables."""
    from itertools import combinations

    if not 0 <= k <= ring.nvars:
        raise ValueError(f"elementary symmetric degree {k} out of range")
    if k == 0:
        return ring.one
    total = ring.zero
    for combo in combinations(range(ring.nvars), k):
        term = ring.one
        for i in combo:
            term = term * ring.gen(i)
        total = total + term
    return total


@dataclass(frozen=True)
class DiagonalEmbedding:
    """Substitution embedding of QQ[x] into diagonal m-by-m matrices.

    A univariate polynomial r maps to diag(r(x_1), ..., r(x_m)) over
    QQ[x_1, ..., x_m].
    """

    ring: PolyRing
    size: int

    def embed(self, univariate: Poly) -> Matrix:
        if univariate.ring.nvars != 1:
            raise ValueError("embed expects a univariate polynomial")
        entries = []
        for i in range(self.size):
            value = self.ring.zero
            xi = self.ring.gen(i)
            for mono, c in univariate.items_unordered():
                value = value + (xi ** mono[0]) * c
            entries.append(value)
        return Matrix.diagonal(self.ring, entries)


def build_diagonal_embedding_example(m: int) -> tuple:
    """The m-variable diagonal example: R generated by diag(x_1, ..., x_m).

    Its growth is linear, while the closure harvested from the length-1
    word already spans the elementary symmetric polynomials and grows
    with degree m.
    """
    if m < 1:
        raise ValueError("m must be positive")
    ring = PolyRing(tuple(f"x{i + 1}" for i in range(m)))
    embedding = DiagonalEmbedding(ring, m)
    generator = Matrix.diagonal(ring, ring.gens())
    pres = AlgebraPresentation(ring, m, [generator], f"diagonal-example-m{m}")
    return pres, embedding
