"""
Tests for weighted complexes.

These tests verify:
- Validation of faces, class spaces and restrictions
- Vertex embedding and barycentric coordinates
- Simple functions of vertical divisors
"""

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from skeleton import exact
from skeleton.errors import (
    DimensionMismatch,
    DuplicateVertex,
    InvalidMultiplicity,
    MissingSingleton,
    NegativeCoordinate,
    NonAdjacentClass,
    NotOnFace,
    NotSubsetClosed,
    RestrictionIncoherent,
    SpecialFiberRelationViolated,
    StarSupportMismatch,
    UnknownFace,
    UnknownVertex,
)
from skeleton.simpleFunction import derivative
from skeleton.weightedComplex import NumClassSpace, WeightedComplex, validate_complex

from .strategies import general_complexes, rationals


def point_complex():
    return WeightedComplex([('v1', 1)], [['v1']])


class TestComplexValidation:
    """Test the invariants checked when a complex is built."""

    def test_single_vertex_is_valid(self):
        """A single vertex with a dimension 0 class space is a complex."""
        complex_ = point_complex()
        assert complex_.vertices == ('v1',)
        assert complex_.class_space(['v1']).dim == 0

    def test_two_vertex_edge_is_valid(self, two_vertex_complex):
        """The mult (2,3) edge with classes -3/2, 1 and 1, -2/3 validates."""
        assert two_vertex_complex.faces == (frozenset(['1']), frozenset(['2']), frozenset(['1', '2']))
        assert exact.entries(two_vertex_complex.class_space(['1']).divisor_class('1')) == [Fraction(-3, 2)]

    def test_special_fiber_relation_violated(self):
        """c_(1,{1}) = 0 with c_(2,{1}) = 1 gives 2*0 + 3*1 != 0."""
        with pytest.raises(SpecialFiberRelationViolated) as info:
            WeightedComplex(
                [('1', 2), ('2', 3)],
                [['1'], ['2'], ['1', '2']],
                {
                    frozenset(['1']): NumClassSpace(1, {'1': [0], '2': [1]}, [[1]]),
                    frozenset(['2']): NumClassSpace(1, {'1': [1], '2': [Fraction(-2, 3)]}, [[1]]),
                },
            )
        assert info.value.face == ('1',)

    def test_missing_singleton(self):
        """Every vertex needs its singleton face."""
        with pytest.raises(MissingSingleton):
            WeightedComplex([('1', 1), ('2', 1)], [['1']])

    def test_not_subset_closed(self):
        """A triangle without one of its edges is rejected."""
        with pytest.raises(NotSubsetClosed):
            WeightedComplex(
                [('a', 1), ('b', 1), ('c', 1)],
                [['a'], ['b'], ['c'], ['a', 'b'], ['b', 'c'], ['a', 'b', 'c']],
            )

    def test_unknown_vertex_in_face(self):
        with pytest.raises(UnknownVertex):
            WeightedComplex([('a', 1)], [['a'], ['a', 'b']])

    def test_duplicate_vertex(self):
        with pytest.raises(DuplicateVertex):
            WeightedComplex([('a', 1), ('a', 2)], [['a']])

    @pytest.mark.parametrize('mult', [0, -1, True, 1.5])
    def test_invalid_multiplicity(self, mult):
        """Multiplicities are positive integers."""
        with pytest.raises(InvalidMultiplicity):
            WeightedComplex([('a', mult)], [['a']])

    def test_class_dimension_mismatch(self):
        with pytest.raises(DimensionMismatch):
            WeightedComplex([('a', 1)], [['a']], {frozenset(['a']): NumClassSpace(2, {'a': [0]})})

    def test_non_adjacent_class_must_vanish(self):
        """A vertex not sharing a face with the face has class zero there."""
        with pytest.raises(NonAdjacentClass):
            WeightedComplex(
                [('a', 1), ('b', 1)],
                [['a'], ['b']],
                {frozenset(['a']): NumClassSpace(1, {'a': [-1], 'b': [1]}, [[1]])},
            )

    def test_missing_restriction_between_positive_spaces(self):
        """Restrictions are required when both spaces have positive dimension."""
        spaces = {
            frozenset(['a']): NumClassSpace(1, {}, [[1]]),
            frozenset(['a', 'b']): NumClassSpace(1, {}, [[1]]),
            frozenset(['b']): NumClassSpace(0),
        }
        with pytest.raises(RestrictionIncoherent):
            WeightedComplex([('a', 1), ('b', 1)], [['a'], ['b'], ['a', 'b']], spaces)

    def test_restriction_must_carry_classes(self):
        """rho({a} -> {a,b}) must send c_(a,{a}) to c_(a,{a,b})."""
        spaces = {
            frozenset(['a']): NumClassSpace(1, {'a': [-1], 'b': [1]}, [[1]]),
            frozenset(['b']): NumClassSpace(1, {'a': [1], 'b': [-1]}, [[1]]),
            frozenset(['a', 'b']): NumClassSpace(1, {'a': [-1], 'b': [1]}, [[1]]),
        }
        faces = [['a'], ['b'], ['a', 'b']]
        from_b = {(frozenset(['b']), frozenset(['a', 'b'])): exact.matrix([[-1]], 1, 1)}
        with pytest.raises(RestrictionIncoherent):
            WeightedComplex([('a', 1), ('b', 1)], faces, spaces,
                            {(frozenset(['a']), frozenset(['a', 'b'])): exact.matrix([[2]], 1, 1), **from_b})
        complex_ = WeightedComplex([('a', 1), ('b', 1)], faces, spaces,
                                   {(frozenset(['a']), frozenset(['a', 'b'])): exact.identity_map(1), **from_b})
        assert complex_.restriction(['a'], ['a', 'b']) == exact.identity_map(1)

    def test_restriction_must_be_nested(self):
        with pytest.raises(RestrictionIncoherent):
            WeightedComplex([('a', 1), ('b', 1)], [['a'], ['b'], ['a', 'b']], {},
                            {(frozenset(['a']), frozenset(['b'])): exact.zero_map(0, 0)})

    def test_validate_complex_reads_document_body(self, two_vertex_complex):
        """validate_complex builds the same complex from its document body."""
        assert validate_complex(two_vertex_complex.to_dict()) == two_vertex_complex

    @given(general_complexes())
    @settings(max_examples=100, deadline=None)
    def test_validation_is_idempotent(self, complex_):
        """Re-validating a validated complex gives an equal complex."""
        assert validate_complex(complex_.to_dict()) == complex_

    @given(general_complexes())
    @settings(max_examples=100, deadline=None)
    def test_special_fiber_relation_holds_exactly(self, complex_):
        for face in complex_.faces:
            space = complex_.class_space(face)
            total = exact.zero_vector(space.dim)
            for vertex in complex_.vertices:
                total += complex_.mult[vertex] * space.divisor_class(vertex)
            assert exact.is_zero(total)


class TestStars:
    """Test closed stars and face stars."""

    def test_closed_star(self, two_vertex_complex):
        assert two_vertex_complex.closed_star('1') == ('1', '2')

    def test_face_star_of_edge(self, two_vertex_complex):
        assert two_vertex_complex.face_star(['1', '2']) == ('1', '2')

    def test_unknown_face(self, two_vertex_complex):
        with pytest.raises(UnknownFace):
            two_vertex_complex.face_star(['1', '3'])

    def test_face_derivative_needs_star_values(self, two_vertex_complex):
        with pytest.raises(StarSupportMismatch):
            two_vertex_complex.face_derivative({'1': 1}, frozenset(['1']), '1')


class TestCoordinates:
    """Test the embedding of the complex in the simplex sum mult_i x_i = 1."""

    def test_vertex_of_mult_one_is_unit_vector(self):
        assert point_complex().vertex_embedding('v1') == (Fraction(1),)

    def test_vertex_of_mult_two(self, two_vertex_complex):
        assert two_vertex_complex.vertex_embedding('1') == (Fraction(1, 2), Fraction(0))

    def test_unknown_vertex(self, two_vertex_complex):
        with pytest.raises(UnknownVertex):
            two_vertex_complex.vertex_embedding('9')

    def test_edge_midpoint(self, two_vertex_complex):
        """Midpoint (1/2, 1/2) of the mult (2,3) edge is (1/4, 1/6)."""
        point = two_vertex_complex.to_ambient(['1', '2'], {'1': Fraction(1, 2), '2': Fraction(1, 2)})
        assert point == (Fraction(1, 4), Fraction(1, 6))

    def test_ambient_to_barycentric(self, two_vertex_complex):
        weights = two_vertex_complex.to_barycentric(['1', '2'], [Fraction(1, 4), Fraction(1, 6)])
        assert weights == {'1': Fraction(1, 2), '2': Fraction(1, 2)}

    def test_vertex_point(self, two_vertex_complex):
        assert two_vertex_complex.to_ambient(['2'], {'2': 1}) == (Fraction(0), Fraction(1, 3))

    def test_negative_coordinate(self, two_vertex_complex):
        with pytest.raises(NegativeCoordinate):
            two_vertex_complex.to_ambient(['1', '2'], {'1': Fraction(3, 2), '2': Fraction(-1, 2)})

    def test_coordinates_must_sum_to_one(self, two_vertex_complex):
        with pytest.raises(NotOnFace):
            two_vertex_complex.to_ambient(['1', '2'], {'1': Fraction(1, 2)})

    def test_point_off_the_face(self, two_vertex_complex):
        with pytest.raises(NotOnFace):
            two_vertex_complex.to_barycentric(['1'], [Fraction(1, 4), Fraction(1, 6)])

    def test_locate(self, two_vertex_complex):
        face, weights = two_vertex_complex.locate([Fraction(1, 4), Fraction(1, 6)])
        assert face == frozenset(['1', '2'])
        assert weights == {'1': Fraction(1, 2), '2': Fraction(1, 2)}

    @given(st.data())
    @settings(max_examples=100, deadline=None)
    def test_barycentric_round_trip(self, data):
        """Barycentric to ambient and back is the identity on every face."""
        complex_ = data.draw(general_complexes())
        face = data.draw(st.sampled_from(complex_.faces))
        ids = complex_.ordered(face)
        raw = [data.draw(st.integers(0, 5)) for _ in ids]
        if sum(raw) == 0:
            raw[0] = 1
        weights = {v: Fraction(r, sum(raw)) for v, r in zip(ids, raw)}
        point = complex_.to_ambient(face, weights)
        assert complex_.to_barycentric(face, point) == weights


class TestDivisorFunctions:
    """Test simple functions of vertical divisors."""

    def test_zero_divisor(self, two_vertex_complex):
        function = two_vertex_complex.divisor_to_simple_function({})
        assert function.values == {'1': 0, '2': 0}

    def test_mult_one_values_are_coefficients(self, unit_edge):
        function = unit_edge.complex.divisor_to_simple_function({'1': Fraction(2, 3), '2': -4})
        assert function.values == {'1': Fraction(2, 3), '2': -4}

    def test_divides_by_multiplicity(self, two_vertex_complex):
        """a = (1, 0) on mult (2,3) gives values (1/2, 0)."""
        function = two_vertex_complex.divisor_to_simple_function({'1': 1, '2': 0})
        assert function.values == {'1': Fraction(1, 2), '2': 0}

    def test_unknown_vertex(self, two_vertex_complex):
        with pytest.raises(UnknownVertex):
            two_vertex_complex.divisor_to_simple_function({'7': 1})

    @given(st.data())
    @settings(max_examples=100, deadline=None)
    def test_linear_and_injective(self, data):
        complex_ = data.draw(general_complexes())
        a = {v: data.draw(rationals()) for v in complex_.vertices}
        b = {v: data.draw(rationals()) for v in complex_.vertices}
        combined = complex_.divisor_to_simple_function({v: 2 * a[v] - b[v] for v in complex_.vertices})
        expected = complex_.divisor_to_simple_function(a).scale(2) - complex_.divisor_to_simple_function(b)
        assert combined == expected
        if a != b:
            assert complex_.divisor_to_simple_function(a) != complex_.divisor_to_simple_function(b)

    @given(st.data())
    @settings(max_examples=100, deadline=None)
    def test_derivative_of_divisor_is_its_class(self, data):
        """The derivative of the function of D_j along a face is c_(j,I)."""
        complex_ = data.draw(general_complexes())
        vertex = data.draw(st.sampled_from(complex_.vertices))
        function = complex_.divisor_to_simple_function({vertex: 1})
        for face in complex_.faces:
            assert derivative(complex_, function, face) == complex_.class_space(face).divisor_class(vertex)
