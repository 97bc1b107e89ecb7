from fractions import Fraction
from math import prod

import pandas as pd
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from src.core.chern_geometry import ManifoldModel, s_number
from src.core.cobordism import (
    CobordismClass,
    DegreeBoundError,
    check_degree,
    chern_numbers,
    class_from_s_values,
    construct_section_generator,
    dual_class,
    euler_characteristic,
    integral_generator_check,
    is_rational_generator,
    prime_power_decompositions,
    s_coordinates,
    s_matrix,
    s_value,
    verify_stong,
)
from src.core.obstruction import gamma_rational
from src.core.partitions import Partition, enumerate_partitions

P = Partition


def cls(d: int, coords: dict) -> CobordismClass:
    return CobordismClass(d, {P(lam): Fraction(q) for lam, q in coords.items()})


@st.composite
def classes(draw, degree: int = 0):
    d = degree or draw(st.integers(min_value=1, max_value=4))
    vector = draw(
        st.lists(
            st.fractions(min_value=-20, max_value=20, max_denominator=6),
            min_size=len(enumerate_partitions(d)),
            max_size=len(enumerate_partitions(d)),
        )
    )
    return CobordismClass.from_vector(d, vector)


class TestCobordismClass:
    def test_arithmetic(self):
        x = cls(2, {(2,): 4, (1, 1): -3})
        y = CobordismClass.basis(P((2,)))
        assert x + y == cls(2, {(2,): 5, (1, 1): -3})
        assert x - x == CobordismClass.zero(2)
        assert -x == cls(2, {(2,): -4, (1, 1): 3})
        assert 2 * y == y.scale(2) == cls(2, {(2,): 2})
        assert x[P((1, 1))] == -3
        assert x.vector() == [4, -3]

    def test_mixed_degrees(self):
        with pytest.raises(ValueError):
            CobordismClass.basis(P((2,))) + CobordismClass.basis(P((1,)))

    def test_invalid(self):
        with pytest.raises(ValueError):
            cls(2, {(3,): 1})
        with pytest.raises(ValueError):
            CobordismClass(0)

    def test_of_manifold(self):
        assert CobordismClass.of_manifold(ManifoldModel.parse("CP1*CP2")) == cls(3, {(2, 1): 1})

    @pytest.mark.parametrize(
        "x, text",
        [
            (cls(2, {(2,): 4, (1, 1): -3}), "4*CP2 - 3*CP1^2"),
            (cls(3, {(3,): 1, (2, 1): -2, (1, 1, 1): 1}), "CP3 - 2*CP2*CP1 + CP1^3"),
            (cls(2, {(2,): Fraction(1, 3), (1, 1): Fraction(-1, 4)}), "1/3*CP2 - 1/4*CP1^2"),
            (cls(2, {(1, 1): -1}), "-CP1^2"),
            (CobordismClass.zero(4), "0*CP4"),
        ],
    )
    def test_format(self, x, text):
        assert str(x) == text

    def test_integrality(self):
        assert cls(2, {(2,): 4}).is_integral
        assert not dual_class(P((2,))).is_integral


class TestSMatrix:
    @pytest.mark.parametrize(
        "d, entries, determinant",
        [
            (1, ((2,),), 2),
            (2, ((3, 0), (3, 4)), 12),
            (3, ((4, 0, 0), (12, 6, 0), (4, 6, 8)), 192),
        ],
    )
    def test_small_degrees(self, d, entries, determinant):
        matrix = s_matrix(d)
        assert matrix.entries == entries
        assert matrix.determinant == determinant

    @pytest.mark.parametrize("d", range(1, 9))
    def test_basis_property(self, d):
        matrix = s_matrix(d)
        assert matrix.is_lower_triangular()
        assert all(entry != 0 for entry in matrix.diagonal())
        assert matrix.determinant == prod(matrix.diagonal())
        assert verify_stong(d) == (True, matrix.determinant)

    def test_degree_guard(self):
        with pytest.raises(DegreeBoundError):
            s_matrix(11)
        with pytest.raises(DegreeBoundError):
            s_matrix(4, max_degree=3)
        with pytest.raises(ValueError):
            check_degree(0)

    def test_lookup(self):
        matrix = s_matrix(3)
        assert matrix[P((2, 1)), P((2, 1))] == 6
        assert matrix[P((1, 1, 1)), P((3,))] == 4
        assert matrix.size == 3

    def test_frame(self):
        frame = s_matrix(2).to_frame()
        assert isinstance(frame, pd.DataFrame)
        assert list(frame.index) == ["s[2]", "s[1,1]"]
        assert list(frame.columns) == ["CP2", "CP1^2"]
        assert frame.loc["s[1,1]", "CP1^2"] == 4


class TestCoordinates:
    def test_s_coordinates(self):
        x = cls(2, {(2,): 4, (1, 1): -3})
        assert s_coordinates(x) == {P((2,)): 12, P((1, 1)): 0}
        assert s_value(x, P((2,))) == 12
        with pytest.raises(ValueError):
            s_value(x, P((3,)))

    def test_chern_numbers(self):
        assert chern_numbers(CobordismClass.basis(P((1, 1)))) == {P((2,)): 4, P((1, 1)): 8}
        assert chern_numbers(cls(2, {(2,): 1, (1, 1): -1})) == {P((2,)): -1, P((1, 1)): 1}

    def test_euler_characteristic(self):
        assert euler_characteristic(CobordismClass.basis(P((2,)))) == 3
        assert euler_characteristic(cls(2, {(2,): 4, (1, 1): -3})) == 0

    def test_dual_class(self):
        assert dual_class(P((2,))) == cls(2, {(2,): Fraction(1, 3), (1, 1): Fraction(-1, 4)})
        for omega in enumerate_partitions(4):
            values = s_coordinates(dual_class(omega))
            assert values == {mu: int(mu == omega) for mu in enumerate_partitions(4)}

    def test_unknown_partition(self):
        with pytest.raises(ValueError):
            class_from_s_values(2, {P((3,)): 1})

    @settings(deadline=None)
    @given(classes())
    def test_s_values_determine_the_class(self, x):
        assert class_from_s_values(x.degree, s_coordinates(x)) == x

    @settings(deadline=None)
    @given(st.data(), st.fractions(min_value=-5, max_value=5, max_denominator=4))
    def test_linearity(self, data, a):
        x = data.draw(classes())
        y = data.draw(classes(x.degree))
        left = s_coordinates(x + a * y)
        right = s_coordinates(x)
        other = s_coordinates(y)
        assert left == {omega: right[omega] + a * other[omega] for omega in left}


class TestGenerators:
    def test_degree_two(self):
        x, c = construct_section_generator(2, 1)
        assert str(x) == "4*CP2 - 3*CP1^2"
        assert c == 12

    def test_degree_three(self):
        for r in (1, 2):
            x, c = construct_section_generator(3, r)
            assert str(x) == "CP3 - 2*CP2*CP1 + CP1^3"
            assert c == 4

    @pytest.mark.parametrize("d, r", [(3, 0), (3, 3), (1, 1), (2, 5)])
    def test_invalid_sections(self, d, r):
        with pytest.raises(ValueError):
            construct_section_generator(d, r)

    @pytest.mark.parametrize("d", range(2, 9))
    def test_only_the_top_s_number_survives(self, d):
        x, c = construct_section_generator(d, 1)
        assert x.is_integral
        assert is_rational_generator(x)
        for r in range(1, d):
            assert construct_section_generator(d, r) == (x, c)
            assert gamma_rational(x, r).vanishes
        # recomputed from the basis manifolds, independently of the s-matrix
        for omega in enumerate_partitions(d):
            value = sum(
                q * s_number(ManifoldModel.from_partition(lam), omega)
                for lam, q in x.coords.items()
            )
            assert value == (c if omega == P((d,)) else 0)

    def test_decomposables_are_not_rational_generators(self):
        assert not is_rational_generator(CobordismClass.basis(P((1, 1))))
        assert is_rational_generator(CobordismClass.basis(P((2,))))

    @settings(deadline=None)
    @given(
        st.data(),
        st.integers(min_value=1, max_value=6),
        st.integers(min_value=-7, max_value=7).filter(lambda n: n != 0),
    )
    def test_multiples_of_generators(self, data, d, n):
        x = data.draw(classes(d))
        assert is_rational_generator(n * x) == is_rational_generator(x)
        decomposable = CobordismClass.basis(enumerate_partitions(d)[-1])
        assert is_rational_generator(n * decomposable) == (d == 1)


class TestIntegralCheck:
    @pytest.mark.parametrize(
        "d, expected",
        [(1, ((2, 1),)), (2, ((3, 1),)), (3, ((2, 2),)), (5, ()), (7, ((2, 3),)), (8, ((3, 2),))],
    )
    def test_prime_powers(self, d, expected):
        assert prime_power_decompositions(d) == expected

    @pytest.mark.parametrize("n", range(1, 11))
    def test_projective_spaces(self, n):
        check = integral_generator_check(CobordismClass.basis(P((n,))))
        assert check.s_top == n + 1
        expected = "generator" if n in (1, 2, 4, 6, 10) else "not_generator"
        assert check.verdict == expected
        assert is_rational_generator(CobordismClass.basis(P((n,))))
        assert not check.is_ambiguous

    def test_details(self):
        check = integral_generator_check(CobordismClass.basis(P((3,))))
        assert (check.prime, check.exponent) == (2, 2)
        assert check.to_json()["verdict"] == "not_generator"
        assert integral_generator_check(CobordismClass.basis(P((5,)))).prime is None

    def test_product_is_not_a_generator(self):
        assert integral_generator_check(CobordismClass.basis(P((1, 1)))).verdict == "not_generator"

    def test_zero_class(self):
        assert integral_generator_check(CobordismClass.zero(2)).verdict == "not_applicable"

    def test_rational_coordinates(self):
        with pytest.raises(ValueError):
            integral_generator_check(dual_class(P((2,))))
