import pytest
from hypothesis import given
from hypothesis import strategies as st

from src.core.chern_geometry import (
    ManifoldModel,
    RingElement,
    chern_number,
    euler_characteristic,
    s_number,
    s_number_from_roots,
    total_chern_class,
)
from src.core.partitions import Partition, enumerate_partitions

CP2 = ManifoldModel((2,))
CP1_SQUARED = ManifoldModel((1, 1))
CP3 = ManifoldModel((3,))


class TestManifoldModel:
    def test_factors_are_sorted(self):
        model = ManifoldModel((1, 2))
        assert model.factors == (2, 1)
        assert model == ManifoldModel((2, 1))
        assert model.complex_dimension == 3
        assert model.shape == (3, 2)
        assert model.partition == Partition((2, 1))

    @pytest.mark.parametrize(
        "text, factors, name",
        [
            ("CP3", (3,), "CP3"),
            ("CP1*CP2", (2, 1), "CP2*CP1"),
            ("CP1^3", (1, 1, 1), "CP1^3"),
            ("CP2 * CP1^2", (2, 1, 1), "CP2*CP1^2"),
        ],
    )
    def test_parse(self, text, factors, name):
        model = ManifoldModel.parse(text)
        assert model.factors == factors
        assert model.name == name == str(model)

    @pytest.mark.parametrize("text", ["CP0", "CPx", "CP1^0", "", "CP1+CP1"])
    def test_invalid_literals(self, text):
        with pytest.raises(ValueError):
            ManifoldModel.parse(text)

    def test_no_factors(self):
        with pytest.raises(ValueError):
            ManifoldModel(())


class TestRingElement:
    def test_truncation(self):
        x = RingElement.generator(CP2, 0)
        assert x**2 == RingElement.monomial(CP2, (2,))
        assert x**3 == RingElement.zero(CP2)
        assert RingElement.monomial(CP2, (3,)).terms() == {}

    def test_mixed_models(self):
        with pytest.raises(ValueError):
            RingElement.one(CP2) + RingElement.one(CP3)

    def test_shape_check(self):
        with pytest.raises(ValueError):
            RingElement(CP2, RingElement.zero(CP3).coeffs)

    def test_product_of_generators(self):
        x, y = (RingElement.generator(CP1_SQUARED, i) for i in range(2))
        assert (x * y).top_coefficient() == 1
        assert ((x + y) ** 2).top_coefficient() == 2
        assert x * y == y * x

    @staticmethod
    def _element(model: ManifoldModel, coefficients: list[int]) -> RingElement:
        terms = [(i, j) for i in range(3) for j in range(2)]
        u = RingElement.zero(model)
        for exponents, p in zip(terms, coefficients):
            u = u + RingElement.monomial(model, exponents, p)
        return u

    @given(*(st.lists(st.integers(-5, 5), min_size=6, max_size=6) for _ in range(3)))
    def test_ring_axioms(self, a, b, c):
        model = ManifoldModel((2, 1))
        u, v, w = (self._element(model, coefficients) for coefficients in (a, b, c))
        assert u * v == v * u
        assert (u * v) * w == u * (v * w)
        assert u * (v + w) == u * v + u * w
        assert u * (v - w) == u * v - u * w
        assert (u - u) == RingElement.zero(model)
        assert u.scale(3) == u + u + u
        assert (u * v).scale(2) == u.scale(2) * v

    def test_total_chern_class(self):
        c = total_chern_class(CP2)
        assert c.terms() == {(0,): 1, (1,): 3, (2,): 3}
        assert c.graded_piece(0) == RingElement.one(CP2)


class TestChernNumbers:
    @pytest.mark.parametrize(
        "model, lam, value",
        [
            (CP2, (2,), 3),
            (CP2, (1, 1), 9),
            (CP1_SQUARED, (2,), 4),
            (CP1_SQUARED, (1, 1), 8),
            (CP3, (3,), 4),
            (CP3, (2, 1), 24),
            (CP3, (1, 1, 1), 64),
        ],
    )
    def test_examples(self, model, lam, value):
        assert chern_number(model, Partition(lam)) == value

    def test_weight_must_match(self):
        with pytest.raises(ValueError, match="partition weight must equal complex dimension"):
            chern_number(CP2, Partition((3,)))

    @pytest.mark.parametrize("factors", [(1,), (2,), (1, 1), (2, 1), (3, 2), (1, 1, 1, 1)])
    def test_euler_characteristic(self, factors):
        model = ManifoldModel(factors)
        chi = euler_characteristic(model)
        expected = 1
        for n in factors:
            expected *= n + 1
        assert chi == expected
        assert chi == s_number(model, Partition((1,) * model.complex_dimension))


class TestSNumbers:
    @pytest.mark.parametrize("d", range(1, 9))
    def test_all_ones_is_euler_characteristic(self, d):
        for lam in enumerate_partitions(d):
            expected = 1
            for n in lam.parts:
                expected *= n + 1
            model = ManifoldModel.from_partition(lam)
            assert s_number(model, Partition((1,) * d)) == expected

    def test_examples(self):
        assert s_number(CP2, Partition((2,))) == 3
        assert s_number(CP2, Partition((1, 1))) == 3
        assert s_number(CP1_SQUARED, Partition((2,))) == 0
        assert s_number(CP1_SQUARED, Partition((1, 1))) == 4

    @pytest.mark.parametrize("d", range(1, 11))
    def test_top_s_number_of_projective_space(self, d):
        assert s_number(ManifoldModel((d,)), Partition((d,))) == d + 1

    @pytest.mark.parametrize("d", range(2, 9))
    def test_top_s_number_vanishes_on_products(self, d):
        for lam in enumerate_partitions(d):
            if lam.length > 1:
                assert s_number(ManifoldModel.from_partition(lam), Partition((d,))) == 0

    @pytest.mark.parametrize("d", range(1, 7))
    def test_agrees_with_chern_roots(self, d):
        for lam in enumerate_partitions(d):
            model = ManifoldModel.from_partition(lam)
            for omega in enumerate_partitions(d):
                assert s_number(model, omega) == s_number_from_roots(model, omega)

    @pytest.mark.parametrize("d", range(1, 7))
    def test_product_of_lines_only_sees_all_ones(self, d):
        model = ManifoldModel((1,) * d)
        for omega in enumerate_partitions(d):
            if omega.largest_part >= 2:
                assert s_number(model, omega) == 0
        assert s_number(model, Partition((1,) * d)) == 2**d
