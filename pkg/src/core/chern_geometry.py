import logging
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, prod
from typing import Union

import numpy as np
from sympy.utilities.iterables import multiset_permutations

from src.core.partitions import Partition
from src.core.symmetric import s_polynomial

log = logging.getLogger(__name__)

Coefficient = Union[int, Fraction]

_FACTOR_PATTERN = re.compile(r"CP(\d+)(?:\^(\d+))?")


@dataclass(frozen=True)
class ManifoldModel:
    """
    The product CP^{n_1} x ... x CP^{n_k}. Factors are stored in descending order, so two products that
    differ only by the order of their factors are the same model.
    """

    factors: tuple[int, ...]

    def __post_init__(self):
        factors = tuple(sorted(self.factors, reverse=True))
        if not factors:
            raise ValueError("A manifold model needs at least one factor.")
        if any(n < 1 for n in factors):
            raise ValueError(f"factors must have n >= 1 but got: {factors}")
        object.__setattr__(self, "factors", factors)

    @classmethod
    def from_partition(cls, lam: Partition) -> "ManifoldModel":
        return cls(lam.parts)

    @classmethod
    def parse(cls, text: str) -> "ManifoldModel":
        """
        Reads literals like ``CP3``, ``CP1*CP2`` or ``CP1^3``.
        """
        factors: list[int] = []
        for piece in text.replace(" ", "").split("*"):
            match = _FACTOR_PATTERN.fullmatch(piece)
            if match is None:
                raise ValueError(f"Cannot read a manifold literal from {text!r}.")
            power = int(match.group(2)) if match.group(2) else 1
            if power < 1:
                raise ValueError(f"Powers must be at least 1 but got: {power}")
            factors.extend([int(match.group(1))] * power)
        return cls(tuple(factors))

    @property
    def complex_dimension(self) -> int:
        return sum(self.factors)

    @property
    def partition(self) -> Partition:
        return Partition(self.factors)

    @property
    def shape(self) -> tuple[int, ...]:
        return tuple(n + 1 for n in self.factors)

    @property
    def name(self) -> str:
        return format_factors(self.factors)

    def __str__(self):
        return self.name


def format_factors(factors: tuple[int, ...]) -> str:
    """
    Canonical literal: descending factors, repeated factors written as powers, e.g. ``CP2*CP1^2``.
    """
    counts: dict[int, int] = {}
    for n in sorted(factors, reverse=True):
        counts[n] = counts.get(n, 0) + 1
    return "*".join(
        f"CP{n}" if count == 1 else f"CP{n}^{count}" for n, count in counts.items()
    )


class RingElement:
    """
    An element of H*(CP^{n_1} x ... x CP^{n_k}; Q) = Q[x_1, ..., x_k] / (x_i^{n_i + 1}).
    Coefficients are stored densely, indexed by the exponent vector.
    """

    def __init__(self, model: ManifoldModel, coeffs: np.ndarray):
        if coeffs.shape != model.shape:
            raise ValueError(
                f"Coefficient array has shape {coeffs.shape} but {model} needs {model.shape}."
            )
        self.model = model
        self.coeffs = coeffs

    @classmethod
    def zero(cls, model: ManifoldModel) -> "RingElement":
        return cls(model, np.zeros(model.shape, dtype=object))

    @classmethod
    def one(cls, model: ManifoldModel) -> "RingElement":
        return cls.monomial(model, (0,) * len(model.factors))

    @classmethod
    def monomial(
        cls, model: ManifoldModel, exponents: tuple[int, ...], coeff: Coefficient = 1
    ) -> "RingElement":
        """
        coeff * x^exponents, which is zero once an exponent exceeds its truncation bound.
        """
        element = cls.zero(model)
        if all(0 <= a <= n for a, n in zip(exponents, model.factors)):
            element.coeffs[tuple(exponents)] = coeff
        return element

    @classmethod
    def generator(cls, model: ManifoldModel, i: int) -> "RingElement":
        exponents = tuple(int(j == i) for j in range(len(model.factors)))
        return cls.monomial(model, exponents)

    def _check_same_model(self, other: "RingElement"):
        if self.model != other.model:
            raise ValueError(f"Cannot combine elements of {self.model} and {other.model}.")

    def __add__(self, other: "RingElement") -> "RingElement":
        self._check_same_model(other)
        return RingElement(self.model, self.coeffs + other.coeffs)

    def __sub__(self, other: "RingElement") -> "RingElement":
        self._check_same_model(other)
        return RingElement(self.model, self.coeffs - other.coeffs)

    def scale(self, factor: Coefficient) -> "RingElement":
        return RingElement(self.model, self.coeffs * factor)

    def __mul__(self, other: "RingElement") -> "RingElement":
        self._check_same_model(other)
        bounds = self.model.factors
        result = np.zeros(self.model.shape, dtype=object)
        for idx in zip(*np.nonzero(self.coeffs)):
            idx = tuple(int(i) for i in idx)
            target = tuple(slice(i, None) for i in idx)
            source = tuple(slice(0, n + 1 - i) for i, n in zip(idx, bounds))
            result[target] = result[target] + self.coeffs[idx] * other.coeffs[source]
        return RingElement(self.model, result)

    def __pow__(self, exponent: int) -> "RingElement":
        if exponent < 0:
            raise ValueError(f"Exponent must be non-negative but got: {exponent}")
        result = RingElement.one(self.model)
        for _ in range(exponent):
            result = result * self
        return result

    def __eq__(self, other):
        if not isinstance(other, RingElement):
            return NotImplemented
        return self.model == other.model and bool(np.all(self.coeffs == other.coeffs))

    def graded_piece(self, degree: int) -> "RingElement":
        """
        The part of complex degree ``degree``, i.e. all monomials whose exponents sum to it.
        """
        mask = np.indices(self.model.shape).sum(axis=0) == degree
        return RingElement(self.model, np.where(mask, self.coeffs, 0))

    def terms(self) -> dict[tuple[int, ...], Coefficient]:
        return {
            tuple(int(i) for i in idx): self.coeffs[idx]
            for idx in zip(*np.nonzero(self.coeffs))
        }

    def top_coefficient(self) -> Coefficient:
        """
        Evaluation on the fundamental class: the coefficient of x_1^{n_1} ... x_k^{n_k}.
        """
        return self.coeffs[self.model.factors]

    def __repr__(self):
        return f"RingElement({self.model}, {self.terms()})"


def total_chern_class(model: ManifoldModel) -> RingElement:
    """
    c(T(CP^{n_1} x ... x CP^{n_k})) = prod_i (1 + x_i)^{n_i + 1}.
    """
    result = RingElement.one(model)
    for i, n in enumerate(model.factors):
        factor = RingElement.zero(model)
        for a in range(n + 1):
            exponents = tuple(a if j == i else 0 for j in range(len(model.factors)))
            factor.coeffs[exponents] = comb(n + 1, a)
        result = result * factor
    return result


@lru_cache(maxsize=None)
def chern_classes(model: ManifoldModel) -> tuple[RingElement, ...]:
    """
    (c_0, c_1, ..., c_d) of the tangent bundle.
    """
    total = total_chern_class(model)
    return tuple(
        total.graded_piece(j) for j in range(model.complex_dimension + 1)
    )


def _check_degree(model: ManifoldModel, lam: Partition):
    if lam.weight != model.complex_dimension:
        raise ValueError(
            f"partition weight must equal complex dimension, got {lam} for {model} "
            f"of dimension {model.complex_dimension}"
        )


@lru_cache(maxsize=None)
def chern_number(model: ManifoldModel, lam: Partition) -> int:
    _check_degree(model, lam)
    classes = chern_classes(model)
    product = RingElement.one(model)
    for part in lam.parts:
        product = product * classes[part]
    return int(product.top_coefficient())


def s_number(model: ManifoldModel, omega: Partition) -> int:
    """
    <s_ω(c_1(TM), ..., c_d(TM)), [M]>, via the Chern numbers of M.
    """
    _check_degree(model, omega)
    return sum(
        coeff * chern_number(model, lam)
        for lam, coeff in s_polynomial(omega).terms.items()
    )


def s_number_from_roots(model: ManifoldModel, omega: Partition) -> int:
    """
    The same number as ``s_number`` computed without any symmetric function theory: the Chern roots of
    CP^n are n + 1 copies of its hyperplane class, so m_ω of the roots is expanded term by term in the
    truncated ring.
    """
    _check_degree(model, omega)
    roots = [i for i, n in enumerate(model.factors) for _ in range(n + 1)]
    if omega.length > len(roots):
        return 0
    padded = list(omega.parts) + [0] * (len(roots) - omega.length)
    counts: dict[tuple[int, ...], int] = {}
    for arrangement in multiset_permutations(padded):
        exponents = [0] * len(model.factors)
        for root, power in zip(roots, arrangement):
            exponents[root] += power
        counts[tuple(exponents)] = counts.get(tuple(exponents), 0) + 1
    total = RingElement.zero(model)
    for exponents, count in counts.items():
        total = total + RingElement.monomial(model, exponents, count)
    return int(total.top_coefficient())


def euler_characteristic(model: ManifoldModel) -> int:
    """
    <c_d(TM), [M]>, which is also s_{(1, ..., 1)}(M).
    """
    chi = chern_number(model, Partition((model.complex_dimension,)))
    expected = prod(n + 1 for n in model.factors)
    assert chi == expected, f"Euler characteristic of {model} is {chi}, expected {expected}"
    return chi
