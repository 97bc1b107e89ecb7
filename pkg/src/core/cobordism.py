import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Mapping, Optional, Union

import pandas as pd
import sympy

from src.core.chern_geometry import (
    ManifoldModel,
    chern_number,
    format_factors,
    s_number,
)
from src.core.linalg import clear_denominators, exact_det, exact_solve
from src.core.partitions import Partition, enumerate_partitions
from src.core.types import GeneratorVerdict

log = logging.getLogger(__name__)

DEFAULT_MAX_DEGREE = 10

Rational = Union[int, Fraction]


class DegreeBoundError(ValueError):
    pass


def check_degree(d: int, max_degree: int = DEFAULT_MAX_DEGREE):
    if d < 1:
        raise ValueError(f"Degree must be at least 1 but got: {d}")
    if d > max_degree:
        raise DegreeBoundError(
            f"Degree {d} exceeds the configured bound of {max_degree}. "
            f"Raise the bound with --max-degree if you really want this."
        )


@dataclass(frozen=True)
class CobordismClass:
    """
    A rational combination of CP-product basis manifolds in complex dimension ``degree``.
    The key λ stands for CP^{λ_1} x ... x CP^{λ_l}.
    """

    degree: int
    coords: dict[Partition, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        if self.degree < 1:
            raise ValueError(f"Degree must be at least 1 but got: {self.degree}")
        order = {lam: i for i, lam in enumerate(enumerate_partitions(self.degree))}
        for lam in self.coords:
            if lam not in order:
                raise ValueError(
                    f"Basis element {lam} does not have dimension {self.degree}."
                )
        coords = sorted(
            ((lam, Fraction(q)) for lam, q in self.coords.items() if q != 0),
            key=lambda item: order[item[0]],
        )
        object.__setattr__(self, "coords", dict(coords))

    @classmethod
    def zero(cls, degree: int) -> "CobordismClass":
        return cls(degree)

    @classmethod
    def basis(cls, lam: Partition) -> "CobordismClass":
        return cls(lam.weight, {lam: Fraction(1)})

    @classmethod
    def of_manifold(cls, model: ManifoldModel) -> "CobordismClass":
        return cls.basis(model.partition)

    @classmethod
    def from_vector(cls, d: int, vector: list[Rational]) -> "CobordismClass":
        return cls(d, dict(zip(enumerate_partitions(d), (Fraction(q) for q in vector))))

    def __getitem__(self, lam: Partition) -> Fraction:
        return self.coords.get(lam, Fraction(0))

    def vector(self) -> list[Fraction]:
        return [self[lam] for lam in enumerate_partitions(self.degree)]

    def _check_same_degree(self, other: "CobordismClass"):
        if self.degree != other.degree:
            raise ValueError(
                f"Cannot combine classes of degrees {self.degree} and {other.degree}."
            )

    def __add__(self, other: "CobordismClass") -> "CobordismClass":
        self._check_same_degree(other)
        keys = set(self.coords) | set(other.coords)
        return CobordismClass(self.degree, {lam: self[lam] + other[lam] for lam in keys})

    def __sub__(self, other: "CobordismClass") -> "CobordismClass":
        return self + other.scale(-1)

    def __neg__(self) -> "CobordismClass":
        return self.scale(-1)

    def scale(self, factor: Rational) -> "CobordismClass":
        return CobordismClass(
            self.degree, {lam: q * factor for lam, q in self.coords.items()}
        )

    def __rmul__(self, factor: Rational) -> "CobordismClass":
        return self.scale(factor)

    def __eq__(self, other):
        if not isinstance(other, CobordismClass):
            return NotImplemented
        return self.degree == other.degree and self.coords == other.coords

    def __hash__(self):
        return hash((self.degree, tuple(self.coords.items())))

    @property
    def is_zero(self) -> bool:
        return not self.coords

    @property
    def is_integral(self) -> bool:
        return all(q.denominator == 1 for q in self.coords.values())

    def __str__(self):
        return format_class(self)


def format_class(x: CobordismClass) -> str:
    """
    Canonical text form, e.g. ``4*CP2 - 3*CP1^2``. The zero class is written ``0*CP<d>`` so that
    its degree survives a round trip through the parser.
    """
    if x.is_zero:
        return f"0*CP{x.degree}"
    pieces = []
    for i, (lam, q) in enumerate(x.coords.items()):
        literal = format_factors(lam.parts)
        magnitude = abs(q)
        body = literal if magnitude == 1 else f"{magnitude}*{literal}"
        if i == 0:
            pieces.append(body if q > 0 else f"-{body}")
        else:
            pieces.append(f"{'+' if q > 0 else '-'} {body}")
    return " ".join(pieces)


@dataclass(frozen=True)
class SMatrix:
    """
    entries[i][j] = s_{ω_i}(CP^{λ_j}) with ω and λ running over the partitions of d in canonical order.
    """

    degree: int
    partitions: tuple[Partition, ...]
    entries: tuple[tuple[int, ...], ...]
    determinant: int

    def __getitem__(self, key: tuple[Partition, Partition]) -> int:
        omega, lam = key
        return self.entries[self.partitions.index(omega)][self.partitions.index(lam)]

    @property
    def size(self) -> int:
        return len(self.partitions)

    def diagonal(self) -> list[int]:
        return [self.entries[i][i] for i in range(self.size)]

    def is_lower_triangular(self) -> bool:
        return all(
            self.entries[i][j] == 0
            for i in range(self.size)
            for j in range(i + 1, self.size)
        )

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame(
            [list(row) for row in self.entries],
            index=[f"s{omega}" for omega in self.partitions],
            columns=[format_factors(lam.parts) for lam in self.partitions],
        )


def s_matrix(d: int, max_degree: int = DEFAULT_MAX_DEGREE) -> SMatrix:
    check_degree(d, max_degree)
    return _s_matrix(d)


@lru_cache(maxsize=None)
def _s_matrix(d: int) -> SMatrix:
    log.info(f"Building the s-matrix in degree {d}.")
    partitions = tuple(enumerate_partitions(d))
    entries = tuple(
        tuple(s_number(ManifoldModel.from_partition(lam), omega) for lam in partitions)
        for omega in partitions
    )
    determinant = exact_det(entries)
    assert determinant.denominator == 1, f"Integer matrix with determinant {determinant}"
    return SMatrix(d, partitions, entries, int(determinant))


def verify_stong(d: int, max_degree: int = DEFAULT_MAX_DEGREE) -> tuple[bool, int]:
    """
    Whether the s-numbers s_ω, ω ⊢ d, are linearly independent on the CP-product basis, i.e. whether
    they form a basis of the dual of the rational cobordism group. Returns the exact determinant too.
    """
    matrix = s_matrix(d, max_degree)
    return matrix.determinant != 0, matrix.determinant


def s_coordinates(
    x: CobordismClass, max_degree: int = DEFAULT_MAX_DEGREE
) -> dict[Partition, Fraction]:
    matrix = s_matrix(x.degree, max_degree)
    vector = x.vector()
    return {
        omega: sum((Fraction(entry) * q for entry, q in zip(row, vector)), Fraction(0))
        for omega, row in zip(matrix.partitions, matrix.entries)
    }


def chern_numbers(x: CobordismClass) -> dict[Partition, Fraction]:
    """
    All Chern numbers c_λ[X], λ ⊢ d, of a class.
    """
    partitions = enumerate_partitions(x.degree)
    return {
        lam: sum(
            (
                q * chern_number(ManifoldModel.from_partition(basis), lam)
                for basis, q in x.coords.items()
            ),
            Fraction(0),
        )
        for lam in partitions
    }


def euler_characteristic(x: CobordismClass) -> Fraction:
    return s_coordinates(x)[Partition((1,) * x.degree)]


def class_from_s_values(
    d: int,
    values: Mapping[Partition, Rational],
    max_degree: int = DEFAULT_MAX_DEGREE,
) -> CobordismClass:
    """
    The unique class with the given s-numbers (missing partitions mean 0). Inverse of ``s_coordinates``.
    """
    matrix = s_matrix(d, max_degree)
    unknown = set(values) - set(matrix.partitions)
    if unknown:
        raise ValueError(f"Partitions {sorted(map(str, unknown))} do not have weight {d}.")
    rhs = [Fraction(values.get(omega, 0)) for omega in matrix.partitions]
    try:
        solution = exact_solve(matrix.entries, rhs)
    except RuntimeError:
        log.error(
            f"The s-matrix in degree {d} is singular. This contradicts the basis theorem and is an "
            f"implementation error."
        )
        raise
    return CobordismClass.from_vector(d, solution)


def dual_class(omega: Partition, max_degree: int = DEFAULT_MAX_DEGREE) -> CobordismClass:
    """
    The rational class with s_ω = 1 and every other s-number 0.
    """
    return class_from_s_values(omega.weight, {omega: 1}, max_degree)


def s_value(x: CobordismClass, omega: Partition) -> Fraction:
    """
    A single s-number, summed over the support of x without building the whole s-matrix.
    """
    if omega.weight != x.degree:
        raise ValueError(f"Partition {omega} does not have weight {x.degree}.")
    return sum(
        (q * s_number(ManifoldModel.from_partition(lam), omega) for lam, q in x.coords.items()),
        Fraction(0),
    )


def is_rational_generator(x: CobordismClass) -> bool:
    """
    A class in degree d is a multiplicative generator of the rational cobordism ring iff s_{(d)} does not vanish.
    """
    return s_value(x, Partition((x.degree,))) != 0


@dataclass(frozen=True)
class GeneratorCheck:
    verdict: GeneratorVerdict
    degree: int
    s_top: Fraction
    # all (p, q) with d = p^q - 1, p prime; at most one by unique factorisation
    prime_powers: tuple[tuple[int, int], ...]
    caveat: str = (
        "The criterion characterises generators among classes realised by manifolds; "
        "it is applied formally to integer combinations of CP-products."
    )

    @property
    def prime(self) -> Optional[int]:
        return self.prime_powers[0][0] if self.prime_powers else None

    @property
    def exponent(self) -> Optional[int]:
        return self.prime_powers[0][1] if self.prime_powers else None

    @property
    def is_ambiguous(self) -> bool:
        return len(self.prime_powers) > 1

    def to_json(self) -> dict:
        return dict(
            verdict=self.verdict,
            d=self.degree,
            s_d=str(self.s_top),
            p=self.prime,
            q=self.exponent,
            prime_powers=[list(pq) for pq in self.prime_powers],
            caveat=self.caveat,
        )


def prime_power_decompositions(d: int) -> tuple[tuple[int, int], ...]:
    """
    All pairs (p, q) with p prime, q >= 1 and d = p^q - 1.
    """
    factors = sympy.factorint(d + 1)
    return tuple((int(p), int(q)) for p, q in factors.items() if len(factors) == 1)


def integral_generator_check(x: CobordismClass) -> GeneratorCheck:
    """
    Milnor's criterion for multiplicative generators of the integral cobordism ring: s_d = ±p if
    d = p^q - 1 for a prime p, and s_d = ±1 otherwise.
    """
    if not x.is_integral:
        raise ValueError(f"The integral criterion needs integer coordinates but got: {x}")
    d = x.degree
    s_top = s_value(x, Partition((d,)))
    prime_powers = prime_power_decompositions(d)
    if x.is_zero:
        verdict: GeneratorVerdict = "not_applicable"
    else:
        targets = {p for p, _ in prime_powers} if prime_powers else {1}
        verdict = "generator" if abs(s_top) in targets else "not_generator"
    return GeneratorCheck(verdict, d, s_top, prime_powers)


def construct_section_generator(
    d: int, r: int, max_degree: int = DEFAULT_MAX_DEGREE
) -> tuple[CobordismClass, int]:
    """
    An integral class X whose only nonvanishing s-number is s_{(d)}(X) = c. In particular every s_ω with
    l(ω) > d - r vanishes, so a multiple of X contains a manifold with r complex sections, and X is a
    rational generator.
    """
    if not 1 <= r < d:
        raise ValueError(f"Need 1 <= r < d but got d={d}, r={r}.")
    dual = dual_class(Partition((d,)), max_degree)
    integers, c = clear_denominators(dual.vector())
    x = CobordismClass.from_vector(d, integers)
    log.info(f"Generator with {r} sections in degree {d}: {x} (c={c}).")
    return x, c
