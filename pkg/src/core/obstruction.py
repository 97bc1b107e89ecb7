import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Optional, Union

from src.core.cobordism import (
    DEFAULT_MAX_DEGREE,
    CobordismClass,
    check_degree,
    chern_numbers,
    s_coordinates,
    s_matrix,
)
from src.core.linalg import exact_nullspace, primitive_integer_vector
from src.core.partitions import Partition, enumerate_partitions
from src.core.symmetric import s_polynomial

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class ChernNumbers:
    """
    The Chern numbers c_λ[M], λ ⊢ d, of an almost complex manifold that is not given in the CP-product
    basis. Whoever builds it vouches for the numbers being realised by a manifold.
    """

    degree: int
    values: dict[Partition, int] = field(default_factory=dict)

    def __post_init__(self):
        partitions = enumerate_partitions(self.degree)
        unknown = set(self.values) - set(partitions)
        if unknown:
            raise ValueError(
                f"Chern numbers {sorted(map(str, unknown))} do not have weight {self.degree}."
            )
        object.__setattr__(
            self, "values", {lam: self.values.get(lam, 0) for lam in partitions}
        )

    @classmethod
    def of_class(cls, x: CobordismClass) -> "ChernNumbers":
        numbers = chern_numbers(x)
        if any(value.denominator != 1 for value in numbers.values()):
            raise ValueError(f"Chern numbers of {x} are not integers.")
        return cls(x.degree, {lam: int(value) for lam, value in numbers.items()})

    @classmethod
    def from_json(
        cls, raw: Mapping[str, int], max_degree: Optional[int] = None
    ) -> "ChernNumbers":
        """
        Reads ``{"[2]": 3, "[1,1]": 9}``. Values must be JSON integers. With max_degree set, the degree is
        checked before the partitions of it are enumerated.
        """
        if not isinstance(raw, Mapping):
            raise ValueError(f"Chern numbers must be a JSON object but got: {raw!r}")
        values = {}
        for key, value in raw.items():
            if not isinstance(value, int) or isinstance(value, bool):
                raise ValueError(f"Chern number {key} must be an integer but got: {value!r}")
            values[Partition.parse(key)] = value
        degrees = {lam.weight for lam in values}
        if len(degrees) != 1:
            raise ValueError(f"Chern numbers must share one degree but got degrees {sorted(degrees)}.")
        degree = degrees.pop()
        if max_degree is not None:
            check_degree(degree, max_degree)
        return cls(degree, values)

    def s_number(self, omega: Partition) -> int:
        return sum(
            coeff * self.values[lam] for lam, coeff in s_polynomial(omega).terms.items()
        )


ClassInput = Union[CobordismClass, ChernNumbers]


@dataclass(frozen=True)
class ObstructionReport:
    """
    The rational obstruction to r complex sections, given by all s-numbers of partitions longer than d - r.
    """

    degree: int
    sections: int
    entries: tuple[tuple[Partition, Fraction], ...]

    @property
    def vanishes(self) -> bool:
        return all(value == 0 for _, value in self.entries)

    @property
    def witness(self) -> Optional[tuple[Partition, Fraction]]:
        return next(((omega, value) for omega, value in self.entries if value != 0), None)

    def to_json(self) -> dict:
        witness = self.witness
        return {
            "d": self.degree,
            "r": self.sections,
            "entries": [
                {"omega": str(omega), "value": str(value)} for omega, value in self.entries
            ],
            "vanishes": self.vanishes,
            "witness": None
            if witness is None
            else {"omega": str(witness[0]), "value": str(witness[1])},
        }


def _check_sections(d: int, r: int):
    if not 0 <= r <= d:
        raise ValueError(f"Need 0 <= r <= d but got d={d}, r={r}.")


def _s_values(x: ClassInput, max_degree: int) -> dict[Partition, Fraction]:
    match x:
        case CobordismClass():
            return s_coordinates(x, max_degree)
        case ChernNumbers():
            return {
                omega: Fraction(x.s_number(omega))
                for omega in enumerate_partitions(x.degree)
            }
        case other:
            raise TypeError(f"Cannot compute s-numbers of {other!r}.")


def long_partitions(d: int, r: int) -> list[Partition]:
    """
    The partitions of d of length greater than d - r, in canonical order.
    """
    return [omega for omega in enumerate_partitions(d) if omega.length > d - r]


def gamma_rational(
    x: ClassInput, r: int, max_degree: int = DEFAULT_MAX_DEGREE
) -> ObstructionReport:
    d = x.degree
    _check_sections(d, r)
    values = _s_values(x, max_degree)
    entries = tuple((omega, values[omega]) for omega in long_partitions(d, r))
    return ObstructionReport(d, r, entries)


def admits_sections_rationally(
    x: ClassInput, r: int, max_degree: int = DEFAULT_MAX_DEGREE
) -> bool:
    return gamma_rational(x, r, max_degree).vanishes


def obstruction_profile(x: ClassInput, max_degree: int = DEFAULT_MAX_DEGREE) -> int:
    """
    The largest r such that a multiple of x contains a manifold with r complex sections.
    """
    best = 0
    for r in range(x.degree + 1):
        if not admits_sections_rationally(x, r, max_degree):
            break
        best = r
    return best


def kernel_basis(
    d: int, r: int, max_degree: int = DEFAULT_MAX_DEGREE
) -> list[CobordismClass]:
    """
    A basis of the classes on which every s_ω with l(ω) > d - r vanishes, scaled to primitive integer vectors.
    """
    _check_sections(d, r)
    matrix = s_matrix(d, max_degree)
    rows = [
        list(row)
        for omega, row in zip(matrix.partitions, matrix.entries)
        if omega.length > d - r
    ]
    log.info(f"Computing the kernel of {len(rows)} long-partition s-numbers in degree {d}.")
    vectors = exact_nullspace(rows, matrix.size)
    return [
        CobordismClass.from_vector(d, primitive_integer_vector(vector))
        for vector in vectors
    ]
