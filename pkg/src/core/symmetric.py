"""
Transition between the monomial symmetric functions m_ω and the elementary symmetric polynomials
e_λ (= Chern classes c_λ of a bundle with the given Chern roots).
"""
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Mapping, Union

from src.core.linalg import exact_inverse
from src.core.partitions import Partition, enumerate_partitions

log = logging.getLogger(__name__)

Coefficient = Union[int, Fraction]


def _canonical_terms(
    degree: int, terms: Mapping[Partition, Coefficient]
) -> dict[Partition, Coefficient]:
    order = {lam: i for i, lam in enumerate(enumerate_partitions(degree))}
    for lam in terms:
        if lam not in order:
            raise ValueError(
                f"Term {lam} has weight {lam.weight} but the polynomial has degree {degree}."
            )
    nonzero = ((lam, coeff) for lam, coeff in terms.items() if coeff != 0)
    return dict(sorted(nonzero, key=lambda item: order[item[0]]))


@dataclass(frozen=True)
class MonomialSymVector:
    """
    Coordinates of a homogeneous symmetric function in the monomial basis {m_μ}.
    """

    degree: int
    coords: dict[Partition, int] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(
            self, "coords", _canonical_terms(self.degree, self.coords)
        )

    def __getitem__(self, mu: Partition) -> int:
        return self.coords.get(mu, 0)


@dataclass(frozen=True)
class ChernPolynomial:
    """
    A homogeneous polynomial in the Chern classes c_1, c_2, ... where c_i has degree i.
    The key λ stands for the monomial c_{λ_1} c_{λ_2} ...
    """

    degree: int
    terms: dict[Partition, Coefficient] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "terms", _canonical_terms(self.degree, self.terms))

    def __getitem__(self, lam: Partition) -> Coefficient:
        return self.terms.get(lam, 0)

    def __eq__(self, other):
        if not isinstance(other, ChernPolynomial):
            return NotImplemented
        return self.degree == other.degree and self.terms == other.terms

    def __hash__(self):
        return hash((self.degree, tuple(self.terms.items())))

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def __str__(self):
        if self.is_zero:
            return "0"
        pieces = []
        # lowest parts first: c1^2 - 2*c2
        for i, (lam, coeff) in enumerate(reversed(self.terms.items())):
            sign = "-" if coeff < 0 else "+"
            magnitude = abs(coeff)
            monomial = _monomial_str(lam)
            body = monomial if magnitude == 1 else f"{magnitude}*{monomial}"
            if i == 0:
                pieces.append(body if sign == "+" else f"-{body}")
            else:
                pieces.append(f"{sign} {body}")
        return " ".join(pieces)

    def to_json(self) -> dict[str, str]:
        return {str(lam): str(coeff) for lam, coeff in self.terms.items()}


def _monomial_str(lam: Partition) -> str:
    powers = []
    for part, mult in sorted(lam.multiplicities.items()):
        powers.append(f"c{part}" if mult == 1 else f"c{part}^{mult}")
    return "*".join(powers) if powers else "1"


def times_elementary(
    vector: MonomialSymVector, k: int, num_vars: int
) -> MonomialSymVector:
    """
    Multiplies a symmetric function by e_k, all in the monomial basis over num_vars variables.

    The coefficient of m_γ in the product is the coefficient of t^γ, i.e. the number of
    0/1 vectors ε with k ones such that γ - ε is a permutation of a key μ, weighted by that key.
    """
    target_degree = vector.degree + k
    result: dict[Partition, int] = {}
    for gamma in enumerate_partitions(target_degree):
        if gamma.length > num_vars:
            continue
        padded = gamma.parts + (0,) * (num_vars - gamma.length)
        coeff = 0
        for positions in combinations(range(num_vars), k):
            reduced = list(padded)
            for i in positions:
                reduced[i] -= 1
            if min(reduced) < 0:
                continue
            coeff += vector[Partition.from_parts(reduced)]
        if coeff:
            result[gamma] = coeff
    return MonomialSymVector(target_degree, result)


def elementary_in_monomial(lam: Partition) -> MonomialSymVector:
    """
    Expands e_λ = e_{λ_1} e_{λ_2} ... in the monomial basis. The number of variables is the weight of λ,
    from which point on the coefficients do not depend on it.
    """
    num_vars = lam.weight
    vector = MonomialSymVector(0, {Partition(): 1})
    for part in lam.parts:
        vector = times_elementary(vector, part, num_vars)
    return vector


@lru_cache(maxsize=None)
def _transition_inverse(d: int) -> tuple[tuple[Fraction, ...], ...]:
    """
    Inverse of the matrix A with rows e_λ and columns m_μ (λ, μ ⊢ d, canonical order).
    Row ω of the inverse expresses m_ω in the e-basis.
    """
    log.info(f"Building the elementary-to-monomial transition matrix in degree {d}.")
    partitions = enumerate_partitions(d)
    matrix = [
        [elementary_in_monomial(lam)[mu] for mu in partitions] for lam in partitions
    ]
    # m_ω = Σ_λ B[ω][λ] e_λ means B A = 1, so B = A^{-1}
    inverse = exact_inverse(matrix)
    if any(entry.denominator != 1 for row in inverse for entry in row):
        raise RuntimeError(
            f"Transition matrix in degree {d} is not unimodular over the integers."
        )
    return tuple(tuple(row) for row in inverse)


def s_polynomial(omega: Partition) -> ChernPolynomial:
    """
    The polynomial s_ω with s_ω(σ_1, ..., σ_d) = m_ω, the orbit sum of t^ω over d variables.
    """
    d = omega.weight
    if d < 1:
        raise ValueError(f"The s-polynomial needs a non-empty partition but got: {omega}")
    partitions = enumerate_partitions(d)
    row = _transition_inverse(d)[partitions.index(omega)]
    return ChernPolynomial(
        d, {lam: int(coeff) for lam, coeff in zip(partitions, row)}
    )


def truncate_classes(poly: ChernPolynomial, n: int) -> ChernPolynomial:
    """
    Sets c_k = 0 for all k >= n, i.e. drops every term with a part of size at least n.
    """
    if n < 1:
        raise ValueError(f"Truncation index must be at least 1 but got: {n}")
    return ChernPolynomial(
        poly.degree,
        {lam: coeff for lam, coeff in poly.terms.items() if lam.largest_part < n},
    )


def newton_power_sum(d: int) -> ChernPolynomial:
    """
    The power sum p_d in terms of the elementary symmetric polynomials via Newton's identities
    p_k = e_1 p_{k-1} - e_2 p_{k-2} + ... + (-1)^{k-1} k e_k.
    """
    if d < 1:
        raise ValueError(f"Degree must be at least 1 but got: {d}")
    power_sums: list[dict[Partition, int]] = [{}]
    for k in range(1, d + 1):
        current: dict[Partition, int] = {}
        for i in range(1, k):
            sign = 1 if i % 2 == 1 else -1
            for lam, coeff in power_sums[k - i].items():
                key = Partition.from_parts(lam.parts + (i,))
                current[key] = current.get(key, 0) + sign * coeff
        sign = 1 if k % 2 == 1 else -1
        key = Partition((k,))
        current[key] = current.get(key, 0) + sign * k
        power_sums.append(current)
    return ChernPolynomial(d, power_sums[d])
