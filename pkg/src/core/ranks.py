"""
Ranks of the rational cohomology of the spectra MTU(d), MTU(d, r) and MTUbar(d), all of which are partition
counts. For spectra of finite type the rational cohomology and the rational homotopy have the same ranks, so
these numbers are also the ranks of the homotopy groups.
"""
import logging
from dataclasses import dataclass
from typing import Iterable, Optional

import pandas as pd

from src.core.partitions import (
    count_bounded,
    count_constrained,
    count_longer_than,
    partition_count,
)
from src.core.types import SpectrumName

log = logging.getLogger(__name__)


def rank_MTU(d: int, q: int) -> int:
    """
    Rank of H^{2q}(MTU(d)): monomials of degree 2q in c_1, ..., c_d times the Thom class.
    """
    if d < 0 or q < 0:
        raise ValueError(f"Need d >= 0 and q >= 0 but got d={d}, q={q}.")
    return count_bounded(q, d)


def rank_MTU_rel(d: int, r: int, q: int) -> int:
    """
    Rank of H^{2q}(MTU(d, r)): degree 2q monomials of Z[c_1, ..., c_d] in the ideal (c_{d-r+1}, ..., c_d).
    """
    if not 1 <= r <= d:
        raise ValueError(f"Need 1 <= r <= d but got d={d}, r={r}.")
    if q < 0:
        raise ValueError(f"Need q >= 0 but got: {q}")
    return count_constrained(q, max_part=d, min_max_part=d - r + 1)


def rank_MTUbar(d: int, q: int) -> int:
    """
    Rank of H^{2q}(MTUbar(d)), the colimit of MTU(d + 1, 1) -> MTU(d + 2, 2) -> ...: partitions of q with a
    part larger than d.
    """
    if d < 0 or q < 0:
        raise ValueError(f"Need d >= 0 and q >= 0 but got d={d}, q={q}.")
    return count_constrained(q, min_max_part=d + 1)


def rank_in_degree(
    spectrum: SpectrumName, d: int, degree: int, r: Optional[int] = None
) -> int:
    """
    Rank in the given cohomological degree. All three spectra have cohomology in even degrees only.
    """
    if degree % 2 == 1:
        return 0
    q = degree // 2
    match spectrum:
        case "MTU":
            return rank_MTU(d, q)
        case "MTU_rel":
            if r is None:
                raise ValueError("The relative spectrum MTU(d, r) needs r.")
            return rank_MTU_rel(d, r, q)
        case "MTUbar":
            return rank_MTUbar(d, q)
        case other:
            raise ValueError(f"Unknown spectrum {other}.")


@dataclass(frozen=True)
class RankTable:
    spectrum: SpectrumName
    d: int
    r: Optional[int]
    # (cohomological degree 2q, rank); odd degrees are absent because they have rank 0
    rows: tuple[tuple[int, int], ...]

    @property
    def label(self) -> str:
        match self.spectrum:
            case "MTU":
                return f"MTU({self.d})"
            case "MTU_rel":
                return f"MTU({self.d},{self.r})"
            case _:
                return f"MTUbar({self.d})"

    def ranks(self) -> list[int]:
        return [rank for _, rank in self.rows]

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame(self.rows, columns=["degree", "rank"]).set_index("degree")

    def to_json(self) -> dict:
        return {
            "spectrum": self.label,
            "rows": [{"degree": degree, "rank": rank} for degree, rank in self.rows],
        }


def rank_table(
    spectrum: SpectrumName, d: int, q_range: Iterable[int], r: Optional[int] = None
) -> RankTable:
    rows = tuple((2 * q, rank_in_degree(spectrum, d, 2 * q, r)) for q in q_range)
    return RankTable(spectrum, d, r, rows)


@dataclass(frozen=True)
class SplittingCheck:
    i: int
    j: int
    p: int
    consistent: bool

    def to_json(self) -> dict:
        return dict(i=self.i, j=self.j, p=self.p, consistent=self.consistent)


def splitting_check(d: int, r: int, kernel_dimension: Optional[int] = None) -> SplittingCheck:
    """
    i_{d,r} = rank of the torsion-free part of the group of 2d-manifolds with r complex sections,
    j_{d,r} = rank of the target of the obstruction, and i + j = p(d).

    ``kernel_dimension`` is the dimension of the rational kernel of the obstruction; when given, it has to
    agree with i as well.
    """
    if not 0 <= r <= d:
        raise ValueError(f"Need 0 <= r <= d but got d={d}, r={r}.")
    i = rank_MTU(d - r, d)
    j = rank_MTUbar(d - r, d)
    p = partition_count(d)
    consistent = i + j == p and j == count_longer_than(d, d - r)
    if kernel_dimension is not None:
        consistent = consistent and kernel_dimension == i
    if not consistent:
        log.error(f"Rank splitting failed for d={d}, r={r}: {i=}, {j=}, {p=}, {kernel_dimension=}")
    return SplittingCheck(i, j, p, consistent)


def stabilization_check(d: int, r: int, k: int, q_max: int) -> bool:
    """
    Rank shadow of the stabilisation isomorphism pi_q(MTU(d, r)) = pi_q(MTU(d + k, r + k)) for q <= 2d.
    """
    if q_max > d:
        raise ValueError(f"Stabilisation only holds up to q = d but got q_max={q_max} > d={d}.")
    return all(
        rank_MTU_rel(d, r, q) == rank_MTU_rel(d + k, r + k, q) for q in range(q_max + 1)
    )


def connectivity(d: int, r: int) -> int:
    """
    The connectivity of MTU(d, r) read off its rank table: one less than the first degree with
    nonzero rational cohomology. Equals 2(d - r) + 1.
    """
    for q in range(d + 1):
        if rank_MTU_rel(d, r, q) != 0:
            return 2 * q - 1
    raise RuntimeError(f"MTU({d},{r}) has no cohomology up to degree {2 * d}.")


def mu_comparison_check(d: int) -> bool:
    """
    The map MTU(d) -> MU induces the quotient Z[c_1, c_2, ...] -> Z[c_1, ..., c_d] on cohomology, so ranks
    agree up to degree 2d and the first difference, c_{d+1}, shows up in degree 2d + 2.
    """
    below = all(rank_MTU(d, q) == partition_count(q) for q in range(d + 1))
    return below and rank_MTU(d, d + 1) == partition_count(d + 1) - 1


def odd_finiteness_check(d: int, r: int) -> bool:
    """
    H^{2d+2r-1}(MTU(d); Q) = 0, which makes the odd complex section cobordism group finite.
    """
    return rank_in_degree("MTU", d, 2 * d + 2 * r - 1) == 0
