import logging
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Optional

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class Partition:
    """
    A weakly decreasing sequence of positive integers. Used as the index of characteristic
    numbers, Chern monomials and CP-product basis elements alike, so it has to be hashable.
    """

    parts: tuple[int, ...] = ()
    weight: int = field(init=False, compare=False, repr=False)
    length: int = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        parts = tuple(self.parts)
        if any(part < 1 for part in parts):
            raise ValueError(f"Parts of a partition must be positive but got: {parts}")
        if any(a < b for a, b in zip(parts, parts[1:])):
            raise ValueError(f"Parts of a partition must be weakly decreasing: {parts}")
        object.__setattr__(self, "parts", parts)
        object.__setattr__(self, "weight", sum(parts))
        object.__setattr__(self, "length", len(parts))

    @classmethod
    def from_parts(cls, parts: Iterable[int]) -> "Partition":
        """
        Sorts the given parts and drops zeros, so any exponent vector can be turned into its partition.
        """
        return cls(tuple(sorted((p for p in parts if p != 0), reverse=True)))

    @classmethod
    def parse(cls, text: str) -> "Partition":
        """
        Inverse of ``str``: accepts ``"[2,1]"``, ``"2,1"`` and ``"[]"``. Parts must already be weakly
        decreasing, ``"[1,2]"`` is rejected.
        """
        body = text.strip()
        if body.startswith("[") and body.endswith("]"):
            body = body[1:-1]
        body = body.strip()
        if not body:
            return cls()
        try:
            parts = [int(item) for item in body.split(",")]
        except ValueError:
            raise ValueError(f"Cannot read a partition from {text!r}.") from None
        return cls(tuple(parts))

    @property
    def largest_part(self) -> int:
        return self.parts[0] if self.parts else 0

    @property
    def multiplicities(self) -> dict[int, int]:
        result: dict[int, int] = {}
        for part in self.parts:
            result[part] = result.get(part, 0) + 1
        return result

    def conjugate(self) -> "Partition":
        return conjugate(self)

    def __iter__(self):
        return iter(self.parts)

    def __len__(self):
        return self.length

    def __str__(self):
        return "[" + ",".join(str(p) for p in self.parts) + "]"


def enumerate_partitions(d: int) -> list[Partition]:
    """
    All partitions of d in reverse-lexicographic order, i.e. ``(d)`` first and ``(1, ..., 1)`` last.
    This is the canonical index order of every matrix and vector in the package.
    """
    if d < 0:
        raise ValueError(f"Cannot enumerate partitions of a negative integer: {d}")
    return list(_enumerate_partitions(d))


@lru_cache(maxsize=None)
def _enumerate_partitions(d: int) -> tuple[Partition, ...]:
    return tuple(Partition(parts) for parts in _descending_parts(d, d))


def _descending_parts(d: int, max_part: int) -> Iterable[tuple[int, ...]]:
    if d == 0:
        yield ()
        return
    for first in range(min(d, max_part), 0, -1):
        for rest in _descending_parts(d - first, first):
            yield (first,) + rest


def conjugate(omega: Partition) -> Partition:
    """
    Transpose of the Young diagram.
    """
    return Partition(
        tuple(
            sum(1 for part in omega.parts if part > i)
            for i in range(omega.largest_part)
        )
    )


@lru_cache(maxsize=None)
def count_bounded(d: int, max_part: int) -> int:
    """
    Number of partitions of d with all parts at most max_part, filled bottom-up one part size at a time.
    """
    if d < 0:
        return 0
    table = [1] + [0] * d
    for part in range(1, min(max_part, d) + 1):
        for n in range(part, d + 1):
            table[n] += table[n - part]
    return table[d]


def partition_count(d: int) -> int:
    """
    p(d).
    """
    return count_bounded(d, d)


def count_constrained(
    d: int, max_part: Optional[int] = None, min_max_part: Optional[int] = None
) -> int:
    """
    Number of partitions of d whose largest part lies in ``[min_max_part, max_part]``.
    The empty partition has largest part 0. Contradictory constraints simply give 0.
    """
    if d < 0:
        raise ValueError(f"Degree must be non-negative but got: {d}")
    if (max_part is not None and max_part < 0) or (
        min_max_part is not None and min_max_part < 0
    ):
        raise ValueError(
            f"Constraints must be non-negative but got: {max_part=}, {min_max_part=}"
        )
    upper = d if max_part is None else min(max_part, d)
    lower = 0 if min_max_part is None else min_max_part
    if lower > upper:
        return 0
    below_lower = count_bounded(d, lower - 1) if lower >= 1 else 0
    return count_bounded(d, upper) - below_lower


def count_longer_than(d: int, k: int) -> int:
    """
    Number of partitions of d with more than k parts, counted directly from the enumeration.
    """
    return sum(1 for omega in enumerate_partitions(d) if omega.length > k)
