import logging
from dataclasses import dataclass, field

from tqdm import tqdm

from src.core.cobordism import DEFAULT_MAX_DEGREE, verify_stong
from src.core.obstruction import kernel_basis
from src.core.ranks import (
    SplittingCheck,
    connectivity,
    mu_comparison_check,
    odd_finiteness_check,
    splitting_check,
    stabilization_check,
)

log = logging.getLogger(__name__)


@dataclass
class VerificationSummary:
    degree: int
    stong_ok: bool
    determinant: int
    splittings: dict[int, SplittingCheck] = field(default_factory=dict)
    stabilization_ok: bool = True
    connectivity_ok: bool = True
    mu_comparison_ok: bool = True
    odd_finiteness_ok: bool = True

    @property
    def ok(self) -> bool:
        return (
            self.stong_ok
            and all(check.consistent for check in self.splittings.values())
            and self.stabilization_ok
            and self.connectivity_ok
            and self.mu_comparison_ok
            and self.odd_finiteness_ok
        )

    def lines(self) -> list[str]:
        def verdict(flag: bool) -> str:
            return "OK" if flag else "FAILED"

        result = [f"Stong det={self.determinant} {verdict(self.stong_ok)}"]
        for r, check in self.splittings.items():
            result.append(
                f"splitting r={r}: i={check.i} j={check.j} p={check.p} {verdict(check.consistent)}"
            )
        result.append(f"stabilization {verdict(self.stabilization_ok)}")
        result.append(f"connectivity {verdict(self.connectivity_ok)}")
        result.append(f"MU comparison {verdict(self.mu_comparison_ok)}")
        result.append(f"odd finiteness {verdict(self.odd_finiteness_ok)}")
        return result

    def to_json(self) -> dict:
        return dict(
            d=self.degree,
            stong=dict(ok=self.stong_ok, determinant=self.determinant),
            splitting={str(r): check.to_json() for r, check in self.splittings.items()},
            stabilization=self.stabilization_ok,
            connectivity=self.connectivity_ok,
            mu_comparison=self.mu_comparison_ok,
            odd_finiteness=self.odd_finiteness_ok,
            ok=self.ok,
        )


def verify_degree(
    d: int,
    max_degree: int = DEFAULT_MAX_DEGREE,
    stabilization_k: int = 4,
    progress: bool = False,
) -> VerificationSummary:
    """
    Runs every structural check available in degree d: the basis property of the s-numbers, the rank
    splitting (against the dimension of the actual kernel) for every r, stabilisation, connectivity, the
    comparison with MU and the vanishing of odd ranks.
    """
    stong_ok, determinant = verify_stong(d, max_degree)
    summary = VerificationSummary(d, stong_ok, determinant)

    for r in tqdm(range(d + 1), desc=f"Splitting d={d}", ncols=0, disable=not progress):
        dimension = len(kernel_basis(d, r, max_degree))
        summary.splittings[r] = splitting_check(d, r, kernel_dimension=dimension)

    relative = [(r, k) for r in range(1, d + 1) for k in range(stabilization_k + 1)]
    summary.stabilization_ok = all(
        stabilization_check(d, r, k, q_max=d)
        for r, k in tqdm(relative, desc="Stabilization", ncols=0, disable=not progress)
    )
    summary.connectivity_ok = all(
        connectivity(d, r) == 2 * (d - r) + 1 for r in range(1, d + 1)
    )
    summary.mu_comparison_ok = mu_comparison_check(d)
    summary.odd_finiteness_ok = all(
        odd_finiteness_check(d, r) for r in range(d + 1)
    )

    if summary.ok:
        log.info(f"All checks passed in degree {d}.")
    else:
        log.error(f"Verification failed in degree {d}: {summary.to_json()}")
    return summary
