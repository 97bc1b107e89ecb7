import argparse
from typing import Optional, Sequence


def _add_common(parser: argparse.ArgumentParser):
    parser.add_argument(
        "--config_file",
        type=str,
        help="Specify a configuration file",
    )
    parser.add_argument(
        "--format",
        choices=["text", "json"],
        help="Output format",
    )
    parser.add_argument(
        "--max-degree",
        dest="max_degree",
        type=int,
        help="Override the degree guard (default 10).",
    )
    parser.add_argument(
        "--progress",
        action="store_true",
        default=None,
        help="Show progress bars for long sweeps.",
    )


def get_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        "cobordism",
        description="Rational obstructions to complex sections and cobordism bookkeeping.",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)

    s_poly = subparsers.add_parser("s-poly", help="Print the polynomial s_omega in the Chern classes.")
    s_poly.add_argument(
        "omega", type=str, help='Partition with weakly decreasing parts, e.g. "[2,1]"'
    )

    obstruct = subparsers.add_parser(
        "obstruct", help="Evaluate the rational obstruction to r complex sections."
    )
    obstruct.add_argument("expr", type=str, nargs="?", help='Class, e.g. "4*CP2 - 3*CP1^2"')
    obstruct.add_argument("--r", type=int, help="Number of sections; omit for the profile.")
    obstruct.add_argument(
        "--chern",
        type=str,
        help='Raw Chern numbers as JSON instead of a class, e.g. \'{"[2]": 3, "[1,1]": 9}\'',
    )

    generator = subparsers.add_parser(
        "generator", help="Construct a rational generator admitting r complex sections."
    )
    generator.add_argument("--d", type=int, help="Complex dimension")
    generator.add_argument("--r", type=int, help="Number of sections")

    ranks = subparsers.add_parser("ranks", help="Rank table of MTU(d), MTU(d,r) or MTUbar(d).")
    ranks.add_argument("--spectrum", choices=["MTU", "MTU_rel", "MTUbar"])
    ranks.add_argument("--d", type=int)
    ranks.add_argument("--r", type=int)
    ranks.add_argument("--q", type=str, help='Range of q (degree 2q), e.g. "0..4"')

    chern = subparsers.add_parser("chern", help="s-numbers, Chern numbers and Euler characteristic of a class.")
    chern.add_argument("expr", type=str)

    verify = subparsers.add_parser("verify", help="Run all structural checks in degree d.")
    verify.add_argument("--d", type=int)

    kernel = subparsers.add_parser(
        "kernel", help="Basis of the classes with vanishing rational obstruction."
    )
    kernel.add_argument("--d", type=int)
    kernel.add_argument("--r", type=int)

    smatrix = subparsers.add_parser("smatrix", help="The s-matrix on the CP-product basis.")
    smatrix.add_argument("--d", type=int)

    dual = subparsers.add_parser("dual", help="The rational class dual to s_omega.")
    dual.add_argument("--omega", type=str, required=True)

    for sub in subparsers.choices.values():
        _add_common(sub)
    return parser


def get_args(argv: Optional[Sequence[str]] = None) -> argparse.Namespace:
    return get_parser().parse_args(argv)
