import json
import logging
import sys
from pathlib import Path
from typing import Optional, Sequence

from src.config import JobConfig, get_job_config
from src.core.class_expr import parse_class
from src.core.cobordism import (
    CobordismClass,
    check_degree,
    chern_numbers,
    construct_section_generator,
    dual_class,
    integral_generator_check,
    is_rational_generator,
    s_coordinates,
    s_matrix,
)
from src.core.eval import verify_degree
from src.core.obstruction import (
    ChernNumbers,
    ClassInput,
    gamma_rational,
    kernel_basis,
    obstruction_profile,
)
from src.core.partitions import Partition
from src.core.ranks import rank_table
from src.core.symmetric import s_polynomial
from src.util.args import get_args
from src.util.output import (
    CommandResult,
    emit,
    partition_values_frame,
    partition_values_json,
)

log = logging.getLogger("run_cobordism")

EXIT_OK, EXIT_NEGATIVE, EXIT_USAGE = 0, 1, 2


def _require(value, flag: str, command: str):
    if value is None:
        raise ValueError(f"Command {command} needs {flag}.")
    return value


def cmd_s_poly(config: JobConfig) -> CommandResult:
    omega = Partition.parse(_require(config.omega, "an omega argument", "s-poly"))
    if omega.weight < 1:
        raise ValueError("The empty partition has no s-polynomial.")
    check_degree(omega.weight, config.max_degree)
    poly = s_polynomial(omega)
    return CommandResult(
        text=[str(poly)],
        payload={"omega": str(omega), "polynomial": poly.to_json(), "text": str(poly)},
    )


def _class_input(config: JobConfig) -> ClassInput:
    if config.chern is not None:
        return ChernNumbers.from_json(json.loads(config.chern), config.max_degree)
    return parse_class(
        _require(config.expr, "a class expression", config.command), config.max_degree
    )


def cmd_obstruct(config: JobConfig) -> CommandResult:
    x = _class_input(config)
    if config.r is None:
        profile = obstruction_profile(x, config.max_degree)
        return CommandResult(
            text=[f"d={x.degree}: a multiple of the class admits up to r={profile} complex sections"],
            payload={"d": x.degree, "max_sections": profile},
        )
    report = gamma_rational(x, config.r, config.max_degree)
    text = [f"d={report.degree} r={report.sections}"]
    text += [f"s{omega} = {value}" for omega, value in report.entries]
    text.append(f"vanishes={str(report.vanishes).lower()}")
    if report.witness is not None:
        omega, value = report.witness
        text.append(f"witness {omega}={value}")
    return CommandResult(
        text=text,
        payload=report.to_json(),
        exit_code=EXIT_OK if report.vanishes else EXIT_NEGATIVE,
    )


def cmd_generator(config: JobConfig) -> CommandResult:
    d = _require(config.d, "--d", "generator")
    r = _require(config.r, "--r", "generator")
    x, c = construct_section_generator(d, r, config.max_degree)
    rational = is_rational_generator(x)
    check = integral_generator_check(x)
    report = gamma_rational(x, r, config.max_degree)
    text = [
        f"{x} (c={c})",
        f"rational generator: {'yes' if rational else 'no'}",
        f"admits {r} sections rationally: {'yes' if report.vanishes else 'no'}",
        f"integral criterion: {check.verdict} (s_{d}={check.s_top}"
        + (f", p={check.prime}, q={check.exponent})" if check.prime else ")"),
        f"note: {check.caveat}",
    ]
    return CommandResult(
        text=text,
        payload={
            "class": str(x),
            "c": c,
            "rational_generator": rational,
            "obstruction": report.to_json(),
            "integral_check": check.to_json(),
        },
    )


def cmd_ranks(config: JobConfig) -> CommandResult:
    d = _require(config.d, "--d", "ranks")
    table = rank_table(config.spectrum, d, config.q_range, config.r)
    return CommandResult(
        text=[f"{table.label}: " + ",".join(str(rank) for rank in table.ranks())],
        payload=table.to_json(),
        tables=[table.to_frame()],
    )


def cmd_chern(config: JobConfig) -> CommandResult:
    x = parse_class(_require(config.expr, "a class expression", "chern"), config.max_degree)
    s_values = s_coordinates(x, config.max_degree)
    numbers = chern_numbers(x)
    chi = s_values[Partition((1,) * x.degree)]
    frame = partition_values_frame(s_values, "s-number").join(
        partition_values_frame(numbers, "Chern number")
    )
    return CommandResult(
        text=[f"{x}: d={x.degree}, chi={chi}"],
        payload={
            "class": str(x),
            "d": x.degree,
            "s_numbers": partition_values_json(s_values),
            "chern_numbers": partition_values_json(numbers),
            "euler_characteristic": str(chi),
        },
        tables=[frame],
    )


def cmd_verify(config: JobConfig) -> CommandResult:
    summary = verify_degree(
        _require(config.d, "--d", "verify"),
        max_degree=config.max_degree,
        stabilization_k=config.stabilization_k,
        progress=config.progress,
    )
    return CommandResult(
        text=["; ".join(summary.lines())],
        payload=summary.to_json(),
        exit_code=EXIT_OK if summary.ok else EXIT_NEGATIVE,
    )


def cmd_kernel(config: JobConfig) -> CommandResult:
    d = _require(config.d, "--d", "kernel")
    r = _require(config.r, "--r", "kernel")
    basis = kernel_basis(d, r, config.max_degree)
    return CommandResult(
        text=[f"kernel of the obstruction to {r} sections in degree {d}: dimension {len(basis)}"]
        + [str(x) for x in basis],
        payload={"d": d, "r": r, "basis": [str(x) for x in basis]},
    )


def cmd_smatrix(config: JobConfig) -> CommandResult:
    matrix = s_matrix(_require(config.d, "--d", "smatrix"), config.max_degree)
    return CommandResult(
        text=[f"det={matrix.determinant}"],
        payload={
            "d": matrix.degree,
            "rows": [str(omega) for omega in matrix.partitions],
            "columns": [str(CobordismClass.basis(lam)) for lam in matrix.partitions],
            "entries": [list(row) for row in matrix.entries],
            "determinant": matrix.determinant,
        },
        tables=[matrix.to_frame()],
    )


def cmd_dual(config: JobConfig) -> CommandResult:
    omega = Partition.parse(_require(config.omega, "--omega", "dual"))
    check_degree(omega.weight, config.max_degree)
    x = dual_class(omega, config.max_degree)
    return CommandResult(text=[str(x)], payload={"omega": str(omega), "class": str(x)})


COMMANDS = {
    "s-poly": cmd_s_poly,
    "obstruct": cmd_obstruct,
    "generator": cmd_generator,
    "ranks": cmd_ranks,
    "chern": cmd_chern,
    "verify": cmd_verify,
    "kernel": cmd_kernel,
    "smatrix": cmd_smatrix,
    "dual": cmd_dual,
}


def run(argv: Optional[Sequence[str]] = None) -> int:
    parsed_args = vars(get_args(argv))
    config_path = parsed_args.get("config_file")
    try:
        config = get_job_config(parsed_args, Path(config_path) if config_path else None)
        result = COMMANDS[config.command](config)
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    emit(result, config.format)
    return result.exit_code


def main():
    logging.basicConfig(level=logging.INFO)
    sys.exit(run())


if __name__ == "__main__":
    main()
