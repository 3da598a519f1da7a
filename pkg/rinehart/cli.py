import logging
from pathlib import Path
from textwrap import dedent

import rich_click as click

# Ensure export/show registration for all scenarios
import rinehart.scenarios.export  # noqa: F401
import rinehart.scenarios.show  # noqa: F401
from rinehart import __version__
from rinehart.config import (
    config_option,
    export_options,
    sampling_options,
    show_options,
    stack_options,
)
from rinehart.dsl import parse
from rinehart.errors import DslError, RinehartError
from rinehart.model.report import RunFlags
from rinehart.runner import DEMOS, build_scenario
from rinehart.scenario import Scenario
from rinehart.scenarios import HilbertFactorization, HilbertImage, MomentumMap
from rinehart.utils import (
    Example,
    ExampleChoice,
    VerboseGroup,
    config_logger,
)

config_logger()

click.rich_click.SHOW_ARGUMENTS = True
click.rich_click.TEXT_MARKUP = "markdown"
click.rich_click.USE_MARKDOWN = True
click.rich_click.SHOW_METAVARS_COLUMN = True

logger = logging.getLogger(__name__)

EXIT_ERROR = 2


report_options = stack_options(
    config_option(), sampling_options, show_options, export_options
)
"""Config, sampling, show and export options shared by every command."""


def target_option(name: str = "--target", help_text: str = "Declaration to run on"):
    return click.option(name, "target", default=None, help=help_text)


def _flags(kwargs: dict, target: str | None = None, args=()) -> RunFlags:
    return RunFlags(
        seed=kwargs.pop("sampling_seed"),
        samples=kwargs.pop("sampling_samples"),
        timing=kwargs.pop("timing"),
        target=target,
        args=tuple(args),
    )


def _formats(show: tuple[str, ...], show_json: bool, show_text: bool) -> list[str]:
    formats = list(show)
    if show_json:
        formats.append("json")
    if show_text:
        formats.append("text")
    return list(dict.fromkeys(formats)) or ["json"]


def finish(
    scenario: Scenario,
    show: tuple[str, ...] = (),
    show_json: bool = False,
    show_text: bool = False,
    export: tuple[str, ...] = (),
    export_dir: str | None = ".",
) -> None:
    """Execute, show and export ``scenario``, then exit with its verdict."""
    scenario.execute_and_analyze()
    scenario.show(_formats(show, show_json, show_text))
    if export:
        scenario.export(export, output_dir=export_dir)
    report = scenario.report
    glyph = "✔" if report.ok else "✖"
    passed = sum(check.passed for check in report.checks)
    logger.info(f"{glyph} {passed}/{len(report.checks)} checks passed")
    click.get_current_context().exit(report.exit_code)


def fail(ex: Exception, source: str | None = None) -> None:
    prefix = f"{source}:" if source and isinstance(ex, DslError) else ""
    logger.error(f"✖ {prefix}{ex}")
    click.get_current_context().exit(EXIT_ERROR)


def run_file(path: str, command: str, flags: RunFlags, **kwargs) -> None:
    """Parse ``path`` and run ``command`` on it."""
    try:
        doc = parse(Path(path).read_text(encoding="utf-8"))
    except RinehartError as ex:
        fail(ex, path)
        return
    try:
        scenario = build_scenario(doc, command, flags)
    except (RinehartError, ValueError) as ex:
        fail(ex)
        return
    run_guarded(scenario, **kwargs)


def run_guarded(scenario: Scenario, **kwargs) -> None:
    try:
        finish(scenario, **kwargs)
    except (RinehartError, ValueError) as ex:
        fail(ex)


@click.group(no_args_is_help=True, add_help_option=True, cls=VerboseGroup)
@click.version_option(__version__, prog_name="rinehart")
def main():
    """*rinehart*
    exact Lie-Rinehart and Poisson algebra toolkit
    """


@main.command("list")
def main_list() -> None:
    """List available Scenarios and demos."""
    logger.info("")
    logger.info("-----------------------")
    logger.info("")
    for scenario in Scenario.get_available().values():
        logger.info(f"→ '{scenario.name}'")
        scenario_doc = scenario.__doc__
        if scenario_doc:
            doc = dedent(scenario_doc).strip()
            logger.info(f"{doc}")
        logger.info("")
    logger.info("-----------------------")
    logger.info("")
    for example in DEMOS:
        logger.info(f"▶ demo '{example.name}': {example.description}")


file_argument = click.argument(
    "file", type=click.Path(exists=True, dir_okay=False, readable=True)
)


@main.command("check", no_args_is_help=True)
@file_argument
@target_option()
@report_options
def main_check(file: str, target: str | None, **kwargs) -> None:
    """Verify every algebra, extension and scene declared in FILE."""
    run_file(file, "check", _flags(kwargs, target), **kwargs)


@main.command("bracket", no_args_is_help=True)
@file_argument
@click.argument("left")
@click.argument("right")
@target_option("--algebra", "Algebra the expressions live in")
@report_options
def main_bracket(file: str, left: str, right: str, target: str | None, **kwargs) -> None:
    """Tautological bracket of the expressions LEFT and RIGHT, e.g. `e^2 x^2`."""
    run_file(file, "bracket", _flags(kwargs, target, (left, right)), **kwargs)


@main.command("reconstruct", no_args_is_help=True)
@file_argument
@target_option()
@report_options
def main_reconstruct(file: str, target: str | None, **kwargs) -> None:
    """Recover anchor and brackets of the algebras in FILE."""
    run_file(file, "reconstruct", _flags(kwargs, target), **kwargs)


@main.command("build-extension", no_args_is_help=True)
@file_argument
@target_option()
@report_options
def main_build_extension(file: str, target: str | None, **kwargs) -> None:
    """Assemble the total algebra of the extensions in FILE."""
    run_file(file, "build-extension", _flags(kwargs, target), **kwargs)


@main.command("curvature", no_args_is_help=True)
@file_argument
@target_option()
@report_options
def main_curvature(file: str, target: str | None, **kwargs) -> None:
    """Curvature of the canonical connection of the extensions in FILE."""
    run_file(file, "curvature", _flags(kwargs, target), **kwargs)


@main.command("reconstruct-extension", no_args_is_help=True)
@file_argument
@target_option()
@report_options
def main_reconstruct_extension(file: str, target: str | None, **kwargs) -> None:
    """Recover the extension data of the extensions in FILE."""
    run_file(file, "reconstruct-extension", _flags(kwargs, target), **kwargs)


@main.command("closure", no_args_is_help=True)
@file_argument
@target_option()
@report_options
def main_closure(file: str, target: str | None, **kwargs) -> None:
    """Closure table of the quadratic invariants of the scenes in FILE."""
    run_file(file, "closure", _flags(kwargs, target), **kwargs)


@main.command("run", no_args_is_help=True)
@file_argument
@report_options
def main_run(file: str, **kwargs) -> None:
    """Run the `command` declarations embedded in FILE."""
    run_file(file, "run", _flags(kwargs), **kwargs)


def parse_values(text: str | None) -> list[str] | None:
    """``"1,0,3/2"`` to ``["1", "0", "3/2"]``."""
    if text is None:
        return None
    return [value.strip() for value in text.split(",") if value.strip()]


scene_options = stack_options(
    click.option(
        "--s", "s", type=click.IntRange(min=1), default=1, show_default=True,
        help="Dimension of R^s",
    ),
    click.option(
        "--l", "ell", type=click.IntRange(min=1), default=1, show_default=True,
        help="Number of copies of R^s",
    ),
    click.option(
        "--point",
        default=None,
        help="Comma separated coordinates: all q's, then all p's for `momentum`",
    ),
)


@main.command("hilbert")
@scene_options
@click.option("--matrix", default=None, help="Rows separated by `;`, entries by `,`")
@report_options
def main_hilbert(s: int, ell: int, point: str | None, matrix: str | None, **kwargs) -> None:
    """Hilbert map at a point, or a Gram factorization of `--matrix`.

    Without `--point` the map is checked on `--samples` seeded points.
    """
    flags = _flags(kwargs)
    command = f"hilbert --s {s} --l {ell}"
    try:
        if matrix is not None:
            rows = [parse_values(row) for row in matrix.split(";")]
            scenario = HilbertFactorization(
                s=s, matrix=rows, flags=flags, command=f"{command} --matrix {matrix}"
            )
        else:
            if point is not None:
                command += f" --point {point}"
            scenario = HilbertImage(
                s=s, ell=ell, point=parse_values(point), flags=flags, command=command
            )
    except (RinehartError, ValueError) as ex:
        fail(ex)
        return
    run_guarded(scenario, **kwargs)


@main.command("momentum")
@scene_options
@report_options
def main_momentum(s: int, ell: int, point: str | None, **kwargs) -> None:
    """Momentum matrix of `Sp(l)` at a point of `T*(R^s)^l`."""
    flags = _flags(kwargs)
    command = f"momentum --s {s} --l {ell}"
    if point is not None:
        command += f" --point {point}"
    try:
        scenario = MomentumMap(
            s=s, ell=ell, point=parse_values(point), flags=flags, command=command
        )
    except (RinehartError, ValueError) as ex:
        fail(ex)
        return
    run_guarded(scenario, **kwargs)


@main.command("demo", no_args_is_help=True)
@click.argument("example", type=ExampleChoice(DEMOS))
@click.option(
    "--s", "s", type=click.IntRange(min=1), default=None, help="Dimension of R^s (dual-pair)"
)
@click.option(
    "--l", "ell", type=click.IntRange(min=1), default=None, help="Number of copies (dual-pair)"
)
@click.option("--preset", default=None, help="Reductive pair preset (homogeneous)")
@report_options
def main_demo(
    example: Example, s: int | None, ell: int | None, preset: str | None, **kwargs
) -> None:
    """Run one of the shipped demos.


    ```
    rinehart demo dual-pair --s 1 --l 1

    ```

    """
    logger.info(f"▶ Selected demo: '{example.name}'")
    flags = _flags(kwargs, example.name)
    options = (("s", s), ("l", ell), ("preset", preset))
    command = " ".join(
        ["demo", example.name, *(f"--{k} {v}" for k, v in options if v is not None)]
    )
    try:
        scenario = build_scenario(
            None, "demo", flags, command_line=command, s=s, ell=ell, preset=preset
        )
    except (RinehartError, ValueError) as ex:
        fail(ex)
        return
    run_guarded(scenario, **kwargs)


if __name__ == "__main__":
    main()
