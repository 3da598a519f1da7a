"""YAML defaults and the option groups shared by every report command.

A config file mirrors the command line::

    sampling:
        seed: 0
        samples: 64
    show: [json]
    export: [json, text]
    export_dir: reports
    timing: false
"""

import logging
from collections.abc import Callable
from pathlib import Path
from typing import Any

import rich_click as click
import yaml

logger = logging.getLogger(__name__)

SECTION = "sampling"
"""Nested section whose keys become ``sampling_<key>`` parameters."""

SAMPLING_KEYS = ("seed", "samples")
"""Top-level aliases of the section keys; the section wins on conflict."""

MULTIPLE_KEYS = ("show", "export")

FORMATS = ("json", "text")


def read_config(path: str | Path) -> dict[str, Any] | None:
    """Mapping stored in ``path``, or ``None`` when the file does not exist.

    Raises:
        click.BadParameter: On invalid YAML or a document that is not a mapping.
    """
    try:
        text = Path(path).read_text(encoding="utf-8")
    except FileNotFoundError:
        return None
    try:
        data = yaml.safe_load(text) or {}
    except yaml.YAMLError as e:
        raise click.BadParameter(f"Invalid YAML in config file: {e}") from e
    if not isinstance(data, dict):
        raise click.BadParameter("Config file must contain a mapping")
    return data


def to_default_map(data: dict[str, Any]) -> dict[str, Any]:
    """Translate config keys into Click parameter names."""
    defaults: dict[str, Any] = {}
    section = data.get(SECTION)
    for key, value in data.items():
        if key == SECTION and isinstance(section, dict):
            continue
        if key in SAMPLING_KEYS:
            defaults[f"{SECTION}_{key}"] = value
        elif key in MULTIPLE_KEYS and isinstance(value, str):
            defaults[key] = (value,)
        else:
            defaults[key.replace("-", "_")] = (
                tuple(value) if isinstance(value, list) else value
            )
    if isinstance(section, dict):
        defaults.update({f"{SECTION}_{key}": value for key, value in section.items()})
    return defaults


def configure_from_yaml(ctx: click.Context, param, filename: str | None) -> None:
    """Eager ``--config`` callback filling ``ctx.default_map``."""
    if filename is None:
        return
    data = read_config(filename)
    if data is None:
        logger.debug("No config file at %s", filename)
        return
    ctx.default_map = to_default_map(data)
    logger.debug("Default map set from YAML: %s", ctx.default_map)


def config_option(default: str = "rinehart.yaml"):
    """Add ``--config``; a missing ``default`` file is silently ignored."""
    return click.option(
        "--config",
        type=click.Path(dir_okay=False),
        default=default,
        callback=configure_from_yaml,
        is_eager=True,
        expose_value=False,
        show_default=True,
        help="Read option defaults from a YAML file",
    )


def stack_options(*options: Callable) -> Callable:
    """Combine option decorators into one, keeping their order in ``--help``."""

    def decorator(f):
        for option in reversed(options):
            f = option(f)
        return f

    return decorator


sampling_options = stack_options(
    click.option(
        "--seed",
        "sampling_seed",
        type=int,
        default=0,
        show_default=True,
        help="Seed of every sampled identity check",
    ),
    click.option(
        "--samples",
        "sampling_samples",
        type=click.IntRange(min=1),
        default=64,
        show_default=True,
        help="Random triples per sampled check",
    ),
    click.option(
        "--timing",
        is_flag=True,
        default=False,
        help="Record wall-clock time in the report",
    ),
)

show_options = stack_options(
    click.option(
        "-s",
        "--show",
        multiple=True,
        type=click.Choice(FORMATS),
        help="Print the report in this format (repeatable)",
    ),
    click.option("--json", "show_json", is_flag=True, help="Shortcut for `--show json`"),
    click.option("--text", "show_text", is_flag=True, help="Shortcut for `--show text`"),
)

export_options = stack_options(
    click.option(
        "-ed",
        "--export-dir",
        default=".",
        type=click.Path(file_okay=False, dir_okay=True),
        show_default=True,
        help="Directory of the `<command>_report.<fmt>` files",
    ),
    click.option(
        "-e",
        "--export",
        multiple=True,
        type=click.Choice(FORMATS),
        help="Write the report in this format (repeatable)",
    ),
)
