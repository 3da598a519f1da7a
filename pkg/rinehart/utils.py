import logging
from collections.abc import Callable
from functools import partial
from pathlib import Path
from typing import Any, Literal

import rich_click as click
from click.types import Choice as clickChoice
from jinja2 import Environment, FileSystemLoader, StrictUndefined
from pydantic import BaseModel, ConfigDict
from rich.console import Console
from rich.logging import RichHandler

EXAMPLE_DIR = Path(__file__).parent / "example"
OutputKind = Literal["show", "export"]

_OUTPUTS: dict[tuple[OutputKind, type, str], Callable] = {}


def register_output(kind: OutputKind, scenario_cls: type, fmt: str):
    """Register ``func`` as the ``kind`` output of ``scenario_cls`` in ``fmt``.

    Subclasses inherit the registration unless they register their own.
    """

    def decorator(func: Callable) -> Callable:
        _OUTPUTS[kind, scenario_cls, fmt] = func
        return func

    return decorator


def get_output_func(kind: OutputKind, scenario, fmt: str) -> Callable | None:
    for cls in type(scenario).__mro__:
        func = _OUTPUTS.get((kind, cls, fmt))
        if func is not None:
            return func
    return None


register_show = partial(register_output, "show")
register_export = partial(register_output, "export")
get_show_func = partial(get_output_func, "show")
get_export_func = partial(get_output_func, "export")


def load_jinja_template(template_dir: Path, template_name: str):
    """Plain-text template; a missing variable is an error, not a blank."""
    env = Environment(
        loader=FileSystemLoader(str(template_dir)),
        undefined=StrictUndefined,
        trim_blocks=True,
        lstrip_blocks=True,
        keep_trailing_newline=True,
        autoescape=False,  # noqa: S701
    )
    return env.get_template(template_name)


# Handler columns switched on at each extra ``-v``.
_VERBOSE_COLUMNS = {2: ("show_level",), 3: ("show_path", "show_time")}


def _verbose_callback(ctx: click.Context, param, value) -> None:
    count = len(value or ())
    if not count:
        return
    package_logger = logging.getLogger("rinehart")
    package_logger.setLevel(logging.DEBUG)
    render = package_logger.handlers[0]._log_render
    for level, columns in _VERBOSE_COLUMNS.items():
        if count >= level:
            for column in columns:
                setattr(render, column, True)


class VerboseGroup(click.RichGroup):
    """Group whose commands all accept a repeatable ``-v``."""

    def __init__(self, name=None, commands=None, **attrs):
        super().__init__(name, commands, **attrs)
        self.params.append(self._verbose_option())

    def add_command(self, cmd, name=None):
        cmd.params.append(self._verbose_option())
        super().add_command(cmd, name)

    @staticmethod
    def _verbose_option() -> click.Option:
        return click.Option(
            ["-v", "--verbose"],
            is_flag=True,
            multiple=True,
            callback=_verbose_callback,
            expose_value=False,
            is_eager=True,
            help="Debug logging; `-vv` adds levels, `-vvv` paths and times",
        )


def config_logger(level: str = "INFO") -> None:
    """Send the ``rinehart`` logs to stderr through a single ``RichHandler``.

    Reports go to stdout, so logs never interleave with JSON output.
    """
    handler = RichHandler(
        console=Console(stderr=True),
        rich_tracebacks=True,
        show_path=False,
        show_time=False,
        show_level=False,
    )
    handler.setFormatter(logging.Formatter("%(message)s"))

    package_logger = logging.getLogger("rinehart")
    package_logger.handlers = [handler]
    package_logger.setLevel(level)


class Example(BaseModel):
    """A shipped demo that can be run by name."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    name: str
    scenario: type
    description: str = ""
    options: tuple[str, ...] = ()
    """CLI options forwarded to the scenario, e.g. ``("s", "ell")``."""
    args: dict[str, Any] = {}

    def build(self, flags=None, command: str | None = None, **overrides: Any):
        """Instantiate the scenario with its own args and accepted overrides."""
        accepted = {
            key: value
            for key, value in overrides.items()
            if key in self.options and value is not None
        }
        return self.scenario(flags=flags, command=command, **(self.args | accepted))


class ExampleChoice(clickChoice):
    """Choice over :class:`Example` names that accepts any unique prefix."""

    def __init__(self, examples: list[Example]) -> None:
        self.examples = {example.name.casefold(): example for example in examples}
        super().__init__([example.name for example in examples], case_sensitive=False)

    def convert(self, value: Any, param, ctx) -> Example:
        if isinstance(value, Example):
            return value
        key = str(value).casefold()
        if key in self.examples:
            return self.examples[key]

        candidates = sorted(name for name in self.examples if name.startswith(key))
        if len(candidates) == 1:
            return self.examples[candidates[0]]
        if candidates:
            self.fail(f"{value!r} is ambiguous: {', '.join(candidates)}.", param, ctx)
        self.fail(f"{value!r} is not one of {', '.join(self.choices)}.", param, ctx)


def get_example_file_path(name: str) -> Path:
    """Path of a shipped DSL example such as ``vect.rh``."""
    return EXAMPLE_DIR / name
