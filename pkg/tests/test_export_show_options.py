"""Test the export and show option decorators."""

import pytest
import rich_click as click
from click.testing import CliRunner

from rinehart.cli import _formats
from rinehart.config import export_options, show_options


@pytest.fixture
def command():
    @export_options
    @show_options
    @click.command()
    def test_command(
        export: tuple[str, ...],
        show: tuple[str, ...],
        export_dir: str,
        show_json: bool,
        show_text: bool,
    ):
        """Test command with export, show, and export_dir options."""
        click.echo(f"export={export}")
        click.echo(f"show={show}")
        click.echo(f"export_dir={export_dir}")
        click.echo(f"formats={_formats(show, show_json, show_text)}")

    return test_command


def test_export_show_options_decorator(command):
    runner = CliRunner()

    result = runner.invoke(command, [])
    assert result.exit_code == 0
    assert "export=()" in result.output
    assert "show=()" in result.output
    assert "export_dir=." in result.output
    assert "formats=['json']" in result.output

    result = runner.invoke(command, ["--export", "json", "--show", "text"])
    assert result.exit_code == 0
    assert "export=('json',)" in result.output
    assert "show=('text',)" in result.output

    result = runner.invoke(
        command,
        ["-e", "json", "-e", "text", "-s", "text", "-s", "json", "-ed", "out"],
    )
    assert result.exit_code == 0
    assert "export=('json', 'text')" in result.output
    assert "show=('text', 'json')" in result.output
    assert "export_dir=out" in result.output


@pytest.mark.parametrize(
    "args,formats",
    [
        (["--text"], "['text']"),
        (["--json", "--text"], "['json', 'text']"),
        (["--show", "text", "--text", "--json"], "['text', 'json']"),
    ],
)
def test_show_shortcuts(command, args, formats):
    result = CliRunner().invoke(command, args)
    assert result.exit_code == 0
    assert f"formats={formats}" in result.output


def test_unknown_format(command):
    result = CliRunner().invoke(command, ["--export", "html"])
    assert result.exit_code == 2


def test_export_show_options_help(command):
    result = CliRunner().invoke(command, ["--help"])
    assert result.exit_code == 0
    assert "--export" in result.output
    assert "--show" in result.output
    assert "Export format" in result.output
    assert "Output format" in result.output


if __name__ == "__main__":
    pytest.main([__file__])
