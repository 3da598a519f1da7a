"""Test YAML configuration of the report options."""

import pytest
import rich_click as click
from click.testing import CliRunner

from rinehart.config import (
    config_option,
    export_options,
    sampling_options,
    show_options,
)


@pytest.fixture
def command():
    @config_option(default="test_config.yaml")
    @sampling_options
    @export_options
    @show_options
    @click.command()
    def test_command(
        export: tuple[str, ...],
        show: tuple[str, ...],
        export_dir: str,
        show_json: bool,
        show_text: bool,
        sampling_seed: int,
        sampling_samples: int,
        timing: bool,
    ):
        """Test command."""
        click.echo(f"export={export}")
        click.echo(f"show={show}")
        click.echo(f"export_dir={export_dir}")
        click.echo(f"seed={sampling_seed}")
        click.echo(f"samples={sampling_samples}")
        click.echo(f"timing={timing}")

    return test_command


@pytest.fixture
def write_config(tmp_path):
    def _write(text: str) -> str:
        path = tmp_path / "config.yaml"
        path.write_text(text, encoding="utf-8")
        return str(path)

    return _write


def test_yaml_config_option_basic(command, write_config):
    config_file = write_config(
        """
export:
  - json
  - text
show: text
export_dir: reports
sampling:
  seed: 7
  samples: 16
timing: true
"""
    )
    runner = CliRunner()

    result = runner.invoke(command, ["--config", config_file])
    assert result.exit_code == 0, result.output
    assert "export=('json', 'text')" in result.output
    assert "show=('text',)" in result.output
    assert "export_dir=reports" in result.output
    assert "seed=7" in result.output
    assert "samples=16" in result.output
    assert "timing=True" in result.output

    # CLI options override the config file
    result = runner.invoke(
        command,
        ["--config", config_file, "--export", "text", "--show", "json", "--seed", "1"],
    )
    assert result.exit_code == 0
    assert "export=('text',)" in result.output
    assert "show=('json',)" in result.output
    assert "seed=1" in result.output
    assert "samples=16" in result.output


def test_top_level_sampling_aliases(command, write_config):
    config_file = write_config("seed: 3\nsamples: 5\nsampling:\n  seed: 4\n")
    result = CliRunner().invoke(command, ["--config", config_file])
    assert result.exit_code == 0
    # the sampling section wins over the aliases
    assert "seed=4" in result.output
    assert "samples=5" in result.output


def test_yaml_config_option_missing_file(command):
    result = CliRunner().invoke(command, [])
    assert result.exit_code == 0
    assert "export=()" in result.output
    assert "show=()" in result.output
    assert "seed=0" in result.output
    assert "samples=64" in result.output


def test_yaml_config_option_invalid_yaml(command, write_config):
    config_file = write_config(
        """
export: [
  - json
  invalid: yaml: here
"""
    )
    result = CliRunner().invoke(command, ["--config", config_file])
    assert result.exit_code == 2
    assert "Invalid YAML in config file" in result.output


def test_yaml_config_must_be_mapping(command, write_config):
    config_file = write_config("- json\n- text\n")
    result = CliRunner().invoke(command, ["--config", config_file])
    assert result.exit_code == 2
    assert "must contain a mapping" in result.output


def test_invalid_choice_from_config(command, write_config):
    config_file = write_config("show:\n  - html\n")
    result = CliRunner().invoke(command, ["--config", config_file])
    assert result.exit_code == 2


if __name__ == "__main__":
    pytest.main([__file__])
