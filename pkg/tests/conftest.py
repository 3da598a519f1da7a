import json
from pathlib import Path

import pytest
from click.testing import CliRunner

from rinehart.utils import get_example_file_path


def gather_data_files(match: str):
    data_dir = Path(__file__).parent / "data"
    return sorted(data_dir.glob(match))


@pytest.fixture
def runner():
    return CliRunner()


@pytest.fixture
def example_file():
    def _example(name: str) -> str:
        return str(get_example_file_path(name))

    return _example


@pytest.fixture
def exported(tmp_path):
    """Load ``<name>_report.json`` written by ``--export json``."""

    def _load(name: str) -> dict:
        return json.loads((tmp_path / f"{name}_report.json").read_text("utf-8"))

    return _load
