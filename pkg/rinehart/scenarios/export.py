from pathlib import Path

from rinehart.scenario import Scenario
from rinehart.scenarios.show import render_text
from rinehart.utils import register_export


@register_export(scenario_cls=Scenario, fmt="json")
def export_as_json(scenario: Scenario, *args, output_path: str | None = None, **kwargs) -> str:
    """Write the JSON report; the content is identical to ``--show json``."""
    content = scenario.report.to_json() + "\n"
    if output_path:
        Path(output_path).write_text(content, encoding="utf-8")
    return content


@register_export(scenario_cls=Scenario, fmt="text")
def export_as_text(scenario: Scenario, *args, output_path: str | None = None, **kwargs) -> str:
    content = render_text(scenario)
    if output_path:
        Path(output_path).write_text(content, encoding="utf-8")
    return content
