import logging
from pathlib import Path

import rich_click as click
import yaml

from rinehart.scenario import Scenario
from rinehart.utils import load_jinja_template, register_show

logger = logging.getLogger(__name__)

TEMPLATE_DIR = Path(__file__).parent / "templates"


@register_show(scenario_cls=Scenario, fmt="json")
def show_as_json(scenario: Scenario, *args, **kwargs) -> None:
    click.echo(scenario.report.to_json())


def render_text(scenario: Scenario) -> str:
    """Text rendering of the same report that ``json`` prints."""
    report = scenario.report
    template = load_jinja_template(TEMPLATE_DIR, "report.txt.j2")
    results = ""
    if report.results:
        results = yaml.safe_dump(
            report.results, sort_keys=False, allow_unicode=True, width=88
        )
    return template.render(report=report, results=results)


@register_show(scenario_cls=Scenario, fmt="text")
def show_as_text(scenario: Scenario, *args, **kwargs) -> None:
    click.echo(render_text(scenario), nl=False)
