import pytest

from rinehart.dsl import parse
from rinehart.dsl.elaborate import COMMANDS
from rinehart.errors import ContextMismatchError, RinehartError
from rinehart.model.report import RunFlags
from rinehart.runner import DEMOS, SCENARIOS, build_scenario, run
from rinehart.scenario import Suite
from rinehart.scenarios import AlgebraCheck, DualPairAnalysis
from rinehart.utils import get_example_file_path

FAST = RunFlags(samples=4)


def load(name: str):
    return parse(get_example_file_path(name).read_text("utf-8"))


def test_run_embedded_commands():
    report = run(load("vect.rh"), "run", FAST)
    assert report.ok
    assert report.command == "run"
    assert list(report.results) == ["check vect", "bracket vect", "reconstruct vect"]
    assert report.results["bracket vect"]["bracket"] == "4*x*e"
    assert any(c.name == "bracket vect/antisymmetry" for c in report.checks)
    assert report.exit_code == 0


def test_check_every_declaration():
    scenario = build_scenario(load("mutants.rh"), "check", FAST)
    assert isinstance(scenario, Suite)
    assert str(scenario) == "check"
    assert [label for label, _ in scenario.parts] == [
        "so3_corrupted",
        "anchor_mutant",
        "non_closed",
    ]
    scenario.execute_and_analyze()
    report = scenario.report
    assert not report.ok
    assert report.exit_code == 1
    failed = {c.name for c in report.checks if not c.passed}
    assert "so3_corrupted/jacobi" in failed
    assert "anchor_mutant/anchor_morphism" in failed
    assert "non_closed/axioms/jacobi" in failed


def test_target_selects_one_declaration():
    scenario = build_scenario(
        load("mutants.rh"), "check", RunFlags(samples=4, target="so3_corrupted")
    )
    assert [label for label, _ in scenario.parts] == ["so3_corrupted"]
    assert isinstance(scenario.parts[0][1], AlgebraCheck)


def test_bracket_arguments():
    flags = RunFlags(samples=4, args=("e^2", "x^2"))
    report = run(load("vect.rh"), "bracket", flags)
    assert report.results["vect"]["bracket"] == "4*x*e"
    assert report.command == "bracket e^2 x^2"


def test_ambiguous_bracket_target():
    doc = parse("algebra a {\n  basis e;\n}\n\nalgebra b {\n  basis f;\n}\n")
    with pytest.raises(ContextMismatchError, match="ambiguous over a, b"):
        build_scenario(doc, "bracket", RunFlags(args=("e", "e")))


def test_command_needs_matching_declaration():
    with pytest.raises(ContextMismatchError, match="declares none"):
        build_scenario(load("so3.rh"), "closure")
    with pytest.raises(ContextMismatchError, match="'so3' is algebra"):
        build_scenario(load("so3.rh"), "curvature", RunFlags(target="so3"))


@pytest.mark.parametrize(
    "command,flags,message",
    [
        ("frobnicate", None, "unknown command 'frobnicate'"),
        ("demo", RunFlags(target="nowhere"), "unknown demo 'nowhere'"),
        ("check", RunFlags(target="nowhere"), "unknown declaration 'nowhere'"),
    ],
)
def test_unknown_names(command, flags, message):
    with pytest.raises(RinehartError, match=message):
        build_scenario(load("vect.rh"), command, flags)


def test_run_needs_embedded_commands():
    doc = parse("algebra a {\n  basis e;\n}\n")
    with pytest.raises(RinehartError, match="embeds no commands"):
        build_scenario(doc, "run")


def test_repeated_commands_get_unique_labels():
    doc = parse("algebra a {\n  basis e;\n}\n\ncommand check a;\ncommand check a;\n")
    scenario = build_scenario(doc, "run", FAST)
    assert [label for label, _ in scenario.parts] == ["check a", "check a#2"]


def test_every_command_word_has_scenarios():
    assert {word for word, _ in SCENARIOS} == set(COMMANDS)


def test_demo_options():
    flags = RunFlags(target="dual-pair")
    scenario = build_scenario(None, "demo", flags, s=2, ell=1, preset=None)
    assert isinstance(scenario, DualPairAnalysis)
    assert (scenario.scene.s, scenario.scene.ell) == (2, 1)
    assert {example.name for example in DEMOS} >= {"dual-pair", "heisenberg", "vect"}


def test_reports_are_deterministic():
    first = run(load("so3.rh"), "run", RunFlags(seed=5, samples=4))
    second = run(load("so3.rh"), "run", RunFlags(seed=5, samples=4))
    assert first.to_json() == second.to_json()
    assert first.seed == 5
    assert first.input_digest == load("so3.rh").digest
