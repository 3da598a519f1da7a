from pathlib import Path

import pytest

from rinehart.dsl import (
    algebra_source,
    elaborate,
    parse,
    parse_expression,
    render,
    render_expr,
)
from rinehart.dsl.ast import (
    AlgebraDecl,
    AnchorStmt,
    BaseStmt,
    BasisStmt,
    CommandDecl,
    Name,
    Power,
    Symbol,
)
from rinehart.errors import DslError, DslSemanticError, DslSyntaxError
from rinehart.presets import PRESENTATIONS
from rinehart.scenarios.algebra import same_presentation
from rinehart.utils import get_example_file_path
from tests.conftest import gather_data_files

EXAMPLES = sorted(get_example_file_path("").glob("*.rh"))

VECT = """\
algebra vect {
  base x;
  basis e;
  anchor e -> dx;
}
"""


def test_vect_syntax_tree():
    doc = parse(VECT + "command bracket vect (e^2, x^2);\n")
    algebra, command = doc.declarations
    assert algebra == AlgebraDecl(
        name=Name(text="vect"),
        body=[
            BaseStmt(names=[Name(text="x")]),
            BasisStmt(names=[Name(text="e")]),
            AnchorStmt(target=Name(text="e"), value=Symbol(name="dx")),
        ],
    )
    assert isinstance(command, CommandDecl)
    assert command.word.text == "bracket"
    assert command.args == [
        Power(base=Symbol(name="e"), exponent=2),
        Power(base=Symbol(name="x"), exponent=2),
    ]
    assert doc.find("vect") is algebra
    assert len(doc.digest) == 64


def test_positions_are_recorded():
    doc = parse("\n\n" + VECT)
    algebra = doc.declarations[0]
    assert (algebra.line, algebra.column) == (3, 1)
    assert (algebra.name.line, algebra.name.column) == (3, 9)


def test_unbalanced_braces():
    with pytest.raises(DslSyntaxError) as excinfo:
        parse("algebra vect {\n  base x;\n")
    error = excinfo.value
    assert error.line == 3
    assert error.found == "end of input"
    assert error.expected == {"'anchor'", "'base'", "'basis'", "'bracket'", "'}'"}
    assert str(error) == (
        "3:1: syntax error: unexpected end of input, "
        "expected 'anchor', 'base', 'basis', 'bracket', '}'"
    )


@pytest.mark.parametrize(
    "source,expected",
    [
        ("algebra { }", {"name"}),
        ("scene d { s 2; }", {"'l'"}),
        ("command check vect", {"'('", "';'"}),
        ("hello", {"'algebra'", "'command'", "'extension'", "'scene'", "end of input"}),
    ],
)
def test_expected_tokens(source, expected):
    with pytest.raises(DslSyntaxError) as excinfo:
        parse(source)
    assert excinfo.value.expected == expected


def test_unknown_symbol():
    source = "algebra a {\n  basis e1, e2;\n  bracket [e1, e2] = e3;\n}\n"
    with pytest.raises(DslSemanticError) as excinfo:
        parse(source)
    assert excinfo.value.symbol == "e3"
    assert excinfo.value.line == 3
    assert "unknown symbol 'e3'" in str(excinfo.value)


def test_duplicate_declaration():
    with pytest.raises(DslSemanticError, match="'vect' is already declared"):
        parse(VECT + VECT)


@pytest.mark.parametrize(
    "command,message",
    [
        ("command frobnicate vect;", "unknown command 'frobnicate'"),
        ("command check nowhere;", "unknown declaration 'nowhere'"),
        ("command closure vect;", "command 'closure' needs scene, 'vect' is algebra"),
        ("command bracket vect;", "command 'bracket' takes 2 arguments, got 0"),
        ("command bracket vect (e, z);", "unknown symbol 'z'"),
    ],
)
def test_command_validation(command, message):
    with pytest.raises(DslSemanticError) as excinfo:
        parse(VECT + command + "\n")
    assert message in str(excinfo.value)
    assert excinfo.value.line == 6


def test_hyphenated_command_words():
    doc = parse((get_example_file_path("heisenberg.rh")).read_text("utf-8"))
    words = {c.word.text for c in doc.commands}
    assert "build-extension" in words


@pytest.mark.parametrize(
    "text,rendered",
    [("-x^2 + 3/6*x*(y - 1)", "-x^2 + 1/2*x*(y - 1)"), ("(x + y)^2", "(x + y)^2")],
)
def test_expression_precedence(text, rendered):
    assert render_expr(parse_expression(text)) == rendered


@pytest.mark.parametrize("path", EXAMPLES, ids=lambda p: Path(p).stem)
def test_render_roundtrip(path):
    doc = parse(Path(path).read_text("utf-8"))
    assert parse(render(doc)) == doc
    assert render(parse(render(doc))) == render(doc)


@pytest.mark.parametrize("name", list(PRESENTATIONS))
def test_algebra_source_roundtrip(name):
    pres = PRESENTATIONS[name]()
    env = elaborate(parse(algebra_source(pres)))
    assert same_presentation(pres, env.algebra()).passed


def test_algebra_source_of_vect():
    assert algebra_source(PRESENTATIONS["vect"]()) == VECT


@pytest.mark.parametrize(
    "path", gather_data_files("invalid_*.rh"), ids=lambda p: Path(p).stem
)
def test_invalid_documents(path):
    text = Path(path).read_text("utf-8")
    expected = text.splitlines()[0].removeprefix("# expect: ")
    with pytest.raises(DslError) as excinfo:
        parse(text)
    assert expected in str(excinfo.value)
    assert excinfo.value.line > 1
