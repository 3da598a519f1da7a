"""Syntax tree of a DSL document.

Nodes remember where they start in the source. Positions are left out of
dumps and comparisons, so a document equals the re-parse of its rendering.
"""

import logging
from typing import Annotated, Literal, Union

from pydantic import Field

from rinehart.model.base import MainModel

logger = logging.getLogger(__name__)


class Node(MainModel):
    line: int = Field(default=0, exclude=True, repr=False)
    column: int = Field(default=0, exclude=True, repr=False)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Node):
            return NotImplemented
        return type(self) is type(other) and self.model_dump() == other.model_dump()

    def __hash__(self) -> int:
        return hash((type(self).__name__, self.model_dump_json()))


class Name(Node):
    text: str

    def __str__(self) -> str:
        return self.text


class Number(Node):
    kind: Literal["number"] = "number"
    value: str = Field(..., description="Canonical rational, e.g. '3/2'.")


class Symbol(Node):
    kind: Literal["symbol"] = "symbol"
    name: str


class Neg(Node):
    kind: Literal["neg"] = "neg"
    operand: "Expr"


class BinOp(Node):
    kind: Literal["binop"] = "binop"
    op: Literal["+", "-", "*"]
    left: "Expr"
    right: "Expr"


class Power(Node):
    kind: Literal["power"] = "power"
    base: "Expr"
    exponent: int


Expr = Annotated[
    Union[Number, Symbol, Neg, BinOp, Power], Field(discriminator="kind")
]

for _model in (Neg, BinOp, Power):
    _model.model_rebuild()


class BaseStmt(Node):
    kind: Literal["base"] = "base"
    names: list[Name]


class BasisStmt(Node):
    kind: Literal["basis"] = "basis"
    names: list[Name]


class AnchorStmt(Node):
    """``anchor e -> expr`` with ``expr`` linear in the ``dX`` symbols."""

    kind: Literal["anchor"] = "anchor"
    target: Name
    value: Expr


class BracketStmt(Node):
    kind: Literal["bracket"] = "bracket"
    left: Name
    right: Name
    value: Expr


Stmt = Annotated[
    Union[BaseStmt, BasisStmt, AnchorStmt, BracketStmt],
    Field(discriminator="kind"),
]


class Relation(Node):
    """``[left, right] = value`` inside a ``nabla`` or ``omega`` block."""

    left: Name
    right: Name
    value: Expr


class AlgebraDecl(Node):
    kind: Literal["algebra"] = "algebra"
    name: Name
    body: list[Stmt] = Field(default_factory=list)


class ExtensionDecl(Node):
    kind: Literal["extension"] = "extension"
    name: Name
    base: list[Name] = Field(default_factory=list)
    lprime: list[Stmt] = Field(default_factory=list)
    ldoubleprime: list[Stmt] = Field(default_factory=list)
    nabla: list[Relation] = Field(default_factory=list)
    omega: list[Relation] = Field(default_factory=list)


class SceneDecl(Node):
    kind: Literal["scene"] = "scene"
    name: Name
    s: int
    ell: int


class CommandDecl(Node):
    """``command WORD target (arg, arg);``"""

    kind: Literal["command"] = "command"
    word: Name
    target: Name
    args: list[Expr] = Field(default_factory=list)


Decl = Annotated[
    Union[AlgebraDecl, ExtensionDecl, SceneDecl, CommandDecl],
    Field(discriminator="kind"),
]


class DslDocument(Node):
    """Ordered declarations of one DSL source."""

    declarations: list[Decl] = Field(default_factory=list)
    digest: str = Field(
        default="", exclude=True, description="sha256 of the source text."
    )

    @property
    def commands(self) -> list[CommandDecl]:
        return [d for d in self.declarations if isinstance(d, CommandDecl)]

    @property
    def definitions(self) -> list[AlgebraDecl | ExtensionDecl | SceneDecl]:
        return [d for d in self.declarations if not isinstance(d, CommandDecl)]

    def find(self, name: str) -> AlgebraDecl | ExtensionDecl | SceneDecl | None:
        for decl in self.definitions:
            if decl.name.text == name:
                return decl
        return None
