"""Turn a parsed document into presentations, extensions and scenes."""

import logging
from collections.abc import Mapping, Sequence

from pydantic import Field, ValidationError

from rinehart.dsl.ast import (
    AlgebraDecl,
    AnchorStmt,
    BaseStmt,
    BasisStmt,
    BinOp,
    BracketStmt,
    CommandDecl,
    DslDocument,
    ExtensionDecl,
    Name,
    Neg,
    Node,
    Number,
    Power,
    Relation,
    SceneDecl,
    Symbol,
)
from rinehart.errors import DslSemanticError
from rinehart.model.base import MainModel
from rinehart.model.extension import L_DOUBLE_PRIME, L_PRIME, ExtensionData
from rinehart.model.poly import Poly, Var, to_rational
from rinehart.model.presentation import LieRinehartPresentation
from rinehart.model.scene import DualPairScene

logger = logging.getLogger(__name__)

COMMANDS: dict[str, tuple[tuple[str, ...], int]] = {
    "check": (("algebra", "extension", "scene"), 0),
    "bracket": (("algebra",), 2),
    "reconstruct": (("algebra",), 0),
    "build-extension": (("extension",), 0),
    "curvature": (("extension",), 0),
    "reconstruct-extension": (("extension",), 0),
    "closure": (("scene",), 0),
}
"""Command word -> (declaration kinds it accepts, number of arguments)."""


def _unknown(node: Node, name: str) -> DslSemanticError:
    return DslSemanticError(
        node.line, node.column, f"unknown symbol '{name}'", symbol=name
    )


def to_poly(expr: Node, symbols: Mapping[str, Var]) -> Poly:
    """Evaluate an expression tree over the given symbol table.

    Raises:
        DslSemanticError: On a symbol that is not in ``symbols``.
    """
    if isinstance(expr, Number):
        return Poly.const(to_rational(expr.value))
    if isinstance(expr, Symbol):
        if expr.name not in symbols:
            raise _unknown(expr, expr.name)
        return Poly.var(symbols[expr.name])
    if isinstance(expr, Neg):
        return -to_poly(expr.operand, symbols)
    if isinstance(expr, Power):
        return to_poly(expr.base, symbols) ** expr.exponent
    if isinstance(expr, BinOp):
        left, right = to_poly(expr.left, symbols), to_poly(expr.right, symbols)
        if expr.op == "+":
            return left + right
        if expr.op == "-":
            return left - right
        return left * right
    raise TypeError(f"not an expression: {expr!r}")


def _invalid(node: Node, ex: ValueError) -> DslSemanticError:
    if isinstance(ex, ValidationError):
        message = "; ".join(error["msg"] for error in ex.errors())
    else:
        message = str(ex)
    return DslSemanticError(node.line, node.column, message)


class _Scope:
    """Symbols of one algebra block while its statements are read."""

    def __init__(
        self, base_vars: Sequence[Var] = (), taken: Mapping[str, Name] | None = None
    ) -> None:
        self.base_vars: list[Var] = list(base_vars)
        self.basis: list[Var] = []
        self.taken: dict[str, Name] = dict(taken or {})
        self.anchors: dict[Var, dict[Var, Poly]] = {}
        self.brackets: dict[tuple[Var, Var], Poly] = {}

    def declare(self, name: Name, kind: str) -> Var:
        if name.text in self.taken:
            raise DslSemanticError(
                name.line,
                name.column,
                f"'{name.text}' is already declared",
                symbol=name.text,
            )
        self.taken[name.text] = name
        var = Var(name=name.text, kind=kind)
        (self.base_vars if kind == "base" else self.basis).append(var)
        return var

    @property
    def symbols(self) -> dict[str, Var]:
        return {var.name: var for var in (*self.base_vars, *self.basis)}

    def basis_element(self, name: Name) -> Var:
        for var in self.basis:
            if var.name == name.text:
                return var
        if any(var.name == name.text for var in self.base_vars):
            raise DslSemanticError(
                name.line,
                name.column,
                f"'{name.text}' is a base variable, not a basis element",
                symbol=name.text,
            )
        raise _unknown(name, name.text)

    def anchor(self, stmt: AnchorStmt) -> None:
        target = self.basis_element(stmt.target)
        if target in self.anchors:
            raise DslSemanticError(
                stmt.target.line,
                stmt.target.column,
                f"anchor of '{target}' is already declared",
                symbol=target.name,
            )
        differentials = {
            f"d{x.name}": Var.fiber(f"d{x.name}")
            for x in self.base_vars
            if f"d{x.name}" not in self.taken
        }
        symbols = {x.name: x for x in self.base_vars} | differentials
        value = to_poly(stmt.value, symbols)
        if value.fiber_degree_part(1) != value:
            raise DslSemanticError(
                stmt.value.line,
                stmt.value.column,
                f"anchor of '{target}' must be linear in the dX symbols",
            )
        self.anchors[target] = {
            x: value.coefficient(differentials[f"d{x.name}"])
            for x in self.base_vars
            if f"d{x.name}" in differentials
        }

    def bracket(self, stmt: BracketStmt | Relation) -> None:
        left, right = self.basis_element(stmt.left), self.basis_element(stmt.right)
        if left == right:
            raise DslSemanticError(
                stmt.right.line,
                stmt.right.column,
                f"[{left}, {left}] is zero by antisymmetry",
                symbol=left.name,
            )
        if (left, right) in self.brackets or (right, left) in self.brackets:
            raise DslSemanticError(
                stmt.left.line,
                stmt.left.column,
                f"bracket [{left}, {right}] is already declared",
            )
        value = to_poly(stmt.value, self.symbols)
        _require_linear(stmt, value, "bracket value")
        self.brackets[left, right] = value

    def read(self, body: Sequence[Node], allow_base: bool = True) -> None:
        for stmt in body:
            if isinstance(stmt, BaseStmt):
                if not allow_base:
                    raise DslSemanticError(
                        stmt.line,
                        stmt.column,
                        "base variables of an extension are declared at extension level",
                    )
                for name in stmt.names:
                    self.declare(name, "base")
            elif isinstance(stmt, BasisStmt):
                for name in stmt.names:
                    self.declare(name, "fiber")
            elif isinstance(stmt, AnchorStmt):
                self.anchor(stmt)
            elif isinstance(stmt, BracketStmt):
                self.bracket(stmt)

    def presentation(self, decl: Node, name: str) -> LieRinehartPresentation:
        try:
            return LieRinehartPresentation.from_brackets(
                self.base_vars,
                self.basis,
                anchors=self.anchors,
                brackets=self.brackets,
                name=name,
            )
        except ValueError as ex:
            raise _invalid(decl, ex) from ex


def _require_linear(stmt: Node, value: Poly, what: str) -> None:
    if value.fiber_degree_part(1) != value:
        raise DslSemanticError(
            stmt.value.line, stmt.value.column, f"{what} must be linear in the basis"
        )


def algebra_presentation(decl: AlgebraDecl) -> LieRinehartPresentation:
    scope = _Scope()
    scope.read(decl.body)
    return scope.presentation(decl.name, decl.name.text)


def extension_data(decl: ExtensionDecl) -> ExtensionData:
    shared = _Scope()
    for name in decl.base:
        shared.declare(name, "base")
    prime = _Scope(shared.base_vars, shared.taken)
    prime.read(decl.lprime, allow_base=False)
    double_prime = _Scope(shared.base_vars, prime.taken)
    double_prime.read(decl.ldoubleprime, allow_base=False)
    l_prime = prime.presentation(decl.name, L_PRIME)
    l_double_prime = double_prime.presentation(decl.name, L_DOUBLE_PRIME)

    nabla_symbols = {var.name: var for var in (*shared.base_vars, *prime.basis)}
    nabla: dict[tuple[Var, Var], Poly] = {}
    for relation in decl.nabla:
        key = (
            double_prime.basis_element(relation.left),
            prime.basis_element(relation.right),
        )
        if key in nabla:
            raise DslSemanticError(
                relation.line,
                relation.column,
                f"nabla [{key[0]}, {key[1]}] is already declared",
            )
        value = to_poly(relation.value, nabla_symbols)
        _require_linear(relation, value, "nabla value")
        nabla[key] = value

    omega: dict[tuple[Var, Var], Poly] = {}
    for relation in decl.omega:
        left = double_prime.basis_element(relation.left)
        right = double_prime.basis_element(relation.right)
        if left == right or (left, right) in omega or (right, left) in omega:
            raise DslSemanticError(
                relation.line,
                relation.column,
                f"omega [{left}, {right}] is zero or already declared",
            )
        value = to_poly(relation.value, nabla_symbols)
        _require_linear(relation, value, "omega value")
        omega[left, right] = value

    try:
        return ExtensionData.from_relations(
            l_prime, l_double_prime, nabla=nabla, omega=omega, name=decl.name.text
        )
    except ValueError as ex:
        raise _invalid(decl.name, ex) from ex


def scene(decl: SceneDecl) -> DualPairScene:
    try:
        return DualPairScene(s=decl.s, ell=decl.ell, name=decl.name.text)
    except ValueError as ex:
        raise _invalid(decl.name, ex) from ex


class Environment(MainModel):
    """Everything a document declares, keyed by declaration name."""

    algebras: dict[str, LieRinehartPresentation] = Field(default_factory=dict)
    extensions: dict[str, ExtensionData] = Field(default_factory=dict)
    scenes: dict[str, DualPairScene] = Field(default_factory=dict)
    commands: list[CommandDecl] = Field(default_factory=list)

    def kind_of(self, name: str) -> str | None:
        for kind, table in (
            ("algebra", self.algebras),
            ("extension", self.extensions),
            ("scene", self.scenes),
        ):
            if name in table:
                return kind
        return None

    def algebra(self, name: str | None = None) -> LieRinehartPresentation:
        """The named algebra, or the only one when ``name`` is omitted.

        Raises:
            KeyError: If the algebra does not exist or the choice is ambiguous.
        """
        if name is None:
            if len(self.algebras) != 1:
                raise KeyError(
                    f"expected exactly one algebra, found {len(self.algebras)}"
                )
            return next(iter(self.algebras.values()))
        return self.algebras[name]


def check_command(command: CommandDecl, env: Environment) -> None:
    """Validate the word, target and arguments of a command.

    Raises:
        DslSemanticError: On any violation.
    """
    word = command.word
    if word.text not in COMMANDS:
        raise DslSemanticError(
            word.line, word.column, f"unknown command '{word.text}'", symbol=word.text
        )
    kinds, arity = COMMANDS[word.text]
    target = command.target
    kind = env.kind_of(target.text)
    if kind is None:
        raise DslSemanticError(
            target.line,
            target.column,
            f"unknown declaration '{target.text}'",
            symbol=target.text,
        )
    if kind not in kinds:
        raise DslSemanticError(
            target.line,
            target.column,
            f"command '{word.text}' needs {' or '.join(kinds)}, "
            f"'{target.text}' is {kind}",
            symbol=target.text,
        )
    if len(command.args) != arity:
        raise DslSemanticError(
            word.line,
            word.column,
            f"command '{word.text}' takes {arity} arguments, got {len(command.args)}",
        )
    if arity:
        symbols = env.algebras[target.text].symbols()
        for arg in command.args:
            to_poly(arg, symbols)


def elaborate(doc: DslDocument) -> Environment:
    """Build every declaration in order; names must be declared before use.

    Raises:
        DslSemanticError: On unknown symbols, duplicate names, arity errors
            or data rejected by the models.
    """
    algebras: dict[str, LieRinehartPresentation] = {}
    extensions: dict[str, ExtensionData] = {}
    scenes: dict[str, DualPairScene] = {}
    seen: set[str] = set()
    commands = []
    for decl in doc.declarations:
        if isinstance(decl, CommandDecl):
            env = Environment(algebras=algebras, extensions=extensions, scenes=scenes)
            check_command(decl, env)
            commands.append(decl)
            continue
        name = decl.name
        if name.text in seen:
            raise DslSemanticError(
                name.line,
                name.column,
                f"'{name.text}' is already declared",
                symbol=name.text,
            )
        seen.add(name.text)
        if isinstance(decl, AlgebraDecl):
            algebras[name.text] = algebra_presentation(decl)
        elif isinstance(decl, ExtensionDecl):
            extensions[name.text] = extension_data(decl)
        else:
            scenes[name.text] = scene(decl)
        logger.debug("✔ Elaborated %s '%s'", decl.kind, name.text)
    return Environment(
        algebras=algebras, extensions=extensions, scenes=scenes, commands=commands
    )
