"""Canonical printer of DSL documents.

``parse(render(doc)) == doc`` for every parsed ``doc``: parentheses are
emitted exactly where the grammar needs them to rebuild the same tree.
"""

import re

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
    Neg,
    Node,
    Number,
    Power,
    Relation,
    SceneDecl,
    Symbol,
)
from rinehart.model.poly import Poly, Var
from rinehart.model.presentation import LieRinehartPresentation

INDENT = "  "

_PRECEDENCE = {"+": 1, "-": 1, "*": 2}
_IDENTIFIER = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")


def _precedence(expr: Node) -> int:
    if isinstance(expr, BinOp):
        return _PRECEDENCE[expr.op]
    if isinstance(expr, Neg):
        return 3
    if isinstance(expr, Power):
        return 4
    return 5


def _wrap(expr: Node, parenthesize: bool) -> str:
    text = render_expr(expr)
    return f"({text})" if parenthesize else text


def render_expr(expr: Node) -> str:
    if isinstance(expr, Number):
        return expr.value
    if isinstance(expr, Symbol):
        return expr.name
    if isinstance(expr, Neg):
        return "-" + _wrap(expr.operand, _precedence(expr.operand) < 3)
    if isinstance(expr, Power):
        fraction = isinstance(expr.base, Number) and "/" in expr.base.value
        base = _wrap(expr.base, fraction or _precedence(expr.base) < 5)
        return f"{base}^{expr.exponent}"
    if isinstance(expr, BinOp):
        level = _PRECEDENCE[expr.op]
        left = _wrap(expr.left, _precedence(expr.left) < level)
        right = _wrap(expr.right, _precedence(expr.right) <= level)
        if expr.op == "*":
            return f"{left}*{right}"
        return f"{left} {expr.op} {right}"
    raise TypeError(f"not an expression: {expr!r}")


def _statement(stmt: Node) -> str:
    if isinstance(stmt, BaseStmt):
        return f"base {', '.join(n.text for n in stmt.names)};"
    if isinstance(stmt, BasisStmt):
        return f"basis {', '.join(n.text for n in stmt.names)};"
    if isinstance(stmt, AnchorStmt):
        return f"anchor {stmt.target.text} -> {render_expr(stmt.value)};"
    if isinstance(stmt, BracketStmt | Relation):
        prefix = "bracket " if isinstance(stmt, BracketStmt) else ""
        return (
            f"{prefix}[{stmt.left.text}, {stmt.right.text}] = "
            f"{render_expr(stmt.value)};"
        )
    raise TypeError(f"not a statement: {stmt!r}")


def _block(header: str, body: list[str], depth: int) -> list[str]:
    pad = INDENT * depth
    return [f"{pad}{header} {{", *(f"{pad}{INDENT}{line}" for line in body), f"{pad}}}"]


def _declaration(decl: Node) -> list[str]:
    if isinstance(decl, AlgebraDecl):
        return _block(
            f"algebra {decl.name.text}", [_statement(s) for s in decl.body], 0
        )
    if isinstance(decl, ExtensionDecl):
        lines = [f"extension {decl.name.text} {{"]
        if decl.base:
            lines.append(f"{INDENT}base {', '.join(n.text for n in decl.base)};")
        lines += _block("lprime", [_statement(s) for s in decl.lprime], 1)
        lines += _block("ldoubleprime", [_statement(s) for s in decl.ldoubleprime], 1)
        if decl.nabla:
            lines += _block("nabla", [_statement(r) for r in decl.nabla], 1)
        if decl.omega:
            lines += _block("omega", [_statement(r) for r in decl.omega], 1)
        return [*lines, "}"]
    if isinstance(decl, SceneDecl):
        return _block(f"scene {decl.name.text}", [f"s {decl.s};", f"l {decl.ell};"], 0)
    if isinstance(decl, CommandDecl):
        args = ""
        if decl.args:
            args = " (" + ", ".join(render_expr(a) for a in decl.args) + ")"
        return [f"command {decl.word.text} {decl.target.text}{args};"]
    raise TypeError(f"not a declaration: {decl!r}")


def render(doc: DslDocument) -> str:
    """Canonical source text of ``doc``."""
    lines: list[str] = []
    previous = None
    for decl in doc.declarations:
        both_commands = isinstance(decl, CommandDecl) and isinstance(
            previous, CommandDecl
        )
        if previous is not None and not both_commands:
            lines.append("")
        lines += _declaration(decl)
        previous = decl
    return "\n".join(lines) + "\n" if lines else ""


def algebra_source(pres: LieRinehartPresentation, name: str | None = None) -> str:
    """DSL ``algebra`` block describing ``pres``."""
    name = name or (pres.name if _IDENTIFIER.match(pres.name) else "L")
    body = []
    if pres.base_vars:
        body.append(f"base {', '.join(x.name for x in pres.base_vars)};")
    if pres.l_basis:
        body.append(f"basis {', '.join(e.name for e in pres.l_basis)};")
    for j, e in enumerate(pres.l_basis):
        value = Poly.zero()
        for s, x in enumerate(pres.base_vars):
            value = value + pres.anchor[j][s] * Poly.var(Var.fiber(f"d{x.name}"))
        if value:
            body.append(f"anchor {e.name} -> {value};")
    for j, k in ((j, k) for j in range(pres.dim) for k in range(j + 1, pres.dim)):
        value = pres.structure_element(j, k)
        if value:
            body.append(f"bracket [{pres.l_basis[j]}, {pres.l_basis[k]}] = {value};")
    return "\n".join(_block(f"algebra {name}", body, 0)) + "\n"
