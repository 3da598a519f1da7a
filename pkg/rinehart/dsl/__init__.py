"""The ``rinehart`` text DSL: parsing, elaboration and canonical printing."""

import hashlib
import logging

from rinehart.dsl.ast import DslDocument
from rinehart.dsl.elaborate import Environment, elaborate, to_poly
from rinehart.dsl.parser import Parser
from rinehart.dsl.render import algebra_source, render, render_expr
from rinehart.model.poly import Poly, Var

logger = logging.getLogger(__name__)

__all__ = [
    "DslDocument",
    "Environment",
    "algebra_source",
    "digest",
    "elaborate",
    "parse",
    "parse_expression",
    "parse_poly",
    "render",
    "render_expr",
    "to_poly",
]


def digest(text: str) -> str:
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


def parse(text: str) -> DslDocument:
    """Parse and validate a DSL source.

    Raises:
        DslSyntaxError: With the position and the set of expected tokens.
        DslSemanticError: With the position and, when known, the symbol.
    """
    doc = Parser(text).document()
    elaborate(doc)
    logger.debug("✔ Parsed %d declarations", len(doc.declarations))
    return doc.model_copy(update={"digest": digest(text)})


def parse_expression(text: str):
    """Expression tree of a standalone expression such as ``e^2``."""
    return Parser(text).standalone_expression()


def parse_poly(text: str, symbols: dict[str, Var]) -> Poly:
    return to_poly(parse_expression(text), symbols)
