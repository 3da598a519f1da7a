"""Recursive descent parser of the DSL.

Grammar::

    document   := decl*
    decl       := algebra | extension | scene | command
    algebra    := "algebra" NAME "{" stmt* "}"
    stmt       := "base" names ";" | "basis" names ";"
                | "anchor" NAME "->" expr ";"
                | "bracket" "[" NAME "," NAME "]" "=" expr ";"
    extension  := "extension" NAME "{" ("base" names ";")?
                  "lprime" "{" stmt* "}" "ldoubleprime" "{" stmt* "}"
                  ("nabla" "{" rel* "}")? ("omega" "{" rel* "}")? "}"
    rel        := "[" NAME "," NAME "]" "=" expr ";"
    scene      := "scene" NAME "{" "s" NUMBER ";" "l" NUMBER ";" "}"
    command    := "command" WORD NAME ("(" expr "," expr ")")? ";"
    expr       := term (("+" | "-") term)*
    term       := unary ("*" unary)*
    unary      := "-" unary | power
    power      := atom ("^" NUMBER)?
    atom       := NUMBER ("/" NUMBER)? | NAME | "(" expr ")"

``WORD`` is a hyphenated name such as ``build-extension``.
"""

import logging

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
    Number,
    Power,
    Relation,
    SceneDecl,
    Symbol,
)
from rinehart.dsl.tokens import Token, tokenize
from rinehart.errors import DslSemanticError, DslSyntaxError
from rinehart.model.poly import render_rational, to_rational

logger = logging.getLogger(__name__)

DECLARATION_KEYWORDS = ("algebra", "extension", "scene", "command")
STATEMENT_KEYWORDS = ("base", "basis", "anchor", "bracket")
OPERAND_START = {"name", "number", "'('", "'-'"}


def _quote(text: str) -> str:
    return f"'{text}'"


class Parser:
    """Single-use parser over the tokens of one source text."""

    def __init__(self, text: str) -> None:
        self.tokens: list[Token] = list(tokenize(text))
        self.index = 0
        self._continuations: set[str] = set()

    @property
    def current(self) -> Token:
        return self.tokens[self.index]

    def advance(self) -> Token:
        token = self.current
        if token.kind != "eof":
            self.index += 1
        self._continuations = set()
        return token

    def error(self, expected: set[str]) -> DslSyntaxError:
        token = self.current
        return DslSyntaxError(
            token.line, token.column, token.describe(), expected | self._continuations
        )

    def at_punct(self, text: str) -> bool:
        return self.current.kind == "punct" and self.current.text == text

    def at_keyword(self, word: str) -> bool:
        return self.current.kind == "name" and self.current.text == word

    def expect_punct(self, text: str) -> Token:
        if not self.at_punct(text):
            raise self.error({_quote(text)})
        return self.advance()

    def expect_keyword(self, word: str) -> Token:
        if not self.at_keyword(word):
            raise self.error({_quote(word)})
        return self.advance()

    def expect_name(self) -> Name:
        token = self.current
        if token.kind != "name":
            raise self.error({"name"})
        self.advance()
        return Name(text=token.text, line=token.line, column=token.column)

    def expect_integer(self) -> int:
        if self.current.kind != "number":
            raise self.error({"number"})
        return int(self.advance().text)

    def names(self) -> list[Name]:
        names = [self.expect_name()]
        while self.at_punct(","):
            self.advance()
            names.append(self.expect_name())
        self.expect_punct(";")
        return names

    # Declarations

    def document(self) -> DslDocument:
        declarations = []
        while self.current.kind != "eof":
            declarations.append(self.declaration())
        return DslDocument(declarations=declarations)

    def declaration(self):
        token = self.current
        if token.kind == "name" and token.text in DECLARATION_KEYWORDS:
            return getattr(self, f"{token.text}_declaration")()
        raise self.error({_quote(k) for k in DECLARATION_KEYWORDS} | {"end of input"})

    def statements(self) -> list:
        self.expect_punct("{")
        body = []
        while not self.at_punct("}"):
            body.append(self.statement())
        self.advance()
        return body

    def statement(self):
        token = self.current
        if not (token.kind == "name" and token.text in STATEMENT_KEYWORDS):
            raise self.error({_quote(k) for k in STATEMENT_KEYWORDS} | {"'}'"})
        self.advance()
        position = {"line": token.line, "column": token.column}
        if token.text == "base":
            return BaseStmt(names=self.names(), **position)
        if token.text == "basis":
            return BasisStmt(names=self.names(), **position)
        if token.text == "anchor":
            target = self.expect_name()
            if self.current.kind != "arrow":
                raise self.error({"'->'"})
            self.advance()
            value = self.expression()
            self.expect_punct(";")
            return AnchorStmt(target=target, value=value, **position)
        left, right, value = self.relation_parts()
        return BracketStmt(left=left, right=right, value=value, **position)

    def relation_parts(self) -> tuple[Name, Name, object]:
        self.expect_punct("[")
        left = self.expect_name()
        self.expect_punct(",")
        right = self.expect_name()
        self.expect_punct("]")
        self.expect_punct("=")
        value = self.expression()
        self.expect_punct(";")
        return left, right, value

    def relations(self) -> list[Relation]:
        self.expect_punct("{")
        relations = []
        while not self.at_punct("}"):
            if not self.at_punct("["):
                raise self.error({"'['", "'}'"})
            token = self.current
            left, right, value = self.relation_parts()
            relations.append(
                Relation(
                    left=left,
                    right=right,
                    value=value,
                    line=token.line,
                    column=token.column,
                )
            )
        self.advance()
        return relations

    def algebra_declaration(self) -> AlgebraDecl:
        token = self.advance()
        name = self.expect_name()
        body = self.statements()
        return AlgebraDecl(name=name, body=body, line=token.line, column=token.column)

    def extension_declaration(self) -> ExtensionDecl:
        token = self.advance()
        name = self.expect_name()
        self.expect_punct("{")
        base = []
        if self.at_keyword("base"):
            self.advance()
            base = self.names()
        elif not self.at_keyword("lprime"):
            raise self.error({"'base'", "'lprime'"})
        self.expect_keyword("lprime")
        lprime = self.statements()
        self.expect_keyword("ldoubleprime")
        ldoubleprime = self.statements()
        expected = {"'nabla'", "'omega'", "'}'"}
        nabla, omega = [], []
        if self.at_keyword("nabla"):
            self.advance()
            nabla = self.relations()
            expected.discard("'nabla'")
        if self.at_keyword("omega"):
            self.advance()
            omega = self.relations()
            expected = {"'}'"}
        if not self.at_punct("}"):
            raise self.error(expected)
        self.advance()
        return ExtensionDecl(
            name=name,
            base=base,
            lprime=lprime,
            ldoubleprime=ldoubleprime,
            nabla=nabla,
            omega=omega,
            line=token.line,
            column=token.column,
        )

    def scene_declaration(self) -> SceneDecl:
        token = self.advance()
        name = self.expect_name()
        self.expect_punct("{")
        self.expect_keyword("s")
        s = self.expect_integer()
        self.expect_punct(";")
        self.expect_keyword("l")
        ell = self.expect_integer()
        self.expect_punct(";")
        self.expect_punct("}")
        return SceneDecl(name=name, s=s, ell=ell, line=token.line, column=token.column)

    def command_word(self) -> Name:
        first = self.expect_name()
        text = first.text
        previous = self.tokens[self.index - 1]
        while self.at_punct("-") and self.current.follows(previous):
            dash = self.advance()
            following = self.current
            if following.kind != "name" or not following.follows(dash):
                raise self.error({"name"})
            text += "-" + self.advance().text
            previous = following
        return Name(text=text, line=first.line, column=first.column)

    def command_declaration(self) -> CommandDecl:
        token = self.advance()
        word = self.command_word()
        target = self.expect_name()
        args = []
        if self.at_punct("("):
            self.advance()
            args.append(self.expression())
            self.expect_punct(",")
            args.append(self.expression())
            self.expect_punct(")")
        elif not self.at_punct(";"):
            raise self.error({"'('", "';'"})
        self.expect_punct(";")
        return CommandDecl(
            word=word, target=target, args=args, line=token.line, column=token.column
        )

    # Expressions

    def expression(self):
        node = self.term()
        while self.at_punct("+") or self.at_punct("-"):
            op = self.advance()
            right = self.term()
            node = BinOp(
                op=op.text, left=node, right=right, line=node.line, column=node.column
            )
        self._continuations = {"'*'", "'+'", "'-'"} | self._continuations
        return node

    def term(self):
        node = self.unary()
        while self.at_punct("*"):
            self.advance()
            right = self.unary()
            node = BinOp(
                op="*", left=node, right=right, line=node.line, column=node.column
            )
        return node

    def unary(self):
        if self.at_punct("-"):
            token = self.advance()
            return Neg(operand=self.unary(), line=token.line, column=token.column)
        return self.power()

    def power(self):
        base = self.atom()
        if self.at_punct("^"):
            self.advance()
            exponent = self.expect_integer()
            return Power(
                base=base, exponent=exponent, line=base.line, column=base.column
            )
        self._continuations |= {"'^'"}
        return base

    def atom(self):
        token = self.current
        if token.kind == "number":
            self.advance()
            text = token.text
            if self.at_punct("/"):
                self.advance()
                denominator = self.current
                if denominator.kind != "number":
                    raise self.error({"number"})
                self.advance()
                if int(denominator.text) == 0:
                    raise DslSemanticError(
                        denominator.line, denominator.column, "division by zero"
                    )
                text = f"{text}/{denominator.text}"
            else:
                self._continuations = {"'/'"}
            value = render_rational(to_rational(text))
            return Number(value=value, line=token.line, column=token.column)
        if token.kind == "name":
            self.advance()
            return Symbol(name=token.text, line=token.line, column=token.column)
        if self.at_punct("("):
            self.advance()
            node = self.expression()
            self.expect_punct(")")
            return node
        raise self.error(set(OPERAND_START))

    def standalone_expression(self):
        node = self.expression()
        if self.current.kind != "eof":
            raise self.error({"end of input"})
        return node
