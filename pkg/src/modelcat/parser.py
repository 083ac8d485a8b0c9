"""Recursive-descent parser and canonical serializer for ``.mcat`` catalogs.

Grammar::

    catalog     := "catalog" STRING "dimension" STRING ["mode" ("sets"|"declared")] "{" item* "}"
    item        := assumption | model | object | arrow | formulation | convertible
    assumption  := "assumption" IDENT STRING
    model       := "model" IDENT "{" "assumes" IDENT+ "}"
    object      := "object" IDENT+
    arrow       := "arrow" IDENT ":" IDENT "->" IDENT
    formulation := "formulation" IDENT "of" IDENT ["via" STRING] "expr" STRING
    convertible := "convertible" IDENT IDENT IDENT*

``#`` starts a line comment. Strings support the ``\\"`` and ``\\\\`` escapes
and may span lines. Keywords are reserved and case-sensitive.
"""
from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from typing import NamedTuple, Optional

from .catalog import (
    ArrowDecl,
    AssumptionDecl,
    Catalog,
    CatalogHeader,
    ConvertibleDecl,
    Declaration,
    Diagnostic,
    FormulationDecl,
    Mode,
    ModelDecl,
    ObjectDecl,
    Severity,
    SourceSpan,
    build_catalog,
)

__all__ = ["parse", "parse_catalog", "serialize", "ParseResult", "Token", "TokenKind", "tokenize", "KEYWORDS"]


class TokenKind(enum.Enum):
    IDENT = "identifier"
    STRING = "string"
    KEYWORD = "keyword"
    LBRACE = "'{'"
    RBRACE = "'}'"
    COLON = "':'"
    ARROW = "'->'"
    EOF = "end of input"


KEYWORDS = frozenset(
    {
        "catalog", "dimension", "mode", "sets", "declared",
        "assumption", "model", "assumes", "object", "arrow",
        "formulation", "of", "via", "expr", "convertible",
    }
)
ITEM_KEYWORDS = ("assumption", "model", "object", "arrow", "formulation", "convertible")

# a '-' directly followed by '>' belongs to the arrow token, not the identifier
_IDENT = re.compile(r"[A-Za-z_](?:[A-Za-z0-9_]|-(?!>))*")
_PUNCT = {"{": TokenKind.LBRACE, "}": TokenKind.RBRACE, ":": TokenKind.COLON}


@dataclass(frozen=True)
class Token:
    kind: TokenKind
    value: str
    span: SourceSpan

    def describe(self) -> str:
        if self.kind is TokenKind.EOF:
            return "end of input"
        if self.kind is TokenKind.STRING:
            return "string"
        return repr(self.value)


class ParseResult(NamedTuple):
    declarations: list
    diagnostics: list

    @property
    def errors(self) -> list:
        return [d for d in self.diagnostics if d.severity is Severity.ERROR]

    @property
    def ok(self) -> bool:
        return not self.errors


def _error(code, message, span) -> Diagnostic:
    return Diagnostic(Severity.ERROR, code, message, span)


def tokenize(text: str) -> tuple[list[Token], list[Diagnostic]]:
    if text.startswith("\ufeff"):
        text = text[1:]
    text = text.replace("\r\n", "\n")
    tokens: list[Token] = []
    diags: list[Diagnostic] = []
    i, line, col = 0, 1, 1
    n = len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            i, line, col = i + 1, line + 1, 1
            continue
        if ch in " \t\r\f\v":
            i, col = i + 1, col + 1
            continue
        if ch == "#":
            while i < n and text[i] != "\n":
                i += 1
            continue
        if ch in _PUNCT:
            tokens.append(Token(_PUNCT[ch], ch, SourceSpan(line, col, 1)))
            i, col = i + 1, col + 1
            continue
        if text.startswith("->", i):
            tokens.append(Token(TokenKind.ARROW, "->", SourceSpan(line, col, 2)))
            i, col = i + 2, col + 2
            continue
        if ch == '"':
            start_line, start_col = line, col
            j, col = i + 1, col + 1
            chars: list[str] = []
            closed = False
            while j < n:
                c = text[j]
                if c == '"':
                    closed = True
                    j, col = j + 1, col + 1
                    break
                if c == "\\":
                    nxt = text[j + 1] if j + 1 < n else ""
                    if nxt in ('"', "\\"):
                        chars.append(nxt)
                        j, col = j + 2, col + 2
                        continue
                    diags.append(
                        _error("E002", f"invalid escape sequence '\\{nxt}' in string", SourceSpan(line, col, 2 if nxt else 1))
                    )
                    j, col = j + 1, col + 1
                    continue
                chars.append(c)
                if c == "\n":
                    line, col = line + 1, 1
                else:
                    col += 1
                j += 1
            if not closed:
                diags.append(_error("E003", "unterminated string", SourceSpan(start_line, start_col, 1)))
            length = (j - i) if line == start_line else 1
            tokens.append(Token(TokenKind.STRING, "".join(chars), SourceSpan(start_line, start_col, max(length, 1))))
            i = j
            continue
        m = _IDENT.match(text, i)
        if m:
            word = m.group()
            kind = TokenKind.KEYWORD if word in KEYWORDS else TokenKind.IDENT
            tokens.append(Token(kind, word, SourceSpan(line, col, len(word))))
            i, col = m.end(), col + len(word)
            continue
        diags.append(_error("E001", f"unexpected character {ch!r}", SourceSpan(line, col, 1)))
        i, col = i + 1, col + 1
    tokens.append(Token(TokenKind.EOF, "", SourceSpan(line, col, 1)))
    return tokens, diags


class _SyntaxError(Exception):
    pass


class _Parser:
    def __init__(self, tokens: list[Token], diagnostics: list[Diagnostic]):
        self.tokens = tokens
        self.pos = 0
        self.diagnostics = diagnostics
        self.declarations: list[Declaration] = []

    @property
    def current(self) -> Token:
        return self.tokens[self.pos]

    def advance(self) -> Token:
        tok = self.tokens[self.pos]
        if tok.kind is not TokenKind.EOF:
            self.pos += 1
        return tok

    def at_keyword(self, *words: str) -> bool:
        return self.current.kind is TokenKind.KEYWORD and self.current.value in words

    def fail(self, expected: list[str], code: str = "E010"):
        tok = self.current
        if tok.kind is TokenKind.EOF:
            self.diagnostics.append(
                _error("E005", f"unterminated block: expected {' or '.join(expected)} before end of input", tok.span)
            )
        else:
            self.diagnostics.append(
                _error(code, f"unexpected {tok.describe()}, expected one of: {', '.join(expected)}", tok.span)
            )
        raise _SyntaxError

    def expect_keyword(self, word: str) -> Token:
        if self.at_keyword(word):
            return self.advance()
        self.fail([repr(word)])

    def expect(self, kind: TokenKind, what: Optional[str] = None) -> Token:
        if self.current.kind is kind:
            return self.advance()
        self.fail([what or kind.value])

    def sync(self, stop_at_rbrace: bool = True):
        while True:
            tok = self.current
            if tok.kind is TokenKind.EOF:
                return
            if tok.kind is TokenKind.KEYWORD and tok.value in ITEM_KEYWORDS:
                return
            if stop_at_rbrace and tok.kind is TokenKind.RBRACE:
                return
            self.advance()

    # --- productions ------------------------------------------------------

    def document(self):
        if self.current.kind is TokenKind.EOF:
            return
        try:
            self.header()
        except _SyntaxError:
            # resume at the block opener or the first item
            while self.current.kind not in (TokenKind.LBRACE, TokenKind.EOF) and not self.at_keyword(*ITEM_KEYWORDS):
                self.advance()
            if self.current.kind is TokenKind.LBRACE:
                self.advance()
        self.items()
        if self.current.kind is TokenKind.RBRACE:
            self.advance()
        elif self.current.kind is TokenKind.EOF:
            already = any(d.code == "E005" and d.span == self.current.span for d in self.diagnostics)
            if not already:
                self.diagnostics.append(
                    _error("E005", "unterminated block: expected '}' before end of input", self.current.span)
                )
            return
        if self.current.kind is not TokenKind.EOF:
            tok = self.current
            msg = "only one catalog per document" if self.at_keyword("catalog") else f"unexpected {tok.describe()} after catalog block"
            self.diagnostics.append(_error("E006", msg, tok.span))

    def header(self):
        start = self.expect_keyword("catalog")
        name = self.expect(TokenKind.STRING).value
        self.expect_keyword("dimension")
        dimension = self.expect(TokenKind.STRING).value
        mode = Mode.SETS
        if self.at_keyword("mode"):
            self.advance()
            if self.at_keyword("sets", "declared"):
                mode = Mode(self.advance().value)
            else:
                self.fail(["'sets'", "'declared'"])
        self.expect(TokenKind.LBRACE)
        self.declarations.append(CatalogHeader(name, dimension, mode, start.span))

    def items(self):
        while self.current.kind not in (TokenKind.RBRACE, TokenKind.EOF):
            tok = self.current
            handler = getattr(self, f"item_{tok.value}", None) if tok.kind is TokenKind.KEYWORD else None
            if handler is None or tok.value not in ITEM_KEYWORDS:
                expected = [repr(k) for k in ITEM_KEYWORDS] + ["'}'"]
                self.diagnostics.append(
                    _error("E010", f"unexpected {tok.describe()}, expected one of: {', '.join(expected)}", tok.span)
                )
                self.advance()
                self.sync()
                continue
            self._block_open = False
            try:
                handler()
            except _SyntaxError:
                self.sync()
                if self._block_open and self.current.kind is TokenKind.RBRACE:
                    self.advance()

    def item_assumption(self):
        start = self.advance()
        ident = self.expect(TokenKind.IDENT).value
        text = self.expect(TokenKind.STRING).value
        self.declarations.append(AssumptionDecl(ident, text, start.span))

    def item_model(self):
        start = self.advance()
        ident = self.expect(TokenKind.IDENT).value
        self.expect(TokenKind.LBRACE)
        self._block_open = True
        self.expect_keyword("assumes")
        members: list[str] = []
        while self.current.kind is TokenKind.IDENT:
            tok = self.advance()
            if tok.value in members:
                self.diagnostics.append(
                    Diagnostic(Severity.WARNING, "W001", f"duplicate assumption id {tok.value!r} in model {ident!r}", tok.span)
                )
                continue
            members.append(tok.value)
        if not members:
            if self.current.kind is TokenKind.RBRACE:
                self.diagnostics.append(_error("E004", "expected at least one assumption id", self.current.span))
                self.advance()
                self._block_open = False
                return
            self.fail(["identifier"])
        self.expect(TokenKind.RBRACE)
        self._block_open = False
        self.declarations.append(ModelDecl(ident, tuple(members), start.span))

    def item_object(self):
        start = self.advance()
        ids = [self.expect(TokenKind.IDENT).value]
        while self.current.kind is TokenKind.IDENT:
            ids.append(self.advance().value)
        self.declarations.append(ObjectDecl(tuple(ids), start.span))

    def item_arrow(self):
        start = self.advance()
        ident = self.expect(TokenKind.IDENT).value
        self.expect(TokenKind.COLON)
        source = self.expect(TokenKind.IDENT).value
        self.expect(TokenKind.ARROW)
        target = self.expect(TokenKind.IDENT).value
        self.declarations.append(ArrowDecl(ident, source, target, start.span))

    def item_formulation(self):
        start = self.advance()
        ident = self.expect(TokenKind.IDENT).value
        self.expect_keyword("of")
        model = self.expect(TokenKind.IDENT).value
        via = None
        if self.at_keyword("via"):
            self.advance()
            via = self.expect(TokenKind.STRING).value
        if not self.at_keyword("expr"):
            self.fail(["'via'", "'expr'"] if via is None else ["'expr'"])
        self.advance()
        expr = self.expect(TokenKind.STRING).value
        self.declarations.append(FormulationDecl(ident, model, expr, via, start.span))

    def item_convertible(self):
        start = self.advance()
        members = [self.expect(TokenKind.IDENT).value, self.expect(TokenKind.IDENT).value]
        while self.current.kind is TokenKind.IDENT:
            members.append(self.advance().value)
        seen = set()
        for m in members:
            if m in seen:
                self.diagnostics.append(
                    Diagnostic(Severity.WARNING, "W002", f"formulation {m!r} listed twice in convertible", start.span)
                )
            seen.add(m)
        self.declarations.append(ConvertibleDecl(tuple(dict.fromkeys(members)), start.span))


def parse(text: str) -> ParseResult:
    """Parse catalog text into declarations plus diagnostics.

    Errors never stop the parse: after one, parsing resumes at the next
    item keyword so later declarations are still checked.
    """
    tokens, diagnostics = tokenize(text)
    parser = _Parser(tokens, diagnostics)
    parser.document()
    diags = sorted(diagnostics, key=lambda d: (d.span.line, d.span.column) if d.span else (0, 0))
    return ParseResult(parser.declarations, diags)


def parse_catalog(text: str) -> Catalog:
    """Parse and build in one step; raises :class:`CatalogError` on any error."""
    from .catalog import CatalogError

    result = parse(text)
    if result.errors:
        raise CatalogError(result.errors)
    return build_catalog(result.declarations)


# --- serializer -----------------------------------------------------------------


def _quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def serialize(catalog: Catalog) -> str:
    lines = [
        f"catalog {_quote(catalog.name)} dimension {_quote(catalog.dimension)} mode {catalog.mode.value} {{"
    ]
    for a in catalog.assumptions:
        lines.append(f"  assumption {a.id} {_quote(a.text)}")
    for m in catalog.models:
        if m.assumption_set is not None:
            lines.append(f"  model {m.model_id} {{ assumes {' '.join(m.assumption_set)} }}")
    for m in catalog.models:
        if m.assumption_set is None:
            lines.append(f"  object {m.model_id}")
    for arrow in catalog.arrows:
        lines.append(f"  arrow {arrow.id} : {arrow.source} -> {arrow.target}")
    for f in catalog.formulations:
        via = f" via {_quote(f.mapping_label)}" if f.mapping_label is not None else ""
        lines.append(f"  formulation {f.id} of {f.of_model}{via} expr {_quote(f.expr)}")
    for c in catalog.convertibility_classes:
        lines.append(f"  convertible {' '.join(c.sorted_members())}")
    lines.append("}")
    return "\n".join(lines) + "\n"
