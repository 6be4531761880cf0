"""Parser/serializer for the RST-DT `.dis` tree distribution format.

Grammar: parenthesized nodes
    ( Kind (span a b)|(leaf n) [(rel2par name)] [(text _!...!_)] children... )
Whitespace between tokens is insignificant; the text payload is everything
between ``_!`` and ``!_`` and may itself contain parentheses.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import ParseError, SpanInconsistencyError

KIND_ROOT = "ROOT"
KIND_NUCLEUS = "NUCLEUS"
KIND_SATELLITE = "SATELLITE"

_KINDS = {"Root": KIND_ROOT, "Nucleus": KIND_NUCLEUS, "Satellite": KIND_SATELLITE}
_KIND_NAMES = {v: k for k, v in _KINDS.items()}


@dataclass
class RstNode:
    kind: str  # ROOT / NUCLEUS / SATELLITE
    span: tuple[int, int]  # (first_edu, last_edu); equal for leaves
    rel2par: str | None = None
    text: str | None = None  # leaves only
    children: list["RstNode"] = field(default_factory=list)

    @property
    def is_leaf(self) -> bool:
        return not self.children

    def leaves(self) -> list["RstNode"]:
        if self.is_leaf:
            return [self]
        out = []
        for child in self.children:
            out.extend(child.leaves())
        return out

    def internal_nodes(self) -> list["RstNode"]:
        if self.is_leaf:
            return []
        out = [self]
        for child in self.children:
            out.extend(child.internal_nodes())
        return out

    def __eq__(self, other):
        if not isinstance(other, RstNode):
            return NotImplemented
        return (
            self.kind == other.kind
            and self.span == other.span
            and self.rel2par == other.rel2par
            and self.text == other.text
            and self.children == other.children
        )


class _Lexer:
    """Yields '(' / ')' / atom / ('TEXT', payload) tokens with positions."""

    def __init__(self, text: str):
        self.text = text
        self.pos = 0
        self.line = 1
        self.col = 1

    def _advance(self, n: int = 1):
        for _ in range(n):
            if self.pos < len(self.text) and self.text[self.pos] == "\n":
                self.line += 1
                self.col = 1
            else:
                self.col += 1
            self.pos += 1

    def error(self, msg: str) -> ParseError:
        return ParseError(msg, self.line, self.col)

    def next_token(self):
        text = self.text
        while self.pos < len(text) and text[self.pos].isspace():
            self._advance()
        if self.pos >= len(text):
            return None
        ch = text[self.pos]
        if ch in "()":
            self._advance()
            return ch
        if text.startswith("_!", self.pos):
            end = text.find("!_", self.pos + 2)
            if end < 0:
                raise self.error("unterminated text payload (missing !_)")
            payload = text[self.pos + 2 : end]
            self._advance(end + 2 - self.pos)
            return ("TEXT", payload)
        start = self.pos
        while self.pos < len(text) and not text[self.pos].isspace() and text[self.pos] not in "()":
            self._advance()
        return text[start : self.pos]


def parse_dis(text: str) -> RstNode:
    """Parse a `.dis` document into an RstNode tree. Validates span consistency."""
    lexer = _Lexer(text)
    tok = lexer.next_token()
    if tok != "(":
        raise lexer.error("expected '(' at document start")
    root = _parse_node(lexer)
    trailing = lexer.next_token()
    if trailing is not None:
        raise lexer.error(f"unexpected trailing token {trailing!r}")
    _check_spans(root)
    return root


def _parse_node(lexer: _Lexer, kind_tok: str | None = None) -> RstNode:
    # caller has consumed the opening '('
    if kind_tok is None:
        kind_tok = lexer.next_token()
    if not isinstance(kind_tok, str) or kind_tok not in _KINDS:
        raise lexer.error(f"expected node kind, got {kind_tok!r}")
    kind = _KINDS[kind_tok]
    span: tuple[int, int] | None = None
    rel2par: str | None = None
    text_payload: str | None = None
    children: list[RstNode] = []
    while True:
        tok = lexer.next_token()
        if tok == ")":
            break
        if tok is None:
            raise lexer.error("unbalanced parentheses: unexpected end of input")
        if tok != "(":
            raise lexer.error(f"expected '(' or ')', got {tok!r}")
        head = lexer.next_token()
        if head == "span":
            a, b = _parse_int(lexer), _parse_int(lexer)
            _expect_close(lexer)
            span = (a, b)
        elif head == "leaf":
            n = _parse_int(lexer)
            _expect_close(lexer)
            span = (n, n)
        elif head == "rel2par":
            name = lexer.next_token()
            if not isinstance(name, str) or name in "()":
                raise lexer.error("expected relation name after rel2par")
            _expect_close(lexer)
            rel2par = name
        elif head == "text":
            parts = []
            while True:
                tok = lexer.next_token()
                if tok == ")":
                    break
                if isinstance(tok, tuple) and tok[0] == "TEXT":
                    parts.append(tok[1])
                else:
                    raise lexer.error(f"expected text payload, got {tok!r}")
            text_payload = "".join(parts)
        elif isinstance(head, str) and head in _KINDS:
            children.append(_parse_node(lexer, head))
        else:
            raise lexer.error(f"unexpected token {head!r} inside node")
    if span is None:
        raise lexer.error("node missing (span a b) or (leaf n)")
    return RstNode(kind=kind, span=span, rel2par=rel2par, text=text_payload, children=children)


def _expect_close(lexer: _Lexer):
    tok = lexer.next_token()
    if tok != ")":
        raise lexer.error(f"expected ')', got {tok!r}")


def _parse_int(lexer: _Lexer) -> int:
    tok = lexer.next_token()
    if not isinstance(tok, str) or not tok.lstrip("-").isdigit():
        raise lexer.error(f"expected integer, got {tok!r}")
    return int(tok)


def _check_spans(node: RstNode):
    if node.is_leaf:
        if node.text is None:
            raise SpanInconsistencyError(
                f"leaf node over span {node.span} has no text payload"
            )
        if node.span[0] != node.span[1]:
            raise SpanInconsistencyError(f"leaf node spans more than one unit: {node.span}")
        return
    prev_end = None
    for child in node.children:
        _check_spans(child)
        if prev_end is not None and child.span[0] != prev_end + 1:
            raise SpanInconsistencyError(
                f"children of span {node.span} are not contiguous at {child.span}"
            )
        prev_end = child.span[1]
    union = (node.children[0].span[0], node.children[-1].span[1])
    if union != node.span:
        raise SpanInconsistencyError(
            f"node span {node.span} != union of child spans {union}"
        )


def serialize_dis(node: RstNode, indent: int = 0) -> str:
    """Serialize a tree back to `.dis` syntax; parse(serialize(t)) == t."""
    pad = "  " * indent
    parts = [f"{pad}( {_KIND_NAMES[node.kind]}"]
    if node.is_leaf:
        parts.append(f"(leaf {node.span[0]})")
    else:
        parts.append(f"(span {node.span[0]} {node.span[1]})")
    if node.rel2par is not None:
        parts.append(f"(rel2par {node.rel2par})")
    if node.text is not None:
        parts.append(f"(text _!{node.text}!_)")
    head = " ".join(parts)
    if node.is_leaf:
        return head + " )"
    lines = [head]
    for child in node.children:
        lines.append(serialize_dis(child, indent + 1))
    lines.append(f"{pad})")
    return "\n".join(lines)
