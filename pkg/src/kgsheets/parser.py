"""N-Triples and a Turtle subset.

Turtle support covers prefix declarations (``@prefix`` and ``PREFIX``), the
``a`` keyword, predicate lists (``;``), object lists (``,``), and literals
in all their forms, including numeric and boolean shorthands. Collections,
blank-node property lists, quoted triples and base declarations are
rejected as unsupported rather than guessed at.

Blank nodes are relabelled ``b0, b1, ...`` in first-appearance order so
that two parses of the same bytes produce identical graphs.
"""

from __future__ import annotations

import bisect
import re
from typing import IO

from .rdf import (
    RDF_TYPE,
    XSD_BOOLEAN,
    XSD_DECIMAL,
    XSD_DOUBLE,
    XSD_INTEGER,
    RdfGraph,
    Term,
    Triple,
    blank,
    iri,
    literal,
)

__all__ = ["RdfSyntaxError", "UnsupportedConstructError", "parse_graph", "parse_triples"]


class RdfSyntaxError(ValueError):
    def __init__(self, message: str, line: int, column: int, token: str = ""):
        self.message = message
        self.line = line
        self.column = column
        self.token = token
        near = f" near {token!r}" if token else ""
        super().__init__(f"line {line}, column {column}: {message}{near}")


class UnsupportedConstructError(RdfSyntaxError):
    pass


_WS = re.compile(r"(?:[ \t\r\n]+|#[^\r\n]*)*")
_IRIREF = re.compile(r"<([^<>\"{}|^`\\\x00-\x20]|\\u[0-9A-Fa-f]{4}|\\U[0-9A-Fa-f]{8})*>")
_BNODE = re.compile(r"_:([\w](?:[\w.\-]*[\w\-])?)")
_LANGTAG = re.compile(r"@([a-zA-Z]+(?:-[a-zA-Z0-9]+)*)")
_PN_PREFIX = r"(?:[^\W\d_](?:[\w.\-]*[\w\-])?)?"
_PLX = r"(?:%[0-9A-Fa-f]{2}|\\[_~.\-!$&'()*+,;=/?#@%])"
_PN_LOCAL = rf"(?:(?:[\w:]|{_PLX})(?:(?:[\w.:\-]|{_PLX})*(?:[\w:\-]|{_PLX}))?)?"
_PNAME = re.compile(rf"({_PN_PREFIX}):({_PN_LOCAL})")
_DOUBLE = re.compile(r"[+-]?(?:\d+\.\d*[eE][+-]?\d+|\.\d+[eE][+-]?\d+|\d+[eE][+-]?\d+)")
_DECIMAL = re.compile(r"[+-]?\d*\.\d+")
_INTEGER = re.compile(r"[+-]?\d+")
_BOOL = re.compile(r"(true|false)(?![\w:\-.])")
_A = re.compile(r"a(?=[\s<\"'_\[(#])")
_DIRECTIVE = re.compile(r"(@prefix|@base|PREFIX|BASE)(?![\w:])", re.IGNORECASE)
_TOKEN = re.compile(r"\S{1,20}")
_UCHAR = re.compile(r"\\u([0-9A-Fa-f]{4})|\\U([0-9A-Fa-f]{8})")
_ECHAR = {"t": "\t", "b": "\b", "n": "\n", "r": "\r", "f": "\f", '"': '"', "'": "'", "\\": "\\"}


def _unescape_uchars(text: str) -> str:
    return _UCHAR.sub(lambda m: chr(int(m.group(1) or m.group(2), 16)), text)


class _Parser:
    def __init__(self, text: str, ntriples: bool, relabel_blanks: bool = True):
        self.text = text
        self.relabel_blanks = relabel_blanks
        self.pos = 0
        self.ntriples = ntriples
        self.prefixes: dict[str, str] = {}
        self.bnodes: dict[str, Term] = {}
        self.triples: list[Triple] = []
        self._line_starts = [0] + [m.end() for m in re.finditer(r"\r\n|\n|\r", text)]

    # -- diagnostics

    def _where(self, pos: int) -> tuple[int, int]:
        line = bisect.bisect_right(self._line_starts, pos)
        return line, pos - self._line_starts[line - 1] + 1

    def _token_at(self, pos: int) -> str:
        m = _TOKEN.match(self.text, pos)
        return m.group(0) if m else "<end of input>"

    def error(self, message: str, pos: int | None = None, cls=RdfSyntaxError) -> RdfSyntaxError:
        pos = self.pos if pos is None else pos
        line, col = self._where(pos)
        return cls(message, line, col, self._token_at(pos))

    # -- low-level scanning

    def skip_ws(self) -> None:
        self.pos = _WS.match(self.text, self.pos).end()

    def at_end(self) -> bool:
        self.skip_ws()
        return self.pos >= len(self.text)

    def peek(self, s: str) -> bool:
        return self.text.startswith(s, self.pos)

    def expect(self, s: str) -> None:
        self.skip_ws()
        if not self.peek(s):
            raise self.error(f"expected {s!r}")
        self.pos += len(s)

    def match(self, pattern: re.Pattern[str]) -> re.Match[str] | None:
        m = pattern.match(self.text, self.pos)
        if m:
            self.pos = m.end()
        return m

    # -- grammar

    def parse(self) -> list[Triple]:
        while not self.at_end():
            if not self.ntriples and self._directive():
                continue
            self._triples()
        return self.triples

    def _directive(self) -> bool:
        start = self.pos
        m = _DIRECTIVE.match(self.text, self.pos)
        if not m:
            return False
        word = m.group(1)
        if word.lower() in ("@base", "base"):
            raise self.error("base declarations are not supported", start, UnsupportedConstructError)
        if word.startswith("@") and word != "@prefix":
            raise self.error("unknown directive", start)
        self.pos = m.end()
        self.skip_ws()
        pm = self.match(re.compile(rf"({_PN_PREFIX}):"))
        if not pm:
            raise self.error("expected prefix name")
        self.skip_ws()
        namespace = self._iriref()
        self.prefixes[pm.group(1)] = namespace
        if word == "@prefix":
            self.expect(".")
        return True

    def _triples(self) -> None:
        self.skip_ws()
        subject = self._subject()
        if self.ntriples:
            self.skip_ws()
            predicate = self._predicate()
            self.skip_ws()
            obj = self._object()
            self.triples.append(Triple(subject, predicate, obj))
        else:
            self._predicate_object_list(subject)
        self.expect(".")

    def _predicate_object_list(self, subject: Term) -> None:
        while True:
            self.skip_ws()
            predicate = self._predicate()
            while True:
                self.skip_ws()
                self.triples.append(Triple(subject, predicate, self._object()))
                self.skip_ws()
                if not self.peek(","):
                    break
                self.pos += 1
            if not self.peek(";"):
                return
            while self.peek(";"):
                self.pos += 1
                self.skip_ws()
            if self.peek(".") or self.peek("]"):
                return

    def _unsupported_check(self) -> None:
        if self.peek("<<"):
            raise self.error("quoted triples are not supported", cls=UnsupportedConstructError)
        if self.peek("("):
            raise self.error("collections are not supported", cls=UnsupportedConstructError)
        if self.peek("["):
            raise self.error("blank node property lists are not supported", cls=UnsupportedConstructError)

    def _subject(self) -> Term:
        self._unsupported_check()
        if self.peek("_:"):
            return self._bnode()
        return self._iri()

    def _predicate(self) -> Term:
        if not self.ntriples and self.match(_A):
            return iri(RDF_TYPE)
        return self._iri()

    def _object(self) -> Term:
        self._unsupported_check()
        if self.peek("_:"):
            return self._bnode()
        if self.peek('"') or (not self.ntriples and self.peek("'")):
            return self._literal()
        if not self.ntriples:
            lit = self._shorthand_literal()
            if lit is not None:
                return lit
        return self._iri()

    def _iri(self) -> Term:
        if self.peek("<"):
            return iri(self._iriref())
        if not self.ntriples:
            start = self.pos
            m = self.match(_PNAME)
            if m:
                prefix, local = m.group(1), m.group(2)
                if prefix not in self.prefixes:
                    raise self.error(f"undeclared prefix {prefix!r}", start)
                local = re.sub(r"\\(.)", r"\1", local)
                return iri(self.prefixes[prefix] + local)
        raise self.error("expected an IRI")

    def _iriref(self) -> str:
        start = self.pos
        m = self.match(_IRIREF)
        if not m:
            raise self.error("malformed IRI reference")
        value = _unescape_uchars(m.group(0)[1:-1])
        if ":" not in value:
            raise self.error("relative IRI references are not supported", start)
        return value

    def _bnode(self) -> Term:
        start = self.pos
        m = self.match(_BNODE)
        if not m:
            raise self.error("malformed blank node label", start)
        label = m.group(1)
        if label not in self.bnodes:
            self.bnodes[label] = blank(f"b{len(self.bnodes)}" if self.relabel_blanks else label)
        return self.bnodes[label]

    def _shorthand_literal(self) -> Term | None:
        for pattern, datatype in ((_DOUBLE, XSD_DOUBLE), (_DECIMAL, XSD_DECIMAL), (_INTEGER, XSD_INTEGER)):
            m = self.match(pattern)
            if m:
                return literal(m.group(0), datatype)
        m = self.match(_BOOL)
        if m:
            return literal(m.group(1), XSD_BOOLEAN)
        return None

    def _literal(self) -> Term:
        value = self._string()
        if self.peek("@"):
            m = self.match(_LANGTAG)
            if not m:
                raise self.error("malformed language tag")
            return literal(value, language=m.group(1))
        if self.peek("^^"):
            self.pos += 2
            return literal(value, self._iri().value)
        return literal(value)

    def _string(self) -> str:
        start = self.pos
        text = self.text
        for quote in ('"""', "'''", '"', "'"):
            if text.startswith(quote, self.pos):
                break
        if len(quote) == 3 and self.ntriples:
            quote = '"'
        long_form = len(quote) == 3
        self.pos += len(quote)
        out: list[str] = []
        while True:
            if self.pos >= len(text):
                raise self.error("unterminated string literal", start)
            if text.startswith(quote, self.pos):
                self.pos += len(quote)
                # a long string may end with extra quote characters belonging to it
                while long_form and self.peek(quote[0]):
                    out.append(quote[0])
                    self.pos += 1
                return "".join(out)
            ch = text[self.pos]
            if ch == "\\":
                nxt = text[self.pos + 1:self.pos + 2]
                if nxt in _ECHAR:
                    out.append(_ECHAR[nxt])
                    self.pos += 2
                    continue
                m = _UCHAR.match(text, self.pos)
                if not m:
                    raise self.error("invalid escape sequence")
                out.append(chr(int(m.group(1) or m.group(2), 16)))
                self.pos = m.end()
                continue
            if ch in "\r\n" and not long_form:
                raise self.error("line break in string literal")
            out.append(ch)
            self.pos += 1


def parse_triples(text: str, syntax: str = "turtle", relabel_blanks: bool = True) -> list[Triple]:
    """Triples in document order, duplicates kept."""
    return _Parser(text, ntriples=syntax == "ntriples", relabel_blanks=relabel_blanks).parse()


def parse_graph(source: str | bytes | IO, syntax: str = "auto") -> RdfGraph:
    """Parse N-Triples or the supported Turtle subset into an :class:`RdfGraph`.

    ``syntax`` is ``ntriples``, ``turtle`` or ``auto``. Since N-Triples is a
    subset of Turtle, ``auto`` parses as Turtle.
    """
    if hasattr(source, "read"):
        source = source.read()
    if isinstance(source, bytes):
        source = source.decode("utf-8")
    if source.startswith("\ufeff"):
        source = source[1:]
    if syntax not in ("ntriples", "turtle", "auto"):
        raise ValueError(f"unknown syntax {syntax!r}")
    return RdfGraph(parse_triples(source, "ntriples" if syntax == "ntriples" else "turtle"))
