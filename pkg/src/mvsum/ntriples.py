"""Streaming N-Triples reader and writer.

This is the exchange format for both input graphs and summary files: one
statement per line, UTF-8, `#` comment lines ignored. Only the N-Triples
subset is supported (no Turtle prefixes); parsing is single-pass and keeps
at most one line in memory, so files can be arbitrarily large.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Callable, Iterable, Iterator, NamedTuple

IRI = "iri"
BLANK = "blank"
LITERAL = "literal"

RDF_TYPE = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type"
XSD_INTEGER = "http://www.w3.org/2001/XMLSchema#integer"


class ParseError(ValueError):
    """Malformed N-Triples input, with 1-based line/column position."""

    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"line {line}, col {col}: {message}")
        self.line = line
        self.col = col
        self.reason = message


@dataclass(frozen=True, slots=True)
class Term:
    """An RDF term: IRI, blank node, or literal.

    IRI values are stored without the surrounding angle brackets; blank node
    labels are normalized to ``[A-Za-z0-9]+``. A literal carries at most one
    of `datatype` (an IRI) and `lang`.
    """

    kind: str
    value: str
    datatype: str | None = None
    lang: str | None = None

    @staticmethod
    def iri(value: str) -> "Term":
        return Term(IRI, value)

    @staticmethod
    def blank(label: str) -> "Term":
        return Term(BLANK, normalize_bnode_label(label))

    @staticmethod
    def literal(value: str, datatype: str | None = None, lang: str | None = None) -> "Term":
        if datatype is not None and lang is not None:
            raise ValueError("a literal has at most one of datatype/lang")
        return Term(LITERAL, value, datatype, lang)

    def nt(self) -> str:
        """The term in N-Triples syntax."""
        if self.kind == IRI:
            return f"<{_checked_iri(self.value)}>"
        if self.kind == BLANK:
            return f"_:{self.value}"
        out = f'"{_escape_literal(self.value)}"'
        if self.lang is not None:
            return f"{out}@{self.lang}"
        if self.datatype is not None:
            return f"{out}^^<{_checked_iri(self.datatype)}>"
        return out


class Triple(NamedTuple):
    subject: Term
    predicate: Term
    object: Term


# --- blank node labels -------------------------------------------------------
#
# Labels are normalized to plain alphanumerics: already-plain labels pass
# through unchanged (so normalization is idempotent and serialized output
# re-parses to equal terms), anything else becomes `x` plus the UTF-8 hex of
# the whole label. A namespace tag isolates labels from different files so
# that unioning multi-file graphs never identifies unrelated blank nodes.

_BNODE_PLAIN = re.compile(r"[A-Za-z0-9]+\Z")


def normalize_bnode_label(label: str, ns: str = "") -> str:
    if ns:
        if not _BNODE_PLAIN.fullmatch(ns):
            raise ValueError(f"blank node namespace must be alphanumeric: {ns!r}")
        label = f"{ns}.{label}"
    if _BNODE_PLAIN.fullmatch(label):
        return label
    return "x" + label.encode("utf-8").hex()


# --- tokenizing --------------------------------------------------------------

_WS = re.compile(r"[ \t]+")
_IRIREF = re.compile(r'<((?:[^\x00-\x20<>"{}|^`\\]|\\u[0-9A-Fa-f]{4}|\\U[0-9A-Fa-f]{8})*)>')
_BNODE = re.compile(r"_:([A-Za-z0-9_](?:[A-Za-z0-9_.\-]*[A-Za-z0-9_\-])?)")
_STRING = re.compile(r'"((?:[^"\\\n\r]|\\.)*)"')
_LANGTAG = re.compile(r"@([A-Za-z]+(?:-[A-Za-z0-9]+)*)")

_UNESCAPE = re.compile(r"\\(?:u([0-9A-Fa-f]{4})|U([0-9A-Fa-f]{8})|(.))", re.DOTALL)
_ECHAR = {"t": "\t", "b": "\b", "n": "\n", "r": "\r", "f": "\f", '"': '"', "'": "'", "\\": "\\"}


def _unescape(raw: str, line: int, col: int) -> str:
    def repl(m: re.Match) -> str:
        if m.group(1) is not None:
            return chr(int(m.group(1), 16))
        if m.group(2) is not None:
            cp = int(m.group(2), 16)
            if cp > 0x10FFFF:
                raise ParseError(f"\\U escape out of range: {m.group(0)}", line, col + m.start())
            return chr(cp)
        ch = m.group(3)
        if ch in _ECHAR:
            return _ECHAR[ch]
        raise ParseError(f"bad escape \\{ch}", line, col + m.start())

    return _UNESCAPE.sub(repl, raw)


def _skip_ws(text: str, pos: int) -> int:
    m = _WS.match(text, pos)
    return m.end() if m else pos


def _parse_term(text: str, pos: int, line: int, *, as_subject: bool, as_predicate: bool, bnode_ns: str) -> tuple[Term, int]:
    m = _IRIREF.match(text, pos)
    if m:
        return Term(IRI, _unescape(m.group(1), line, pos + 2)), m.end()
    if as_predicate:
        raise ParseError("expected IRI predicate", line, pos + 1)
    m = _BNODE.match(text, pos)
    if m:
        return Term(BLANK, normalize_bnode_label(m.group(1), bnode_ns)), m.end()
    if as_subject:
        raise ParseError("expected IRI or blank node subject", line, pos + 1)
    m = _STRING.match(text, pos)
    if m:
        value = _unescape(m.group(1), line, pos + 2)
        pos = m.end()
        if text.startswith("^^", pos):
            m = _IRIREF.match(text, pos + 2)
            if not m:
                raise ParseError("expected datatype IRI after ^^", line, pos + 3)
            return Term(LITERAL, value, datatype=_unescape(m.group(1), line, pos + 4)), m.end()
        m = _LANGTAG.match(text, pos)
        if m:
            return Term(LITERAL, value, lang=m.group(1)), m.end()
        return Term(LITERAL, value), pos
    raise ParseError("expected IRI, blank node, or literal object", line, pos + 1)


def _parse_line(text: str, line: int, bnode_ns: str) -> Triple:
    pos = _skip_ws(text, 0)
    subj, pos = _parse_term(text, pos, line, as_subject=True, as_predicate=False, bnode_ns=bnode_ns)
    pos = _skip_ws(text, pos)
    pred, pos = _parse_term(text, pos, line, as_subject=False, as_predicate=True, bnode_ns=bnode_ns)
    pos = _skip_ws(text, pos)
    obj, pos = _parse_term(text, pos, line, as_subject=False, as_predicate=False, bnode_ns=bnode_ns)
    pos = _skip_ws(text, pos)
    if pos >= len(text) or text[pos] != ".":
        raise ParseError("expected '.' statement terminator", line, pos + 1)
    pos = _skip_ws(text, pos + 1)
    if pos < len(text) and not text.startswith("#", pos):
        raise ParseError("trailing garbage after '.'", line, pos + 1)
    return Triple(subj, pred, obj)


def parse_ntriples(
    source: Iterable[str | bytes],
    on_error: Callable[[ParseError], None] | None = None,
    bnode_ns: str = "",
) -> Iterator[Triple]:
    """Yield triples from N-Triples text, one statement per line.

    `source` is any iterable of lines (an open text or binary file works).
    Blank lines and `#` comment lines are skipped. A malformed line raises
    ParseError; passing `on_error` switches to skip-and-count mode, where the
    handler receives each error and parsing continues with the next line.
    `bnode_ns` namespaces blank node labels (use a distinct tag per file when
    several files form one logical graph).
    """
    for lineno, raw in enumerate(source, start=1):
        if isinstance(raw, bytes):
            try:
                raw = raw.decode("utf-8")
            except UnicodeDecodeError as exc:
                err = ParseError(f"invalid UTF-8: {exc.reason}", lineno, exc.start + 1)
                if on_error is None:
                    raise err from None
                on_error(err)
                continue
        text = raw.rstrip("\r\n")
        stripped = text.lstrip(" \t")
        if not stripped or stripped.startswith("#"):
            continue
        try:
            yield _parse_line(text, lineno, bnode_ns)
        except ParseError as err:
            if on_error is None:
                raise
            on_error(err)


# --- writing -----------------------------------------------------------------

_LITERAL_ESCAPES = {ord("\\"): "\\\\", ord('"'): '\\"', ord("\n"): "\\n", ord("\r"): "\\r", ord("\t"): "\\t"}
for _cp in range(0x20):
    _LITERAL_ESCAPES.setdefault(_cp, "\\u%04X" % _cp)

_IRI_FORBIDDEN = re.compile(r'[\x00-\x20<>"{}|^`\\]')


def _escape_literal(value: str) -> str:
    return value.translate(_LITERAL_ESCAPES)


def _checked_iri(value: str) -> str:
    m = _IRI_FORBIDDEN.search(value)
    if m:
        raise ValueError(f"character {m.group(0)!r} not allowed in IRI: {value!r}")
    return value


def triple_line(t: Triple) -> str:
    """One statement in canonical form, without the newline."""
    if t.subject.kind == LITERAL:
        raise ValueError("subject is never a literal")
    if t.predicate.kind != IRI:
        raise ValueError("predicate is always an IRI")
    return f"{t.subject.nt()} {t.predicate.nt()} {t.object.nt()} ."


def serialize_ntriples(triples: Iterable[Triple], sink) -> None:
    """Write triples to a text sink, one canonical statement per line (LF).

    Round-trip stable: parsing the output yields the input triples in order.
    """
    write = sink.write
    for t in triples:
        write(triple_line(t))
        write("\n")
