"""Text formats: the ``.qalg`` algebra language and ``.tord`` exponent matrices.

``.qalg`` is line oriented::

    # comment
    algebra example
    vertices 1 2 3
    arrow a 1 2
    arrow b 2 3
    relations
    a*b
    module M = S(1) + P(2) + I(a) + Q(1; a - 1/2 a)

Paths are written in traversal order with ``*``; ``e(v)`` is the trivial path.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .algebra import Arrow, MonomialPresentation, Path, Quiver, _is_factor
from .errors import DSLSyntaxError, NonParallelElement, ResolutionError
from .terms import Ideal, Quotient, Simple
from .tiled import ExponentMatrix

__all__ = [
    "AlgebraDocument",
    "parse_algebra",
    "print_algebra",
    "parse_module_expr",
    "parse_exponent_matrix",
    "print_exponent_matrix",
]

KEYWORDS = ("algebra", "vertices", "arrow", "relations", "module")
_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_']*")
_VERTEX = re.compile(r"[A-Za-z0-9_]+")


@dataclass(frozen=True)
class AlgebraDocument:
    name: str
    vertices: tuple[str, ...]
    arrows: tuple[Arrow, ...]
    relations: tuple[Path, ...]
    modules: tuple[tuple[str, tuple], ...] = ()

    @property
    def quiver(self):
        return Quiver(self.vertices, self.arrows)

    def presentation(self):
        return MonomialPresentation(self.quiver, frozenset(self.relations))

    def module(self, name):
        for n, terms in self.modules:
            if n == name:
                return terms
        raise KeyError(name)


# --- scanning ---------------------------------------------------------------


class _Cursor:
    """Character cursor over one line, reporting 1-based columns."""

    def __init__(self, text, line, offset=0):
        self.text = text
        self.line = line
        self.pos = offset

    @property
    def column(self):
        return self.pos + 1

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos] in " \t":
            self.pos += 1

    def at_end(self):
        self.skip_ws()
        return self.pos >= len(self.text)

    def peek(self):
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def error(self, msg, cls=DSLSyntaxError, column=None):
        return cls(msg, self.line, self.column if column is None else column)

    def expect(self, ch):
        if self.peek() != ch:
            found = repr(self.peek()) if self.peek() else "end of line"
            raise self.error(f"expected {ch!r}, found {found}")
        self.pos += 1

    def match(self, regex, what):
        self.skip_ws()
        m = regex.match(self.text, self.pos)
        if not m:
            found = repr(self.text[self.pos]) if self.pos < len(self.text) else "end of line"
            raise self.error(f"expected {what}, found {found}")
        self.pos = m.end()
        return m.group(0), m.start() + 1

    def finish(self):
        if not self.at_end():
            raise self.error(f"unexpected {self.text[self.pos]!r}")


def _strip_comment(line):
    i = line.find("#")
    return line if i < 0 else line[:i]


class _Resolver:
    def __init__(self, vertices, arrows):
        self.vertices = set(vertices)
        self.arrows = {a.name: a for a in arrows}

    def vertex(self, cur):
        v, col = cur.match(_VERTEX, "a vertex")
        if v not in self.vertices:
            raise cur.error(f"unknown vertex {v!r}", ResolutionError, col)
        return v

    def path(self, cur):
        """``e(v)`` or ``name*name*...``, checked for composability."""
        start = None
        cur.skip_ws()
        # "e" is reserved as an arrow name, so "e(" always starts a trivial path
        if re.match(r"e\s*\(", cur.text[cur.pos:]):
            cur.pos = cur.text.index("(", cur.pos) + 1
            v = self.vertex(cur)
            cur.expect(")")
            return Path(v, v)
        names = []
        while True:
            name, col = cur.match(_NAME, "an arrow name")
            arrow = self.arrows.get(name)
            if arrow is None:
                raise cur.error(f"unknown arrow {name!r}", ResolutionError, col)
            if names and self.arrows[names[-1]].target != arrow.source:
                raise cur.error(f"{names[-1]} then {name} is not a path", NonParallelElement, col)
            if start is None:
                start = arrow.source
            names.append(name)
            if cur.peek() != "*":
                break
            cur.pos += 1
        return Path(start, self.arrows[names[-1]].target, tuple(names))


_COEFF = re.compile(r"\d+(?:/\d+)?")


def _parse_element(cur, res, vertex):
    terms = []
    sign = 1
    if cur.peek() and cur.peek() in "+-":
        sign = -1 if cur.peek() == "-" else 1
        cur.pos += 1
    while True:
        coeff = Fraction(1)
        cur.skip_ws()
        if _COEFF.match(cur.text, cur.pos):
            text, col = cur.match(_COEFF, "a coefficient")
            num, _, den = text.partition("/")
            if den and int(den) == 0:
                raise cur.error("zero denominator", column=col)
            coeff = Fraction(int(num), int(den) if den else 1)
            if cur.peek() == "*":
                cur.pos += 1
        cur.skip_ws()
        path_col = cur.column
        p = res.path(cur)
        if p.source != vertex:
            raise cur.error(f"path {p} does not start at {vertex}", NonParallelElement, path_col)
        if terms and terms[0][1].target != p.target:
            raise cur.error(f"path {p} is not parallel to {terms[0][1]}", NonParallelElement, path_col)
        terms.append((sign * coeff, p))
        nxt = cur.peek()
        if nxt not in ("+", "-"):
            break
        sign = -1 if nxt == "-" else 1
        cur.pos += 1
    return tuple(terms)


def _parse_term(cur, res):
    head, col = cur.match(_NAME, "S(...), P(...), I(...) or Q(...)")
    cur.expect("(")
    if head == "S":
        term = Simple(res.vertex(cur))
    elif head == "P":
        v = res.vertex(cur)
        term = Ideal(Path(v, v))
    elif head == "I":
        term = Ideal(res.path(cur))
    elif head == "Q":
        v = res.vertex(cur)
        cur.expect(";")
        term = Quotient(v, _parse_element(cur, res, v))
    else:
        raise cur.error(f"unknown module constructor {head!r}", column=col)
    cur.expect(")")
    return term


def _parse_sum(cur, res):
    terms = [_parse_term(cur, res)]
    while cur.peek() == "+":
        cur.pos += 1
        terms.append(_parse_term(cur, res))
    cur.finish()
    return tuple(terms)


def parse_module_expr(text, quiver, line=1):
    """Parse ``S(1) + I(a*b) + Q(1; a - 2 b)`` against ``quiver``."""
    res = _Resolver(quiver.vertices, quiver.arrows)
    cur = _Cursor(text, line)
    if cur.at_end():
        raise cur.error("empty module expression")
    return _parse_sum(cur, res)


# --- documents --------------------------------------------------------------


def parse_algebra(text):
    name = ""
    vertices, arrows, relations, modules = [], [], [], []
    seen_vertices = set()
    seen_arrows = set()
    module_names = set()
    in_relations = False
    saw_vertices = False
    res = _Resolver((), ())

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = _strip_comment(raw)
        if not line.strip():
            continue
        cur = _Cursor(line, lineno)
        cur.skip_ws()
        m = re.match(r"[A-Za-z_]+(?=\s|$)", line[cur.pos:])
        word = m.group(0) if m else None
        if word not in KEYWORDS:
            if not in_relations:
                found = line.strip().split()[0]
                raise cur.error(f"expected a declaration keyword, found {found!r}")
            col = cur.column
            path = res.path(cur)
            cur.finish()
            if path.length < 2:
                raise cur.error("relations must have length at least 2", column=col)
            for other in relations:
                if other == path:
                    raise cur.error(f"duplicate relation {path}", column=col)
                if _is_factor(other.arrows, path.arrows):
                    raise cur.error(f"relation {path} contains the relation {other}", column=col)
                if _is_factor(path.arrows, other.arrows):
                    raise cur.error(f"relation {path} is contained in the relation {other}", column=col)
            relations.append(path)
            continue
        cur.pos += len(word)
        if word != "relations":
            in_relations = False
        if word == "algebra":
            if name:
                raise cur.error("algebra name given twice")
            name, _ = cur.match(_NAME, "an algebra name")
            cur.finish()
        elif word == "vertices":
            saw_vertices = True
            while not cur.at_end():
                v, col = cur.match(_VERTEX, "a vertex name")
                if v in seen_vertices:
                    raise cur.error(f"duplicate vertex {v!r}", column=col)
                seen_vertices.add(v)
                vertices.append(v)
            res = _Resolver(vertices, arrows)
        elif word == "arrow":
            a, col = cur.match(_NAME, "an arrow name")
            if a in seen_arrows:
                raise cur.error(f"duplicate arrow {a!r}", column=col)
            if a in ("S", "P", "I", "Q", "e"):
                raise cur.error(f"{a!r} is reserved", column=col)
            s = res.vertex(cur)
            t = res.vertex(cur)
            cur.finish()
            seen_arrows.add(a)
            arrows.append(Arrow(a, s, t))
            res = _Resolver(vertices, arrows)
        elif word == "relations":
            cur.finish()
            in_relations = True
        else:
            mname, col = cur.match(_NAME, "a module name")
            if mname in module_names:
                raise cur.error(f"duplicate module {mname!r}", column=col)
            cur.expect("=")
            terms = _parse_sum(cur, res)
            module_names.add(mname)
            modules.append((mname, terms))

    if not saw_vertices:
        raise DSLSyntaxError("no vertices declared", 1, 1)
    return AlgebraDocument(name, tuple(vertices), tuple(arrows), tuple(relations), tuple(modules))


def print_algebra(doc):
    lines = []
    if doc.name:
        lines.append(f"algebra {doc.name}")
    lines.append("vertices " + " ".join(doc.vertices) if doc.vertices else "vertices")
    for a in doc.arrows:
        lines.append(f"arrow {a.name} {a.source} {a.target}")
    if doc.relations:
        lines.append("relations")
        lines.extend(str(r) for r in doc.relations)
    for name, terms in doc.modules:
        lines.append(f"module {name} = " + " + ".join(str(t) for t in terms))
    return "\n".join(lines) + "\n"


# --- exponent matrices --------------------------------------------------------


def parse_exponent_matrix(text):
    """Whitespace-separated integer rows, optionally preceded by a line holding
    just the size ``n``; ``#`` starts a comment."""
    rows = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = _strip_comment(raw)
        if not line.strip():
            continue
        row = []
        for m in re.finditer(r"\S+", line):
            tok = m.group(0)
            if not re.fullmatch(r"[+-]?\d+", tok):
                raise DSLSyntaxError(f"expected an integer, found {tok!r}", lineno, m.start() + 1)
            row.append((int(tok), lineno, m.start() + 1))
        rows.append(row)
    if not rows:
        raise DSLSyntaxError("empty exponent matrix", 1, 1)
    if len(rows[0]) == 1 and rows[0][0][0] >= 1 and len(rows) == rows[0][0][0] + 1:
        rows = rows[1:]
    n = len(rows)
    for row in rows:
        if len(row) != n:
            lineno = row[0][1]
            raise DSLSyntaxError(f"row has {len(row)} entries, expected {n}", lineno, 1)
    return ExponentMatrix(tuple(tuple(x for x, _, _ in row) for row in rows))


def print_exponent_matrix(m):
    width = max(len(str(x)) for row in m.lam for x in row)
    out = [str(m.n)]
    out.extend(" ".join(str(x).rjust(width) for x in row) for row in m.lam)
    return "\n".join(out) + "\n"
