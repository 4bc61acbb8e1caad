"""Plain-text instance files.

Layout, one section after another::

    # comments run to the end of the line; blank lines are ignored
    monoid 3
    names 0 a b          # optional, n tokens
    0 a b                # n table rows of n tokens (names or indices)
    a a b
    b b b
    group 2              # optional; omitted means trivial group
    0 1
    1 0
    action               # optional; m rows of n tokens, row 0 the identity
    0 a b
    0 a b

When the identity of the table is not listed first, elements are
reordered (identity first, the rest in input order) before validation.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Optional

from .action import GammaStructure, trivial_action, validate_action, validate_group
from .errors import ParseError
from .monoid import validate_monoid

_TOKEN = re.compile(r"\S+")


@dataclass(frozen=True)
class InstanceFile:
    names: Optional[tuple]
    table: tuple
    group: Optional[tuple] = None
    action: Optional[tuple] = None
    reordered: bool = False


class _Lines:
    """Content lines as ``(lineno, [(column, token), ...])`` with comments gone."""

    def __init__(self, text: str):
        self.items = []
        for no, raw in enumerate(text.splitlines(), start=1):
            line = raw.split("#", 1)[0]
            toks = [(m.start() + 1, m.group()) for m in _TOKEN.finditer(line)]
            if toks:
                self.items.append((no, toks))
        self.pos = 0
        self.last_line = len(text.splitlines())

    def peek(self):
        return self.items[self.pos] if self.pos < len(self.items) else None

    def take(self, what: str):
        item = self.peek()
        if item is None:
            raise ParseError(f"unexpected end of file, expected {what}", line=self.last_line + 1, column=1)
        self.pos += 1
        return item


def _int(tok, line, col, what):
    try:
        v = int(tok)
    except ValueError:
        raise ParseError(f"expected {what}, got {tok!r}", line=line, column=col) from None
    return v


def _header(lines: _Lines, keyword: str, what: str) -> int:
    no, toks = lines.take(f"'{keyword} <{what}>'")
    if toks[0][1] != keyword:
        raise ParseError(f"expected '{keyword}', got {toks[0][1]!r}", line=no, column=toks[0][0])
    if len(toks) != 2:
        col = toks[2][0] if len(toks) > 2 else toks[0][0] + len(keyword)
        raise ParseError(f"'{keyword}' takes exactly one number", line=no, column=col)
    v = _int(toks[1][1], no, toks[1][0], what)
    if v < 1:
        raise ParseError(f"{what} must be positive", line=no, column=toks[1][0])
    return v


def _rows(lines: _Lines, count: int, width: int, resolve, what: str) -> tuple:
    out = []
    for _ in range(count):
        no, toks = lines.take(what)
        if len(toks) != width:
            col = toks[width][0] if len(toks) > width else toks[-1][0] + len(toks[-1][1])
            raise ParseError(f"{what} needs {width} entries, found {len(toks)}", line=no, column=col)
        out.append(tuple(resolve(tok, no, col) for col, tok in toks))
    return tuple(out)


def parse_instance(text: str) -> InstanceFile:
    """Parse an instance file; raises :class:`ParseError` with line and column."""
    lines = _Lines(text)
    if lines.peek() is None:
        raise ParseError("empty instance file", line=1, column=1)
    n = _header(lines, "monoid", "element count")
    names = None
    item = lines.peek()
    if item is not None and item[1][0][1] == "names":
        no, toks = lines.take("names")
        toks = toks[1:]
        if len(toks) != n:
            raise ParseError(f"expected {n} names, found {len(toks)}", line=no, column=(toks[-1][0] if toks else 1))
        seen = {}
        for col, tok in toks:
            if tok in seen:
                raise ParseError(f"duplicate name {tok!r}", line=no, column=col)
            seen[tok] = len(seen)
        names = tuple(tok for _, tok in toks)
    lookup = {nm: i for i, nm in enumerate(names)} if names else {}

    def element(tok, no, col):
        if tok in lookup:
            return lookup[tok]
        v = _int(tok, no, col, "element name or index")
        if not 0 <= v < n:
            raise ParseError(f"element index {v} out of range", line=no, column=col)
        return v

    table = _rows(lines, n, n, element, "table row")

    group = action = None
    item = lines.peek()
    if item is not None and item[1][0][1] == "group":
        m = _header(lines, "group", "group order")

        def gidx(tok, no, col):
            v = _int(tok, no, col, "group index")
            if not 0 <= v < m:
                raise ParseError(f"group index {v} out of range", line=no, column=col)
            return v

        group = _rows(lines, m, m, gidx, "group row")
        item = lines.peek()
        if item is not None and item[1][0][1] == "action":
            no, toks = lines.take("action")
            if len(toks) != 1:
                raise ParseError("'action' takes no arguments", line=no, column=toks[1][0])
            action = _rows(lines, m, n, element, "action row")
    item = lines.peek()
    if item is not None:
        no, toks = item
        raise ParseError(f"unexpected {toks[0][1]!r}", line=no, column=toks[0][0])
    return _identity_first(InstanceFile(names, table, group, action))


def _identity_first(f: InstanceFile) -> InstanceFile:
    n = len(f.table)
    ident = [e for e in range(n) if all(f.table[e][x] == x for x in range(n))]
    if not ident or ident[0] == 0:
        return f
    e = ident[0]
    order = [e] + [x for x in range(n) if x != e]
    new = {old: i for i, old in enumerate(order)}
    table = tuple(tuple(new[f.table[a][b]] for b in order) for a in order)
    names = tuple(f.names[a] for a in order) if f.names else tuple(str(a) for a in order)
    action = None
    if f.action is not None:
        action = tuple(tuple(new[row[a]] for a in order) for row in f.action)
    return InstanceFile(names, table, f.group, action, reordered=True)


def to_structure(f: InstanceFile, allow_nonabelian: bool = False) -> GammaStructure:
    """Validate the parsed tables; raises the validators' errors."""
    monoid = validate_monoid(f.names, f.table)
    if f.group is None:
        return trivial_action(monoid)
    group = validate_group(f.group, allow_nonabelian=allow_nonabelian)
    action = f.action
    if action is None:
        action = [list(range(monoid.size))] * group.size
    return validate_action(group, monoid, action)


def load_instance(text: str, allow_nonabelian: bool = False) -> GammaStructure:
    return to_structure(parse_instance(text), allow_nonabelian=allow_nonabelian)


def read_instance(path, allow_nonabelian: bool = False) -> GammaStructure:
    with open(path) as fh:
        return load_instance(fh.read(), allow_nonabelian=allow_nonabelian)


def format_instance(gs: GammaStructure) -> str:
    """Canonical text: names line only for non-default names, no trivial group."""
    n = gs.size
    names = gs.names
    out = [f"monoid {n}"]
    if names != tuple(str(i) for i in range(n)):
        out.append("names " + " ".join(names))
    for row in gs.table:
        out.append(" ".join(names[x] for x in row))
    if not gs.group.is_trivial:
        m = gs.group.size
        out.append(f"group {m}")
        for row in gs.group.table:
            out.append(" ".join(str(x) for x in row))
        out.append("action")
        for row in gs.action:
            out.append(" ".join(names[x] for x in row))
    return "\n".join(out) + "\n"


def write_instance(gs: GammaStructure, path) -> None:
    with open(path, "w") as fh:
        fh.write(format_instance(gs))
