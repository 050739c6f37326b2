"""Line-oriented text formats for structures, arrows, sequences, trees and
normed spaces.

Grammar (one directive per line, ``#`` lines are header/comments)::

    structure := HEADER [elements] line* "end"
    HEADER    := "graph" n | "linorder" n | "set" n | "tree" n | "pnspace" d
    elements  := "elements" JSON-array        (omitted when the universe is 0..n-1)
    line      := "edge" i j | "lt" i j | "parent" i j | "limit" i
               | "label" text | "vertex" q1 .. qd
    arrow     := "arrow" structure structure "map" i1 .. in
    sequence  := "seq" category length ("object" k structure)* ("bond" i j map)*
    matrix    := "matrix" rows cols ("row" q1 .. qc)*

Indices refer to positions in the universe, rationals are written ``p/q``.
Writing then reading a value gives it back exactly, and reading then
writing a file produced here gives back the same bytes.
"""
from __future__ import annotations

import json
from fractions import Fraction

from .core import Arrow, FinStructure, get_category
from .errors import ParseError
from .normed import PolyNormedSpace, RationalLinearMap
from .sequences import InductiveSequence
from .trees import BinTree, bintree

# headers -------------------------------------------------------------------------
def config_header(config: dict) -> str:
    return "".join(f"# {k}={config[k]}\n" for k in sorted(config))


def read_header(text: str) -> dict:
    out = {}
    for line in text.splitlines():
        if not line.startswith("# "):
            break
        key, _, value = line[2:].partition("=")
        out[key] = value
    return out


class _Lines:
    def __init__(self, text: str):
        self.lines = [
            (n + 1, ln.strip()) for n, ln in enumerate(text.splitlines()) if ln.strip() and not ln.startswith("#")
        ]
        self.pos = 0

    def peek(self):
        return self.lines[self.pos][1] if self.pos < len(self.lines) else None

    def next(self):
        if self.pos >= len(self.lines):
            raise ParseError("unexpected end of input")
        self.pos += 1
        return self.lines[self.pos - 1]

    def expect(self, word):
        n, line = self.next()
        parts = line.split()
        if parts[0] != word:
            raise ParseError(f"line {n}: expected {word!r}, got {parts[0]!r}")
        return n, parts


def _int(tok, n):
    try:
        return int(tok)
    except ValueError:
        raise ParseError(f"line {n}: expected an integer, got {tok!r}") from None


def _rat(tok, n):
    try:
        return Fraction(tok)
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"line {n}: expected a rational, got {tok!r}") from None


def _q(x: Fraction) -> str:
    return str(Fraction(x))


# structures -------------------------------------------------------------------------
_HEADERS = {"graph": "graph", "linorder": "linorder", "set": "set", "bintree": "tree", "pnspace": "pnspace"}


def dump_structure(s) -> str:
    if isinstance(s, PolyNormedSpace):
        out = [f"pnspace {s.dim}"]
        if s.label:
            out.append(f"label {s.label}")
        out += ["vertex " + " ".join(_q(x) for x in v) for v in s.vertices]
        return "\n".join(out + ["end"]) + "\n"
    n = s.size
    out = [f"{_HEADERS[s.kind]} {n}"]
    if s.universe != tuple(range(n)):
        out.append("elements " + json.dumps(list(s.universe)))
    if s.label:
        out.append(f"label {s.label}")
    idx = s.index
    if s.kind == "graph":
        edges = sorted(tuple(sorted((idx[x], idx[y]))) for x, y in s.data)
        out += [f"edge {i} {j}" for i, j in edges]
    elif s.kind == "linorder":
        pos = [idx[x] for x in s.data]
        out += [f"lt {a} {b}" for a, b in zip(pos, pos[1:])]
    elif s.kind == "bintree":
        out += [f"parent {idx[c]} {idx[p]}" for c, p in s.data]
        out += [f"limit {idx[x]}" for x in s.universe if x in s.limits]
    return "\n".join(out + ["end"]) + "\n"


def _read_structure(L: _Lines):
    n0, line = L.next()
    parts = line.split()
    kinds = {v: k for k, v in _HEADERS.items()}
    if parts[0] not in kinds or len(parts) != 2:
        raise ParseError(f"line {n0}: expected a structure header, got {line!r}")
    kind = kinds[parts[0]]
    size = _int(parts[1], n0)
    universe = list(range(size))
    label = ""
    edges, lts, parents, limits, verts = [], [], [], [], []
    while True:
        n, line = L.next()
        word, _, rest = line.partition(" ")
        toks = rest.split()
        if word == "end":
            break
        if word == "elements":
            try:
                universe = json.loads(rest)
            except json.JSONDecodeError as exc:
                raise ParseError(f"line {n}: bad element list") from exc
            if len(universe) != size:
                raise ParseError(f"line {n}: {len(universe)} elements for size {size}")
        elif word == "label":
            label = rest
        elif word == "edge" and kind == "graph":
            edges.append(tuple(_int(t, n) for t in toks))
        elif word == "lt" and kind == "linorder":
            lts.append(tuple(_int(t, n) for t in toks))
        elif word == "parent" and kind == "bintree":
            parents.append(tuple(_int(t, n) for t in toks))
        elif word == "limit" and kind == "bintree":
            limits.append(_int(toks[0], n))
        elif word == "vertex" and kind == "pnspace":
            verts.append(tuple(_rat(t, n) for t in toks))
        else:
            raise ParseError(f"line {n}: unexpected {word!r} in a {parts[0]} block")
    for group in (edges, lts, parents):
        for pair in group:
            if len(pair) != 2 or not all(0 <= i < max(size, 1) for i in pair):
                raise ParseError(f"line {n0}: index out of range in {pair}")
    try:
        if kind == "pnspace":
            return PolyNormedSpace(size, tuple(verts), label)
        u = tuple(universe)
        if kind == "graph":
            data = frozenset((u[i], u[j]) for i, j in edges)
            return FinStructure("graph", u, data, label)
        if kind == "linorder":
            if size <= 1:
                order = u
            else:
                nxt = dict(lts)
                start = (set(nxt) - set(nxt.values())).pop()
                order = [start]
                while order[-1] in nxt:
                    order.append(nxt[order[-1]])
                order = tuple(u[i] for i in order)
            return FinStructure("linorder", u, order, label)
        if kind == "set":
            return FinStructure("set", u, None, label)
        t = bintree([(u[c], u[p]) for c, p in parents], [u[i] for i in limits], universe=u)
        return t
    except (ValueError, KeyError, IndexError) as exc:
        raise ParseError(f"line {n0}: invalid {parts[0]}: {exc}") from exc


def load_structure(text: str):
    return _read_structure(_Lines(text))


# arrows ------------------------------------------------------------------------------
def _map_line(word, f: Arrow) -> str:
    return " ".join([word] + [str(p) for p in f.positions])


def _read_map(L, word, src, dst):
    n, parts = L.expect(word)
    pos = [_int(t, n) for t in parts[1:]]
    try:
        return Arrow.from_positions(src, dst, pos)
    except (ValueError, IndexError) as exc:
        raise ParseError(f"line {n}: bad map: {exc}") from exc


def dump_arrow(f: Arrow) -> str:
    return "arrow\n" + dump_structure(f.source) + dump_structure(f.target) + _map_line("map", f) + "\n"


def _read_arrow(L):
    L.expect("arrow")
    a = _read_structure(L)
    b = _read_structure(L)
    return _read_map(L, "map", a, b)


def load_arrow(text: str) -> Arrow:
    return _read_arrow(_Lines(text))


def dump_rparrow(p) -> str:
    return (
        "rparrow\n"
        + dump_structure(p.source)
        + dump_structure(p.target)
        + _map_line("e:", p.e)
        + "\n"
        + _map_line("r:", p.r)
        + "\n"
    )


def _read_rparrow(L):
    from .retracts import RPArrow

    L.expect("rparrow")
    a = _read_structure(L)
    b = _read_structure(L)
    e = _read_map(L, "e:", a, b)
    r = _read_map(L, "r:", b, a)
    try:
        return RPArrow(e, r)
    except ValueError as exc:
        raise ParseError(f"not a retractive pair: {exc}") from exc


def load_rparrows(text: str) -> list:
    L = _Lines(text)
    out = []
    while L.peek() is not None:
        out.append(_read_rparrow(L))
    return out


def load_arrows(text: str) -> list:
    L = _Lines(text)
    out = []
    while L.peek() is not None:
        out.append(_read_arrow(L))
    return out


# sequences ----------------------------------------------------------------------------
def dump_sequence(seq: InductiveSequence) -> str:
    out = [f"seq {seq.category.name} {len(seq)}\n"]
    for k, x in enumerate(seq.objects):
        out.append(f"object {k}\n")
        out.append(dump_structure(x))
    for i in range(len(seq) - 1):
        b = seq.generator(i)
        if hasattr(b, "e"):
            out.append(f"bond {i} {i + 1} " + _map_line("e:", b.e) + " " + _map_line("r:", b.r) + "\n")
        else:
            out.append(f"bond {i} {i + 1} " + " ".join(map(str, b.positions)) + "\n")
    return "".join(out)


def load_sequence(text: str) -> InductiveSequence:
    L = _Lines(text)
    n, parts = L.expect("seq")
    if len(parts) != 3:
        raise ParseError(f"line {n}: expected 'seq <category> <length>'")
    name = parts[1]
    length = _int(parts[2], n)
    rp = name.startswith("rp-")
    try:
        if rp:
            from .retracts import RetractiveCategory

            cat = RetractiveCategory(get_category(name[3:]))
        else:
            cat = get_category(name)
    except KeyError as exc:
        raise ParseError(f"line {n}: unknown category {name!r}") from exc
    objs = []
    for k in range(length):
        m, parts = L.expect("object")
        if _int(parts[1], m) != k:
            raise ParseError(f"line {m}: objects must be numbered in order")
        objs.append(_read_structure(L))
    gens = {}
    while L.peek() is not None:
        m, parts = L.expect("bond")
        i, j = _int(parts[1], m), _int(parts[2], m)
        if j != i + 1 or not 0 <= i < length - 1:
            raise ParseError(f"line {m}: only generator bonds (i, i+1) are accepted")
        try:
            if rp:
                from .retracts import RPArrow

                cut = parts.index("r:")
                e = Arrow.from_positions(objs[i], objs[j], [_int(t, m) for t in parts[4:cut]])
                r = Arrow.from_positions(objs[j], objs[i], [_int(t, m) for t in parts[cut + 1 :]])
                gens[i] = RPArrow(e, r)
            else:
                gens[i] = Arrow.from_positions(objs[i], objs[j], [_int(t, m) for t in parts[3:]])
        except (ValueError, IndexError) as exc:
            raise ParseError(f"line {m}: bad bond: {exc}") from exc
    if len(gens) != length - 1:
        raise ParseError("missing generator bonds")
    return InductiveSequence(cat, objs, [gens[i] for i in range(length - 1)])


# trees --------------------------------------------------------------------------------
def dump_tree(t: BinTree, max_order=None) -> str:
    text = dump_structure(t)
    if max_order is not None:
        text += "maxorder " + " ".join(str(t.index[x]) for x in max_order) + "\n"
    return text


def load_tree(text: str):
    """A tree and its optional ``maxorder`` (as nodes), or ``None``."""
    L = _Lines(text)
    t = _read_structure(L)
    if not isinstance(t, BinTree):
        raise ParseError("expected a tree block")
    order = None
    if L.peek() is not None:
        n, parts = L.expect("maxorder")
        try:
            order = [t.universe[_int(p, n)] for p in parts[1:]]
        except IndexError:
            raise ParseError(f"line {n}: maxorder index out of range") from None
    return t, order


# linear maps ----------------------------------------------------------------------------
def dump_linear_map(f: RationalLinearMap) -> str:
    out = ["linmap\n", dump_structure(f.source), dump_structure(f.target)]
    out.append(f"matrix {f.target.dim} {f.source.dim}\n")
    out += ["row " + " ".join(_q(x) for x in r) + "\n" for r in f.matrix]
    return "".join(out)


def _read_linear_map(L):
    L.expect("linmap")
    a = _read_structure(L)
    b = _read_structure(L)
    n, parts = L.expect("matrix")
    r, c = _int(parts[1], n), _int(parts[2], n)
    rows = []
    for _ in range(r):
        m, parts = L.expect("row")
        if len(parts) - 1 != c:
            raise ParseError(f"line {m}: expected {c} entries")
        rows.append(tuple(_rat(t, m) for t in parts[1:]))
    try:
        return RationalLinearMap(a, b, tuple(rows))
    except Exception as exc:
        raise ParseError(f"bad linear map: {exc}") from exc


def load_linear_maps(text: str) -> list:
    L = _Lines(text)
    out = []
    while L.peek() is not None:
        out.append(_read_linear_map(L))
    return out
