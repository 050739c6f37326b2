"""Finite structures, concrete arrows and category presentations.

Every category here is concrete: objects are :class:`FinStructure` values and
arrows are :class:`Arrow` values carrying an explicit element map, so two
arrows are equal exactly when their endpoints and maps agree.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Any, Iterable, Iterator

from . import kernels
from .errors import MismatchedEndpoints, SizeLimitExceeded

KINDS = ("graph", "linorder", "set", "bintree", "pnspace")


@dataclass(frozen=True)
class FinStructure:
    """A finite structure.

    ``data`` depends on ``kind``: a frozenset of edge pairs for graphs, the
    elements listed in increasing order for linear orders, ``None`` for sets,
    a tuple of ``(child, parent)`` pairs for binary trees and a tuple of
    rational vertices for polyhedral normed spaces.  ``label`` only serves to
    tell apart otherwise identical objects of hand-built categories.
    """

    kind: str
    universe: tuple
    data: Any = None
    label: str = ""

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown structure kind {self.kind!r}")
        if len(set(self.universe)) != len(self.universe):
            raise ValueError("universe has repeated elements")
        check = _VALIDATORS.get(self.kind)
        if check is not None:
            check(self)

    @property
    def size(self) -> int:
        return len(self.universe)

    def __len__(self):
        return len(self.universe)

    @cached_property
    def index(self) -> dict:
        return {x: i for i, x in enumerate(self.universe)}

    @cached_property
    def relation(self) -> bytes:
        """Row-major 0/1 matrix of the kind's binary relation over positions."""
        n = self.size
        rel = bytearray(n * n)
        idx = self.index
        if self.kind == "graph":
            for x, y in self.data:
                i, j = idx[x], idx[y]
                rel[i * n + j] = rel[j * n + i] = 1
        elif self.kind == "linorder":
            pos = [idx[x] for x in self.data]
            for a in range(n):
                for b in range(a + 1, n):
                    rel[pos[a] * n + pos[b]] = 1
        elif self.kind == "bintree":
            parent = dict(self.data)
            for x in self.universe:
                p = parent.get(x)
                while p is not None:
                    rel[idx[p] * n + idx[x]] = 1
                    p = parent.get(p)
        elif self.kind == "pnspace":
            raise TypeError("normed spaces carry no finite relation")
        return bytes(rel)

    def related(self, x, y) -> bool:
        n = self.size
        return bool(self.relation[self.index[x] * n + self.index[y]])

    def __repr__(self):
        tag = f" {self.label}" if self.label else ""
        return f"<{self.kind}{tag} n={self.size}>"


def _check_graph(s):
    idx = set(s.universe)
    if not isinstance(s.data, frozenset):
        raise ValueError("graph edges must be a frozenset")
    for e in s.data:
        x, y = e
        if x == y:
            raise ValueError("graph edges must be irreflexive")
        if x not in idx or y not in idx:
            raise ValueError(f"edge {e} leaves the universe")


def _check_linorder(s):
    if sorted(map(repr, s.data)) != sorted(map(repr, s.universe)) or len(s.data) != len(s.universe):
        raise ValueError("linear order must list every element exactly once")


def _check_set(s):
    if s.size == 0:
        raise ValueError("sets must be nonempty")


def _check_bintree(s):
    if s.size == 0:
        raise ValueError("trees must be nonempty")
    parent = dict(s.data)
    if len(parent) != len(s.data):
        raise ValueError("a node has two parents")
    members = set(s.universe)
    roots = [x for x in s.universe if x not in parent]
    if len(roots) != 1:
        raise ValueError("a tree has exactly one root")
    children: dict = {}
    for c, p in s.data:
        if c not in members or p not in members:
            raise ValueError("parent link leaves the universe")
        children.setdefault(p, []).append(c)
    if any(len(v) > 2 for v in children.values()):
        raise ValueError("tree is not binary")
    for x in s.universe:
        seen = set()
        while x in parent:
            if x in seen:
                raise ValueError("parent links contain a cycle")
            seen.add(x)
            x = parent[x]


_VALIDATORS = {
    "graph": _check_graph,
    "linorder": _check_linorder,
    "set": _check_set,
    "bintree": _check_bintree,
}


def graph(n_or_universe, edges=()) -> FinStructure:
    universe = tuple(range(n_or_universe)) if isinstance(n_or_universe, int) else tuple(n_or_universe)
    idx = {x: i for i, x in enumerate(universe)}
    norm = frozenset((x, y) if idx[x] < idx[y] else (y, x) for x, y in edges)
    return FinStructure("graph", universe, norm)


def chain(n: int) -> FinStructure:
    u = tuple(range(n))
    return FinStructure("linorder", u, u)


def linorder(order: Iterable) -> FinStructure:
    order = tuple(order)
    return FinStructure("linorder", order, order)


def finset(n_or_universe, label="") -> FinStructure:
    universe = tuple(range(n_or_universe)) if isinstance(n_or_universe, int) else tuple(n_or_universe)
    return FinStructure("set", universe, None, label)


@dataclass(frozen=True, eq=False)
class Arrow:
    """A concrete map ``source -> target``; ``images[k]`` is the image of
    ``source.universe[k]``."""

    source: FinStructure
    target: FinStructure
    images: tuple

    def __post_init__(self):
        if len(self.images) != self.source.size:
            raise ValueError("map must be total on the source")
        tidx = self.target.index
        for y in self.images:
            if y not in tidx:
                raise ValueError(f"image {y!r} is not an element of the target")

    @classmethod
    def from_dict(cls, source, target, mapping: dict) -> "Arrow":
        return cls(source, target, tuple(mapping[x] for x in source.universe))

    @classmethod
    def from_positions(cls, source, target, positions) -> "Arrow":
        tu = target.universe
        return cls(source, target, tuple(tu[p] for p in positions))

    def __call__(self, x):
        return self.images[self.source.index[x]]

    def as_dict(self) -> dict:
        return dict(zip(self.source.universe, self.images))

    @cached_property
    def positions(self) -> tuple:
        tidx = self.target.index
        return tuple(tidx[y] for y in self.images)

    @property
    def injective(self) -> bool:
        return len(set(self.images)) == len(self.images)

    def image(self) -> frozenset:
        return frozenset(self.images)

    def __eq__(self, other):
        if not isinstance(other, Arrow):
            return NotImplemented
        return (
            self.images == other.images
            and self.source == other.source
            and self.target == other.target
        )

    def __hash__(self):
        return hash((self.images, self.source.size, self.target.size))

    def __repr__(self):
        pairs = ", ".join(f"{x}->{y}" for x, y in zip(self.source.universe, self.images))
        return f"Arrow({self.source!r} => {self.target!r}: {pairs})"


Embedding = Arrow


def compose(g: Arrow, f: Arrow) -> Arrow:
    """``g . f``: first ``f``, then ``g``."""
    if f.target != g.source:
        raise MismatchedEndpoints(f"cannot compose: cod(f)={f.target!r} but dom(g)={g.source!r}")
    gi = g.source.index
    gim = g.images
    return Arrow(f.source, g.target, tuple(gim[gi[y]] for y in f.images))


def identity(a: FinStructure) -> Arrow:
    return Arrow(a, a, a.universe)


@dataclass(frozen=True)
class OpArrow:
    """An arrow of an opposite category, wrapping the reversed base arrow."""

    base: Any

    @property
    def source(self):
        return self.base.target

    @property
    def target(self):
        return self.base.source


class Category:
    """Uniform presentation consumed by the verifiers and builders.

    Subclasses provide ``objects``, ``hom``, ``compose`` and ``identity``;
    the remaining methods have generic (slow but correct) defaults.
    """

    name = "category"
    nonempty = True
    locality = 2
    stride = 2
    # largest support of a one-point extension; None when unbounded
    max_support = None
    max_search = 2_000_000

    def objects(self, bound: int) -> list:
        raise NotImplementedError

    def hom(self, a, b, limit: int = 0, budget: int = 0) -> list:
        raise NotImplementedError

    def compose(self, g, f):
        raise NotImplementedError

    def identity(self, a):
        raise NotImplementedError

    def size(self, a) -> int:
        return len(a.universe)

    def predicate(self, f) -> bool:
        return True

    def is_arrow(self, f) -> bool:
        return f in self.hom(f.source, f.target)

    def factor(self, g, k, limit: int = 0) -> list:
        """All ``h`` with ``h . g == k`` (``h: cod g -> cod k``)."""
        if g.source != k.source:
            raise MismatchedEndpoints("factor needs arrows with a common domain")
        out = []
        for h in self.hom(g.target, k.target):
            if self.compose(h, g) == k:
                out.append(h)
                if 0 < limit <= len(out):
                    break
        return out

    def is_isomorphic(self, a, b) -> bool:
        return self.isomorphism(a, b) is not None

    def isomorphism(self, a, b):
        if self.size(a) != self.size(b):
            return None
        for f in self.hom(a, b):
            for g in self.hom(b, a):
                if self.compose(g, f) == self.identity(a) and self.compose(f, g) == self.identity(b):
                    return f
        return None

    def __repr__(self):
        return f"<category {self.name}>"


class ConcreteCategory(Category):
    """Categories of structures of one kind, searched through the kernels.

    ``injective``/``reflect`` select embeddings (both true), homomorphisms
    (both false, relation preserved) or plain maps (empty relation).
    """

    kind = "set"
    injective = True
    reflect = True

    def identity(self, a):
        return identity(a)

    def compose(self, g, f):
        return compose(g, f)

    def _estimate(self, na, nb):
        if self.injective:
            if na > nb:
                return 0
            est = 1
            for k in range(na):
                est *= nb - k
            return est
        return nb ** na

    def _search(self, a, b, partial, limit, budget=0):
        maps = kernels.extend_maps(
            a.relation, a.size, b.relation, b.size, partial, self.injective, self.reflect, limit, budget
        )
        if maps is None:
            raise SizeLimitExceeded(f"search {a!r} -> {b!r} ran past its budget of {budget} candidates")
        out = []
        for pos in maps:
            f = Arrow.from_positions(a, b, pos)
            if self.predicate(f):
                out.append(f)
        return out

    def hom(self, a, b, limit: int = 0, budget: int = 0):
        """Arrows ``a -> b`` in lexicographic order of their images.

        Without ``limit`` the whole hom-set is listed, refused when it may
        exceed ``max_search``; ``budget`` caps the candidates tested.
        """
        if a.kind != self.kind or b.kind != self.kind:
            raise TypeError(f"{self.name} expects {self.kind} structures")
        if limit == 0 and self._estimate(a.size, b.size) > self.max_search:
            raise SizeLimitExceeded(f"hom search {a!r} -> {b!r} exceeds {self.max_search} candidates")
        return self._search(a, b, [-1] * a.size, limit, budget)

    def factor(self, g, k, limit: int = 0):
        if g.source != k.source:
            raise MismatchedEndpoints("factor needs arrows with a common domain")
        c, d = g.target, k.target
        partial = [-1] * c.size
        for p, q in zip(g.positions, k.positions):
            if partial[p] not in (-1, q):
                return []
            partial[p] = q
        return self._search(c, d, partial, limit)

    def is_arrow(self, f) -> bool:
        a, b = f.source, f.target
        if a.kind != self.kind or b.kind != self.kind:
            return False
        if self.injective and not f.injective:
            return False
        found = kernels.extend_maps(
            a.relation, a.size, b.relation, b.size, list(f.positions), self.injective, self.reflect, 1
        )
        return bool(found) and self.predicate(f)

    def isomorphism(self, a, b):
        if a.size != b.size:
            return None
        found = kernels.extend_maps(
            a.relation, a.size, b.relation, b.size, [-1] * a.size, True, True, 1
        )
        if not found:
            return None
        return Arrow.from_positions(a, b, found[0])

    # canonical forms -----------------------------------------------------
    def canonical(self, a):
        """``(rep, iso)`` with ``rep`` the canonical representative of ``a``."""
        code, perm = kernels.canonical_code(a.relation, a.size)
        rep = self._relabel(a, perm)
        inv = [0] * a.size
        for k, old in enumerate(perm):
            inv[old] = k
        return rep, Arrow(a, rep, tuple(inv))

    def _relabel(self, a, perm):
        raise NotImplementedError

    # constructions used by the builders ----------------------------------
    def amalgamate(self, f, g):
        raise NotImplementedError

    def joint(self, a, b):
        raise NotImplementedError

    def one_point_extensions(self, a) -> Iterator[tuple]:
        """Yield ``(support, arrow)`` for the one-point extensions of ``a``."""
        raise NotImplementedError

    def family_out_of(self, a) -> Iterator[tuple]:
        return self.one_point_extensions(a)

    def family_size(self, a) -> int:
        return sum(1 for _ in self.family_out_of(a))

    def family_item(self, a, k: int):
        """The ``k``-th arrow out of ``a`` in the builder's revisit order."""
        for i, (_, f) in enumerate(self.family_out_of(a)):
            if i == k:
                return f
        raise IndexError(k)

    def absorb_batch(self, base, legs):
        """Amalgamate every span ``(f, k)`` (``k`` into ``base``) at once.

        Returns ``e: base -> D`` and the arrows ``h_i`` with
        ``h_i . f_i == e . k_i``.
        """
        e = self.identity(base)
        hs = []
        for f, k in legs:
            f2, g2 = self.amalgamate(f, self.compose(e, k))
            hs = [self.compose(g2, h) for h in hs]
            hs.append(f2)
            e = self.compose(g2, e)
        return e, hs


def fresh_id(universe) -> int:
    return max((x for x in universe if isinstance(x, int)), default=-1) + 1


class FinGraph(ConcreteCategory):
    """Finite simple graphs with induced-subgraph embeddings."""

    name = "fingraph"
    kind = "graph"
    locality = 2
    stride = 4

    def __init__(self):
        self._levels: dict[int, list] = {}

    def _relabel(self, a, perm):
        n = a.size
        rel = a.relation
        edges = [(k, l) for k in range(n) for l in range(k + 1, n) if rel[perm[k] * n + perm[l]]]
        return graph(n, edges)

    def _level(self, n):
        if n in self._levels:
            return self._levels[n]
        if n > 8:
            raise SizeLimitExceeded("graph enumeration is limited to 8 vertices")
        if n == 1:
            level = [graph(1)]
        else:
            seen = {}
            for g in self._level(n - 1):
                m = n - 1
                for r in range(m + 1):
                    for nb in combinations(range(m), r):
                        h = graph(n, list(g.data) + [(x, m) for x in nb])
                        code, perm = kernels.canonical_code(h.relation, n)
                        if code not in seen:
                            seen[code] = self._relabel(h, perm)
            level = [seen[c] for c in sorted(seen)]
        self._levels[n] = level
        return level

    def objects(self, bound):
        out = []
        for n in range(1, bound + 1):
            out.extend(self._level(n))
        return out

    def amalgamate(self, f, g):
        """Free amalgam: glue ``cod f`` and ``cod g`` along ``dom f``."""
        b, c = f.target, g.target
        if not g.injective or not f.injective:
            raise ValueError("free amalgam needs injective legs")
        nb = b.size
        fmap = dict(zip(b.universe, range(nb)))
        gmap = {}
        over = dict(zip(g.images, f.images))
        nxt = nb
        for y in c.universe:
            if y in over:
                gmap[y] = fmap[over[y]]
            else:
                gmap[y] = nxt
                nxt += 1
        edges = [(fmap[x], fmap[y]) for x, y in b.data] + [(gmap[x], gmap[y]) for x, y in c.data]
        d = graph(nxt, edges)
        return Arrow.from_dict(b, d, fmap), Arrow.from_dict(c, d, gmap)

    def joint(self, a, b):
        na = a.size
        amap = dict(zip(a.universe, range(na)))
        bmap = dict(zip(b.universe, range(na, na + b.size)))
        edges = [(amap[x], amap[y]) for x, y in a.data] + [(bmap[x], bmap[y]) for x, y in b.data]
        d = graph(na + b.size, edges)
        return Arrow.from_dict(a, d, amap), Arrow.from_dict(b, d, bmap)

    def family_size(self, a):
        return 2 ** a.size

    def family_item(self, a, k):
        # bit i of k selects universe[i] as a neighbour of the new vertex
        new = fresh_id(a.universe)
        nb = [x for i, x in enumerate(a.universe) if k >> i & 1]
        y = graph(a.universe + (new,), list(a.data) + [(x, new) for x in nb])
        return Arrow(a, y, a.universe)

    def absorb_batch(self, base, legs):
        pos = {x: i for i, x in enumerate(base.universe)}
        edges = [(pos[x], pos[y]) for x, y in base.data]
        nxt = base.size
        maps = []
        for f, k in legs:
            over = {y: pos[z] for y, z in zip(f.images, k.images)}
            hm = {}
            for y in f.target.universe:
                if y in over:
                    hm[y] = over[y]
                else:
                    hm[y] = nxt
                    nxt += 1
            edges.extend((hm[x], hm[y]) for x, y in f.target.data)
            maps.append(hm)
        d = graph(nxt, edges)
        e = Arrow(base, d, tuple(range(base.size)))
        return e, [Arrow.from_dict(f.target, d, hm) for (f, _), hm in zip(legs, maps)]

    def one_point_extensions(self, a):
        new = fresh_id(a.universe)
        universe = a.universe + (new,)
        incl = a.universe
        for r in range(a.size + 1):
            for nb in combinations(a.universe, r):
                y = graph(universe, list(a.data) + [(x, new) for x in nb])
                yield frozenset(nb), Arrow(a, y, incl)


class FinGraphHom(FinGraph):
    """Finite simple graphs with edge-preserving maps."""

    name = "fingraphhom"
    injective = False
    reflect = False

    def amalgamate(self, f, g):
        # free amalgam is the pushout of injective homomorphisms as well
        return FinGraph.amalgamate(self, f, g)


class FinLinOrd(ConcreteCategory):
    """Finite linear orders with order embeddings."""

    name = "finlinord"
    kind = "linorder"
    locality = 2
    stride = 2
    max_support = 2

    def objects(self, bound):
        return [chain(n) for n in range(1, bound + 1)]

    def canonical(self, a):
        rep = chain(a.size)
        return rep, Arrow.from_dict(a, rep, {x: i for i, x in enumerate(a.data)})

    def amalgamate(self, f, g):
        """Merge ``cod f`` and ``cod g`` over ``dom f``; inside every gap the
        points of ``cod f`` come first."""
        a, b, c = f.source, f.target, g.target
        border_b = [b.data.index(f(x)) for x in a.data]
        border_c = [c.data.index(g(x)) for x in a.data]
        merged = []
        prev_b = prev_c = -1
        for k in range(len(a.data) + 1):
            end_b = border_b[k] if k < len(border_b) else b.size
            end_c = border_c[k] if k < len(border_c) else c.size
            merged.extend(("b", y) for y in b.data[prev_b + 1:end_b])
            merged.extend(("c", y) for y in c.data[prev_c + 1:end_c])
            if k < len(a.data):
                merged.append(("b", b.data[end_b]))
            prev_b, prev_c = end_b, end_c
        d = chain(len(merged))
        bmap, cmap = {}, {}
        for i, (side, y) in enumerate(merged):
            (bmap if side == "b" else cmap)[y] = i
        for x in a.data:
            cmap[g(x)] = bmap[f(x)]
        return Arrow.from_dict(b, d, bmap), Arrow.from_dict(c, d, cmap)

    def joint(self, a, b):
        d = chain(a.size + b.size)
        amap = {x: i for i, x in enumerate(a.data)}
        bmap = {x: a.size + i for i, x in enumerate(b.data)}
        return Arrow.from_dict(a, d, amap), Arrow.from_dict(b, d, bmap)

    def family_size(self, a):
        return a.size + 1

    def family_item(self, a, k):
        return next(f for i, (_, f) in enumerate(self.one_point_extensions(a)) if i == k)

    def one_point_extensions(self, a):
        new = fresh_id(a.universe)
        for k in range(a.size + 1):
            order = a.data[:k] + (new,) + a.data[k:]
            support = frozenset(a.data[max(k - 1, 0):k + 1])
            y = FinStructure("linorder", a.universe + (new,), order)
            yield support, Arrow(a, y, a.universe)


class FinSetPlus(ConcreteCategory):
    """Nonempty finite sets with all maps."""

    name = "finset"
    kind = "set"
    injective = False
    reflect = False
    locality = 0
    stride = 2
    max_support = 0

    def objects(self, bound):
        return [finset(n) for n in range(1, bound + 1)]

    def canonical(self, a):
        rep = finset(a.size)
        return rep, Arrow(a, rep, tuple(range(a.size)))

    def amalgamate(self, f, g):
        """Pushout: disjoint union of the codomains glued along the span."""
        b, c = f.target, g.target
        nodes = [("b", y) for y in b.universe] + [("c", y) for y in c.universe]
        parent = {v: v for v in nodes}

        def find(v):
            while parent[v] != v:
                parent[v] = parent[parent[v]]
                v = parent[v]
            return v

        for x in f.source.universe:
            r1, r2 = find(("b", f(x))), find(("c", g(x)))
            if r1 != r2:
                parent[max(r1, r2, key=nodes.index)] = min(r1, r2, key=nodes.index)
        labels: dict = {}
        for v in nodes:
            labels.setdefault(find(v), len(labels))
        d = finset(len(labels))
        bmap = {y: labels[find(("b", y))] for y in b.universe}
        cmap = {y: labels[find(("c", y))] for y in c.universe}
        return Arrow.from_dict(b, d, bmap), Arrow.from_dict(c, d, cmap)

    def joint(self, a, b):
        d = finset(a.size + b.size)
        return (
            Arrow(a, d, tuple(range(a.size))),
            Arrow(b, d, tuple(range(a.size, a.size + b.size))),
        )

    def one_point_extensions(self, a):
        new = fresh_id(a.universe)
        y = finset(a.universe + (new,))
        yield frozenset(), Arrow(a, y, a.universe)

    def family_out_of(self, a):
        point = finset(1)
        yield frozenset(), Arrow(a, point, (0,) * a.size)
        yield from self.one_point_extensions(a)


class ExplicitCategory(Category):
    """A small concrete category given by listing objects and arrows.

    Identities are added automatically; the arrow list must be closed under
    composition, which is checked on construction.
    """

    def __init__(self, name: str, obj_list: list, arrow_list: Iterable = ()):
        self.name = name
        self.obj_list = list(obj_list)
        self.arrow_list = list(arrow_list)
        arrows = [identity(a) for a in self.obj_list]
        for f in self.arrow_list:
            if f.source not in self.obj_list or f.target not in self.obj_list:
                raise ValueError(f"arrow {f!r} leaves the object list")
            if f not in arrows:
                arrows.append(f)
        self._arrows = arrows
        for f in arrows:
            for g in arrows:
                if f.target == g.source and compose(g, f) not in arrows:
                    raise ValueError(f"composite of {f!r} and {g!r} is missing")

    def objects(self, bound):
        return [a for a in self.obj_list if self.size(a) <= bound]

    def hom(self, a, b, limit: int = 0, budget: int = 0):
        out = [f for f in self._arrows if f.source == a and f.target == b]
        return out[:limit] if limit else out

    def compose(self, g, f):
        return compose(g, f)

    def identity(self, a):
        return identity(a)

    def all_arrows(self):
        return list(self._arrows)


class Opposite(Category):
    """The opposite of ``base``: same objects, reversed arrows."""

    def __init__(self, base: Category):
        self.base = base
        self.name = f"{base.name}^op"
        self.nonempty = base.nonempty

    def objects(self, bound):
        return self.base.objects(bound)

    def size(self, a):
        return self.base.size(a)

    def hom(self, a, b, limit: int = 0, budget: int = 0):
        return [OpArrow(h) for h in self.base.hom(b, a, limit)]

    def compose(self, g, f):
        if f.target != g.source:
            raise MismatchedEndpoints("cannot compose opposite arrows")
        return OpArrow(self.base.compose(f.base, g.base))

    def identity(self, a):
        return OpArrow(self.base.identity(a))

    def is_arrow(self, f):
        return isinstance(f, OpArrow) and self.base.is_arrow(f.base)


def opposite(cat: Category) -> Category:
    if isinstance(cat, Opposite):
        return cat.base
    return Opposite(cat)


def hom(cat: Category, a, b, limit: int = 0) -> list:
    return cat.hom(a, b, limit)


def enumerate_objects(cat: Category, size_bound: int) -> list:
    if size_bound < 1:
        raise ValueError("size_bound must be at least 1")
    return cat.objects(size_bound)


FINGRAPH = FinGraph()
FINGRAPH_HOM = FinGraphHom()
FINLINORD = FinLinOrd()
FINSET = FinSetPlus()

POINT = ExplicitCategory("point", [finset(1, "pt")])

_REGISTRY = {c.name: c for c in (FINGRAPH, FINGRAPH_HOM, FINLINORD, FINSET, POINT)}


def register(cat: Category) -> Category:
    _REGISTRY[cat.name] = cat
    return cat


def get_category(name: str) -> Category:
    if name.endswith("^op"):
        return opposite(get_category(name[:-3]))
    try:
        return _REGISTRY[name]
    except KeyError:
        raise KeyError(f"unknown category {name!r}; known: {sorted(_REGISTRY)}") from None
