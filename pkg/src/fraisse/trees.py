"""Bounded binary trees and their closed-initial-segment embeddings.

Nodes carry a level code ``(a, b)`` standing for the ordinal ``omega*a + b``.
A node listed in ``limits`` sits at a limit level: it is the supremum of the
chain strictly below it, even though a finite tree only stores that chain's
last element as its parent.  Trees without limit nodes have levels ``(0, d)``.

``height`` is the level code of the top level, so a tree whose maximal
nodes all have depth ``d`` has height ``(0, d)``; ``depth_height`` gives the
plain integer.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import cached_property
from itertools import permutations

from .core import Arrow, Category, FinStructure, compose, identity, register
from .errors import (
    CapExceeded,
    HeightExceeded,
    IncompleteEnumeration,
    InsufficientHeadroom,
    PreconditionFailed,
)


@dataclass(frozen=True)
class BinTree(FinStructure):
    """A finite rooted binary tree given by ``(child, parent)`` links."""

    limits: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        super().__post_init__()
        if not set(self.limits) <= set(self.universe):
            raise ValueError("limit nodes must belong to the tree")
        if self.root in self.limits:
            raise ValueError("the root cannot sit at a limit level")

    @cached_property
    def parent(self) -> dict:
        return dict(self.data)

    @cached_property
    def root(self):
        par = self.parent
        return next(x for x in self.universe if x not in par)

    @cached_property
    def children(self) -> dict:
        out = {x: [] for x in self.universe}
        for x in self.universe:
            p = self.parent.get(x)
            if p is not None:
                out[p].append(x)
        return {x: tuple(v) for x, v in out.items()}

    @cached_property
    def order(self) -> tuple:
        """Nodes in breadth-first order from the root."""
        out, todo = [], [self.root]
        while todo:
            out.extend(todo)
            todo = [c for x in todo for c in self.children[x]]
        return tuple(out)

    @cached_property
    def level(self) -> dict:
        lev = {self.root: (0, 0)}
        for x in self.order[1:]:
            a, b = lev[self.parent[x]]
            lev[x] = (a + 1, 0) if x in self.limits else (a, b + 1)
        return lev

    @cached_property
    def depth(self) -> dict:
        d = {self.root: 0}
        for x in self.order[1:]:
            d[x] = d[self.parent[x]] + 1
        return d

    @cached_property
    def height(self) -> tuple:
        return max(self.level.values())

    @property
    def depth_height(self) -> int:
        return max(self.depth.values())

    @cached_property
    def maximal(self) -> tuple:
        return tuple(x for x in self.universe if not self.children[x])

    def leq(self, x, y) -> bool:
        return x == y or self.related(x, y)

    @cached_property
    def meet_table(self) -> list:
        """``meet_table[i][j]`` is the position of the meet of nodes i and j."""
        n, idx, rel = self.size, self.index, self.relation
        table = [[0] * n for _ in range(n)]
        for x in self.order:
            i = idx[x]
            p = self.parent.get(x)
            for j in range(n):
                if i == j or rel[i * n + j]:
                    table[i][j] = i
                else:
                    table[i][j] = table[idx[p]][j]
        return table

    def meet(self, x, y):
        idx = self.index
        return self.universe[self.meet_table[idx[x]][idx[y]]]

    def below(self, x) -> list:
        """The chain ``[0, x]`` from the root up to ``x``."""
        out = [x]
        while x in self.parent:
            x = self.parent[x]
            out.append(x)
        return out[::-1]

    def above(self, x) -> list:
        out, todo = [], [x]
        while todo:
            out.extend(todo)
            todo = [c for y in todo for c in self.children[y]]
        return out

    def __repr__(self):
        return f"<bintree n={self.size} height={self.depth_height}>"


def bintree(parents, limits=(), universe=None) -> BinTree:
    """Build a tree from a ``{child: parent}`` map (or list of pairs)."""
    links = tuple(parents.items()) if isinstance(parents, dict) else tuple(map(tuple, parents))
    if universe is None:
        nodes = []
        for c, p in links:
            for x in (p, c):
                if x not in nodes:
                    nodes.append(x)
        universe = nodes or [0]
    return BinTree("bintree", tuple(universe), links, "", frozenset(limits))


def single_node(name=0) -> BinTree:
    return bintree((), universe=[name])


def path_tree(length: int) -> BinTree:
    return bintree({i: i - 1 for i in range(1, length + 1)}, universe=range(length + 1))


def subtree(T: BinTree, nodes) -> BinTree:
    """The tree induced on a downward-closed set of nodes."""
    keep = [x for x in T.universe if x in set(nodes)]
    links = {x: T.parent[x] for x in keep if x in T.parent}
    return bintree(links, [x for x in T.limits if x in links], universe=keep)


def build_standard_healthy(height: int, width_cap: int = 1 << 16) -> BinTree:
    """Finite-support 0/1 sequences of length at most ``height``.

    Nodes are the strings themselves; at finite heights every sequence has
    finite support, so this is the complete binary tree of that height.
    """
    if height < 0:
        raise ValueError("height must be non-negative")
    count = (1 << (height + 1)) - 1
    if count > width_cap:
        raise CapExceeded(f"{count} nodes exceed the cap {width_cap}")
    nodes = [""]
    links = {}
    frontier = [""]
    for _ in range(height):
        nxt = []
        for x in frontier:
            for bit in "01":
                links[x + bit] = x
                nxt.append(x + bit)
        nodes.extend(nxt)
        frontier = nxt
    return bintree(links, universe=nodes)


complete_tree = build_standard_healthy


def random_tree(rng: random.Random, max_height: int, max_nodes: int) -> BinTree:
    """A random binary tree with depth at most ``max_height``."""
    links: dict = {}
    depth = {0: 0}
    kids = {0: 0}
    target = rng.randint(1, max_nodes)
    while len(depth) < target:
        open_nodes = [x for x in depth if depth[x] < max_height and kids[x] < 2]
        if not open_nodes:
            break
        p = rng.choice(open_nodes)
        c = len(depth)
        links[c] = p
        depth[c] = depth[p] + 1
        kids[p] += 1
        kids[c] = 0
    return bintree(links, universe=range(len(depth)))


def is_healthy(T: BinTree) -> bool:
    """Every non-maximal node branches and every node reaches the top level."""
    top = T.height
    for x in T.universe:
        kids = T.children[x]
        if kids and len(kids) < 2:
            return False
        if not kids and T.level[x] != top:
            return False
    return True


# arrows -----------------------------------------------------------------------
def _as_map(f, T, S):
    if isinstance(f, Arrow):
        return f.as_dict(), f.source, f.target
    return dict(f), T, S


def t2_arrow_failure(f, T: BinTree | None = None, S: BinTree | None = None):
    """Why ``f`` is not a closed-initial-segment embedding, or ``None``."""
    m, T, S = _as_map(f, T, S)
    if set(m) != set(T.universe):
        return "map is not total on the source"
    if any(y not in S.index for y in m.values()):
        return "image leaves the target"
    if len(set(m.values())) != len(m):
        return "map is not injective"
    for x in T.universe:
        for y in T.universe:
            if m[T.meet(x, y)] != S.meet(m[x], m[y]):
                return f"meet of {x!r} and {y!r} is not preserved"
    image = set(m.values())
    for y in image:
        p = S.parent.get(y)
        if p is not None and p not in image:
            return f"image is not initial below {y!r}"
    for x in T.universe:
        if T.level[x] != S.level[m[x]]:
            return f"level of {x!r} is not preserved"
    for y in S.limits:
        if y not in image and S.parent[y] in image:
            return f"image is not closed: it contains the chain below {y!r}"
    return None


def is_t2_arrow(f, T: BinTree | None = None, S: BinTree | None = None) -> bool:
    return t2_arrow_failure(f, T, S) is None


@dataclass(frozen=True)
class NaturalDecomposition:
    maxima: tuple
    chains: tuple

    def chain_of(self, x) -> int:
        return next(k for k, c in enumerate(self.chains) if x in c)


def natural_decomposition(T: BinTree, max_order=None) -> NaturalDecomposition:
    """``T_0 = [0, w_0]`` and ``T_k = [0, w_k]`` minus the earlier chains."""
    order = tuple(T.maximal if max_order is None else max_order)
    if len(set(order)) != len(order) or set(order) != set(T.maximal):
        raise IncompleteEnumeration("the order must list every maximal node exactly once")
    used: set = set()
    chains = []
    for w in order:
        c = tuple(x for x in T.below(w) if x not in used)
        used.update(c)
        chains.append(c)
    return NaturalDecomposition(order, tuple(chains))


def decomposition_failures(T: BinTree, dec: NaturalDecomposition) -> list:
    """Problems with ``dec`` as a partition of ``T`` into connected chains."""
    out = []
    seen: list = [x for c in dec.chains for x in c]
    if len(seen) != len(set(seen)):
        out.append("chains overlap")
    if set(seen) != set(T.universe):
        out.append("chains do not cover the tree")
    for k, c in enumerate(dec.chains):
        for a, b in zip(c, c[1:]):
            if T.parent.get(b) != a:
                out.append(f"chain {k} is not connected at {b!r}")
    return out


def _grow(S: BinTree, U: BinTree, m: dict, todo, short):
    """Map the nodes in ``todo`` (parents first) onto fresh successors in U."""
    image = set(m.values())
    for s in todo:
        p = S.parent[s]
        y = m[p]
        free = [c for c in U.children[y] if c not in image]
        if not free:
            raise short(f"no free successor of {y!r} for {s!r}")
        match = [c for c in free if U.level[c] == S.level[s]]
        if not match:
            raise short(f"no successor of {y!r} at the level of {s!r}")
        m[s] = match[0]
        image.add(match[0])
    return m


def _chain_order(S: BinTree, skip=()):
    dec = natural_decomposition(S)
    return [x for c in dec.chains for x in c if x not in skip]


def embed_initial(T: BinTree, V: BinTree) -> Arrow:
    """A closed-initial-segment embedding of ``T`` into the healthy ``V``.

    Chains of the natural decomposition of ``T`` are placed one by one: each
    new chain starts at a successor of its base's image that is still free
    and climbs the tree from there.
    """
    if not is_healthy(V):
        raise PreconditionFailed("the target tree is not healthy")
    if T.height > V.height:
        raise HeightExceeded(f"height {T.height} exceeds {V.height}")
    order = _chain_order(T)
    m = {order[0]: V.root}
    _grow(T, V, m, order[1:], HeightExceeded)
    return Arrow.from_dict(T, V, m)


def extend_arrow(f: Arrow, S: BinTree) -> Arrow:
    """Extend ``f: T -> U`` to ``S``, where ``T`` is a closed initial subtree."""
    T, U = f.source, f.target
    inclusion = {x: x for x in T.universe}
    if not all(x in S.index for x in T.universe) or not is_t2_arrow(inclusion, T, S):
        raise PreconditionFailed("the source is not a closed initial subtree of S")
    why = t2_arrow_failure(f)
    if why is not None:
        raise PreconditionFailed(f"not a tree arrow: {why}")
    m = dict(f.as_dict())
    _grow(S, U, m, _chain_order(S, skip=set(T.universe)), InsufficientHeadroom)
    return Arrow.from_dict(S, U, m)


# the category ---------------------------------------------------------------------
def _shapes(n: int) -> list:
    """Unordered rooted binary tree shapes with exactly ``n`` nodes."""
    memo: dict = {1: [()]}

    def go(k):
        if k in memo:
            return memo[k]
        out = set()
        for sa in go(k - 1):
            out.add((sa,))
        for a in range(1, k):
            for sa in go(a):
                b = k - 1 - a
                if 1 <= b <= a:
                    for sb in go(b):
                        out.add(tuple(sorted((sa, sb))))
        memo[k] = sorted(out)
        return memo[k]

    return go(n)


def tree_from_shape(shape) -> BinTree:
    links: dict = {}
    counter = [0]

    def walk(sh, me):
        for sub in sh:
            counter[0] += 1
            c = counter[0]
            links[c] = me
            walk(sub, c)

    walk(shape, 0)
    return bintree(links, universe=range(counter[0] + 1))


class T2Category(Category):
    """Finite bounded binary trees with closed-initial-segment embeddings."""

    name = "t2"
    locality = None

    def objects(self, bound: int) -> list:
        return [tree_from_shape(s) for n in range(1, bound + 1) for s in _shapes(n)]

    def hom(self, a, b, limit: int = 0, budget: int = 0) -> list:
        out: list = []

        def go(todo, m, used):
            if 0 < limit <= len(out):
                return
            if not todo:
                if is_t2_arrow(m, a, b):
                    out.append(Arrow.from_dict(a, b, m))
                return
            x = todo[0]
            y = m[a.parent[x]]
            for c in b.children[y]:
                if c not in used and b.level[c] == a.level[x]:
                    m[x] = c
                    go(todo[1:], m, used | {c})
                    del m[x]

        go(list(a.order[1:]), {a.root: b.root}, {b.root})
        return out

    def compose(self, g, f):
        return compose(g, f)

    def identity(self, a):
        return identity(a)

    def _overlay(self, pairs, X, Y):
        """Glue X and Y along the given matched node pairs (roots included)."""
        ix, iy = {}, {}
        links, limits = {}, set()
        count = [0]

        def new(parent, lim):
            w = count[0]
            count[0] += 1
            if parent is not None:
                links[w] = parent
            if lim:
                limits.add(w)
            return w

        def walk(x, y, parent):
            lim = (x is not None and x in X.limits) or (y is not None and y in Y.limits)
            w = new(parent, lim)
            if x is not None:
                ix[x] = w
            if y is not None:
                iy[y] = w
            xs = list(X.children[x]) if x is not None else []
            ys = list(Y.children[y]) if y is not None else []
            matched = [(cx, cy) for cx in xs for cy in ys if (cx, cy) in pairs]
            xs = [c for c in xs if all(c != p for p, _ in matched)]
            ys = [c for c in ys if all(c != q for _, q in matched)]
            for cx in list(xs):
                for cy in ys:
                    if (cx in X.limits) == (cy in Y.limits):
                        matched.append((cx, cy))
                        xs.remove(cx)
                        ys.remove(cy)
                        break
            kids = matched + [(c, None) for c in xs] + [(None, c) for c in ys]
            if len(kids) > 2:
                raise ValueError("overlay would not be binary")
            for cx, cy in kids:
                walk(cx, cy, w)

        walk(X.root, Y.root, None)
        W = bintree(links, limits, universe=range(count[0]))
        return Arrow.from_dict(X, W, ix), Arrow.from_dict(Y, W, iy)

    def amalgamate(self, f, g):
        pairs = {(f(t), g(t)) for t in f.source.universe}
        return self._overlay(pairs, f.target, g.target)

    def joint(self, a, b):
        return self._overlay(set(), a, b)


T2 = register(T2Category())


def uniform_limits(T: BinTree, depths) -> BinTree:
    """The same tree with every node at one of the given depths made a limit."""
    depths = set(depths)
    return bintree(T.data, [x for x in T.universe if T.depth[x] in depths], universe=T.universe)


def all_t2_arrows(T: BinTree, S: BinTree) -> list:
    """Brute force over all injections; an oracle for :meth:`T2Category.hom`."""
    out = []
    for img in permutations(S.universe, T.size):
        m = dict(zip(T.universe, img))
        if is_t2_arrow(m, T, S):
            out.append(Arrow.from_dict(T, S, m))
    return out
