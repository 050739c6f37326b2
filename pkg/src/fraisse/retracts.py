"""Retractive pairs: arrows ``<e, r>`` with ``r . e = id`` and their proper
amalgamation through pushouts of the embedding parts.

For graphs the base category is :data:`~fraisse.core.FINGRAPH_HOM`, so
retractions only need to preserve edges; an injective homomorphism with such
a retraction automatically reflects edges.  For sets it is ``FINSET`` with
all maps.
"""
from __future__ import annotations

import random
from dataclasses import dataclass

from .core import FINGRAPH_HOM, FINSET, Arrow, Category, compose, finset, graph, identity
from .errors import (
    MismatchedEndpoints,
    NoCoherentRetractions,
    NoPushout,
    UniqueMediatorMissing,
)
from .properties import find_pushout, mediators
from .sequences import InductiveSequence


@dataclass(frozen=True)
class RPArrow:
    e: Arrow
    r: Arrow

    def __post_init__(self):
        if self.e.source != self.r.target or self.e.target != self.r.source:
            raise MismatchedEndpoints("e and r must run in opposite directions")
        if compose(self.r, self.e) != identity(self.e.source):
            raise ValueError("r . e is not the identity")
        if not self.e.injective or len(set(self.r.images)) != self.r.target.size:
            raise ValueError("e must be injective and r surjective")

    @property
    def source(self):
        return self.e.source

    @property
    def target(self):
        return self.e.target


def rp_identity(x) -> RPArrow:
    return RPArrow(identity(x), identity(x))


def rp_compose(g: RPArrow, f: RPArrow) -> RPArrow:
    """``<e(g) e(f), r(f) r(g)>``."""
    if f.target != g.source:
        raise MismatchedEndpoints("cannot compose retractive pairs with mismatched endpoints")
    return RPArrow(compose(g.e, f.e), compose(f.r, g.r))


class RetractiveCategory(Category):
    """Retractive pairs over a concrete base category."""

    def __init__(self, base: Category):
        self.base = base
        self.name = f"rp-{base.name}"

    def objects(self, bound):
        return self.base.objects(bound)

    def size(self, a):
        return self.base.size(a)

    def hom(self, a, b, limit: int = 0, budget: int = 0):
        out = []
        for e in self.base.hom(a, b):
            if not e.injective:
                continue
            for r in self.base.factor(e, self.base.identity(a)):
                out.append(RPArrow(e, r))
                if 0 < limit <= len(out):
                    return out
        return out

    def compose(self, g, f):
        return rp_compose(g, f)

    def identity(self, a):
        return rp_identity(a)


RP_FINSET = RetractiveCategory(FINSET)
RP_FINGRAPH = RetractiveCategory(FINGRAPH_HOM)


def base_for(arrow) -> Category:
    return FINSET if arrow.source.kind == "set" else FINGRAPH_HOM


@dataclass
class ProperReport:
    """Outcome of the four commuting diagrams of a proper amalgamation."""

    diagrams: dict
    witnesses: dict

    @property
    def amalgamates(self) -> bool:
        return self.diagrams["e-square"] and self.diagrams["r-square"]

    @property
    def proper(self) -> bool:
        return all(self.diagrams.values())

    def records(self):
        lines = [f"{name}={'commutes' if ok else 'fails'}" for name, ok in self.diagrams.items()]
        for name, w in self.witnesses.items():
            lines.append(f"{name}.witness={w[0]!r} lhs={w[1]!r} rhs={w[2]!r}")
        lines.append(f"proper={'yes' if self.proper else 'no'}")
        return lines


def _first_difference(p: Arrow, q: Arrow):
    for x in p.source.universe:
        if p(x) != q(x):
            return (x, p(x), q(x))
    return None


def verify_proper(f: RPArrow, g: RPArrow, h: RPArrow, k: RPArrow) -> ProperReport:
    """Check ``h f = k g`` (its e and r parts) and both mixed identities."""
    if f.source != g.source or h.source != f.target or k.source != g.target or h.target != k.target:
        raise MismatchedEndpoints("arrows do not form an amalgamation square")
    pairs = {
        "e-square": (compose(h.e, f.e), compose(k.e, g.e)),
        "r-square": (compose(f.r, h.r), compose(g.r, k.r)),
        "mixed-X-to-Y": (compose(g.e, f.r), compose(k.r, h.e)),
        "mixed-Y-to-X": (compose(f.e, g.r), compose(h.r, k.e)),
    }
    diagrams, witnesses = {}, {}
    for name, (lhs, rhs) in pairs.items():
        diff = _first_difference(lhs, rhs)
        diagrams[name] = diff is None
        if diff is not None:
            witnesses[name] = diff
    return ProperReport(diagrams, witnesses)


def _unique_mediator(cat, f2, g2, p, q, what):
    found = mediators(cat, f2, g2, p, q)
    if len(found) != 1:
        raise UniqueMediatorMissing(f"{what}: {len(found)} mediating arrows instead of one")
    return found[0]


def proper_amalgamate(f: RPArrow, g: RPArrow, cat: Category | None = None, verify_bound: int | None = 3):
    """Proper amalgamation from a pushout ``(h, k)`` of ``e(f), e(g)``.

    ``r(k)`` is the mediator ``j`` with ``j h = e(g) r(f)`` and ``j k = id``;
    ``r(h)`` is ``l`` with ``l k = e(f) r(g)`` and ``l h = id``.  With
    ``verify_bound`` the pushout is checked against every test cocone over
    objects of that size first.
    """
    if f.source != g.source:
        raise MismatchedEndpoints("a span needs a common domain")
    cat = cat or base_for(f.e)
    if verify_bound is not None:
        po = find_pushout(cat, f.e, g.e, verify_bound)
    else:
        po = cat.amalgamate(f.e, g.e)
    if po is None:
        raise NoPushout("the embedding parts have no pushout up to the bound")
    he, ke = po
    X, Y = f.target, g.target
    j = _unique_mediator(cat, he, ke, compose(g.e, f.r), identity(Y), "j")
    l = _unique_mediator(cat, he, ke, identity(X), compose(f.e, g.r), "l")
    if compose(f.r, l) != compose(g.r, j):
        raise UniqueMediatorMissing("r(f) l and r(g) j differ")
    return RPArrow(he, l), RPArrow(ke, j)


def sets_counterexample(variant: bool = False) -> dict:
    """The amalgamation of ``{a} -> {a,b}`` and ``{a} -> {a,c}`` into
    ``{a,b,c}`` with ``r(h)(c) = a`` (``b`` when ``variant``) and
    ``r(k)(b) = c``: the square commutes but is not proper."""
    Z, X, Y = finset(["a"]), finset(["a", "b"]), finset(["a", "c"])
    W = finset(["a", "b", "c"])
    f = RPArrow(Arrow(Z, X, ("a",)), Arrow(X, Z, ("a", "a")))
    g = RPArrow(Arrow(Z, Y, ("a",)), Arrow(Y, Z, ("a", "a")))
    rh_c = "b" if variant else "a"
    h = RPArrow(Arrow(X, W, ("a", "b")), Arrow.from_dict(W, X, {"a": "a", "b": "b", "c": rh_c}))
    k = RPArrow(Arrow(Y, W, ("a", "c")), Arrow.from_dict(W, Y, {"a": "a", "b": "c", "c": "c"}))
    rep = verify_proper(f, g, h, k)
    lhs = compose(g.e, f.r)("b")
    rhs = compose(k.r, h.e)("b")
    contrast = verify_proper(f, g, *proper_amalgamate(f, g))
    return {
        "arrows": (f, g, h, k),
        "report": rep,
        "amalgamates": rep.amalgamates,
        "proper": rep.proper,
        "witness": "b",
        "eg_rf_b": lhs,
        "rk_eh_b": rhs,
        "second_identity": rep.diagrams["mixed-Y-to-X"],
        "pushout_proper": contrast.proper,
    }


# lifting sequences -------------------------------------------------------------
def lift_sequence(x: InductiveSequence, allowed=None, base: Category | None = None) -> InductiveSequence:
    """A sequence of retractive pairs whose e-parts are the bonds of ``x``.

    Retractions of the generator bonds are chosen by backtracking so that
    every composite ``r(i, j)`` (the contravariant composite of generator
    retractions) satisfies ``allowed(i, j, r)``.  Without ``allowed`` the
    first retraction of every bond already works.
    """
    cat = base or x.category
    n = len(x)
    gens = [x.bond(i, i + 1) for i in range(n - 1)]
    options = []
    for i, e in enumerate(gens):
        rs = cat.factor(e, cat.identity(x[i]))
        if not rs:
            raise NoCoherentRetractions(f"bond ({i}, {i + 1}) has no retraction", triple=(i, i + 1, i + 1))
        options.append(rs)
    ok = allowed or (lambda i, j, r: True)
    chosen: list = []
    # composites[i] = r(i, len(chosen)) for the current partial choice
    stack = [0]
    last_fail = None
    composites_stack = [[]]
    while stack:
        depth = len(stack) - 1
        idx = stack[-1]
        if depth == n - 1:
            break
        if idx >= len(options[depth]):
            stack.pop()
            composites_stack.pop()
            if chosen:
                chosen.pop()
            if stack:
                stack[-1] += 1
            continue
        r = options[depth][idx]
        prev = composites_stack[-1]
        comps = [compose(c, r) for c in prev] + [r]
        bad = next(((i, depth + 1) for i, c in enumerate(comps) if not ok(i, depth + 1, c)), None)
        if bad is not None:
            last_fail = (bad[0], depth, bad[1])
            stack[-1] += 1
            continue
        chosen.append(r)
        composites_stack.append(comps)
        stack.append(0)
    if len(chosen) != n - 1:
        raise NoCoherentRetractions("no coherent choice of retractions", triple=last_fail)
    rpcat = RetractiveCategory(cat)
    arrows = [RPArrow(e, r) for e, r in zip(gens, chosen)]
    return InductiveSequence(rpcat, x.objects, arrows, {"lifted_from": x.category.name})


def pointed_constraint(x: InductiveSequence, point):
    """Constraint for :func:`lift_sequence`: the retraction of the last object
    onto the first sends the points outside the embedded copy to ``point``."""
    last = len(x) - 1

    def allowed(i, j, r):
        if (i, j) != (0, last):
            return True
        inside = set(x.bond(0, j).images)
        return all(r(p) == point for p in r.source.universe if p not in inside)

    return allowed


def greedy_lift(x: InductiveSequence, allowed=None, base: Category | None = None):
    """First-choice retractions without backtracking; ``None`` when stuck."""
    cat = base or x.category
    ok = allowed or (lambda i, j, r: True)
    comps: list = []
    chosen = []
    for i in range(len(x) - 1):
        e = x.bond(i, i + 1)
        for r in cat.factor(e, cat.identity(x[i])):
            new = [compose(c, r) for c in comps] + [r]
            if all(ok(a, i + 1, c) for a, c in enumerate(new)):
                chosen.append(r)
                comps = new
                break
        else:
            return None
    return chosen


def rp_functoriality_failures(seq: InductiveSequence):
    """Pairs where ``r(i, k) != r(i, j) r(j, k)`` or ``e`` fails to compose."""
    bad = []
    n = len(seq)
    for i in range(n):
        for j in range(i, n):
            for k in range(j, n):
                a, b, c = seq.bond(i, j), seq.bond(j, k), seq.bond(i, k)
                if compose(b.e, a.e) != c.e or compose(a.r, b.r) != c.r:
                    bad.append((i, j, k))
    return bad


def random_retractive_span(rng: random.Random, kind: str = "set", max_extra: int = 2):
    """A span ``f: Z -> X``, ``g: Z -> Y`` of retractive pairs with random data."""
    if kind == "set":
        nz = rng.randint(1, 3)
        Z = finset(nz)
        arrows = []
        for _ in range(2):
            extra = rng.randint(0, max_extra)
            X = finset(nz + extra)
            e = Arrow(Z, X, tuple(rng.sample(range(nz + extra), nz)))
            r = rng.choice(FINSET.factor(e, identity(Z)))
            arrows.append(RPArrow(e, r))
        return tuple(arrows)
    nz = rng.randint(1, 3)
    zedges = [(i, j) for i in range(nz) for j in range(i + 1, nz) if rng.random() < 0.5]
    Z = graph(nz, zedges)
    arrows = []
    while len(arrows) < 2:
        extra = rng.randint(0, max_extra)
        n = nz + extra
        edges = list(zedges) + [
            (i, j) for i in range(n) for j in range(max(i + 1, nz), n) if rng.random() < 0.5
        ]
        X = graph(n, edges)
        e = Arrow(Z, X, tuple(range(nz)))
        rs = FINGRAPH_HOM.factor(e, identity(Z))
        if rs:
            arrows.append(RPArrow(e, rng.choice(rs)))
    return tuple(arrows)
