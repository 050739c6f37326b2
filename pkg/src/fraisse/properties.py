"""Bounded verifiers for amalgamation-type properties of a category.

Each verifier quantifies over the canonical objects of size at most
``bound`` and returns a :class:`PropertyReport`.  A failing report always
carries a witness that the matching ``replay_*`` function re-checks.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

from .core import Category
from .errors import MismatchedEndpoints

HOLDS = "holds-up-to-bound"
FAILS = "fails"
INCONCLUSIVE = "inconclusive"


@dataclass
class PropertyReport:
    name: str
    bound: int
    verdict: str
    witness: Any = None
    stats: dict = field(default_factory=dict)
    notes: list = field(default_factory=list)

    @property
    def holds(self) -> bool:
        return self.verdict == HOLDS

    def __bool__(self):
        return self.holds

    def records(self) -> list[str]:
        lines = [f"property={self.name}", f"bound={self.bound}", f"verdict={self.verdict}"]
        for k in sorted(self.stats):
            lines.append(f"{k}={self.stats[k]}")
        if self.witness is not None:
            lines.append(f"witness={_describe(self.witness)}")
        for note in self.notes:
            lines.append(f"note={note}")
        return lines

    def text(self) -> str:
        head = f"{self.name} (bound {self.bound}): {self.verdict}"
        body = [f"  {k}: {self.stats[k]}" for k in sorted(self.stats)]
        if self.witness is not None:
            body.append(f"  witness: {_describe(self.witness)}")
        body.extend(f"  note: {n}" for n in self.notes)
        return "\n".join([head] + body)


def _describe(w) -> str:
    if isinstance(w, (tuple, list)):
        return "; ".join(_describe(x) for x in w)
    return repr(w)


def _cap(bound, cap):
    return 2 * bound if cap is None else cap


# amalgamation ---------------------------------------------------------------
def spans(cat: Category, bound: int):
    """All spans ``(f, g)`` with a common domain among objects of size <= bound."""
    objs = cat.objects(bound)
    for a in objs:
        outs = [f for b in objs for f in cat.hom(a, b)]
        for f in outs:
            for g in outs:
                yield f, g


def find_cocone(cat: Category, f, g, cap: int):
    """First ``(f2, g2)`` with ``f2 . f == g2 . g`` into an object of size <= cap.

    The category's own amalgam constructor, when it has one, is tried first;
    otherwise the cocone objects are scanned in canonical order.
    """
    if f.source != g.source:
        raise MismatchedEndpoints("a span needs a common domain")
    build = getattr(cat, "amalgamate", None)
    if build is not None:
        try:
            f2, g2 = build(f, g)
        except (NotImplementedError, ValueError):
            pass
        else:
            if cat.size(f2.target) <= cap and cat.compose(f2, f) == cat.compose(g2, g):
                return f2, g2
    for d in cat.objects(cap):
        for f2 in cat.hom(f.target, d):
            found = cat.factor(g, cat.compose(f2, f), limit=1)
            if found:
                return f2, found[0]
    return None


def replay_amalgamation(cat, span, cap) -> bool:
    return find_cocone(cat, span[0], span[1], cap) is not None


def check_amalgamation(cat: Category, bound: int, cap: int | None = None) -> PropertyReport:
    if bound < 1:
        raise ValueError("bound must be at least 1")
    cap = _cap(bound, cap)
    checked = 0
    for f, g in spans(cat, bound):
        checked += 1
        if find_cocone(cat, f, g, cap) is None:
            return PropertyReport("amalgamation", bound, FAILS, (f, g), {"spans": checked, "cap": cap})
    return PropertyReport("amalgamation", bound, HOLDS, None, {"spans": checked, "cap": cap})


# joint embedding ------------------------------------------------------------
def find_joint(cat: Category, a, b, cap: int):
    build = getattr(cat, "joint", None)
    if build is not None:
        try:
            ia, ib = build(a, b)
        except NotImplementedError:
            pass
        else:
            if cat.size(ia.target) <= cap:
                return ia, ib
    for d in cat.objects(cap):
        fa = cat.hom(a, d, limit=1)
        if fa:
            fb = cat.hom(b, d, limit=1)
            if fb:
                return fa[0], fb[0]
    return None


def replay_jep(cat, pair, cap) -> bool:
    return find_joint(cat, pair[0], pair[1], cap) is not None


def check_jep(cat: Category, bound: int, cap: int | None = None) -> PropertyReport:
    if bound < 1:
        raise ValueError("bound must be at least 1")
    cap = _cap(bound, cap)
    objs = cat.objects(bound)
    checked = 0
    for i, a in enumerate(objs):
        for b in objs[i:]:
            checked += 1
            if find_joint(cat, a, b, cap) is None:
                return PropertyReport("jep", bound, FAILS, (a, b), {"pairs": checked, "cap": cap})
    return PropertyReport("jep", bound, HOLDS, None, {"pairs": checked, "cap": cap})


# pushouts -------------------------------------------------------------------
def mediators(cat: Category, f2, g2, p, q) -> list:
    """All ``h`` with ``h . f2 == p`` and ``h . g2 == q``."""
    return [h for h in cat.factor(f2, p) if cat.compose(h, g2) == q]


def is_pushout_up_to(cat: Category, f, g, f2, g2, bound: int) -> bool:
    if cat.compose(f2, f) != cat.compose(g2, g):
        return False
    for d in cat.objects(bound):
        for p in cat.hom(f.target, d):
            pf = cat.compose(p, f)
            for q in cat.factor(g, pf):
                if len(mediators(cat, f2, g2, p, q)) != 1:
                    return False
    return True


def find_pushout(cat: Category, f, g, bound: int, cap: int | None = None):
    """An amalgamating pair that passes the universal property against every
    test cocone over objects of size <= bound, or ``None``."""
    if f.source != g.source:
        raise MismatchedEndpoints("a span needs a common domain")
    cap = _cap(bound, cap)
    build = getattr(cat, "amalgamate", None)
    if build is not None:
        try:
            cand = build(f, g)
        except (NotImplementedError, ValueError):
            cand = None
        if cand is not None and is_pushout_up_to(cat, f, g, *cand, bound):
            return cand
    for d in cat.objects(cap):
        for f2 in cat.hom(f.target, d):
            for g2 in cat.factor(g, cat.compose(f2, f)):
                if is_pushout_up_to(cat, f, g, f2, g2, bound):
                    return f2, g2
    return None


# domination and cofinality --------------------------------------------------
class ListFamily:
    """A family of arrows given as a finite list."""

    def __init__(self, arrows):
        self.arrows = list(arrows)
        self._by_source: dict = {}
        for f in self.arrows:
            self._by_source.setdefault(f.source, []).append(f)

    def domains(self):
        return list(self._by_source)

    def out_of(self, a):
        return self._by_source.get(a, [])


def one_point_family(cat, bound: int) -> ListFamily:
    """All one-point extensions reachable from canonical objects of size < bound,
    so the family's targets have size at most ``bound``."""
    arrows = []
    todo = list(cat.objects(bound - 1))
    seen = set()
    while todo:
        a = todo.pop(0)
        if a in seen or cat.size(a) >= bound:
            continue
        seen.add(a)
        for _, f in cat.family_out_of(a):
            arrows.append(f)
            todo.append(f.target)
    return ListFamily(arrows)


def _composites(cat, family, a, size_cap):
    """``a``'s identity plus every composite of family arrows starting at ``a``."""
    out = [cat.identity(a)]
    seen = set(out)
    frontier = list(out)
    while frontier:
        nxt = []
        for c in frontier:
            for f in family.out_of(c.target):
                if cat.size(f.target) <= size_cap:
                    d = cat.compose(f, c)
                    if d not in seen:
                        seen.add(d)
                        out.append(d)
                        nxt.append(d)
        frontier = nxt
    return out


def is_cofinal(cat: Category, objects, bound: int) -> PropertyReport:
    objects = list(objects)
    checked = 0
    for x in cat.objects(bound):
        checked += 1
        if not any(cat.hom(x, o, limit=1) for o in objects):
            return PropertyReport("cofinal", bound, FAILS, x, {"objects": checked})
    return PropertyReport("cofinal", bound, HOLDS, None, {"objects": checked})


def is_dominating(cat: Category, family, bound: int, closure: bool = True) -> PropertyReport:
    """Check both domination clauses up to ``bound``.

    Clause one: the domains of the family are cofinal.  Clause two: every
    ``f: a -> x`` with ``a`` a domain is turned into a family arrow by some
    post-composition.  With ``closure`` the family is first closed under
    composition, which is what one-point-extension families need.
    """
    if not hasattr(family, "out_of"):
        family = ListFamily(family)
    notes = ["clauses (D1)/(D2) read as the two domination clauses"]
    doms = family.domains()
    c1 = is_cofinal(cat, doms, bound)
    if not c1.holds:
        rep = PropertyReport("dominating", bound, FAILS, ("clause 1", c1.witness), dict(c1.stats), notes)
        return rep
    size_cap = max((cat.size(f.target) for f in getattr(family, "arrows", [])), default=bound)
    checked = 0
    for a in doms:
        if cat.size(a) > bound:
            continue
        if closure:
            targets = _composites(cat, family, a, size_cap)[1:]
        else:
            targets = list(family.out_of(a))
        for x in cat.objects(bound):
            for f in cat.hom(a, x):
                checked += 1
                if not any(cat.factor(f, t, limit=1) for t in targets if t.source == a):
                    stats = {"objects": c1.stats["objects"], "arrows": checked}
                    return PropertyReport("dominating", bound, FAILS, ("clause 2", f), stats, notes)
    stats = {"objects": c1.stats["objects"], "arrows": checked}
    return PropertyReport("dominating", bound, HOLDS, None, stats, notes)
