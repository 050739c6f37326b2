"""Construction of Fraisse sequences, arrows between sequences, back-and-forth
isomorphisms and concrete limits of finite prefixes."""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import combinations, permutations, takewhile

from .core import Category
from .errors import (
    AmalgamationSearchFailed,
    ExtensionSearchFailed,
    NonInjectiveBond,
    PreconditionFailed,
    SizeLimitExceeded,
)
from .properties import FAILS, HOLDS, PropertyReport, check_amalgamation, check_jep, is_dominating, one_point_family
from .sequences import (
    InductiveSequence,
    SeqArrow,
    SeqTransformation,
    restrict,
    settled_horizon,
)


# scheduling -----------------------------------------------------------------
def cantor_unpair(c: int) -> tuple[int, int]:
    d = 0
    while (d + 1) * (d + 2) // 2 <= c:
        d += 1
    k = c - d * (d + 1) // 2
    return d - k, k


class Schedule:
    """Task list for the builder.

    Step ``stride * xi - 1`` (at least ``xi + 1``) is the first visit of stage
    ``xi``; the remaining steps revisit pairs ``(xi, k)`` in diagonal order,
    so every arrow index of every stage keeps coming back.
    """

    def __init__(self, stride: int, steps: int):
        self.stride = stride
        self.steps = steps
        firsts = {}
        xi = 0
        while True:
            s = self.first_visit(xi)
            if s >= steps:
                break
            firsts[s] = xi
            xi += 1
        self.tasks = [None]
        counter = 0
        for beta in range(1, steps):
            if beta in firsts:
                self.tasks.append(("first", firsts[beta], 0))
                continue
            while True:
                xi, k = cantor_unpair(counter)
                counter += 1
                if xi < beta:
                    break
            self.tasks.append(("revisit", xi, k))

    def first_visit(self, xi: int) -> int:
        return max(xi + 1, self.stride * xi - 1)

    def first_visits(self) -> dict:
        return {t[1]: b for b, t in enumerate(self.tasks) if t and t[0] == "first"}

    def task(self, beta: int):
        return self.tasks[beta]


_PRECHECKS: dict = {}

# candidates tried when looking for the next canonical object inside a stage;
# past it the object is joined in even if it might already be present
JOINT_BUDGET = 20_000


def _preconditions(cat, bound):
    key = (cat.name, bound)
    if key not in _PRECHECKS:
        reports = [check_amalgamation(cat, bound), check_jep(cat, bound)]
        # a dominating family is only meaningful (and only searchable) once
        # the category has the extension family the builder walks along
        if all(r.holds for r in reports) and hasattr(cat, "family_out_of"):
            reports.append(is_dominating(cat, one_point_family(cat, bound + 1), bound))
        _PRECHECKS[key] = reports
    return _PRECHECKS[key]


def canonical_object(cat, index: int):
    """The ``index``-th canonical object (sizes grow until enough exist)."""
    size = 1
    while True:
        objs = cat.objects(size)
        if len(objs) > index:
            return objs[index]
        size += 1


def build_fraisse(
    cat: Category,
    family=None,
    steps: int = 64,
    schedule_seed: int = 0,
    check: bool = True,
    bound: int = 3,
) -> InductiveSequence:
    """Build ``u_0 .. u_{steps-1}`` following the existence construction.

    ``family`` is ``None`` for the category's one-point extensions, or any
    object with ``out_of(a)`` listing arrows out of ``a``.  At the first
    visit of stage ``xi`` every family arrow out of ``u_xi`` of support at
    most ``cat.locality`` is absorbed; revisits absorb single arrows.  An
    arrow is absorbed by an existing witness when there is one, otherwise by
    the canonical amalgam.  Each new stage also receives the next canonical
    object (joint embedding step).
    """
    if steps < 1:
        raise ValueError("steps must be at least 1")
    if check:
        for rep in _preconditions(cat, bound):
            if not rep.holds:
                raise PreconditionFailed(f"{rep.name} fails at bound {bound}", rep)
    rng = random.Random(schedule_seed)
    sched = Schedule(cat.stride, steps)
    loc = cat.locality
    complete = cat.max_support is not None and cat.max_support <= loc
    objects = [canonical_object(cat, 0)]
    gens = []
    seq = InductiveSequence(cat, objects[:1], [])
    transcript = ["the colimit of a finite prefix is taken to be its last object"]

    for beta in range(1, steps):
        kind, xi, k = sched.task(beta)
        prev = seq.objects[-1]
        to_prev = seq.bond(xi, beta - 1)
        if kind == "first":
            # extensions come in order of support size, so stop at the first too large
            batch = [f for _, f in takewhile(lambda p: complete or len(p[0]) <= loc, _out_of(cat, family, seq[xi]))]
            rng.shuffle(batch)
        else:
            batch = [_revisit_arrow(cat, family, seq[xi], k, rng)]
        pending = []
        absorbed = 0
        for f in batch:
            if cat.factor(f, to_prev, limit=1):
                absorbed += 1
            else:
                pending.append((f, to_prev))
        if pending:
            e, _ = cat.absorb_batch(prev, pending)
        else:
            e = cat.identity(prev)
        # joint embedding step: u_beta must receive the beta-th object
        a = canonical_object(cat, beta)
        joined = False
        try:
            present = cat.hom(a, e.target, limit=1, budget=JOINT_BUDGET)
        except SizeLimitExceeded:
            present = []
        if not present:
            joined = True
            if getattr(cat, "kind", None) == "linorder" and rng.random() < 0.5:
                ia, iu = cat.joint(a, e.target)
            else:
                iu, ia = cat.joint(e.target, a)
            e = cat.compose(iu, e)
        gens.append(e)
        seq = _extend(seq, e)
        transcript.append(
            f"step {beta}: {kind} stage {xi}: {len(batch)} arrows, {absorbed} absorbed, "
            f"{len(pending)} amalgamated, joint={'yes' if joined else 'no'}, size={cat.size(e.target)}"
        )
    seq.meta.update(
        {
            "category": cat.name,
            "steps": steps,
            "seed": schedule_seed,
            "first_visit": sched.first_visits(),
            "locality": None if complete else loc,
            "transcript": transcript,
        }
    )
    return seq


def _extend(seq, e):
    seq.objects.append(e.target)
    seq._table[(len(seq.objects) - 2, len(seq.objects) - 1)] = e
    return seq


def _out_of(cat, family, a):
    if family is None:
        return cat.family_out_of(a)
    return [(frozenset(), f) for f in family.out_of(a)]


def _revisit_arrow(cat, family, a, k, rng):
    if family is None:
        size = cat.family_size(a)
        return cat.family_item(a, (k + rng.randrange(size)) % size)
    arrows = list(family.out_of(a))
    if not arrows:
        return cat.identity(a)
    return arrows[(k + rng.randrange(len(arrows))) % len(arrows)]


def absorption_failures(seq: InductiveSequence, upto: int | None = None):
    """Replay the first-visit batches: arrows of support within the
    recorded locality that are not absorbed by the bond to the last stage."""
    cat = seq.category
    first = seq.meta.get("first_visit", {})
    loc = seq.meta.get("locality")
    bad = []
    for xi, step in sorted(first.items()):
        if upto is not None and xi > upto:
            break
        target = seq.bond(xi, step)
        for supp, f in cat.family_out_of(seq[xi]):
            if loc is not None and len(supp) > loc:
                break
            if not cat.factor(f, target, limit=1):
                bad.append((xi, f))
    return bad


# arrows of sequences ----------------------------------------------------------
def embed_sequence(x: InductiveSequence, u: InductiveSequence, depth: int | None = None) -> SeqArrow:
    """Arrow ``x -> u`` built stage by stage from the extension property of ``u``."""
    cat = u.category
    depth = len(x) if depth is None else depth
    if depth > len(x):
        raise ValueError("depth exceeds the length of x")
    comps, phi = [], []
    for alpha in range(len(u)):
        found = cat.hom(x[0], u[alpha], limit=1)
        if found:
            comps.append(found[0])
            phi.append(alpha)
            break
    else:
        raise ExtensionSearchFailed("first object does not embed into the prefix", stage=0)
    for n in range(1, depth):
        step = x.bond(n - 1, n)
        prev, a_prev = comps[-1], phi[-1]
        for beta in range(a_prev, len(u)):
            found = cat.factor(step, cat.compose(u.bond(a_prev, beta), prev), limit=1)
            if found:
                comps.append(found[0])
                phi.append(beta)
                break
        else:
            raise ExtensionSearchFailed(f"stage {n} cannot be extended within the prefix", stage=n, arrow=step)
    src = x if depth == len(x) else restrict(x, range(depth))
    return SeqArrow(SeqTransformation(src, u, phi, comps))


@dataclass
class ZigZag:
    """Result of the back-and-forth construction.

    ``f[n]: u_{k[n]} -> v_{l[n]}`` and ``g[n]: v_{l[n]} -> u_{k[n+1]}``.
    """

    u: InductiveSequence
    v: InductiveSequence
    k: list
    l: list
    f: list
    g: list
    depth: int
    _cache: dict = field(default_factory=dict, repr=False)

    def forward(self, level: int) -> SeqTransformation:
        """``F`` on ``u[0..k[level]]`` into ``v[0..l[level]]``."""
        key = ("F", level)
        if key not in self._cache:
            cat = self.u.category
            src = _prefix(self.u, self.k[level], self._cache)
            dst = _prefix(self.v, self.l[level], self._cache)
            phi, comps = [], []
            for alpha in range(self.k[level] + 1):
                n = next(i for i in range(level + 1) if self.k[i] >= alpha)
                phi.append(self.l[n])
                comps.append(cat.compose(self.f[n], self.u.bond(alpha, self.k[n])))
            self._cache[key] = SeqTransformation(src, dst, phi, comps)
        return self._cache[key]

    def backward(self, level: int) -> SeqTransformation:
        """``G`` on ``v[0..l[level]]`` into ``u[0..k[level+1]]``."""
        key = ("G", level)
        if key not in self._cache:
            cat = self.u.category
            src = _prefix(self.v, self.l[level], self._cache)
            dst = _prefix(self.u, self.k[level + 1], self._cache)
            phi, comps = [], []
            for beta in range(self.l[level] + 1):
                n = next(i for i in range(level + 1) if self.l[i] >= beta)
                phi.append(self.k[n + 1])
                comps.append(cat.compose(self.g[n], self.v.bond(beta, self.l[n])))
            self._cache[key] = SeqTransformation(src, dst, phi, comps)
        return self._cache[key]

    @property
    def F(self) -> SeqArrow:
        return SeqArrow(self.forward(self.depth))

    @property
    def G(self) -> SeqArrow:
        return SeqArrow(self.backward(self.depth))

    def star_failures(self):
        """Instances ``(which, m, n)`` of the two zig-zag identities that fail."""
        cat = self.u.category
        bad = []
        for n in range(self.depth + 1):
            for m in range(n):
                lhs = cat.compose(self.g[n], cat.compose(self.v.bond(self.l[m], self.l[n]), self.f[m]))
                if lhs != self.u.bond(self.k[m], self.k[n + 1]):
                    bad.append((1, m, n))
                lhs = cat.compose(self.f[n], cat.compose(self.u.bond(self.k[m + 1], self.k[n]), self.g[m]))
                if lhs != self.v.bond(self.l[m], self.l[n]):
                    bad.append((2, m, n))
        return bad

    def round_trips(self):
        """``(G.F, inclusion)`` and ``(F.G, inclusion)`` transformation pairs."""
        from .sequences import compose_seq_arrows

        d = self.depth
        gf = compose_seq_arrows(self.backward(d), self.forward(d))
        fg = compose_seq_arrows(self.forward(d + 1), self.backward(d))
        return (gf, inclusion(gf.source, gf.target)), (fg, inclusion(fg.source, fg.target))


def _prefix(seq, top, cache):
    key = ("prefix", id(seq), top)
    if key not in cache:
        cache[key] = seq if top == seq.last else restrict(seq, range(top + 1))
    return cache[key]


def inclusion(short: InductiveSequence, long: InductiveSequence) -> SeqTransformation:
    """The identity-like transformation of a prefix into a longer prefix."""
    cat = short.category
    return SeqTransformation(short, long, list(range(len(short))), [cat.identity(x) for x in short.objects])


def _least_factor(seq, f, start, to_other, tag, n):
    cat = seq.category
    for eta in range(start, len(seq)):
        found = cat.factor(f, seq.bond(to_other, eta), limit=1)
        if found:
            return eta, found[0]
    raise AmalgamationSearchFailed(f"{tag} step {n} found no absorbing stage", span=f, stage=(tag, n))


def back_and_forth(u: InductiveSequence, v: InductiveSequence, f, depth: int) -> ZigZag:
    """Alternate absorption in ``v`` and ``u`` starting from ``f: u_k -> v_l``.

    Produces ``f_0 .. f_{depth+1}`` and ``g_0 .. g_{depth+1}`` with strictly
    increasing indices ``k_0 <= l_0 < k_1 <= l_1 < ...``, each chosen as the
    least index admitting a witness.
    """
    k0 = u.objects.index(f.source) if f.source in u.objects else None
    l0 = v.objects.index(f.target) if f.target in v.objects else None
    if k0 is None or l0 is None:
        raise ValueError("f must go from a stage of u to a stage of v")
    if l0 < k0:
        raise ValueError("the starting arrow must satisfy k <= l")
    ks, ls, fs, gs = [k0], [l0], [f], []
    for n in range(depth + 2):
        # zig: absorb f_n into u
        k_next, g = _least_factor(u, fs[n], max(ls[n] + 1, ks[n]), ks[n], "zig", n)
        gs.append(g)
        ks.append(k_next)
        if n == depth + 1:
            break
        # zag: absorb g_n into v
        l_next, f_next = _least_factor(v, g, max(k_next, ls[n]), ls[n], "zag", n)
        fs.append(f_next)
        ls.append(l_next)
    return ZigZag(u, v, ks, ls, fs, gs, depth)


# concrete limits --------------------------------------------------------------
@dataclass
class LimitStructure:
    """Union of a prefix along injective bonds, realised as its last stage."""

    structure: object
    provenance: dict
    stage_maps: list

    def points(self, stage: int) -> list:
        return [x for x in self.structure.universe if self.provenance[x] <= stage]


def materialize_limit(seq: InductiveSequence, depth: int | None = None) -> LimitStructure:
    depth = len(seq) if depth is None else depth
    top = depth - 1
    maps = []
    prov: dict = {}
    for xi in range(depth):
        b = seq.bond(xi, top)
        if not b.injective:
            raise NonInjectiveBond(f"bond ({xi}, {top}) is not injective")
        maps.append(b)
        for y in b.images:
            prov.setdefault(y, xi)
    return LimitStructure(seq[top], prov, maps)


def extension_axiom_failures(limit: LimitStructure, stage: int, size: int = 2):
    """Disjoint ``(A, B)`` of stage points with ``|A|+|B| <= size`` lacking a
    vertex adjacent to all of ``A`` and none of ``B``."""
    g = limit.structure
    n = g.size
    rel = g.relation
    pos = g.index
    pts = [pos[x] for x in limit.points(stage)]
    bad = []
    for r in range(size + 1):
        for combo in combinations(pts, r):
            for mask in range(1 << r):
                A = [p for i, p in enumerate(combo) if mask >> i & 1]
                B = [p for i, p in enumerate(combo) if not mask >> i & 1]
                used = set(combo)
                if not any(
                    w not in used and all(rel[w * n + a] for a in A) and not any(rel[w * n + b] for b in B)
                    for w in range(n)
                ):
                    bad.append((tuple(g.universe[p] for p in A), tuple(g.universe[p] for p in B)))
    return bad


def density_failures(limit: LimitStructure, stage: int):
    """Pairs of stage points of a linear order with nothing strictly between."""
    order = limit.structure.data
    rank = {x: i for i, x in enumerate(order)}
    pts = sorted(limit.points(stage), key=rank.__getitem__)
    return [(a, b) for a, b in zip(pts, pts[1:]) if rank[b] - rank[a] < 2]


HOMOGENEITY_POINTS = 12


def check_homogeneity(limit: LimitStructure, seq, k: int, stage: int | None = None) -> PropertyReport:
    """Partial isomorphisms between at most ``k`` points of ``stage`` extend,
    forth and back, by any further stage point to a partial isomorphism
    into the limit.

    ``stage`` defaults to the last settled stage with at most
    ``HOMOGENEITY_POINTS`` points.
    """
    s = limit.structure
    if stage is None:
        settled = max(settled_horizon(seq, 2), 0)
        stage = 0
        for xi in range(min(settled, len(limit.stage_maps) - 1) + 1):
            if len(limit.points(xi)) <= HOMOGENEITY_POINTS:
                stage = xi
    n = s.size
    rel = s.relation
    pos = s.index
    full = (1 << n) - 1
    # row[a]: points w with a R w; col[a]: points w with w R a
    row = [sum(1 << w for w in range(n) if rel[a * n + w]) for a in range(n)]
    col = [sum(1 << w for w in range(n) if rel[w * n + a]) for a in range(n)]
    pts = [pos[x] for x in limit.points(stage)]

    def targets(dom, img, x):
        """Points y such that the map extended by x -> y is still a partial isomorphism."""
        cand = full
        for a, b in zip(dom, img):
            cand &= row[b] if rel[a * n + x] else ~row[b]
            cand &= col[b] if rel[x * n + a] else ~col[b]
            cand &= ~(1 << b)
        return cand & full

    def is_iso(dom, img):
        return all(targets(dom[:i], img[:i], dom[i]) >> img[i] & 1 for i in range(len(dom)))

    checked = 0
    name = s.universe
    for r in range(1, k + 1):
        for dom in permutations(pts, r):
            for img in permutations(pts, r):
                if not is_iso(dom, img):
                    continue
                checked += 1
                for x in pts:
                    if x not in dom and not targets(dom, img, x):
                        wit = ("forth", tuple(name[p] for p in dom), tuple(name[p] for p in img), name[x])
                        return PropertyReport("homogeneity", k, FAILS, wit, {"maps": checked, "stage": stage})
                for y in pts:
                    if y not in img and not targets(img, dom, y):
                        wit = ("back", tuple(name[p] for p in dom), tuple(name[p] for p in img), name[y])
                        return PropertyReport("homogeneity", k, FAILS, wit, {"maps": checked, "stage": stage})
    return PropertyReport("homogeneity", k, HOLDS, None, {"maps": checked, "stage": stage})
