"""Finite prefixes of inductive sequences, transformations between them and
bounded verifiers for cofinality (U), absorption (A) and extension (E)."""
from __future__ import annotations

from dataclasses import dataclass, field

from .core import Category
from .errors import IndexOutOfRange, MismatchedEndpoints
from .properties import FAILS, HOLDS, INCONCLUSIVE, PropertyReport


class InductiveSequence:
    """Objects ``u_0 .. u_{n-1}`` with bonds ``bond(i, j): u_i -> u_j``.

    Only the generator bonds ``(i, i+1)`` are required; other bonds are
    composed on demand and cached.  Entries may be overridden through
    :meth:`set_bond`, which is how inconsistent tables are produced in tests.
    """

    def __init__(self, cat: Category, objects, generators, meta=None):
        objects = list(objects)
        generators = list(generators)
        if not objects:
            raise ValueError("a sequence needs at least one object")
        if len(generators) != len(objects) - 1:
            raise ValueError("need exactly one generator bond per consecutive pair")
        for i, b in enumerate(generators):
            if b.source != objects[i] or b.target != objects[i + 1]:
                raise MismatchedEndpoints(f"generator bond {i} has wrong endpoints")
        self.category = cat
        self.objects = objects
        self._table = {(i, i + 1): b for i, b in enumerate(generators)}
        self.meta = dict(meta or {})

    def __len__(self):
        return len(self.objects)

    def __getitem__(self, i):
        return self.objects[i]

    @property
    def last(self) -> int:
        return len(self.objects) - 1

    def bond(self, i: int, j: int):
        if not 0 <= i <= j < len(self.objects):
            raise IndexOutOfRange(f"bond ({i}, {j}) outside 0..{self.last}")
        if i == j:
            return self.category.identity(self.objects[i])
        got = self._table.get((i, j))
        if got is None:
            # compose forward from the nearest cached bond out of i
            k = j - 1
            while (i, k) not in self._table:
                k -= 1
            got = self._table[(i, k)]
            for m in range(k, j):
                got = self.category.compose(self._table[(m, m + 1)], got)
                self._table[(i, m + 1)] = got
        return got

    def generator(self, i):
        return self._table[(i, i + 1)]

    def set_bond(self, i, j, arrow):
        self._table[(i, j)] = arrow

    def forget_composites(self):
        for key in [k for k in self._table if k[1] != k[0] + 1]:
            del self._table[key]

    def __repr__(self):
        return f"<sequence in {self.category.name} of length {len(self)}>"


def validate_sequence(seq: InductiveSequence, full: bool = False):
    """First ``(i, j, k)`` with ``bond(j,k) . bond(i,j) != bond(i,k)``, else None.

    By default only triples with ``k = j + 1`` are tested; together they force
    every bond to be the composite of generators, so full functoriality
    follows.  ``full=True`` tests every triple.
    """
    n = len(seq)
    cat = seq.category
    for k in range(2, n):
        for i in range(k - 1):
            js = range(i + 1, k) if full else (k - 1,)
            for j in js:
                if cat.compose(seq.bond(j, k), seq.bond(i, j)) != seq.bond(i, k):
                    return (i, j, k)
    return None


def restrict(seq: InductiveSequence, S) -> InductiveSequence:
    S = list(S)
    if not S:
        raise IndexOutOfRange("restriction needs a nonempty index set")
    if any(not 0 <= s < len(seq) for s in S) or any(a >= b for a, b in zip(S, S[1:])):
        raise IndexOutOfRange("restriction indices must be increasing and in range")
    gens = [seq.bond(a, b) for a, b in zip(S, S[1:])]
    meta = {"restricted_from": S}
    return InductiveSequence(seq.category, [seq[s] for s in S], gens, meta)


def chain_sequence(cat, objects, arrows=None) -> InductiveSequence:
    """Sequence from a list of objects; bonds default to first available arrow."""
    objects = list(objects)
    if arrows is None:
        arrows = [cat.hom(a, b, limit=1)[0] for a, b in zip(objects, objects[1:])]
    return InductiveSequence(cat, objects, arrows)


# transformations -------------------------------------------------------------
@dataclass
class SeqTransformation:
    """Components ``F(a): source[a] -> target[phi(a)]``."""

    source: InductiveSequence
    target: InductiveSequence
    phi: list
    components: list

    def __post_init__(self):
        if len(self.phi) != len(self.source) or len(self.components) != len(self.source):
            raise ValueError("one index and one component per source stage")
        if any(a > b for a, b in zip(self.phi, self.phi[1:])):
            raise ValueError("index map must be order preserving")
        for a, (p, c) in enumerate(zip(self.phi, self.components)):
            if not 0 <= p < len(self.target):
                raise IndexOutOfRange(f"phi({a}) = {p} outside the target")
            if c.source != self.source[a] or c.target != self.target[p]:
                raise MismatchedEndpoints(f"component {a} has wrong endpoints")

    def __call__(self, a):
        return self.components[a]


def naturality_failure(F: SeqTransformation):
    cat = F.source.category
    a, b = F.source, F.target
    for i in range(len(a)):
        for j in range(i, len(a)):
            lhs = cat.compose(b.bond(F.phi[i], F.phi[j]), F.components[i])
            rhs = cat.compose(F.components[j], a.bond(i, j))
            if lhs != rhs:
                return (i, j)
    return None


def is_natural(F: SeqTransformation) -> bool:
    return naturality_failure(F) is None


def equivalence_failure(F: SeqTransformation, G: SeqTransformation):
    """First failing instance of the two equivalence conditions, else None."""
    if F.source is not G.source or F.target is not G.target:
        if len(F.source) != len(G.source) or len(F.target) != len(G.target):
            raise MismatchedEndpoints("transformations must share endpoints")
    cat = F.source.category
    a, b = F.source, F.target
    n = len(a)
    for i in range(n):
        for j in range(i, n):
            if F.phi[i] <= G.phi[j]:
                lhs = cat.compose(b.bond(F.phi[i], G.phi[j]), F.components[i])
                if lhs != cat.compose(G.components[j], a.bond(i, j)):
                    return (1, i, j)
            if G.phi[i] <= F.phi[j]:
                lhs = cat.compose(b.bond(G.phi[i], F.phi[j]), G.components[i])
                if lhs != cat.compose(F.components[j], a.bond(i, j)):
                    return (2, i, j)
    return None


def transformations_equivalent(F: SeqTransformation, G: SeqTransformation) -> bool:
    return equivalence_failure(F, G) is None


def identity_transformation(seq: InductiveSequence) -> SeqTransformation:
    cat = seq.category
    return SeqTransformation(seq, seq, list(range(len(seq))), [cat.identity(x) for x in seq.objects])


def shift(F: SeqTransformation, by: int = 1) -> SeqTransformation:
    """Post-compose every component with a later bond of the target."""
    top = len(F.target) - 1
    phi = [min(p + by, top) for p in F.phi]
    cat = F.source.category
    comps = [cat.compose(F.target.bond(p, q), c) for p, q, c in zip(F.phi, phi, F.components)]
    return SeqTransformation(F.source, F.target, phi, comps)


@dataclass(eq=False)
class SeqArrow:
    """An arrow of sequences given by a representative transformation.

    Finite prefixes only determine arrows relative to their length, which is
    recorded alongside the representative.
    """

    rep: SeqTransformation
    prefix_length: int = field(init=False)

    def __post_init__(self):
        self.prefix_length = len(self.rep.source)

    @property
    def source(self):
        return self.rep.source

    @property
    def target(self):
        return self.rep.target

    def __eq__(self, other):
        if not isinstance(other, SeqArrow):
            return NotImplemented
        return transformations_equivalent(self.rep, other.rep)

    __hash__ = None


def identity_arrow(seq) -> SeqArrow:
    return SeqArrow(identity_transformation(seq))


def compose_seq_arrows(G, F):
    """``G . F`` for arrows (or transformations) ``F: a -> b``, ``G: b -> c``."""
    g = G.rep if isinstance(G, SeqArrow) else G
    f = F.rep if isinstance(F, SeqArrow) else F
    if f.target is not g.source:
        raise MismatchedEndpoints("inner target must be the outer source")
    cat = f.source.category
    phi = [g.phi[p] for p in f.phi]
    comps = [cat.compose(g.components[p], c) for p, c in zip(f.phi, f.components)]
    out = SeqTransformation(f.source, g.target, phi, comps)
    return SeqArrow(out) if isinstance(G, SeqArrow) or isinstance(F, SeqArrow) else out


# conditions (U), (A), (E) -----------------------------------------------------
def settled_horizon(seq: InductiveSequence, bound: int) -> int:
    """Largest stage up to which a builder guarantees absorption at ``bound``.

    Uses the first-visit steps and locality the builder records in
    ``seq.meta`` (locality ``None`` means every one-point extension was
    absorbed); sequences without that metadata are assumed settled.
    """
    first = seq.meta.get("first_visit")
    if first is None:
        return seq.last
    loc = seq.meta.get("locality")
    depth = bound - 1
    if loc is not None and depth > loc:
        return -1
    horizon = -1
    for xi in range(len(seq)):
        cur = xi
        ok = True
        for _ in range(depth):
            step = first.get(cur)
            if step is None or step > seq.last:
                ok = False
                break
            cur = step
        if not ok:
            break
        horizon = xi
    return horizon


def check_U(seq: InductiveSequence, bound: int) -> PropertyReport:
    cat = seq.category
    checked = 0
    for x in cat.objects(bound):
        checked += 1
        if not any(cat.hom(x, seq[i], limit=1) for i in reversed(range(len(seq)))):
            return PropertyReport("U", bound, FAILS, x, {"objects": checked})
    return PropertyReport("U", bound, HOLDS, None, {"objects": checked})


def _verdict(name, bound, miss, stats, horizon_given, settled, notes):
    if miss is None:
        return PropertyReport(name, bound, HOLDS, None, stats, notes)
    stage = miss[0]
    if horizon_given or stage <= settled:
        return PropertyReport(name, bound, FAILS, miss, stats, notes)
    notes = notes + [f"miss at stage {stage} beyond settled horizon {settled}"]
    return PropertyReport(name, bound, INCONCLUSIVE, miss, stats, notes)


def absorbs(seq, xi, f):
    """Some ``g`` with ``g . f == bond(xi, eta)``; searching the last stage
    suffices since later bonds carry any witness forward."""
    found = seq.category.factor(f, seq.bond(xi, seq.last), limit=1)
    return found[0] if found else None


def check_A(seq: InductiveSequence, bound: int, horizon: int | None = None) -> PropertyReport:
    """(A): every ``f: u_xi -> y`` (``|y| <= bound``) is absorbed by a later bond.

    With an explicit ``horizon`` only stages up to it are quantified and any
    miss is a failure.  Without one every stage is checked, but misses past
    the builder's settled horizon are reported as inconclusive.
    """
    cat = seq.category
    settled = settled_horizon(seq, bound)
    top = seq.last if horizon is None else min(horizon, seq.last)
    ys = cat.objects(bound)
    checked = 0
    miss = None
    for xi in range(top + 1):
        u = seq[xi]
        for y in ys:
            if getattr(cat, "injective", False) and cat.size(y) < cat.size(u):
                continue
            for f in cat.hom(u, y):
                checked += 1
                if absorbs(seq, xi, f) is None:
                    miss = (xi, f)
                    break
            if miss:
                break
        if miss:
            break
    stats = {"arrows": checked, "stages": top + 1, "settled": settled}
    return _verdict("A", bound, miss, stats, horizon is not None, settled, [])


def check_E(seq: InductiveSequence, bound: int, horizon: int | None = None) -> PropertyReport:
    """(E): every ``f: a -> b`` and ``g: a -> u_alpha`` close through a later stage.

    The horizon has the same meaning as for :func:`check_A`.
    """
    cat = seq.category
    settled = settled_horizon(seq, bound)
    top = (seq.last if settled < 0 else min(settled, seq.last)) if horizon is None else min(horizon, seq.last)
    objs = cat.objects(bound)
    spans = [(a, f) for a in objs for b in objs for f in cat.hom(a, b)]
    checked = 0
    miss = None
    notes = []
    if horizon is None and top < seq.last:
        notes.append(f"stages past {top} not quantified (settled horizon)")
    for alpha in range(top + 1):
        to_last = seq.bond(alpha, seq.last)
        homs: dict = {}
        for a, f in spans:
            if a not in homs:
                homs[a] = cat.hom(a, seq[alpha])
            for g in homs[a]:
                checked += 1
                if not cat.factor(f, cat.compose(to_last, g), limit=1):
                    miss = (alpha, f, g)
                    break
            if miss:
                break
        if miss:
            break
    stats = {"squares": checked, "stages": top + 1, "settled": settled}
    return _verdict("E", bound, miss, stats, horizon is not None, settled, notes)


def is_fraisse_object(cat: Category, u, bound: int) -> PropertyReport:
    """``u`` is cofinal up to ``bound`` and every arrow out of it is left-invertible."""
    checked = 0
    for x in cat.objects(bound):
        checked += 1
        if not cat.hom(x, u, limit=1):
            return PropertyReport("fraisse-object", bound, FAILS, ("not cofinal", x), {"objects": checked})
    arrows = 0
    ident = cat.identity(u)
    for x in cat.objects(bound):
        for f in cat.hom(u, x):
            arrows += 1
            if not cat.factor(f, ident, limit=1):
                stats = {"objects": checked, "arrows": arrows}
                return PropertyReport("fraisse-object", bound, FAILS, ("no left inverse", f), stats)
    return PropertyReport("fraisse-object", bound, HOLDS, None, {"objects": checked, "arrows": arrows})
