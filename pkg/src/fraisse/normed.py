"""Finite-dimensional polyhedral normed spaces over the rationals.

A space is ``Q^d`` whose unit ball is the convex hull of a finite symmetric
set of vertices.  Norms are computed exactly as the optimum of the linear
program ``min sum(s)`` subject to ``V s = x, s >= 0``, by enumerating its
basic feasible solutions.  Maps are rational matrices acting on columns.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations, permutations, product

from .errors import CoconeMismatch, DimensionMismatch, NotIsometric, NotLeftInvertible

Vector = tuple


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def vec(*xs) -> Vector:
    return tuple(_frac(x) for x in xs)


# exact linear algebra ------------------------------------------------------------
def _rref(rows):
    """Reduced row echelon form; returns (matrix, pivot columns)."""
    m = [list(r) for r in rows]
    pivots = []
    r = 0
    ncols = len(m[0]) if m else 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                k = m[i][c]
                m[i] = [a - k * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def rank(rows) -> int:
    return len(_rref(rows)[1]) if rows else 0


def solve_square(cols, rhs):
    """Solve ``sum_k s_k cols[k] = rhs`` for linearly independent square
    ``cols``; ``None`` when singular."""
    d = len(rhs)
    aug = [[cols[k][i] for k in range(d)] + [rhs[i]] for i in range(d)]
    red, piv = _rref(aug)
    if piv[:d] != list(range(d)) or len(piv) > d:
        return None
    return [red[i][d] for i in range(d)]


def nullspace(rows, ncols: int) -> list:
    """A basis of ``{x : rows x = 0}``."""
    if not rows:
        return [tuple(Fraction(int(i == j)) for i in range(ncols)) for j in range(ncols)]
    red, piv = _rref(rows)
    free = [c for c in range(ncols) if c not in piv]
    basis = []
    for fcol in free:
        x = [Fraction(0)] * ncols
        x[fcol] = Fraction(1)
        for i, pc in enumerate(piv):
            x[pc] = -red[i][fcol]
        basis.append(tuple(x))
    return basis


def inverse(matrix):
    n = len(matrix)
    aug = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(matrix)]
    red, piv = _rref(aug)
    if piv[:n] != list(range(n)):
        raise ZeroDivisionError("matrix is singular")
    return [tuple(r[n:]) for r in red]


# spaces ----------------------------------------------------------------------------
@dataclass(frozen=True)
class PolyNormedSpace:
    dim: int
    vertices: tuple
    label: str = ""

    def __post_init__(self):
        verts = tuple(tuple(_frac(x) for x in v) for v in self.vertices)
        object.__setattr__(self, "vertices", verts)
        if any(len(v) != self.dim for v in verts):
            raise DimensionMismatch("vertex of the wrong dimension")
        vs = set(verts)
        if any(tuple(-x for x in v) not in vs for v in verts):
            raise ValueError("vertex set is not symmetric")
        if self.dim and rank(list(verts)) != self.dim:
            raise ValueError("unit ball is not full-dimensional")

    @property
    def zero(self) -> Vector:
        return tuple(Fraction(0) for _ in range(self.dim))

    def basis(self) -> list:
        return [tuple(Fraction(int(i == j)) for i in range(self.dim)) for j in range(self.dim)]

    @cached_property
    def _bases(self) -> list:
        """Linearly independent ``dim``-subsets of vertices (one per ± class)."""
        reps = []
        seen = set()
        for v in self.vertices:
            if v not in seen and any(v):
                seen.add(v)
                seen.add(tuple(-x for x in v))
                reps.append(v)
        signed = reps + [tuple(-x for x in v) for v in reps]
        return [c for c in combinations(signed, self.dim) if rank(list(c)) == self.dim]

    def norm(self, x) -> Fraction:
        return minkowski(self, x)

    def contains(self, x) -> bool:
        return minkowski(self, x) <= 1

    def __repr__(self):
        tag = f" {self.label}" if self.label else ""
        return f"<pnspace{tag} d={self.dim} vertices={len(self.vertices)}>"


def space(dim: int, vertices, label: str = "") -> PolyNormedSpace:
    return PolyNormedSpace(dim, tuple(vertices), label)


def sup_norm_space(dim: int) -> PolyNormedSpace:
    return space(dim, [tuple(Fraction(s) for s in signs) for signs in product((1, -1), repeat=dim)], "sup")


def sum_norm_space(dim: int) -> PolyNormedSpace:
    verts = []
    for i in range(dim):
        for s in (1, -1):
            verts.append(tuple(Fraction(s if j == i else 0) for j in range(dim)))
    return space(dim, verts, "sum")


def zero_space() -> PolyNormedSpace:
    return space(0, [], "zero")


def minkowski(sp: PolyNormedSpace, x) -> Fraction:
    """Exact gauge of the unit ball at ``x`` via basic feasible solutions."""
    x = tuple(_frac(t) for t in x)
    if len(x) != sp.dim:
        raise DimensionMismatch(f"vector of length {len(x)} in a space of dimension {sp.dim}")
    if not any(x):
        return Fraction(0)
    best = None
    for cols in sp._bases:
        s = solve_square(cols, x)
        if s is None or any(t < 0 for t in s):
            continue
        total = sum(s)
        if best is None or total < best:
            best = total
    if best is None:
        raise ArithmeticError("no feasible representation; the ball is degenerate")
    return best


def facets(sp: PolyNormedSpace) -> list:
    """Facet functionals ``a`` with ``a . v <= 1`` on the ball, equality on a facet."""
    out = set()
    verts = sp.vertices
    for cols in combinations(verts, sp.dim):
        if rank(list(cols)) != sp.dim:
            continue
        # a . c = 1 for every c in cols
        a = solve_square([tuple(c[i] for c in cols) for i in range(sp.dim)], [Fraction(1)] * sp.dim)
        if a is None:
            continue
        if all(sum(ai * vi for ai, vi in zip(a, v)) <= 1 for v in verts):
            out.add(tuple(a))
    return sorted(out)


# maps --------------------------------------------------------------------------------
@dataclass(frozen=True)
class RationalLinearMap:
    source: PolyNormedSpace
    target: PolyNormedSpace
    matrix: tuple = field(default=())

    def __post_init__(self):
        rows = tuple(tuple(_frac(x) for x in r) for r in self.matrix)
        if not rows:
            rows = tuple(() for _ in range(self.target.dim))
        object.__setattr__(self, "matrix", rows)
        if len(rows) != self.target.dim or any(len(r) != self.source.dim for r in rows):
            raise DimensionMismatch("matrix shape does not match the spaces")

    def __call__(self, x) -> Vector:
        x = tuple(_frac(t) for t in x)
        if len(x) != self.source.dim:
            raise DimensionMismatch("vector does not live in the source")
        return tuple(sum((a * b for a, b in zip(row, x)), Fraction(0)) for row in self.matrix)

    def columns(self) -> list:
        return [tuple(r[j] for r in self.matrix) for j in range(self.source.dim)]

    def norm_at_most_one(self) -> bool:
        return all(minkowski(self.target, self(v)) <= 1 for v in self.source.vertices)

    def operator_norm(self) -> Fraction:
        return max((minkowski(self.target, self(v)) for v in self.source.vertices), default=Fraction(0))


def linear_map(source, target, matrix) -> RationalLinearMap:
    return RationalLinearMap(source, target, tuple(tuple(r) for r in matrix))


def compose_maps(g: RationalLinearMap, f: RationalLinearMap) -> RationalLinearMap:
    if f.target.dim != g.source.dim:
        raise DimensionMismatch("cannot compose maps with mismatched dimensions")
    cols = [g(c) for c in f.columns()]
    rows = [tuple(c[i] for c in cols) for i in range(g.target.dim)]
    return RationalLinearMap(f.source, g.target, tuple(rows))


def identity_map(sp: PolyNormedSpace) -> RationalLinearMap:
    return RationalLinearMap(sp, sp, tuple(sp.basis()))


def isometry_failure(f: RationalLinearMap):
    """``None`` when ``f`` is an isometric embedding, else a reason.

    The upper bound is checked on the source vertices.  The lower bound
    holds iff every facet functional of the source lies in the hull of the
    target's facet functionals pulled back along ``f``.
    """
    for v in f.source.vertices:
        n = minkowski(f.target, f(v))
        if n > 1:
            return ("norm exceeds one at", v, n)
    if f.source.dim == 0:
        return None
    if rank(f.columns()) != f.source.dim:
        return ("map is not injective",)
    pulled = set()
    for b in facets(f.target):
        pulled.add(tuple(sum((b[i] * f.matrix[i][j] for i in range(f.target.dim)), Fraction(0)) for j in range(f.source.dim)))
    dual = space(f.source.dim, sorted(pulled))
    for a in facets(f.source):
        if minkowski(dual, a) > 1:
            return ("norm shrinks along facet", a)
    return None


def is_isometric(f: RationalLinearMap) -> bool:
    return isometry_failure(f) is None


# amalgamation ------------------------------------------------------------------------
@dataclass
class NormAmalgam:
    W: PolyNormedSpace
    f2: RationalLinearMap
    g2: RationalLinearMap
    f: RationalLinearMap
    g: RationalLinearMap
    f_left: RationalLinearMap
    g_left: RationalLinearMap
    x_complement: list
    y_complement: list

    def mediator(self, p: RationalLinearMap, q: RationalLinearMap) -> RationalLinearMap:
        """The unique linear ``h: W -> U`` with ``h f2 = p`` and ``h g2 = q``."""
        if compose_maps(p, self.f) != compose_maps(q, self.g):
            raise CoconeMismatch("p f and q g differ")
        U = p.target
        cols = [p(self.f(z)) for z in self.f.source.basis()]
        cols += [p(c) for c in self.x_complement]
        cols += [q(c) for c in self.y_complement]
        rows = tuple(tuple(c[i] for c in cols) for i in range(U.dim))
        h = RationalLinearMap(self.W, U, rows)
        if compose_maps(h, self.f2) != p or compose_maps(h, self.g2) != q:
            raise CoconeMismatch("mediator does not factor the cocone")
        return h

    def mediator_is_unique(self) -> bool:
        """``f2`` and ``g2`` jointly span ``W``, so a mediator is determined."""
        return rank(self.f2.columns() + self.g2.columns()) == self.W.dim


def _algebraic_left_inverse(f: RationalLinearMap) -> RationalLinearMap:
    """Some linear left inverse of an injective ``f`` (not necessarily contractive)."""
    cols = f.columns()
    dz, dx = f.source.dim, f.target.dim
    ext = list(cols)
    for e in f.target.basis():
        if len(ext) == dx:
            break
        if rank(ext + [e]) > len(ext):
            ext.append(e)
    full = [tuple(c[i] for c in ext) for i in range(dx)]
    inv = inverse(full)
    return RationalLinearMap(f.target, f.source, tuple(inv[:dz]))


def _assemble(f, g, fl, gl) -> NormAmalgam:
    Z, X, Y = f.source, f.target, g.target
    if Z != g.source:
        raise DimensionMismatch("a span needs a common domain")
    xc = nullspace(list(fl.matrix), X.dim)
    yc = nullspace(list(gl.matrix), Y.dim)
    dz, k1, k2 = Z.dim, len(xc), len(yc)
    dw = dz + k1 + k2

    def coords(x, fmap, left, comp):
        z = left(x)
        rest = tuple(a - b for a, b in zip(x, fmap(z)))
        c = solve_in_span(comp, rest)
        return z, c

    def f2_image(x):
        z, c = coords(x, f, fl, xc)
        return tuple(z) + tuple(c) + (Fraction(0),) * k2

    def g2_image(y):
        z, c = coords(y, g, gl, yc)
        return tuple(z) + (Fraction(0),) * k1 + tuple(c)

    verts = {f2_image(v) for v in X.vertices} | {g2_image(v) for v in Y.vertices}
    W = space(dw, sorted(verts), "amalgam")
    f2 = RationalLinearMap(X, W, _matrix_of(f2_image, X, dw))
    g2 = RationalLinearMap(Y, W, _matrix_of(g2_image, Y, dw))
    return NormAmalgam(W, f2, g2, f, g, fl, gl, xc, yc)


def _matrix_of(fn, src: PolyNormedSpace, dout: int):
    cols = [fn(e) for e in src.basis()]
    return tuple(tuple(c[i] for c in cols) for i in range(dout))


def solve_in_span(basis, x):
    """Coefficients of ``x`` in the given independent vectors."""
    if not basis:
        if any(x):
            raise ValueError("vector is not in the span")
        return []
    d = len(x)
    aug = [[b[i] for b in basis] + [x[i]] for i in range(d)]
    red, piv = _rref(aug)
    k = len(basis)
    if k in piv:
        raise ValueError("vector is not in the span")
    out = [Fraction(0)] * k
    for i, pc in enumerate(piv):
        out[pc] = red[i][k]
    return out


def amalgamate_norms(f: RationalLinearMap, g: RationalLinearMap, check: bool = True) -> NormAmalgam:
    """``W = Z + X1 + Y1`` normed by the hull of the embedded unit balls."""
    if check:
        for name, m in (("f", f), ("g", g)):
            why = isometry_failure(m)
            if why is not None:
                raise NotIsometric(f"{name} is not isometric: {why}")
    return _assemble(f, g, _algebraic_left_inverse(f), _algebraic_left_inverse(g))


def pushout_norms(f, g, f_left, g_left, check: bool = True) -> NormAmalgam:
    """As :func:`amalgamate_norms`, with complements the kernels of the given
    contractive left inverses."""
    for name, m, left in (("f", f, f_left), ("g", g, g_left)):
        if compose_maps(left, m) != identity_map(m.source):
            raise NotLeftInvertible(f"{name}: the given map is not a left inverse")
        if not left.norm_at_most_one():
            raise NotLeftInvertible(f"{name}: the left inverse has norm above one")
        if check and not m.norm_at_most_one():
            raise NotLeftInvertible(f"{name} has norm above one")
    return _assemble(f, g, f_left, g_left)


# C(K) for a two-point K ---------------------------------------------------------------
def signed_permutations(dim: int):
    for perm in permutations(range(dim)):
        for signs in product((1, -1), repeat=dim):
            yield tuple(
                tuple(Fraction(signs[i]) if perm[i] == j else Fraction(0) for j in range(dim))
                for i in range(dim)
            )


def ck_nonextension_check() -> dict:
    """``K = {a, b}``: the isometry ``T(1) = 1_{a}`` from constants into
    ``C(K)`` extends to no linear isometry of ``C(K)``.

    For the lower bound, a linear extension ``S`` of ``T`` is fixed by
    choosing ``v = S^{-1}(1_{b})`` of norm one; with ``|v(t)| = 1`` and
    ``alpha = v(t)`` the vector ``u = alpha 1_{a} + 1_{b}`` has norm one
    while ``S^{-1}(u) = alpha 1 + v`` has norm at least ``|alpha + v(t)|``.
    """
    C = sup_norm_space(2)
    X = space(1, [vec(1), vec(-1)], "constants")
    T = linear_map(X, C, [[1], [0]])
    one = vec(1, 1)
    target = T(vec(1))
    group = list(signed_permutations(2))
    extending = []
    for m in group:
        S = RationalLinearMap(C, C, m)
        if S(one) == target:
            extending.append(m)
    # blocking computation for a linear extension S with S(1) = 1_{a}, S(v) = 1_{b}
    v = vec(1, -1)
    t = next(i for i in range(2) if abs(v[i]) == 1)
    alpha = v[t]
    u = (alpha, Fraction(1))
    preimage = tuple(alpha * o + w for o, w in zip(one, v))
    return {
        "space": C,
        "T_isometric": is_isometric(T),
        "isometries": len(group),
        "extending": len(extending),
        "identity_extends": RationalLinearMap(C, C, tuple(C.basis()))(one) == target,
        "v": v,
        "t": "ab"[t],
        "alpha": alpha,
        "u": u,
        "norm_u": minkowski(C, u),
        "norm_preimage": minkowski(C, preimage),
        "lower_bound": abs(alpha + v[t]),
    }
