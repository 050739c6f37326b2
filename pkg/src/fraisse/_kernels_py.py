"""Pure-Python versions of the search kernels.

Both backends share one calling convention.  A structure on ``n`` points is
passed as a flat ``bytes`` object of length ``n * n`` holding its binary
relation (``rel[i * n + j]`` is 1 iff ``i R j``).
"""
from itertools import permutations


def extend_maps(ra, na, rb, nb, partial, injective, reflect, limit, budget=0):
    """Enumerate maps ``range(na) -> range(nb)`` extending ``partial``.

    ``partial[i]`` is a fixed image or -1.  Every map preserves the relation;
    with ``reflect`` it also reflects it, with ``injective`` it is one-to-one.
    Maps come out in lexicographic order of their image tuples; at most
    ``limit`` of them are produced when ``limit > 0``.  With ``budget > 0``
    the search gives up, returning ``None``, after testing that many
    candidate images.
    """
    f = list(partial)
    used = [False] * nb
    for i in range(na):
        t = f[i]
        if t < 0:
            continue
        if injective:
            if used[t]:
                return []
            used[t] = True
    fixed = [i for i in range(na) if f[i] >= 0]
    for x in range(len(fixed)):
        i = fixed[x]
        for y in range(x + 1):
            j = fixed[y]
            if not _compatible(ra, na, rb, nb, i, j, f[i], f[j], reflect):
                return []
    free = [i for i in range(na) if f[i] < 0]
    out = []
    if not free:
        return [tuple(f)]
    assigned = list(fixed)
    depth = 0
    tried = 0
    nfree = len(free)
    cursor = [0] * nfree
    while depth >= 0:
        i = free[depth]
        t = cursor[depth]
        if f[i] >= 0:
            # backtracking into this level: release previous choice
            if injective:
                used[f[i]] = False
            f[i] = -1
            assigned.pop()
        placed = False
        while t < nb:
            if injective and used[t]:
                t += 1
                continue
            tried += 1
            if budget and tried > budget:
                return None
            ok = _compatible(ra, na, rb, nb, i, i, t, t, reflect)
            if ok:
                for j in assigned:
                    if not _compatible(ra, na, rb, nb, i, j, t, f[j], reflect):
                        ok = False
                        break
            if ok:
                placed = True
                break
            t += 1
        if not placed:
            cursor[depth] = 0
            depth -= 1
            continue
        cursor[depth] = t + 1
        f[i] = t
        if injective:
            used[t] = True
        assigned.append(i)
        if depth == nfree - 1:
            out.append(tuple(f))
            if 0 < limit <= len(out):
                return out
        else:
            depth += 1
            cursor[depth] = 0
    return out


def _compatible(ra, na, rb, nb, i, j, s, t, reflect):
    a = ra[i * na + j]
    b = rb[s * nb + t]
    if a and not b:
        return False
    if reflect and b and not a:
        return False
    a = ra[j * na + i]
    b = rb[t * nb + s]
    if a and not b:
        return False
    if reflect and b and not a:
        return False
    return True


def canonical_code(rel, n):
    """Lexicographically least off-diagonal encoding over all relabelings.

    Returns ``(code, perm)`` where ``perm[k]`` is the old index placed at new
    position ``k``; ``code`` packs the bits row by row, most significant
    first, so integer order equals lexicographic order.
    """
    best = None
    best_perm = None
    for perm in permutations(range(n)):
        code = 0
        for i in range(n):
            row = perm[i] * n
            for j in range(n):
                if i != j:
                    code = (code << 1) | rel[row + perm[j]]
            if best is not None and code > (best >> _tail_bits(n, i)):
                break
        else:
            if best is None or code < best:
                best = code
                best_perm = perm
    if best is None:
        return 0, ()
    return best, tuple(best_perm)


def _tail_bits(n, i):
    # bits still to be emitted after row i
    return (n - 1 - i) * (n - 1)
