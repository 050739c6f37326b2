# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled search kernels; same contract as ``_kernels_py``."""
from libc.stdlib cimport malloc, free as cfree


cdef inline bint _compatible(const unsigned char[:] ra, int na,
                             const unsigned char[:] rb, int nb,
                             int i, int j, int s, int t, bint reflect) noexcept nogil:
    cdef unsigned char a = ra[i * na + j]
    cdef unsigned char b = rb[s * nb + t]
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


def extend_maps(const unsigned char[:] ra, int na, const unsigned char[:] rb, int nb,
                partial, bint injective, bint reflect, long limit, long long budget=0):
    cdef int *f = <int *> malloc(max(na, 1) * sizeof(int))
    cdef char *used = <char *> malloc(max(nb, 1) * sizeof(char))
    cdef int *free_idx = <int *> malloc(max(na, 1) * sizeof(int))
    cdef int *assigned = <int *> malloc(max(na, 1) * sizeof(int))
    cdef int *cursor = <int *> malloc(max(na, 1) * sizeof(int))
    cdef int i, j, k, t, x, y, nfree = 0, nassigned = 0, depth
    cdef bint ok, placed
    cdef long long tried = 0
    out = []
    try:
        for t in range(nb):
            used[t] = 0
        for i in range(na):
            f[i] = partial[i]
        for i in range(na):
            t = f[i]
            if t >= 0:
                if injective:
                    if used[t]:
                        return []
                    used[t] = 1
                assigned[nassigned] = i
                nassigned += 1
            else:
                free_idx[nfree] = i
                nfree += 1
        for x in range(nassigned):
            i = assigned[x]
            for y in range(x + 1):
                j = assigned[y]
                if not _compatible(ra, na, rb, nb, i, j, f[i], f[j], reflect):
                    return []
        if nfree == 0:
            return [tuple([f[k] for k in range(na)])]
        depth = 0
        cursor[0] = 0
        while depth >= 0:
            i = free_idx[depth]
            t = cursor[depth]
            if f[i] >= 0:
                if injective:
                    used[f[i]] = 0
                f[i] = -1
                nassigned -= 1
            placed = False
            while t < nb:
                if injective and used[t]:
                    t += 1
                    continue
                tried += 1
                if budget > 0 and tried > budget:
                    return None
                ok = _compatible(ra, na, rb, nb, i, i, t, t, reflect)
                if ok:
                    for x in range(nassigned):
                        j = assigned[x]
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
                used[t] = 1
            assigned[nassigned] = i
            nassigned += 1
            if depth == nfree - 1:
                out.append(tuple([f[k] for k in range(na)]))
                if 0 < limit <= len(out):
                    return out
            else:
                depth += 1
                cursor[depth] = 0
        return out
    finally:
        cfree(f)
        cfree(used)
        cfree(free_idx)
        cfree(assigned)
        cfree(cursor)


cdef bint _next_permutation(int *p, int n) noexcept nogil:
    cdef int i = n - 2, j, tmp
    while i >= 0 and p[i] >= p[i + 1]:
        i -= 1
    if i < 0:
        return False
    j = n - 1
    while p[j] <= p[i]:
        j -= 1
    tmp = p[i]; p[i] = p[j]; p[j] = tmp
    i += 1
    j = n - 1
    while i < j:
        tmp = p[i]; p[i] = p[j]; p[j] = tmp
        i += 1
        j -= 1
    return True


def canonical_code(const unsigned char[:] rel, int n):
    if n == 0:
        return 0, ()
    if n > 8:
        raise ValueError("canonical_code supports at most 8 points")
    cdef int p[8]
    cdef int best_perm[8]
    cdef int i, j, row
    cdef unsigned long long code, best = 0
    cdef bint have = False, pruned
    cdef int tail
    for i in range(n):
        p[i] = i
    while True:
        code = 0
        pruned = False
        for i in range(n):
            row = p[i] * n
            for j in range(n):
                if i != j:
                    code = (code << 1) | rel[row + p[j]]
            if have:
                tail = (n - 1 - i) * (n - 1)
                if code > (best >> tail):
                    pruned = True
                    break
        if not pruned and (not have or code < best):
            best = code
            have = True
            for i in range(n):
                best_perm[i] = p[i]
        if not _next_permutation(p, n):
            break
    return int(best), tuple([best_perm[i] for i in range(n)])
