# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled search kernels; see ``_kernels_py`` for the reference semantics."""

from libc.stdlib cimport malloc, free


def extend_coloring(list coloring, int ncolors, color_radius_index, offsets, targets):
    cdef int n = len(coloring)
    cdef int nrad = len(offsets)
    cdef int i, x, c, r, depth, nfree, total_off, total_tgt, pos
    cdef long long nodes = 0
    cdef bint conflict, placed

    cdef int *col = <int *> malloc(n * sizeof(int))
    cdef int *freev = <int *> malloc((n + 1) * sizeof(int))
    cdef int *trial = <int *> malloc((n + 1) * sizeof(int))
    cdef int *radix = <int *> malloc((ncolors + 1) * sizeof(int))
    cdef int *off = <int *> malloc(nrad * (n + 1) * sizeof(int))
    total_tgt = 0
    for r in range(nrad):
        total_tgt += len(targets[r])
    cdef int *tgt = <int *> malloc((total_tgt + 1) * sizeof(int))
    if not (col and freev and trial and radix and off and tgt):
        raise MemoryError()

    try:
        for x in range(n):
            col[x] = coloring[x]
        for c in range(ncolors + 1):
            radix[c] = color_radius_index[c]
        # flatten per-radius CSR into one array with absolute offsets
        pos = 0
        for r in range(nrad):
            ro = offsets[r]
            rt = targets[r]
            for x in range(n + 1):
                off[r * (n + 1) + x] = pos + <int> ro[x]
            for i in range(len(rt)):
                tgt[pos + i] = rt[i]
            pos += len(rt)

        nfree = 0
        for x in range(n):
            if col[x] == 0:
                freev[nfree] = x
                nfree += 1
        if nfree == 0:
            return True, 0
        for i in range(nfree):
            trial[i] = 1

        depth = 0
        while depth >= 0:
            x = freev[depth]
            col[x] = 0
            c = trial[depth]
            placed = False
            while c <= ncolors:
                r = radix[c] * (n + 1)
                conflict = False
                for i in range(off[r + x], off[r + x + 1]):
                    if col[tgt[i]] == c:
                        conflict = True
                        break
                if not conflict:
                    col[x] = c
                    trial[depth] = c + 1
                    nodes += 1
                    placed = True
                    break
                c += 1
            if placed:
                depth += 1
                if depth == nfree:
                    for x in range(n):
                        coloring[x] = col[x]
                    return True, nodes
                trial[depth] = 1
            else:
                trial[depth] = 1
                depth -= 1
        return False, nodes
    finally:
        free(col)
        free(freev)
        free(trial)
        free(radix)
        free(off)
        free(tgt)


cdef inline int _ctz(unsigned long long x):
    return __builtin_ctzll(x)


cdef extern from *:
    int __builtin_ctzll(unsigned long long)


def minimal_rows(const unsigned long long[:, ::1] rows, const long long[::1] order,
                 const long long[::1] bounds):
    # Each kept row is filed under its rarest set bit (rarest within the
    # group). A row q can only be a subset of r if r has q's anchor bit, so a
    # candidate only visits the buckets of its own set bits.
    cdef Py_ssize_t w = rows.shape[1]
    cdef Py_ssize_t nbits = w * 64
    cdef Py_ssize_t g, i, k, k2, r, q, b, best, lo, hi
    cdef unsigned long long word
    cdef long long bestfreq
    cdef bint dominated, subset, have_empty, empty
    keep = bytearray(rows.shape[0])
    cdef unsigned char[::1] kv = keep
    cdef long long *freq = <long long *> malloc((nbits + 1) * sizeof(long long))
    cdef long long *head = <long long *> malloc((nbits + 1) * sizeof(long long))
    cdef long long *nxt = <long long *> malloc((rows.shape[0] + 1) * sizeof(long long))
    if not (freq and head and nxt):
        free(freq); free(head); free(nxt)
        raise MemoryError()
    try:
        for g in range(bounds.shape[0] - 1):
            lo = bounds[g]
            hi = bounds[g + 1]
            for b in range(nbits):
                freq[b] = 0
                head[b] = -1
            for i in range(lo, hi):
                r = order[i]
                for k in range(w):
                    word = rows[r, k]
                    while word:
                        freq[k * 64 + _ctz(word)] += 1
                        word &= word - 1
            have_empty = False
            for i in range(lo, hi):
                r = order[i]
                if have_empty:
                    break
                dominated = False
                empty = True
                for k in range(w):
                    word = rows[r, k]
                    if word:
                        empty = False
                    while word and not dominated:
                        b = k * 64 + _ctz(word)
                        word &= word - 1
                        q = head[b]
                        while q >= 0:
                            subset = True
                            for k2 in range(w):
                                if rows[q, k2] & ~rows[r, k2]:
                                    subset = False
                                    break
                            if subset:
                                dominated = True
                                break
                            q = nxt[q]
                    if dominated:
                        break
                if dominated:
                    continue
                kv[r] = 1
                if empty:
                    have_empty = True
                    continue
                best = -1
                bestfreq = 0
                for k in range(w):
                    word = rows[r, k]
                    while word:
                        b = k * 64 + _ctz(word)
                        word &= word - 1
                        if best < 0 or freq[b] < bestfreq:
                            best = b
                            bestfreq = freq[b]
                nxt[r] = head[best]
                head[best] = r
    finally:
        free(freq)
        free(head)
        free(nxt)
    return keep
