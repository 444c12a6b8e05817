"""Pure-Python search kernels. ``_kernels.pyx`` mirrors these line for line."""


def extend_coloring(coloring, ncolors, color_radius_index, offsets, targets):
    """Complete ``coloring`` in place by ordered backtracking.

    ``coloring`` is a list of ints (0 = free). Conflict neighbourhoods are given
    in CSR form per radius class: the conflicts of vertex ``x`` for a colour
    whose radius class is ``r`` are ``targets[r][offsets[r][x]:offsets[r][x+1]]``.
    Free vertices are filled in increasing id, colours tried ``1..ncolors``.

    Returns ``(found, nodes)`` where ``nodes`` counts accepted assignments.
    On failure the coloring is restored to its input state.
    """
    n = len(coloring)
    free = [x for x in range(n) if coloring[x] == 0]
    depth = 0
    nfree = len(free)
    if nfree == 0:
        return True, 0
    nodes = 0
    # next colour to try at each depth
    trial = [1] * nfree
    while depth >= 0:
        x = free[depth]
        coloring[x] = 0
        c = trial[depth]
        placed = False
        while c <= ncolors:
            r = color_radius_index[c]
            off = offsets[r]
            tgt = targets[r]
            conflict = False
            for i in range(off[x], off[x + 1]):
                if coloring[tgt[i]] == c:
                    conflict = True
                    break
            if not conflict:
                coloring[x] = c
                trial[depth] = c + 1
                nodes += 1
                placed = True
                break
            c += 1
        if placed:
            depth += 1
            if depth == nfree:
                return True, nodes
            trial[depth] = 1
        else:
            trial[depth] = 1
            depth -= 1
    return False, nodes


def minimal_rows(rows, order, bounds):
    """Mark the inclusion-minimal rows of a bitset matrix, group by group.

    ``rows`` is a 2-D array of uint64 words, one bitset per row. ``order``
    lists row indices; ``order[bounds[g]:bounds[g+1]]`` is group ``g``, sorted
    so that no row comes after a strict superset of itself (ascending popcount
    works). Within a group a row is dropped when an earlier kept row is a
    subset of it, so of several equal rows only the first survives. Returns a
    bytearray with 1 at every kept index.
    """
    import numpy as np

    keep = bytearray(len(rows))
    for g in range(len(bounds) - 1):
        idx = order[bounds[g]:bounds[g + 1]]
        kept = np.empty((len(idx), rows.shape[1]), dtype=rows.dtype)
        nk = 0
        for r in idx:
            row = rows[r]
            if nk and np.any(np.all((kept[:nk] & ~row) == 0, axis=1)):
                continue
            kept[nk] = row
            nk += 1
            keep[r] = 1
    return keep
