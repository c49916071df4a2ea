"""Pure-Python subset-BFS kernel (fallback for the compiled extension).

Subsets are machine-word bit masks.  Per-letter images are assembled from
256-entry byte tables, so one transition costs a handful of lookups instead
of a loop over set bits.
"""

BACKEND = "python"


def bfs_thresholds(n, k, trans_flat):
    """Breadth-first search over the subset lattice from the full set.

    trans_flat is the row-major n*k transition table with -1 for undefined.
    Returns a list indexed by subset size 0..n whose entries are the letter
    sequence of the first word reaching that size (the lexicographically
    least among the shortest), or None when unreachable.
    """
    full = (1 << n) - 1
    nbytes = (n + 7) // 8

    # byte_img[a][bi][bv]: image mask of the states encoded by byte value bv
    # at byte position bi, under letter a
    byte_img = []
    for a in range(k):
        tbit = [0] * n
        for q in range(n):
            t = trans_flat[q * k + a]
            if t >= 0:
                tbit[q] = 1 << t
        tables = []
        for bi in range(nbytes):
            base = bi * 8
            tab = [0] * 256
            for bv in range(1, 256):
                low = bv & -bv
                q = base + low.bit_length() - 1
                tab[bv] = tab[bv ^ low] | (tbit[q] if q < n else 0)
            tables.append(tab)
        byte_img.append(tables)

    parent = {full: (0, -1)}
    first_mask = [None] * (n + 1)
    first_mask[n] = full
    queue = [full]
    while queue:
        nxt = []
        for m in queue:
            for a in range(k):
                tabs = byte_img[a]
                t = 0
                mm = m
                bi = 0
                while mm:
                    t |= tabs[bi][mm & 0xFF]
                    mm >>= 8
                    bi += 1
                if t not in parent:
                    parent[t] = (m, a)
                    c = t.bit_count()
                    if first_mask[c] is None:
                        first_mask[c] = t
                    nxt.append(t)
        queue = nxt

    out = [None] * (n + 1)
    for c in range(n + 1):
        m = first_mask[c]
        if m is None:
            continue
        letters = []
        while m != full:
            m, a = parent[m]
            letters.append(a)
        out[c] = letters[::-1]
    return out
