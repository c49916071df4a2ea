# cython: boundscheck=False, wraparound=False, language_level=3
"""Compiled subset-BFS kernel; exact twin of _bfs_py.bfs_thresholds."""
from libc.stdlib cimport calloc, free
from libc.stdint cimport uint8_t, uint32_t, int32_t

BACKEND = "c"


def bfs_thresholds(int n, int k, trans_flat):
    if n < 1 or n > 31:
        raise ValueError("kernel supports 1..31 states")

    cdef uint32_t full = <uint32_t>((1 << n) - 1)
    cdef size_t nmasks = (<size_t>1) << n
    cdef int nbytes = (n + 7) // 8
    cdef int a, bi, q, c
    cdef uint32_t bv, low, m, t, mm

    cdef uint32_t *tbit = <uint32_t *>calloc(n * k, sizeof(uint32_t))
    cdef uint32_t *byte_img = <uint32_t *>calloc(k * nbytes * 256, sizeof(uint32_t))
    cdef uint8_t *visited = <uint8_t *>calloc(nmasks, sizeof(uint8_t))
    cdef uint32_t *parent = <uint32_t *>calloc(nmasks, sizeof(uint32_t))
    cdef uint8_t *pletter = <uint8_t *>calloc(nmasks, sizeof(uint8_t))
    cdef uint32_t *queue = <uint32_t *>calloc(nmasks, sizeof(uint32_t))
    cdef int32_t *first_mask = <int32_t *>calloc(n + 1, sizeof(int32_t))
    if not (tbit and byte_img and visited and parent and pletter and queue and first_mask):
        free(tbit); free(byte_img); free(visited); free(parent)
        free(pletter); free(queue); free(first_mask)
        raise MemoryError()

    cdef int tq
    for q in range(n):
        for a in range(k):
            tq = trans_flat[q * k + a]
            tbit[a * n + q] = (<uint32_t>1 << tq) if tq >= 0 else 0

    cdef size_t off
    for a in range(k):
        for bi in range(nbytes):
            off = (<size_t>a * nbytes + bi) * 256
            for bv in range(1, 256):
                low = bv & (~bv + 1)
                q = bi * 8 + _bit_index(low)
                byte_img[off + bv] = byte_img[off + (bv ^ low)] | \
                    (tbit[a * n + q] if q < n else 0)

    for c in range(n + 1):
        first_mask[c] = -1
    first_mask[n] = <int32_t>full

    cdef size_t head = 0, tail = 0
    queue[tail] = full
    tail += 1
    visited[full] = 1

    while head < tail:
        m = queue[head]
        head += 1
        for a in range(k):
            t = 0
            mm = m
            bi = 0
            while mm:
                t |= byte_img[(<size_t>a * nbytes + bi) * 256 + (mm & 0xFF)]
                mm >>= 8
                bi += 1
            if not visited[t]:
                visited[t] = 1
                parent[t] = m
                pletter[t] = <uint8_t>a
                c = _popcount(t)
                if first_mask[c] < 0:
                    first_mask[c] = <int32_t>t
                queue[tail] = t
                tail += 1

    out = []
    for c in range(n + 1):
        if first_mask[c] < 0:
            out.append(None)
            continue
        letters = []
        m = <uint32_t>first_mask[c]
        while m != full:
            letters.append(pletter[m])
            m = parent[m]
        letters.reverse()
        out.append(letters)

    free(tbit); free(byte_img); free(visited); free(parent)
    free(pletter); free(queue); free(first_mask)
    return out


cdef inline int _popcount(uint32_t x):
    cdef int c = 0
    while x:
        x &= x - 1
        c += 1
    return c


cdef inline int _bit_index(uint32_t x):
    cdef int i = 0
    while not (x & 1):
        x >>= 1
        i += 1
    return i
