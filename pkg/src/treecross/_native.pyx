# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernel: C implementations of the hot loops.

Bit-identical to treecross._pykernel (same decoding, same generator, same
predicates); heavy loops release the GIL so shards and sample streams can
run on threads.
"""

from libc.stdint cimport int32_t, int64_t, uint8_t, uint64_t
from libc.stdlib cimport free, malloc

import numpy as np

from .errors import GeneralPositionError

BACKEND = "compiled"

cdef uint64_t SM_GAMMA = <uint64_t>0x9E3779B97F4A7C15
cdef uint64_t SM_MIX1 = <uint64_t>0xBF58476D1CE4E5B9
cdef uint64_t SM_MIX2 = <uint64_t>0x94D049BB133111EB


cdef inline uint64_t sm_next(uint64_t *state) noexcept nogil:
    state[0] = state[0] + SM_GAMMA
    cdef uint64_t z = state[0]
    z = (z ^ (z >> 30)) * SM_MIX1
    z = (z ^ (z >> 27)) * SM_MIX2
    return z ^ (z >> 31)


cdef inline int uniform_label(uint64_t *state, int n, uint64_t mask) noexcept nogil:
    # masked rejection on the low bits: every label in 1..n equally likely
    cdef uint64_t r
    while True:
        r = sm_next(state) & mask
        if r < <uint64_t>n:
            return <int>r + 1


cdef inline uint64_t label_mask(int n) noexcept nogil:
    # smallest all-ones mask covering n - 1
    cdef uint64_t mask = 1
    while mask < <uint64_t>(n - 1):
        mask = (mask << 1) | 1
    return mask


cdef inline void decode_code(int n, const int32_t *code, int32_t *deg,
                             int32_t *eu, int32_t *ev) noexcept nogil:
    # pointer-based decode; final edge joins the last leaf to vertex n
    cdef int i, c, ptr, leaf
    for i in range(1, n + 1):
        deg[i] = 1
    for i in range(n - 2):
        deg[code[i]] += 1
    ptr = 1
    while deg[ptr] != 1:
        ptr += 1
    leaf = ptr
    for i in range(n - 2):
        c = code[i]
        if leaf < c:
            eu[i] = leaf
            ev[i] = c
        else:
            eu[i] = c
            ev[i] = leaf
        deg[c] -= 1
        if deg[c] == 1 and c < ptr:
            leaf = c
        else:
            ptr += 1
            while deg[ptr] != 1:
                ptr += 1
            leaf = ptr
    eu[n - 2] = leaf
    ev[n - 2] = n


def tally_shard(int n, const uint8_t[::1] pair_table, int num_edges,
                object start, object stop, int64_t[::1] out):
    """Add, into out[k], the number of trees with k crossings among the
    codes with lexicographic index in [start, stop)."""
    if n < 3:
        raise ValueError("kernel requires n >= 3")
    if n > 17:
        raise ValueError("code index would overflow 64-bit integers")
    cdef int64_t c_start = start
    cdef int64_t c_stop = stop
    cdef int length = n - 2
    cdef int E = num_edges
    cdef int64_t[::1] tally = np.zeros(out.shape[0], dtype=np.int64)
    cdef int32_t *code = <int32_t *>malloc(sizeof(int32_t) * length)
    cdef int32_t *deg = <int32_t *>malloc(sizeof(int32_t) * (n + 1))
    cdef int32_t *eu = <int32_t *>malloc(sizeof(int32_t) * (n - 1))
    cdef int32_t *ev = <int32_t *>malloc(sizeof(int32_t) * (n - 1))
    cdef int32_t *eid = <int32_t *>malloc(sizeof(int32_t) * (n - 1))
    cdef int32_t *rowbase = <int32_t *>malloc(sizeof(int32_t) * (n + 1))
    if code == NULL or deg == NULL or eu == NULL or ev == NULL or eid == NULL or rowbase == NULL:
        free(code); free(deg); free(eu); free(ev); free(eid); free(rowbase)
        raise MemoryError()
    cdef int64_t idx, count
    cdef int pos, u, i, j, k, base
    try:
        with nogil:
            for u in range(1, n + 1):
                rowbase[u] = (u - 1) * n - u * (u - 1) // 2 - u - 1
            idx = c_start
            for pos in range(length - 1, -1, -1):
                code[pos] = <int32_t>(idx % n) + 1
                idx = idx // n
            for count in range(c_stop - c_start):
                decode_code(n, code, deg, eu, ev)
                for i in range(n - 1):
                    eid[i] = rowbase[eu[i]] + ev[i]
                k = 0
                for i in range(n - 1):
                    base = eid[i] * E
                    for j in range(i + 1, n - 1):
                        k += pair_table[base + eid[j]]
                tally[k] += 1
                pos = length - 1
                while pos >= 0:
                    code[pos] += 1
                    if code[pos] <= n:
                        break
                    code[pos] = 1
                    pos -= 1
    finally:
        free(code); free(deg); free(eu); free(ev); free(eid); free(rowbase)
    cdef Py_ssize_t kk
    for kk in range(out.shape[0]):
        out[kk] += tally[kk]


def sample_stream_convex(int n, object stream_seed, int64_t[::1] out,
                         Py_ssize_t lo, Py_ssize_t hi):
    """Fill out[lo:hi] with crossing counts of uniformly sampled trees on
    n labels in convex position."""
    if n < 3:
        raise ValueError("kernel requires n >= 3")
    cdef uint64_t state = <uint64_t>(stream_seed & 0xFFFFFFFFFFFFFFFF)
    cdef uint64_t mask = label_mask(n)
    cdef int length = n - 2
    cdef int32_t *code = <int32_t *>malloc(sizeof(int32_t) * length)
    cdef int32_t *deg = <int32_t *>malloc(sizeof(int32_t) * (n + 1))
    cdef int32_t *eu = <int32_t *>malloc(sizeof(int32_t) * (n - 1))
    cdef int32_t *ev = <int32_t *>malloc(sizeof(int32_t) * (n - 1))
    if code == NULL or deg == NULL or eu == NULL or ev == NULL:
        free(code); free(deg); free(eu); free(ev)
        raise MemoryError()
    cdef Py_ssize_t s
    cdef int i, j, k, a, b, c, d
    try:
        with nogil:
            for s in range(lo, hi):
                for i in range(length):
                    code[i] = uniform_label(&state, n, mask)
                decode_code(n, code, deg, eu, ev)
                k = 0
                for i in range(n - 1):
                    a = eu[i]
                    b = ev[i]
                    for j in range(i + 1, n - 1):
                        c = eu[j]
                        d = ev[j]
                        if a == c or a == d or b == c or b == d:
                            continue
                        if ((a < c) & (c < b)) != ((a < d) & (d < b)):
                            k += 1
                out[s] = k
    finally:
        free(code); free(deg); free(eu); free(ev)


cdef inline int sign64(int64_t v) noexcept nogil:
    return (v > 0) - (v < 0)


def sample_stream_coords(const int64_t[::1] xs, const int64_t[::1] ys,
                         object stream_seed, int64_t[::1] out,
                         Py_ssize_t lo, Py_ssize_t hi):
    """Coordinate variant of sample_stream_convex: crossings decided by
    exact orientation signs (input must be in general position)."""
    cdef int n = <int>xs.shape[0]
    if n < 3:
        raise ValueError("kernel requires n >= 3")
    cdef uint64_t state = <uint64_t>(stream_seed & 0xFFFFFFFFFFFFFFFF)
    cdef uint64_t mask = label_mask(n)
    cdef int length = n - 2
    cdef int32_t *code = <int32_t *>malloc(sizeof(int32_t) * length)
    cdef int32_t *deg = <int32_t *>malloc(sizeof(int32_t) * (n + 1))
    cdef int32_t *eu = <int32_t *>malloc(sizeof(int32_t) * (n - 1))
    cdef int32_t *ev = <int32_t *>malloc(sizeof(int32_t) * (n - 1))
    if code == NULL or deg == NULL or eu == NULL or ev == NULL:
        free(code); free(deg); free(eu); free(ev)
        raise MemoryError()
    cdef Py_ssize_t s
    cdef int i, j, k, a, b, c, d
    cdef int64_t ax, ay, bx, by, cx, cy, dx, dy
    cdef int d1, d2, d3, d4
    try:
        with nogil:
            for s in range(lo, hi):
                for i in range(length):
                    code[i] = uniform_label(&state, n, mask)
                decode_code(n, code, deg, eu, ev)
                k = 0
                for i in range(n - 1):
                    a = eu[i] - 1
                    b = ev[i] - 1
                    ax = xs[a]; ay = ys[a]; bx = xs[b]; by = ys[b]
                    for j in range(i + 1, n - 1):
                        c = eu[j] - 1
                        d = ev[j] - 1
                        if a == c or a == d or b == c or b == d:
                            continue
                        cx = xs[c]; cy = ys[c]; dx = xs[d]; dy = ys[d]
                        d1 = sign64((dx - cx) * (ay - cy) - (dy - cy) * (ax - cx))
                        d2 = sign64((dx - cx) * (by - cy) - (dy - cy) * (bx - cx))
                        if d1 == d2:
                            continue
                        d3 = sign64((bx - ax) * (cy - ay) - (by - ay) * (cx - ax))
                        d4 = sign64((bx - ax) * (dy - ay) - (by - ay) * (dx - ax))
                        if d3 != d4:
                            k += 1
                out[s] = k
    finally:
        free(code); free(deg); free(eu); free(ev)


def convex_quadruple_count(const int64_t[::1] xs, const int64_t[::1] ys):
    """Number of 4-point subsets in convex position (even number of CCW
    triples); raises on any collinear triple."""
    cdef int n = <int>xs.shape[0]
    cdef int64_t total = 0
    cdef int a, b, c, d
    cdef int64_t abx, aby, o1, o2, o3, o4
    cdef int bad_a = -1, bad_b = -1, bad_c = -1, bad_d = -1
    with nogil:
        for a in range(n):
            if bad_a >= 0:
                break
            for b in range(a + 1, n):
                if bad_a >= 0:
                    break
                abx = xs[b] - xs[a]
                aby = ys[b] - ys[a]
                for c in range(b + 1, n):
                    o1 = abx * (ys[c] - ys[a]) - aby * (xs[c] - xs[a])
                    if o1 == 0:
                        bad_a = a; bad_b = b; bad_c = c; bad_d = -1
                        break
                    for d in range(c + 1, n):
                        o2 = abx * (ys[d] - ys[a]) - aby * (xs[d] - xs[a])
                        o3 = (xs[c] - xs[a]) * (ys[d] - ys[a]) - (ys[c] - ys[a]) * (xs[d] - xs[a])
                        o4 = (xs[c] - xs[b]) * (ys[d] - ys[b]) - (ys[c] - ys[b]) * (xs[d] - xs[b])
                        if o2 == 0 or o3 == 0 or o4 == 0:
                            bad_a = a; bad_b = b; bad_c = c; bad_d = d
                            break
                        if ((o1 > 0) + (o2 > 0) + (o3 > 0) + (o4 > 0)) % 2 == 0:
                            total += 1
                    if bad_a >= 0:
                        break
    if bad_a >= 0:
        if bad_d < 0:
            raise GeneralPositionError(
                f"points {bad_a + 1}, {bad_b + 1}, {bad_c + 1} are collinear")
        raise GeneralPositionError(
            f"a collinear triple lies in {bad_a + 1}, {bad_b + 1}, "
            f"{bad_c + 1}, {bad_d + 1}")
    return int(total)


def find_collinear_triple(const int64_t[::1] xs, const int64_t[::1] ys):
    """First collinear label triple (1-based) in lexicographic order, or None."""
    cdef int n = <int>xs.shape[0]
    cdef int a, b, c
    cdef int64_t abx, aby
    cdef int ra = -1, rb = -1, rc = -1
    with nogil:
        for a in range(n):
            if ra >= 0:
                break
            for b in range(a + 1, n):
                if ra >= 0:
                    break
                abx = xs[b] - xs[a]
                aby = ys[b] - ys[a]
                for c in range(b + 1, n):
                    if abx * (ys[c] - ys[a]) - aby * (xs[c] - xs[a]) == 0:
                        ra = a; rb = b; rc = c
                        break
    if ra >= 0:
        return (ra + 1, rb + 1, rc + 1)
    return None
