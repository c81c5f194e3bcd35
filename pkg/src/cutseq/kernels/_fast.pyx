# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled backend: the exact event merge and a suffix-automaton engine.

merge_events transcribes the pure loop onto int64 locals, so both
backends emit identical letters and defer identical ambiguities.  The
factor engine builds one suffix automaton; every automaton state covers
one factor per length in [link_len+1, len], so all distinct-factor
counts fall out of a difference array in one pass.  Extension censuses
reuse the pure engine, which is already fast enough for them.
"""

import numpy as np

cimport cython
from libc.stdint cimport int32_t, int64_t, uint8_t


def merge_events(lo, hi, inc_lo, inc_hi, counts, out, pos, end):
    """Advance the scaled-integer event merge, emitting 1-based family letters.

    lo/hi bound each family's next scaled event time relative to a shared
    base, inc_lo/inc_hi bound its scaled time increment.  Emits into out
    until pos reaches end or two families' bounds overlap; in the latter
    case returns (pos, (i, j)) and the caller resolves the step exactly.
    State arrays are updated in place; the base may shift.
    """
    cdef int64_t[::1] lo_v = lo
    cdef int64_t[::1] hi_v = hi
    cdef int64_t[::1] a_v = inc_lo
    cdef int64_t[::1] b_v = inc_hi
    cdef int64_t[::1] c_v = counts
    cdef uint8_t[::1] out_v = out
    cdef Py_ssize_t n = lo_v.shape[0]
    if n == 3:
        return _merge3(lo_v, hi_v, a_v, b_v, c_v, out_v, pos, end)
    if n == 2:
        return _merge2(lo_v, hi_v, a_v, b_v, c_v, out_v, pos, end)
    raise ValueError("merge_events supports 2 or 3 families")


cdef _merge3(int64_t[::1] lo, int64_t[::1] hi, int64_t[::1] inc_lo,
             int64_t[::1] inc_hi, int64_t[::1] counts, uint8_t[::1] out,
             Py_ssize_t pos, Py_ssize_t end):
    cdef int64_t l1 = lo[0], l2 = lo[1], l3 = lo[2]
    cdef int64_t h1 = hi[0], h2 = hi[1], h3 = hi[2]
    cdef int64_t a1 = inc_lo[0], a2 = inc_lo[1], a3 = inc_lo[2]
    cdef int64_t b1 = inc_hi[0], b2 = inc_hi[1], b3 = inc_hi[2]
    cdef int64_t c1 = counts[0], c2 = counts[1], c3 = counts[2]
    cdef int64_t base
    cdef Py_ssize_t p = pos
    amb = None
    # rebase to min after every step: a shift common to all six bounds
    # changes no comparison, and without it the emitting family's bound
    # grows by ~2^52 per letter and would wrap int64 within ~2000 letters
    while p < end:
        if l1 <= l2 and l1 <= l3:
            if h1 < l2 and h1 < l3:
                out[p] = 1
                p += 1
                c1 += 1
                l1 += a1
                h1 += b1
            else:
                amb = (0, 1 if l2 <= l3 else 2)
                break
        elif l2 <= l3:
            if h2 < l1 and h2 < l3:
                out[p] = 2
                p += 1
                c2 += 1
                l2 += a2
                h2 += b2
            else:
                amb = (1, 0 if l1 <= l3 else 2)
                break
        else:
            if h3 < l1 and h3 < l2:
                out[p] = 3
                p += 1
                c3 += 1
                l3 += a3
                h3 += b3
            else:
                amb = (2, 0 if l1 <= l2 else 1)
                break
        base = l1
        if l2 < base:
            base = l2
        if l3 < base:
            base = l3
        if base > 0:
            l1 -= base
            l2 -= base
            l3 -= base
            h1 -= base
            h2 -= base
            h3 -= base
    base = l1
    if l2 < base:
        base = l2
    if l3 < base:
        base = l3
    lo[0] = l1 - base
    lo[1] = l2 - base
    lo[2] = l3 - base
    hi[0] = h1 - base
    hi[1] = h2 - base
    hi[2] = h3 - base
    counts[0] = c1
    counts[1] = c2
    counts[2] = c3
    return p, amb


cdef _merge2(int64_t[::1] lo, int64_t[::1] hi, int64_t[::1] inc_lo,
             int64_t[::1] inc_hi, int64_t[::1] counts, uint8_t[::1] out,
             Py_ssize_t pos, Py_ssize_t end):
    cdef int64_t l1 = lo[0], l2 = lo[1]
    cdef int64_t h1 = hi[0], h2 = hi[1]
    cdef int64_t a1 = inc_lo[0], a2 = inc_lo[1]
    cdef int64_t b1 = inc_hi[0], b2 = inc_hi[1]
    cdef int64_t c1 = counts[0], c2 = counts[1]
    cdef int64_t base
    cdef Py_ssize_t p = pos
    amb = None
    # same per-step rebase as _merge3, for the same overflow reason
    while p < end:
        if l1 <= l2:
            if h1 < l2:
                out[p] = 1
                p += 1
                c1 += 1
                l1 += a1
                h1 += b1
            else:
                amb = (0, 1)
                break
        else:
            if h2 < l1:
                out[p] = 2
                p += 1
                c2 += 1
                l2 += a2
                h2 += b2
            else:
                amb = (1, 0)
                break
        base = l1 if l1 < l2 else l2
        if base > 0:
            l1 -= base
            l2 -= base
            h1 -= base
            h2 -= base
    base = l1 if l1 < l2 else l2
    lo[0] = l1 - base
    lo[1] = l2 - base
    hi[0] = h1 - base
    hi[1] = h2 - base
    counts[0] = c1
    counts[1] = c2
    return p, amb


cdef class FactorEngine:
    """Distinct-factor counts from a suffix automaton; censuses via the
    pure engine.  Matches the pure FactorEngine method for method."""

    cdef public object data
    cdef public Py_ssize_t length
    cdef object _pure_engine
    cdef int32_t[::1] _len
    cdef int32_t[::1] _link
    cdef int32_t[:, ::1] _next
    cdef int32_t[::1] _remap
    cdef Py_ssize_t _states
    cdef bint _built

    def __init__(self, data):
        arr = np.ascontiguousarray(data, dtype=np.uint8)
        if arr.ndim != 1:
            raise ValueError("expected a 1-d byte array")
        if arr.shape[0] >= 2**31 - 2:
            raise ValueError("word too long for the compiled engine")
        self.data = arr
        self.length = <Py_ssize_t> arr.shape[0]
        self._pure_engine = None
        self._built = False

    cdef void _build(self):
        if self._built:
            return
        cdef const uint8_t[::1] text = self.data
        letters = np.unique(np.asarray(self.data))
        remap_arr = np.full(256, -1, dtype=np.int32)
        remap_arr[letters] = np.arange(letters.shape[0], dtype=np.int32)
        cdef int32_t[::1] remap = remap_arr
        cdef Py_ssize_t width = letters.shape[0]
        if width == 0:
            width = 1
        cdef Py_ssize_t cap = 2 * self.length + 2
        len_arr = np.zeros(cap, dtype=np.int32)
        link_arr = np.full(cap, -1, dtype=np.int32)
        next_arr = np.full((cap, width), -1, dtype=np.int32)
        cdef int32_t[::1] slen = len_arr
        cdef int32_t[::1] link = link_arr
        cdef int32_t[:, ::1] nxt = next_arr
        cdef Py_ssize_t size = 1, last = 0
        cdef Py_ssize_t i, cur, p, q, clone
        cdef int32_t c
        cdef Py_ssize_t k
        for i in range(self.length):
            c = remap[text[i]]
            cur = size
            size += 1
            slen[cur] = slen[last] + 1
            p = last
            while p != -1 and nxt[p, c] == -1:
                nxt[p, c] = <int32_t> cur
                p = link[p]
            if p == -1:
                link[cur] = 0
            else:
                q = nxt[p, c]
                if slen[p] + 1 == slen[q]:
                    link[cur] = <int32_t> q
                else:
                    clone = size
                    size += 1
                    slen[clone] = slen[p] + 1
                    link[clone] = link[q]
                    for k in range(width):
                        nxt[clone, k] = nxt[q, k]
                    while p != -1 and nxt[p, c] == q:
                        nxt[p, c] = <int32_t> clone
                        p = link[p]
                    link[q] = <int32_t> clone
                    link[cur] = <int32_t> clone
            last = cur
        self._len = slen
        self._link = link
        self._next = nxt
        self._remap = remap
        self._states = size
        self._built = True

    def factor_counts(self, n_max):
        """Array of distinct-factor counts for lengths 1..n_max."""
        cdef Py_ssize_t top = n_max
        if top > self.length:
            top = self.length
        counts = np.zeros(top + 2, dtype=np.int64)
        if top <= 0:
            return counts[1:top + 1]
        self._build()
        cdef int64_t[::1] diff = counts
        cdef Py_ssize_t v, low, high
        for v in range(1, self._states):
            low = self._len[self._link[v]] + 1
            high = self._len[v]
            if low > top:
                continue
            if high > top:
                high = top
            diff[low] += 1
            diff[high + 1] -= 1
        return np.cumsum(counts[:top + 1], dtype=np.int64)[1:]

    cdef object _fallback(self):
        if self._pure_engine is None:
            from . import pure
            self._pure_engine = pure.FactorEngine(self.data)
        return self._pure_engine

    def window_ids(self, n):
        """Content-ordered ids of all length-n windows plus the distinct count."""
        return self._fallback().window_ids(n)

    def census(self, n):
        """Extension statistics for factors with an interior occurrence.

        Same contract as the pure engine: (rep, m_l, m_r, m_b) over
        factors of length n that occur away from both word ends.
        """
        return self._fallback().census(n)
