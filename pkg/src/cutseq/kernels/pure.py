"""Pure-Python reference backend for the hot kernels.

merge_events mirrors the compiled kernel exactly; the factor engine uses
numpy rank doubling instead of a suffix automaton, trading speed for
simplicity.  Results are identical to the compiled backend by construction:
the integer bookkeeping is exact and all close calls go back to the caller.
"""

from __future__ import annotations

import numpy as np


def merge_events(lo, hi, inc_lo, inc_hi, counts, out, pos, end):
    """Advance the scaled-integer event merge, emitting 1-based family letters.

    lo/hi bound each family's next scaled event time relative to a shared
    base, inc_lo/inc_hi bound its scaled time increment.  Emits into out
    until pos reaches end or two families' bounds overlap; in the latter
    case returns (pos, (i, j)) and the caller resolves the step exactly.
    State arrays are updated in place; the base may shift.
    """
    n = len(lo)
    if n == 3:
        return _merge3(lo, hi, inc_lo, inc_hi, counts, out, pos, end)
    if n == 2:
        return _merge2(lo, hi, inc_lo, inc_hi, counts, out, pos, end)
    raise ValueError("merge_events supports 2 or 3 families")


def _merge3(lo, hi, inc_lo, inc_hi, counts, out, pos, end):
    l1, l2, l3 = int(lo[0]), int(lo[1]), int(lo[2])
    h1, h2, h3 = int(hi[0]), int(hi[1]), int(hi[2])
    a1, a2, a3 = int(inc_lo[0]), int(inc_lo[1]), int(inc_lo[2])
    b1, b2, b3 = int(inc_hi[0]), int(inc_hi[1]), int(inc_hi[2])
    c1, c2, c3 = int(counts[0]), int(counts[1]), int(counts[2])
    amb = None
    p = pos
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
    base = min(l1, l2, l3)
    lo[0], lo[1], lo[2] = l1 - base, l2 - base, l3 - base
    hi[0], hi[1], hi[2] = h1 - base, h2 - base, h3 - base
    counts[0], counts[1], counts[2] = c1, c2, c3
    return p, amb


def _merge2(lo, hi, inc_lo, inc_hi, counts, out, pos, end):
    l1, l2 = int(lo[0]), int(lo[1])
    h1, h2 = int(hi[0]), int(hi[1])
    a1, a2 = int(inc_lo[0]), int(inc_lo[1])
    b1, b2 = int(inc_hi[0]), int(inc_hi[1])
    c1, c2 = int(counts[0]), int(counts[1])
    amb = None
    p = pos
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
    base = min(l1, l2)
    lo[0], lo[1] = l1 - base, l2 - base
    hi[0], hi[1] = h1 - base, h2 - base
    counts[0], counts[1] = c1, c2
    return p, amb


class FactorEngine:
    """Distinct-factor counts and extension censuses via rank doubling.

    Window identities at length n come from the pair of rank-k ids at
    offsets 0 and n-k, where k is the largest power of two not above n.
    Rank arrays are content-ordered, so ids are too.
    """

    def __init__(self, data):
        arr = np.ascontiguousarray(data, dtype=np.uint8)
        if arr.ndim != 1:
            raise ValueError("expected a 1-d byte array")
        self.data = arr
        self.length = int(arr.shape[0])
        self._alpha = int(arr.max()) if self.length else 0
        self._ranks = {1: arr.astype(np.int64)}

    def _rank(self, k):
        if k in self._ranks:
            return self._ranks[k]
        half = self._rank(k // 2)
        w = self.length - k + 1
        a = half[:w]
        b = half[k // 2: k // 2 + w]
        key = a * (int(half.max()) + 1) + b
        _, inv = np.unique(key, return_inverse=True)
        r = inv.astype(np.int64)
        self._ranks[k] = r
        return r

    def _window_key(self, n):
        if not 1 <= n <= self.length:
            raise ValueError("window length out of range")
        k = 1 << (n.bit_length() - 1)
        r = self._rank(k)
        w = self.length - n + 1
        if k == n:
            return r[:w]
        return r[:w] * (int(r.max()) + 1) + r[n - k: n - k + w]

    def window_ids(self, n):
        """Content-ordered ids of all length-n windows plus the distinct count."""
        _, inv = np.unique(self._window_key(n), return_inverse=True)
        ids = inv.astype(np.int64)
        return ids, int(ids.max()) + 1

    def factor_counts(self, n_max):
        """Array of distinct-factor counts for lengths 1..n_max."""
        n_max = min(n_max, self.length)
        out = np.empty(n_max, dtype=np.int64)
        for n in range(1, n_max + 1):
            out[n - 1] = np.unique(self._window_key(n)).shape[0]
        return out

    def census(self, n):
        """Extension statistics for factors with an interior occurrence.

        Returns (rep, m_l, m_r, m_b): first interior occurrence position of
        each such factor in occurrence order, and its counts of distinct
        left letters, right letters, and two-sided pairs, all taken over
        occurrences whose both neighbours lie inside the word.
        """
        w = self.length - n + 1
        if w < 3:
            z = np.empty(0, dtype=np.int64)
            return z, z.copy(), z.copy(), z.copy()
        ids, _ = self.window_ids(n)
        mid = ids[1:w - 1]
        prev = self.data[0:w - 2].astype(np.int64)
        nxt = self.data[n + 1: n + 1 + (w - 2)].astype(np.int64)
        gids, first = np.unique(mid, return_index=True)
        rep = first + 1
        al = self._alpha + 1
        m_l = self._pair_counts(mid * al + prev, gids, al)
        m_r = self._pair_counts(mid * al + nxt, gids, al)
        m_b = self._pair_counts(mid * al * al + prev * al + nxt, gids, al * al)
        order = np.argsort(rep, kind="stable")
        return rep[order], m_l[order], m_r[order], m_b[order]

    @staticmethod
    def _pair_counts(keys, gids, mod):
        uniq = np.unique(keys)
        return np.bincount(np.searchsorted(gids, uniq // mod),
                           minlength=gids.shape[0]).astype(np.int64)
