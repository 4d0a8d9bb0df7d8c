"""Low-level bit-packed GF(2) kernels.

Matrices are handled here as contiguous ``uint64`` arrays of shape
``(rows, words)``; bit ``j`` of word ``w`` in a row is column ``64*w + j``.
Every routine exists in two interchangeable implementations:

* a numba ``@njit`` version (suffix ``_nb``), used when numba imports
  cleanly and ``QTANNER_PURE_NUMPY`` is not set to a truthy value;
* a pure-numpy version (suffix ``_np``) with identical semantics.

The module-level names ``rref``, ``gray_scan``, ``isd_scan`` and
``isd_collect`` are aliases for whichever backend is active; both spellings
stay importable so the benchmark can race them against each other.
"""
from __future__ import annotations

import os

import numpy as np

__all__ = [
    "ACTIVE_BACKEND",
    "HAS_NUMBA",
    "popcount_words",
    "rref",
    "gray_scan",
    "isd_scan",
    "isd_collect",
    "rref_np",
    "gray_scan_np",
    "isd_scan_np",
    "isd_collect_np",
]

_U0 = np.uint64(0)
_U1 = np.uint64(1)
_U6 = np.uint64(6)
_U63 = np.uint64(63)


def popcount_words(words: np.ndarray) -> np.ndarray:
    """Elementwise population count of a uint64 array."""
    return np.bitwise_count(words)


# ---------------------------------------------------------------------------
# pure-numpy backend
# ---------------------------------------------------------------------------

def rref_np(rows: np.ndarray, ncols: int) -> tuple[int, np.ndarray]:
    """Reduce ``rows`` in place to reduced row echelon form.

    Pivoting is deterministic: scan columns left to right, take the first
    row at or below the cursor with a 1 in the column, swap it up, then
    clear that column in every other row.  Returns ``(rank, pivot_cols)``.
    """
    m = rows.shape[0]
    pivots = np.empty(min(m, ncols), dtype=np.int64)
    r = 0
    for c in range(ncols):
        if r == m:
            break
        w, s = divmod(c, 64)
        shift = np.uint64(s)
        col = (rows[r:, w] >> shift) & _U1
        hits = np.nonzero(col)[0]
        if hits.size == 0:
            continue
        p = r + int(hits[0])
        if p != r:
            rows[[r, p]] = rows[[p, r]]
        full = (rows[:, w] >> shift) & _U1
        full[r] = 0
        targets = np.nonzero(full)[0]
        if targets.size:
            rows[targets] ^= rows[r]
        pivots[r] = c
        r += 1
    return r, np.ascontiguousarray(pivots[:r])


def _reduce_np(vec: np.ndarray, red: np.ndarray, pivots: np.ndarray) -> np.ndarray:
    """Reduce a packed row vector against an RREF matrix; returns the residue."""
    v = vec.copy()
    for i in range(red.shape[0]):
        w, s = divmod(int(pivots[i]), 64)
        if (int(v[w]) >> s) & 1:
            v ^= red[i]
    return v


def gray_scan_np(
    basis: np.ndarray,
    red: np.ndarray,
    pivots: np.ndarray,
) -> tuple[int, np.ndarray]:
    """Minimum weight over all nonzero combinations of ``basis`` rows that
    do not reduce to zero against the RREF matrix ``red``.

    Walks the 2^k - 1 combinations in Gray-code order so each step is one
    row XOR; the (comparatively expensive) membership reduction only runs
    when a combination's weight beats the current best.  Returns
    ``(best_weight, best_vector)`` with weight 0 when nothing qualified.
    """
    k, nw = basis.shape
    acc = np.zeros(nw, dtype=np.uint64)
    best = 0
    best_vec = np.zeros(nw, dtype=np.uint64)
    total = 1 << k
    for idx in range(1, total):
        flip = ((idx ^ (idx >> 1)) ^ ((idx - 1) ^ ((idx - 1) >> 1))).bit_length() - 1
        acc ^= basis[flip]
        wt = int(np.bitwise_count(acc).sum())
        if wt == 0 or (best and wt >= best):
            continue
        if np.any(_reduce_np(acc, red, pivots)):
            best = wt
            best_vec = acc.copy()
    return best, best_vec


def isd_scan_np(
    gen: np.ndarray,
    ncols: int,
    perms: np.ndarray,
    red: np.ndarray,
    pivots: np.ndarray,
    best_in: int,
    best_vec_in: np.ndarray,
) -> tuple[int, np.ndarray]:
    """One batch of information-set decoding trials.

    Each permutation reorders the pivot search (columns are never moved);
    the generator matrix is re-reduced, and the reduced rows plus XORs of
    consecutive row pairs are weight-checked.  A candidate is only tested
    for non-membership in the rowspace of ``red`` when its weight improves
    on the best seen so far.  Returns the updated ``(best, best_vec)``.
    """
    m, nw = gen.shape
    best = best_in
    best_vec = best_vec_in.copy()
    for t in range(perms.shape[0]):
        work = gen.copy()
        r = 0
        for c in perms[t]:
            w, s = divmod(int(c), 64)
            shift = np.uint64(s)
            col = (work[r:, w] >> shift) & _U1
            hits = np.nonzero(col)[0]
            if hits.size == 0:
                continue
            p = r + int(hits[0])
            if p != r:
                work[[r, p]] = work[[p, r]]
            full = (work[:, w] >> shift) & _U1
            full[r] = 0
            targets = np.nonzero(full)[0]
            if targets.size:
                work[targets] ^= work[r]
            r += 1
            if r == m:
                break
        if r == 0:
            continue
        wts = np.bitwise_count(work[:r]).sum(axis=1)
        for i in range(r):
            wt = int(wts[i])
            if wt and (best == 0 or wt < best):
                if np.any(_reduce_np(work[i], red, pivots)):
                    best = wt
                    best_vec = work[i].copy()
        for i in range(r - 1):
            cand = work[i] ^ work[i + 1]
            wt = int(np.bitwise_count(cand).sum())
            if wt and (best == 0 or wt < best):
                if np.any(_reduce_np(cand, red, pivots)):
                    best = wt
                    best_vec = cand.copy()
    return best, best_vec


def isd_collect_np(
    gen: np.ndarray,
    ncols: int,
    perms: np.ndarray,
    red: np.ndarray,
    pivots: np.ndarray,
    bound: int,
    buf: np.ndarray,
) -> int:
    """Like :func:`isd_scan_np` but gathers distinct qualifying vectors of
    weight <= ``bound`` into ``buf`` (shape ``(cap, words)``).  Returns how
    many rows of ``buf`` are filled; collection stops when the buffer is
    full."""
    m, nw = gen.shape
    cap = buf.shape[0]
    count = 0
    for t in range(perms.shape[0]):
        work = gen.copy()
        r = 0
        for c in perms[t]:
            w, s = divmod(int(c), 64)
            shift = np.uint64(s)
            col = (work[r:, w] >> shift) & _U1
            hits = np.nonzero(col)[0]
            if hits.size == 0:
                continue
            p = r + int(hits[0])
            if p != r:
                work[[r, p]] = work[[p, r]]
            full = (work[:, w] >> shift) & _U1
            full[r] = 0
            targets = np.nonzero(full)[0]
            if targets.size:
                work[targets] ^= work[r]
            r += 1
            if r == m:
                break
        cands = [work[i] for i in range(r)]
        cands += [work[i] ^ work[i + 1] for i in range(r - 1)]
        for cand in cands:
            wt = int(np.bitwise_count(cand).sum())
            if wt == 0 or wt > bound:
                continue
            if count >= cap:
                return count
            if not np.any(_reduce_np(cand, red, pivots)):
                continue
            dup = False
            for b in range(count):
                if np.array_equal(buf[b], cand):
                    dup = True
                    break
            if not dup:
                buf[count] = cand
                count += 1
    return count


# ---------------------------------------------------------------------------
# numba backend
# ---------------------------------------------------------------------------

HAS_NUMBA = False
if not os.environ.get("QTANNER_PURE_NUMPY"):
    try:
        from numba import njit

        HAS_NUMBA = True
    except ImportError:
        HAS_NUMBA = False

if HAS_NUMBA:
    _M1 = np.uint64(0x5555555555555555)
    _M2 = np.uint64(0x3333333333333333)
    _M4 = np.uint64(0x0F0F0F0F0F0F0F0F)
    _H01 = np.uint64(0x0101010101010101)
    _S1 = np.uint64(1)
    _S2 = np.uint64(2)
    _S4 = np.uint64(4)
    _S56 = np.uint64(56)

    @njit(cache=True, inline="always")
    def _pc64(x):
        x = x - ((x >> _S1) & _M1)
        x = (x & _M2) + ((x >> _S2) & _M2)
        x = (x + (x >> _S4)) & _M4
        return (x * _H01) >> _S56

    @njit(cache=True)
    def _rref_nb(rows, ncols, pivots):
        m, nw = rows.shape
        r = 0
        for c in range(ncols):
            if r == m:
                break
            w = c >> 6
            s = np.uint64(c & 63)
            p = -1
            for i in range(r, m):
                if (rows[i, w] >> s) & _U1:
                    p = i
                    break
            if p < 0:
                continue
            if p != r:
                for j in range(nw):
                    tmp = rows[r, j]
                    rows[r, j] = rows[p, j]
                    rows[p, j] = tmp
            for i in range(m):
                if i != r and ((rows[i, w] >> s) & _U1):
                    for j in range(nw):
                        rows[i, j] ^= rows[r, j]
            pivots[r] = c
            r += 1
        return r

    def rref_nb(rows: np.ndarray, ncols: int) -> tuple[int, np.ndarray]:
        pivots = np.empty(min(rows.shape[0], ncols), dtype=np.int64)
        r = _rref_nb(rows, ncols, pivots)
        return r, np.ascontiguousarray(pivots[:r])

    @njit(cache=True, inline="always")
    def _residue_nonzero(vec, red, pivots):
        nw = vec.shape[0]
        tmp = np.empty(nw, np.uint64)
        for j in range(nw):
            tmp[j] = vec[j]
        for i in range(red.shape[0]):
            c = pivots[i]
            w = c >> 6
            s = np.uint64(c & 63)
            if (tmp[w] >> s) & _U1:
                for j in range(nw):
                    tmp[j] ^= red[i, j]
        for j in range(nw):
            if tmp[j]:
                return True
        return False

    @njit(cache=True)
    def gray_scan_nb(basis, red, pivots):
        k, nw = basis.shape
        acc = np.zeros(nw, np.uint64)
        best_vec = np.zeros(nw, np.uint64)
        best = 0
        total = np.int64(1) << k
        for idx in range(np.int64(1), total):
            g = idx ^ (idx >> 1)
            h = (idx - 1) ^ ((idx - 1) >> 1)
            d = g ^ h
            flip = 0
            while not (d & 1):
                d >>= 1
                flip += 1
            for j in range(nw):
                acc[j] ^= basis[flip, j]
            wt = 0
            for j in range(nw):
                wt += np.int64(_pc64(acc[j]))
            if wt == 0 or (best != 0 and wt >= best):
                continue
            if _residue_nonzero(acc, red, pivots):
                best = wt
                for j in range(nw):
                    best_vec[j] = acc[j]
        return best, best_vec

    @njit(cache=True)
    def isd_scan_nb(gen, ncols, perms, red, pivots, best_in, best_vec_in):
        m, nw = gen.shape
        best = best_in
        best_vec = best_vec_in.copy()
        work = np.empty((m, nw), np.uint64)
        cand = np.empty(nw, np.uint64)
        for t in range(perms.shape[0]):
            for i in range(m):
                for j in range(nw):
                    work[i, j] = gen[i, j]
            r = 0
            for ci in range(ncols):
                c = perms[t, ci]
                w = c >> 6
                s = np.uint64(c & 63)
                p = -1
                for i in range(r, m):
                    if (work[i, w] >> s) & _U1:
                        p = i
                        break
                if p < 0:
                    continue
                if p != r:
                    for j in range(nw):
                        tmp = work[r, j]
                        work[r, j] = work[p, j]
                        work[p, j] = tmp
                for i in range(m):
                    if i != r and ((work[i, w] >> s) & _U1):
                        for j in range(nw):
                            work[i, j] ^= work[r, j]
                r += 1
                if r == m:
                    break
            for i in range(r):
                wt = 0
                for j in range(nw):
                    wt += np.int64(_pc64(work[i, j]))
                if wt != 0 and (best == 0 or wt < best):
                    for j in range(nw):
                        cand[j] = work[i, j]
                    if _residue_nonzero(cand, red, pivots):
                        best = wt
                        for j in range(nw):
                            best_vec[j] = cand[j]
            for i in range(r - 1):
                wt = 0
                for j in range(nw):
                    wt += np.int64(_pc64(work[i, j] ^ work[i + 1, j]))
                if wt != 0 and (best == 0 or wt < best):
                    for j in range(nw):
                        cand[j] = work[i, j] ^ work[i + 1, j]
                    if _residue_nonzero(cand, red, pivots):
                        best = wt
                        for j in range(nw):
                            best_vec[j] = cand[j]
        return best, best_vec

    @njit(cache=True)
    def isd_collect_nb(gen, ncols, perms, red, pivots, bound, buf):
        m, nw = gen.shape
        cap = buf.shape[0]
        count = 0
        work = np.empty((m, nw), np.uint64)
        cand = np.empty(nw, np.uint64)
        for t in range(perms.shape[0]):
            for i in range(m):
                for j in range(nw):
                    work[i, j] = gen[i, j]
            r = 0
            for ci in range(ncols):
                c = perms[t, ci]
                w = c >> 6
                s = np.uint64(c & 63)
                p = -1
                for i in range(r, m):
                    if (work[i, w] >> s) & _U1:
                        p = i
                        break
                if p < 0:
                    continue
                if p != r:
                    for j in range(nw):
                        tmp = work[r, j]
                        work[r, j] = work[p, j]
                        work[p, j] = tmp
                for i in range(m):
                    if i != r and ((work[i, w] >> s) & _U1):
                        for j in range(nw):
                            work[i, j] ^= work[r, j]
                r += 1
                if r == m:
                    break
            ncand = r + (r - 1 if r > 0 else 0)
            for ic in range(ncand):
                if ic < r:
                    for j in range(nw):
                        cand[j] = work[ic, j]
                else:
                    i = ic - r
                    for j in range(nw):
                        cand[j] = work[i, j] ^ work[i + 1, j]
                wt = 0
                for j in range(nw):
                    wt += np.int64(_pc64(cand[j]))
                if wt == 0 or wt > bound:
                    continue
                if count >= cap:
                    return count
                if not _residue_nonzero(cand, red, pivots):
                    continue
                dup = False
                for b in range(count):
                    same = True
                    for j in range(nw):
                        if buf[b, j] != cand[j]:
                            same = False
                            break
                    if same:
                        dup = True
                        break
                if not dup:
                    for j in range(nw):
                        buf[count, j] = cand[j]
                    count += 1
        return count

    ACTIVE_BACKEND = "numba"
    rref = rref_nb
    gray_scan = gray_scan_nb
    isd_scan = isd_scan_nb
    isd_collect = isd_collect_nb
else:
    ACTIVE_BACKEND = "numpy"
    rref = rref_np
    gray_scan = gray_scan_np
    isd_scan = isd_scan_np
    isd_collect = isd_collect_np
