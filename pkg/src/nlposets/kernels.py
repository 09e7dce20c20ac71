"""Array kernels behind the counting layer.

Two interchangeable backends: compiled loops when numba is available, and
vectorized numpy otherwise (or when NLPOSETS_BACKEND=numpy). Both produce
bit-identical exact results; big integers are carried as little-endian
base-2^30 limb arrays in int64 so additions stay exact with delayed
carries.
"""

from __future__ import annotations

import math
from itertools import permutations as _permutations

import numpy as np

from . import config
from .posets import FORBIDDEN_PATTERNS, M0_CORNER, pattern_assignments

if config.HAS_NUMBA:
    from numba import njit
else:
    def njit(*args, **kwargs):
        def deco(f):
            return f
        if args and callable(args[0]):
            return args[0]
        return deco

BASE_BITS = 30
MASK = (1 << BASE_BITS) - 1


def limbs_for(N):
    "Limb count comfortably holding any count of permutations of [N]."
    if N < 2:
        return 2
    bits = math.lgamma(N + 1) / math.log(2)
    return int(bits // BASE_BITS) + 3


def _limbs_to_int(vec):
    acc = 0
    for i, v in enumerate(vec):
        acc += int(v) << (BASE_BITS * i)
    return acc


# ---------------------------------------------------------------------------
# generating-tree DP, limb arithmetic

@njit(cache=True)
def _dp_steps_nb(N, Lb, out_limbs):
    K, L = N + 2, N + 1
    C = np.zeros((K, L, Lb), dtype=np.int64)
    New = np.zeros((K, L, Lb), dtype=np.int64)
    S = np.zeros((K, L + 1, Lb), dtype=np.int64)
    C[2, 1, 0] = 1
    out_limbs[1, 0] = 1
    for m in range(1, N):
        kmax, lmax = m + 1, m
        for k in range(2, kmax + 1):
            for i in range(Lb):
                S[k, 0, i] = 0
            for l in range(1, lmax + 1):
                for i in range(Lb):
                    S[k, l, i] = S[k, l - 1, i] + C[k, l, i]
        for k in range(0, m + 3):
            for l in range(0, min(m + 2, L)):
                for i in range(Lb):
                    New[k, l, i] = 0
        # new lowest ascent top k+1, landing at j below the old last entry
        for kp in range(3, m + 3):
            src = kp - 1
            hi = min(kp - 1, m + 1)
            for j in range(1, hi + 1):
                for i in range(Lb):
                    New[kp, j, i] = S[src, lmax, i] - S[src, j - 1, i]
        # landing exactly on the ascent top (diagonal states)
        for j in range(2, m + 2):
            if j <= kmax:
                for k in range(j, kmax + 1):
                    for i in range(Lb):
                        New[j, j, i] += S[k, j - 1, i]
        # ascent top kept, landing above it
        for kp in range(2, kmax + 1):
            mn = kp if kp < lmax else lmax
            for j in range(kp + 1, m + 2):
                for i in range(Lb):
                    New[kp, j, i] += (S[kp, mn, i] + S[kp, lmax, i]
                                      - S[kp, j - 1, i])
        for i in range(Lb):
            out_limbs[m + 1, i] = 0
        for k in range(2, m + 3):
            for l in range(1, min(m + 2, L)):
                carry = np.int64(0)
                for i in range(Lb):
                    v = New[k, l, i] + carry
                    low = v & MASK
                    carry = (v - low) >> BASE_BITS
                    New[k, l, i] = low
                    out_limbs[m + 1, i] += low
        tmp = C
        C = New
        New = tmp
    for m in range(N + 1):
        carry = np.int64(0)
        for i in range(Lb):
            v = out_limbs[m, i] + carry
            low = v & MASK
            carry = (v - low) >> BASE_BITS
            out_limbs[m, i] = low


def _dp_terms_numba(N):
    Lb = limbs_for(N)
    out = np.zeros((N + 1, Lb), dtype=np.int64)
    out[0, 0] = 1
    _dp_steps_nb(N, Lb, out)
    return [_limbs_to_int(out[m]) for m in range(N + 1)]


def _dp_terms_numpy(N):
    Lb = limbs_for(N)
    K, L = N + 2, N + 1
    C = np.zeros((K, L, Lb), dtype=np.int64)
    C[2, 1, 0] = 1
    terms = [1, 1]
    S = np.zeros((K, L + 1, Lb), dtype=np.int64)
    New = np.zeros_like(C)
    for m in range(1, N):
        kmax, lmax = m + 1, m
        S[:kmax + 1, 0, :] = 0
        np.cumsum(C[:kmax + 1, 1:lmax + 1, :], axis=1,
                  out=S[:kmax + 1, 1:lmax + 1, :])
        T = S[:kmax + 1, lmax, :]
        New[:m + 3, :min(m + 2, L), :] = 0
        for kp in range(3, m + 3):
            hi = min(kp - 1, m + 1)
            New[kp, 1:hi + 1, :] = T[kp - 1][None, :] - S[kp - 1, 0:hi, :]
        # suffix sums over k realize the diagonal rule in one pass
        Z = np.cumsum(S[kmax::-1, :, :], axis=0)[::-1]
        for j in range(2, m + 2):
            if j <= kmax:
                New[j, j, :] += Z[j, j - 1, :]
        for kp in range(2, kmax + 1):
            if kp + 1 <= m + 1:
                base = S[kp, min(kp, lmax), :] + T[kp]
                New[kp, kp + 1:m + 2, :] = base[None, :] - S[kp, kp:m + 1, :]
        block = New[:m + 3, :m + 2, :]
        carry = np.zeros(block.shape[:2], dtype=np.int64)
        for i in range(Lb):
            v = block[:, :, i] + carry
            low = v & MASK
            carry = (v - low) >> BASE_BITS
            block[:, :, i] = low
        if carry.any():
            raise AssertionError("limb capacity exceeded")
        C, New = New, C
        tot = C[:m + 3, :m + 2, :].sum(axis=(0, 1))
        terms.append(_limbs_to_int(tot))
    return terms[:N + 1]


def dp_terms(N):
    "Exact Av(12-34) counts for lengths 0..N on the active backend."
    if N == 0:
        return [1]
    if config.active_backend() == "numba":
        return _dp_terms_numba(N)
    return _dp_terms_numpy(N)


# ---------------------------------------------------------------------------
# brute-force avoider scans; pattern ids index WILF_CLASS
# (0: 12-34, 1: 12-43, 2: 21-43, 3: 43-12)

@njit(cache=True, inline="always")
def _contains_nb(p, n, pid):
    if pid == 0:
        best = np.int64(2 ** 62)   # min ascent top two steps back
        for j in range(n - 1):
            if j >= 2 and p[j - 2] < p[j - 1] and p[j - 1] < best:
                best = p[j - 1]
            if p[j] < p[j + 1] and best < p[j]:
                return True
        return False
    elif pid == 1:
        best = np.int64(2 ** 62)
        for j in range(n - 1):
            if j >= 2 and p[j - 2] < p[j - 1] and p[j - 1] < best:
                best = p[j - 1]
            if p[j] > p[j + 1] and best < p[j + 1]:
                return True
        return False
    elif pid == 2:
        best = np.int64(2 ** 62)   # min descent top
        for j in range(n - 1):
            if j >= 2 and p[j - 2] > p[j - 1] and p[j - 2] < best:
                best = p[j - 2]
            if p[j] > p[j + 1] and best < p[j + 1]:
                return True
        return False
    else:
        best = np.int64(-1)        # max descent bottom
        for j in range(n - 1):
            if j >= 2 and p[j - 2] > p[j - 1] and p[j - 1] > best:
                best = p[j - 1]
            if p[j] < p[j + 1] and p[j + 1] < best:
                return True
        return False


@njit(cache=True)
def _count_avoiders_nb(n, pid):
    p = np.empty(n, dtype=np.int64)
    for i in range(n):
        p[i] = i + 1
    cnt = 0
    while True:
        if not _contains_nb(p, n, pid):
            cnt += 1
        i = n - 2
        while i >= 0 and p[i] >= p[i + 1]:
            i -= 1
        if i < 0:
            break
        j = n - 1
        while p[j] <= p[i]:
            j -= 1
        p[i], p[j] = p[j], p[i]
        lo, hi = i + 1, n - 1
        while lo < hi:
            p[lo], p[hi] = p[hi], p[lo]
            lo += 1
            hi -= 1
    return cnt


def _all_perms_array(n):
    "All n! permutations of 1..n as an (n!, n) int8 array, by insertion."
    P = np.zeros((1, 1), dtype=np.int8)
    P[0, 0] = 1
    for k in range(2, n + 1):
        m = P.shape[0]
        out = np.empty((m * k, k), dtype=np.int8)
        for pos in range(k):
            blk = out[pos * m:(pos + 1) * m]
            blk[:, :pos] = P[:, :pos]
            blk[:, pos] = k
            blk[:, pos + 1:] = P[:, pos:]
        P = out
    return P


def _count_avoiders_np(n, pid):
    P = _all_perms_array(n).astype(np.int16)
    m = P.shape[0]
    found = np.zeros(m, dtype=bool)
    if pid in (0, 1):
        best = np.full(m, np.int16(127))
        for j in range(n - 1):
            if j >= 2:
                upd = (P[:, j - 2] < P[:, j - 1]) & (P[:, j - 1] < best)
                best = np.where(upd, P[:, j - 1], best)
            if pid == 0:
                found |= (P[:, j] < P[:, j + 1]) & (best < P[:, j])
            else:
                found |= (P[:, j] > P[:, j + 1]) & (best < P[:, j + 1])
    elif pid == 2:
        best = np.full(m, np.int16(127))
        for j in range(n - 1):
            if j >= 2:
                upd = (P[:, j - 2] > P[:, j - 1]) & (P[:, j - 2] < best)
                best = np.where(upd, P[:, j - 2], best)
            found |= (P[:, j] > P[:, j + 1]) & (best < P[:, j + 1])
    else:
        best = np.full(m, np.int16(-1))
        for j in range(n - 1):
            if j >= 2:
                upd = (P[:, j - 2] > P[:, j - 1]) & (P[:, j - 1] > best)
                best = np.where(upd, P[:, j - 1], best)
            found |= (P[:, j] < P[:, j + 1]) & (P[:, j + 1] < best)
    return int(m - found.sum())


def count_avoiders(pid, n):
    "Permutations of [n] avoiding WILF_CLASS[pid], full factorial scan."
    if not 0 <= pid < 4:
        raise ValueError(f"pattern id {pid} out of range")
    if n <= 1:
        return 1
    if config.active_backend() == "numba":
        return int(_count_avoiders_nb(n, pid))
    return _count_avoiders_np(n, pid)


# ---------------------------------------------------------------------------
# exhaustive matrix-characterization sweep
#
# Every upper-unitriangular 0/1 matrix of size n is a bit vector over the
# strict upper cells. The semantic side tests transitivity / chains /
# induced 2+2 straight from the definitions; the pattern side is driven
# by the generic placement enumerator over the declared pattern constants.
# Each placement partially evaluates to a pair of required-one and
# required-zero bitmasks.

def _bit_index_map(n):
    idx = {}
    b = 0
    for i in range(n):
        for j in range(i + 1, n):
            idx[(i, j)] = b
            b += 1
    return idx, b


def _placement_masks(n, pat):
    """(must_one, must_zero) mask pairs, one per feasible placement."""
    idx, _ = _bit_index_map(n)
    out = []
    for rows, cols in pattern_assignments(n, pat):
        m1 = 0
        m0 = 0
        ok = True
        for r in range(pat.prows):
            for c in range(pat.pcols):
                want = pat.cells[r][c]
                if want is None:
                    continue
                i, j = rows[r], cols[c]
                if i == j:
                    fixed = 1
                elif i > j:
                    fixed = 0
                else:
                    fixed = None
                if fixed is not None:
                    if fixed != want:
                        ok = False
                        break
                    continue
                if want:
                    m1 |= 1 << idx[(i, j)]
                else:
                    m0 |= 1 << idx[(i, j)]
            if not ok:
                break
        if ok:
            out.append((m1, m0))
    return out


def _semantic_tables(n):
    """Definitional index tables for the vectorized semantic tests.

    chains: (ij, jk, ik) bit triples; quads: 6-bit tuples for induced
    2+2 tests (two strict pairs, four cross cells that must be 0).
    """
    idx, nbits = _bit_index_map(n)
    chains = [(idx[(i, j)], idx[(j, k)], idx[(i, k)])
              for i in range(n) for j in range(i + 1, n)
              for k in range(j + 1, n)]
    quads = []
    pairs = sorted(idx)
    for ai in range(len(pairs)):
        a, b = pairs[ai]
        for ci in range(ai + 1, len(pairs)):
            c, d = pairs[ci]
            if len({a, b, c, d}) != 4:
                continue
            cross = []
            for x in (a, b):
                for y in (c, d):
                    cross.append(idx[(min(x, y), max(x, y))])
            quads.append((idx[(a, b)], idx[(c, d)],
                          cross[0], cross[1], cross[2], cross[3]))
    return chains, quads, nbits


@njit(cache=True)
def _sweep_nb(nbits, chain_arr, quad_arr, corner_m1, corner_m0,
              pat_m1, pat_m0, pat_off, counts, first_bad):
    total = 1 << nbits
    for v in range(total):
        # semantic: transitivity and chain-freeness share the triple table
        transitive = True
        chainfree = True
        for t in range(chain_arr.shape[0]):
            ij = (v >> chain_arr[t, 0]) & 1
            jk = (v >> chain_arr[t, 1]) & 1
            ik = (v >> chain_arr[t, 2]) & 1
            if ij and jk:
                chainfree = False
                if not ik:
                    transitive = False
                    break
        if transitive:
            ttfree = True
            for q in range(quad_arr.shape[0]):
                if ((v >> quad_arr[q, 0]) & 1) and ((v >> quad_arr[q, 1]) & 1):
                    clean = True
                    for c in range(2, 6):
                        if (v >> quad_arr[q, c]) & 1:
                            clean = False
                            break
                    if clean:
                        ttfree = False
                        break
        else:
            ttfree = False
            chainfree = False
        # pattern route
        has_corner = False
        for a in range(corner_m1.shape[0]):
            if (v & corner_m1[a]) == corner_m1[a] and (v & corner_m0[a]) == 0:
                has_corner = True
                break
        any_forbidden = False
        for p in range(4):
            if any_forbidden:
                break
            for a in range(pat_off[p], pat_off[p + 1]):
                if (v & pat_m1[a]) == pat_m1[a] and (v & pat_m0[a]) == 0:
                    any_forbidden = True
                    break
        has_m0 = False
        for a in range(pat_off[0], pat_off[1]):
            if (v & pat_m1[a]) == pat_m1[a] and (v & pat_m0[a]) == 0:
                has_m0 = True
                break
        # reconcile
        if transitive != (not has_corner):
            counts[5] += 1
            if first_bad[0] < 0:
                first_bad[0] = v
        if transitive:
            counts[0] += 1
            if chainfree != (not has_m0):
                counts[5] += 1
                if first_bad[0] < 0:
                    first_bad[0] = v
            if (chainfree and ttfree) != (not any_forbidden):
                counts[5] += 1
                if first_bad[0] < 0:
                    first_bad[0] = v
            if chainfree:
                counts[1] += 1
            if ttfree:
                counts[2] += 1
            if chainfree and ttfree:
                counts[3] += 1
        counts[4] += 1


def _sweep_np(nbits, chains, quads, corner_masks, pat_masks):
    total = 1 << nbits
    V = np.arange(total, dtype=np.int64)

    def bit(b):
        return ((V >> b) & 1).astype(bool)

    chain_hit = np.zeros(total, dtype=bool)    # some i<j<k with ij, jk
    trans_bad = np.zeros(total, dtype=bool)
    for ij, jk, ik in chains:
        have = bit(ij) & bit(jk)
        chain_hit |= have
        trans_bad |= have & ~bit(ik)
    transitive = ~trans_bad
    chainfree = ~chain_hit
    tt_hit = np.zeros(total, dtype=bool)
    for ab, cd, x1, x2, x3, x4 in quads:
        tt_hit |= (bit(ab) & bit(cd)
                   & ~bit(x1) & ~bit(x2) & ~bit(x3) & ~bit(x4))
    ttfree = ~tt_hit

    def matched(masks):
        hit = np.zeros(total, dtype=bool)
        for m1, m0 in masks:
            hit |= ((V & m1) == m1) & ((V & m0) == 0)
        return hit

    has_corner = matched(corner_masks)
    has_m0 = matched(pat_masks[0])
    any_forbidden = np.zeros(total, dtype=bool)
    for masks in pat_masks:
        any_forbidden |= matched(masks)

    mism = int((transitive != ~has_corner).sum())
    mism += int((transitive & (chainfree != ~has_m0)).sum())
    mism += int((transitive
                 & ((chainfree & ttfree) != ~any_forbidden)).sum())
    counts = {
        "transitive": int(transitive.sum()),
        "three_free": int((transitive & chainfree).sum()),
        "tt_free": int((transitive & ttfree).sum()),
        "three_tt_free": int((transitive & chainfree & ttfree).sum()),
        "total": total,
        "mismatches": mism,
        "first_bad": -1,
    }
    if mism:
        bad = np.nonzero(transitive != ~has_corner)[0]
        counts["first_bad"] = int(bad[0]) if bad.size else -1
    return counts


def characterization_sweep(n, limit=7):
    """Compare semantic predicates with pattern placements over every
    upper-unitriangular matrix of size n; returns category counts and a
    mismatch tally (which must be zero)."""
    if n > limit:
        raise config.ResourceGuardError(
            f"characterization_sweep: n={n} exceeds limit {limit}")
    chains, quads, nbits = _semantic_tables(n)
    corner_masks = _placement_masks(n, M0_CORNER)
    pat_masks = [_placement_masks(n, p) for p in FORBIDDEN_PATTERNS]
    if config.active_backend() == "numba":
        chain_arr = np.array(chains, dtype=np.int64).reshape(-1, 3)
        quad_arr = np.array(quads, dtype=np.int64).reshape(-1, 6)
        c_m1 = np.array([m1 for m1, _ in corner_masks], dtype=np.int64)
        c_m0 = np.array([m0 for _, m0 in corner_masks], dtype=np.int64)
        flat = [pair for masks in pat_masks for pair in masks]
        p_m1 = np.array([m1 for m1, _ in flat], dtype=np.int64)
        p_m0 = np.array([m0 for _, m0 in flat], dtype=np.int64)
        off = np.zeros(5, dtype=np.int64)
        for p in range(4):
            off[p + 1] = off[p] + len(pat_masks[p])
        counts = np.zeros(6, dtype=np.int64)
        first_bad = np.full(1, -1, dtype=np.int64)
        _sweep_nb(nbits, chain_arr, quad_arr, c_m1, c_m0, p_m1, p_m0,
                  off, counts, first_bad)
        return {
            "transitive": int(counts[0]),
            "three_free": int(counts[1]),
            "tt_free": int(counts[2]),
            "three_tt_free": int(counts[3]),
            "total": int(counts[4]),
            "mismatches": int(counts[5]),
            "first_bad": int(first_bad[0]),
        }
    return _sweep_np(nbits, chains, quads, corner_masks, pat_masks)
