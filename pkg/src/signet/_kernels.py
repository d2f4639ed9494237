"""Bitmask kernels for the subset scans.

Every kernel has a numba version and a plain numpy version with the same
signature. Set SIGNET_DISABLE_NUMBA=1 to force the numpy path (useful for
debugging and for the benchmark in ``benchmarks/``).

Edge arrays use the encoding produced by ``signet.frame.edge_arrays``:
``kind`` is 0 for a link, 1 for a joint (half-edge or negative loop) and 2
for a rank-zero element (positive loop or loose edge); ``neg`` is 1 for a
negative link.
"""
from __future__ import annotations

import os

import numpy as np

try:  # pragma: no cover - exercised implicitly
    import numba
    from numba import njit
    HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    HAVE_NUMBA = False


def numba_enabled() -> bool:
    return HAVE_NUMBA and os.environ.get("SIGNET_DISABLE_NUMBA", "") not in ("1", "true", "yes")


RANK_DTYPE = np.int16


# ---------------------------------------------------------------- numpy path

def popcount_table(m: int) -> np.ndarray:
    pc = np.zeros(1 << m, dtype=np.int16)
    for e in range(m):
        h = 1 << e
        pc[h:2 * h] = pc[:h] + 1
    return pc


def _rank_table_np(nv, eu, ev, kind, neg):
    m = len(eu)
    n = 1 << m
    if nv == 0:
        return np.zeros(n, dtype=RANK_DTYPE)
    lab = np.zeros((n, nv), dtype=np.int16)
    par = np.zeros((n, nv), dtype=np.bool_)
    bad = np.zeros((n, nv), dtype=np.bool_)
    lab[0] = np.arange(nv)
    for e in range(m):
        h = 1 << e
        L, P, B = lab[:h], par[:h], bad[:h]
        nL, nP, nB = L.copy(), P.copy(), B.copy()
        rows = np.arange(h)
        if kind[e] == 1:
            nB[rows, L[:, eu[e]]] = True
        elif kind[e] == 0:
            u, v = eu[e], ev[e]
            lu, lv = L[:, u], L[:, v]
            flip = P[:, u] ^ P[:, v] ^ bool(neg[e])
            same = lu == lv
            # closing a cycle: odd parity marks the component unbalanced
            nB[rows[same], lu[same]] |= flip[same]
            diff = ~same
            if diff.any():
                moved = (L == lv[:, None]) & diff[:, None]
                nL[moved] = np.broadcast_to(lu[:, None], L.shape)[moved]
                nP ^= moved & flip[:, None]
                r = rows[diff]
                nB[r, lu[diff]] |= B[r, lv[diff]]
        lab[h:2 * h], par[h:2 * h], bad[h:2 * h] = nL, nP, nB
    roots = lab == np.arange(nv)[None, :]
    balanced = np.count_nonzero(roots & ~bad, axis=1)
    return (nv - balanced).astype(RANK_DTYPE)


def _circuit_flags_np(rank):
    n = len(rank)
    m = n.bit_length() - 1
    pc = popcount_table(m)
    dep = rank == pc - 1
    ok = dep.copy()
    idx = np.arange(n)
    for e in range(m):
        h = 1 << e
        has = (idx & h) != 0
        sub = np.where(has, idx ^ h, idx)
        ok &= ~has | (rank[sub] == pc - 1)
    return ok


def _canon_np(codes, perms):
    # codes: (G, k) int64 edge codes, -1 padded; perms: (P, nv)
    out = np.empty_like(codes)
    for g in range(codes.shape[0]):
        best = None
        for p in perms:
            row = sorted(_permute_code(int(c), p) for c in codes[g] if c >= 0)
            row = row + [-1] * (codes.shape[1] - len(row))
            if best is None or row < best:
                best = row
        out[g] = best
    return out


def _permute_code(c, p):
    kind, rest = divmod(c, 1000)
    s, rest = divmod(rest, 100)
    a, b = divmod(rest, 10)
    a, b = p[a], p[b]
    if a > b:
        a, b = b, a
    return kind * 1000 + s * 100 + a * 10 + b


# ---------------------------------------------------------------- numba path

if HAVE_NUMBA:

    @njit(cache=True)
    def _rank_table_nb(nv, eu, ev, kind, neg):
        # row for mask = row for mask minus its top edge, plus that edge
        m = eu.shape[0]
        n = 1 << m
        out = np.zeros(n, np.int16)
        if nv == 0:
            return out
        lab = np.empty((n, nv), np.int16)
        par = np.zeros((n, nv), np.bool_)
        bad = np.zeros((n, nv), np.bool_)
        for v in range(nv):
            lab[0, v] = v
        out[0] = 0
        for e in range(m):
            h = 1 << e
            for prev in range(h):
                mask = prev | h
                for v in range(nv):
                    lab[mask, v] = lab[prev, v]
                    par[mask, v] = par[prev, v]
                    bad[mask, v] = bad[prev, v]
                if kind[e] == 1:
                    bad[mask, lab[mask, eu[e]]] = True
                elif kind[e] == 0:
                    u = eu[e]
                    w = ev[e]
                    lu = lab[mask, u]
                    lw = lab[mask, w]
                    flip = par[mask, u] ^ par[mask, w] ^ (neg[e] != 0)
                    if lu == lw:
                        if flip:
                            bad[mask, lu] = True
                    else:
                        if bad[mask, lw]:
                            bad[mask, lu] = True
                        for v in range(nv):
                            if lab[mask, v] == lw:
                                lab[mask, v] = lu
                                par[mask, v] = par[mask, v] ^ flip
                b = 0
                for v in range(nv):
                    if lab[mask, v] == v and not bad[mask, v]:
                        b += 1
                out[mask] = nv - b
        return out

    @njit(cache=True)
    def _circuit_flags_nb(rank):
        n = rank.shape[0]
        ok = np.zeros(n, np.bool_)
        for mask in range(1, n):
            c = 0
            x = mask
            while x:
                x &= x - 1
                c += 1
            if rank[mask] != c - 1:
                continue
            good = True
            x = mask
            while x:
                low = x & (-x)
                x ^= low
                if rank[mask ^ low] != c - 1:
                    good = False
                    break
            ok[mask] = good
        return ok

    @njit(cache=True)
    def _canon_nb(codes, perms):
        G, k = codes.shape
        out = np.empty_like(codes)
        row = np.empty(k, np.int64)
        best = np.empty(k, np.int64)
        for g in range(G):
            first = True
            for pi in range(perms.shape[0]):
                cnt = 0
                for j in range(k):
                    c = codes[g, j]
                    if c < 0:
                        continue
                    kd = c // 1000
                    s = (c // 100) % 10
                    a = perms[pi, (c // 10) % 10]
                    b = perms[pi, c % 10]
                    if a > b:
                        a, b = b, a
                    row[cnt] = kd * 1000 + s * 100 + a * 10 + b
                    cnt += 1
                row[:cnt].sort()
                for j in range(cnt, k):
                    row[j] = -1
                better = first
                if not first:
                    for j in range(k):
                        if row[j] != best[j]:
                            better = row[j] < best[j]
                            break
                if better:
                    best[:] = row
                    first = False
            out[g] = best
        return out


# ---------------------------------------------------------------- dispatch

def rank_table(nv, eu, ev, kind, neg) -> np.ndarray:
    """Frame-matroid rank of every subset of the encoded edges."""
    eu = np.asarray(eu, dtype=np.int64)
    ev = np.asarray(ev, dtype=np.int64)
    kind = np.asarray(kind, dtype=np.int64)
    neg = np.asarray(neg, dtype=np.int64)
    if numba_enabled():
        return _rank_table_nb(int(nv), eu, ev, kind, neg)
    return _rank_table_np(int(nv), eu, ev, kind, neg)


def circuit_flags(rank: np.ndarray) -> np.ndarray:
    """Boolean mask over subsets: True where the subset is a circuit."""
    rank = np.ascontiguousarray(rank, dtype=np.int16)
    if numba_enabled():
        return _circuit_flags_nb(rank)
    return _circuit_flags_np(rank)


def canonical_codes(codes: np.ndarray, perms: np.ndarray) -> np.ndarray:
    codes = np.ascontiguousarray(codes, dtype=np.int64)
    perms = np.ascontiguousarray(perms, dtype=np.int64)
    if numba_enabled():
        return _canon_nb(codes, perms)
    return _canon_np(codes, perms)


def deposit_index(positions, m_total=None) -> np.ndarray:
    """Old-table indices for every mask over the given bit positions."""
    idx = np.zeros(1, dtype=np.int64)
    for p in positions:
        idx = np.concatenate([idx, idx + (1 << int(p))])
    return idx
