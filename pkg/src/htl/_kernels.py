"""Backtracking kernel for the exhaustive labeling search.

The kernel enumerates label assignments slot by slot over ``n`` polygons of
``k`` corners, with incremental versions of every proper-labeling condition
as pruning rules, plus two symmetry reductions: labels appear in first-use
order (kills renamings) and every completed polygon must be minimal among
its own rotations under that renaming (kills almost all rotations).  The
survivors are deduplicated by full canonicalization on the Python side.

Everything is written against flat numpy arrays so the identical source
compiles under numba's ``@njit`` (the default) and still runs as plain
Python when ``HTL_NO_JIT=1`` selects the fallback path.
"""

from __future__ import annotations

import os

import numpy as np


def _jit_wanted() -> bool:
    if os.environ.get("HTL_NO_JIT") == "1":
        return False
    try:
        import numba  # noqa: F401
    except ImportError:
        return False
    return True


JIT_ENABLED = _jit_wanted()

if JIT_ENABLED:
    from numba import njit

    def _compiled(func):
        return njit(cache=True)(func)
else:
    def _compiled(func):
        return func


def _edge_try(pair_cnt, first_sign, odd_inc, end_cnt, mm, tail, head, oriented_only):
    """Place the boundary edge (tail -> head); False if any pair rule breaks.

    Rules: at most two edges per unordered label pair; under oriented-only
    search the second edge of a pair must run against the first one; once a
    label has all six edge-ends placed, each of its pair counts must be even.
    """
    a, b = (tail, head) if tail <= head else (head, tail)
    idx = a * mm + b
    c = pair_cnt[idx]
    if c >= 2:
        return False
    sign = 1 if tail < head else (-1 if tail > head else 1)
    if c == 1 and oriented_only and first_sign[idx] == sign:
        return False
    pair_cnt[idx] = c + 1
    if c == 0:
        first_sign[idx] = sign
        odd_inc[a] += 1
        if b != a:
            odd_inc[b] += 1
    else:
        odd_inc[a] -= 1
        if b != a:
            odd_inc[b] -= 1
    end_cnt[tail] += 1
    end_cnt[head] += 1
    bad = (end_cnt[tail] == 6 and odd_inc[tail] > 0) or (
        end_cnt[head] == 6 and odd_inc[head] > 0
    )
    if bad:
        _edge_revert(pair_cnt, first_sign, odd_inc, end_cnt, mm, tail, head)
        return False
    return True


def _edge_revert(pair_cnt, first_sign, odd_inc, end_cnt, mm, tail, head):
    a, b = (tail, head) if tail <= head else (head, tail)
    idx = a * mm + b
    c = pair_cnt[idx]
    pair_cnt[idx] = c - 1
    if c == 1:
        odd_inc[a] -= 1
        if b != a:
            odd_inc[b] -= 1
    else:
        odd_inc[a] += 1
        if b != a:
            odd_inc[b] += 1
    end_cnt[tail] -= 1
    end_cnt[head] -= 1


def _rotation_minimal(S, first_occ, pstart, k, used, ren_val, ren_stamp, stamp_box):
    """Whether the completed polygon window is <= all its own rotations.

    Labels first used before this polygon keep their value (the stream is in
    first-use order, so they are exactly 1..used_before); labels first used
    inside the window are renamed in order of appearance within the rotated
    window.  Equal rotations are kept (ties go to final deduplication).
    """
    new_in = 0
    for t in range(k):
        if first_occ[S[pstart + t]] == pstart + t:
            new_in += 1
    used_before = used - new_in
    for r in range(1, k):
        stamp_box[0] += 1
        stamp = stamp_box[0]
        nxt = used_before + 1
        for t in range(k):
            x = S[pstart + ((r + t) % k)]
            if first_occ[x] < pstart:
                v = x
            else:
                if ren_stamp[x] != stamp:
                    ren_val[x] = nxt
                    ren_stamp[x] = stamp
                    nxt += 1
                v = ren_val[x]
            w = S[pstart + t]
            if v < w:
                return False
            if v > w:
                break
    return True


def _search_impl(n, k, m, oriented_only, no_runs, max_raw, node_budget):
    """Enumerate all regular proper labelings (n polygons of k corners).

    Returns (solutions, status, nodes) where status is 0 for a completed
    search, 1 when the node budget ran out and 2 on output overflow.
    """
    T = n * k
    mm = m + 2
    S = np.zeros(T, np.int64)
    cand = np.zeros(T, np.int64)
    run_len = np.zeros(T, np.int64)
    label_cnt = np.zeros(mm, np.int64)
    first_occ = np.full(mm, -1, np.int64)
    pair_cnt = np.zeros(mm * mm, np.int64)
    first_sign = np.zeros(mm * mm, np.int64)
    end_cnt = np.zeros(mm, np.int64)
    odd_inc = np.zeros(mm, np.int64)
    ren_val = np.zeros(mm, np.int64)
    ren_stamp = np.zeros(mm, np.int64)
    stamp_box = np.zeros(1, np.int64)
    per_poly = np.zeros((n, mm), np.int64)
    out = np.zeros((max_raw, T), np.int64)
    n_out = 0
    used = 0
    nodes = 0
    status = 0
    d = 0
    while True:
        if node_budget > 0 and nodes >= node_budget:
            status = 1
            break
        p = d // k
        local = d - p * k
        pstart = p * k
        placed = False
        c = cand[d] + 1
        while True:
            lim = used + 1
            if lim > m:
                lim = m
            if c > lim:
                break
            nodes += 1
            prev = S[d - 1] if local > 0 else 0
            ok = label_cnt[c] < 3
            if ok and local > 0:
                if c == prev:
                    if no_runs or oriented_only or run_len[d - 1] >= 3:
                        ok = False
                else:
                    rl = run_len[d - 1]
                    if rl == 2 and (d - rl) != pstart:
                        ok = False
                if ok and local >= 2 and S[d - 2] == c and prev != c:
                    ok = False
                if ok and not _edge_try(
                    pair_cnt, first_sign, odd_inc, end_cnt, mm, prev, c, oriented_only
                ):
                    ok = False
                    c += 1
                    continue
            if not ok:
                c += 1
                continue
            # label placed; maybe polygon completes
            S[d] = c
            if label_cnt[c] == 0:
                first_occ[c] = d
                used += 1
            label_cnt[c] += 1
            run_len[d] = run_len[d - 1] + 1 if (local > 0 and prev == c) else 1
            if local == k - 1:
                okc = True
                first = S[pstart]
                s_len = 1
                while s_len < k and S[pstart + s_len] == first:
                    s_len += 1
                e_len = run_len[d]
                if c == first:
                    if no_runs or oriented_only or s_len >= k or s_len + e_len != 3:
                        okc = False
                else:
                    if s_len != 1 and s_len != 3:
                        okc = False
                    if e_len != 1 and e_len != 3:
                        okc = False
                if okc:
                    if c == S[pstart + 1] and c != first:
                        okc = False  # corner pstart flanked twice by c
                    elif S[d - 1] == first and S[d - 1] != c:
                        okc = False  # corner d flanked twice by first
                wrap_applied = False
                if okc:
                    if _edge_try(pair_cnt, first_sign, odd_inc, end_cnt, mm, c, first, oriented_only):
                        wrap_applied = True
                    else:
                        okc = False
                if okc and not _rotation_minimal(
                    S, first_occ, pstart, k, used, ren_val, ren_stamp, stamp_box
                ):
                    okc = False
                if not okc:
                    if wrap_applied:
                        _edge_revert(pair_cnt, first_sign, odd_inc, end_cnt, mm, c, first)
                    label_cnt[c] -= 1
                    if label_cnt[c] == 0:
                        first_occ[c] = -1
                        used -= 1
                    S[d] = 0
                    run_len[d] = 0
                    if local > 0:
                        _edge_revert(pair_cnt, first_sign, odd_inc, end_cnt, mm, prev, c)
                    c += 1
                    continue
            placed = True
            break
        if not placed:
            cand[d] = 0
            d -= 1
            if d < 0:
                break
            # undo the placement currently held at depth d
            cu = S[d]
            pu = d // k
            lu = d - pu * k
            psu = pu * k
            if lu == k - 1:
                _edge_revert(pair_cnt, first_sign, odd_inc, end_cnt, mm, cu, S[psu])
            if lu > 0:
                _edge_revert(pair_cnt, first_sign, odd_inc, end_cnt, mm, S[d - 1], cu)
            label_cnt[cu] -= 1
            if label_cnt[cu] == 0:
                first_occ[cu] = -1
                used -= 1
            S[d] = 0
            run_len[d] = 0
            continue
        cand[d] = c
        if d == T - 1:
            # full assignment: label counts are forced to all-threes here
            ok2 = True
            if n > 1:
                for pp in range(n):
                    for x in range(mm):
                        per_poly[pp, x] = 0
                    for t in range(k):
                        per_poly[pp, S[pp * k + t]] += 1
                full = (1 << n) - 1
                mask = 1
                while mask < full:
                    found = False
                    for x in range(1, m + 1):
                        tot = 0
                        for pp in range(n):
                            if (mask >> pp) & 1:
                                tot += per_poly[pp, x]
                        if tot == 1 or tot == 2:
                            found = True
                            break
                    if not found:
                        ok2 = False
                        break
                    mask += 1
            if ok2:
                if n_out >= max_raw:
                    status = 2
                    break
                for t in range(T):
                    out[n_out, t] = S[t]
                n_out += 1
            # retract the leaf and keep scanning this depth
            cu = S[d]
            pu = d // k
            lu = d - pu * k
            psu = pu * k
            if lu == k - 1:
                _edge_revert(pair_cnt, first_sign, odd_inc, end_cnt, mm, cu, S[psu])
            if lu > 0:
                _edge_revert(pair_cnt, first_sign, odd_inc, end_cnt, mm, S[d - 1], cu)
            label_cnt[cu] -= 1
            if label_cnt[cu] == 0:
                first_occ[cu] = -1
                used -= 1
            S[d] = 0
            run_len[d] = 0
            continue
        d += 1
        cand[d] = 0
    return out[:n_out].copy(), status, nodes


_edge_try = _compiled(_edge_try)
_edge_revert = _compiled(_edge_revert)
_rotation_minimal = _compiled(_rotation_minimal)
search_kernel = _compiled(_search_impl)
