"""Compiled maximum-counter sweep over all word lengths of a unary net."""

from __future__ import annotations

import numpy as np

try:
    from numba import njit
except ImportError:  # pragma: no cover
    def njit(*args, **kwargs):
        if args and callable(args[0]):
            return args[0]
        return lambda f: f

_INT_LIMIT = 1 << 62


@njit(cache=True)
def _kernel(src, dst, eff, nstates, start, c0, acc, N):
    out = np.zeros(N + 1, dtype=np.bool_)
    cur = np.full(nstates, -1, dtype=np.int64)
    nxt = np.full(nstates, -1, dtype=np.int64)
    cur[start] = c0
    for n in range(N + 1):
        alive = False
        for q in range(nstates):
            if cur[q] >= 0:
                alive = True
                if acc[q]:
                    out[n] = True
        if not alive or n == N:
            break
        nxt[:] = -1
        for k in range(src.shape[0]):
            c = cur[src[k]]
            if c >= 0:
                c2 = c + eff[k]
                if c2 > nxt[dst[k]]:
                    nxt[dst[k]] = c2
        cur, nxt = nxt, cur
    return out


def _product(ocn, s0, via):
    """Index the net, or its two-copy product remembering whether ``via`` was visited."""
    idx = {q: i for i, q in enumerate(ocn.states)}
    if via is None:
        edges = [(idx[t.src], idx[t.dst], t.effect) for t in ocn.transitions]
        acc = [q in ocn.accepting for q in ocn.states]
        return edges, len(idx), idx[s0], acc
    n = len(idx)
    edges = []
    for t in ocn.transitions:
        hit = int(t.dst == via)
        edges.append((2 * idx[t.src], 2 * idx[t.dst] + hit, t.effect))
        edges.append((2 * idx[t.src] + 1, 2 * idx[t.dst] + 1, t.effect))
    acc = [False] * (2 * n)
    for q in ocn.accepting:
        acc[2 * idx[q] + 1] = True
    return edges, 2 * n, 2 * idx[s0] + int(s0 == via), acc


def max_counter_table(ocn, s0, c0, N, via=None):
    edges, nstates, start, acc = _product(ocn, s0, via)
    if c0 + N * ocn.norm < _INT_LIMIT:
        src = np.array([e[0] for e in edges], dtype=np.int64)
        dst = np.array([e[1] for e in edges], dtype=np.int64)
        eff = np.array([e[2] for e in edges], dtype=np.int64)
        res = _kernel(src, dst, eff, nstates, start, np.int64(c0),
                      np.array(acc, dtype=np.bool_), N)
        return [bool(x) for x in res]
    return _python_table(edges, nstates, start, c0, acc, N)


def _python_table(edges, nstates, start, c0, acc, N):
    out = [False] * (N + 1)
    cur = {start: c0}
    for n in range(N + 1):
        if not cur:
            break
        out[n] = any(acc[q] for q in cur)
        if n == N:
            break
        nxt: dict[int, int] = {}
        for p, q, e in edges:
            c = cur.get(p)
            if c is not None and c + e >= 0 and nxt.get(q, -1) < c + e:
                nxt[q] = c + e
        cur = nxt
    return out
