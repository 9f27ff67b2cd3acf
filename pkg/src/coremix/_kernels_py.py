"""Pure NumPy/SciPy implementations of the hot graph kernels.

This is the fallback backend for the compiled extension ``coremix._speedups``;
:mod:`coremix.kernels` picks whichever is available at import time.  Both
backends compute the same functions and must agree exactly (the test suite
compares them, and ``benchmarks/bench_kernels.py`` times them side by side).
"""

from __future__ import annotations

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components


def _normalize_labels(labels):
    # Renumber components by first occurrence so label 0 contains vertex 0.
    uniq, first = np.unique(labels, return_index=True)
    order = np.argsort(first, kind="stable")
    remap = np.empty(uniq.max() + 1, dtype=np.int64)
    remap[uniq[order]] = np.arange(len(uniq))
    return remap[labels]


def component_labels(indptr, nbr, n):
    """Label connected components; labels are numbered by first occurrence."""
    if n == 0:
        return np.empty(0, dtype=np.int64), 0
    data = np.ones(len(nbr), dtype=np.int8)
    adj = csr_matrix((data, nbr, indptr), shape=(n, n))
    ncomp, labels = connected_components(adj, directed=False)
    return _normalize_labels(labels.astype(np.int64)), int(ncomp)


def bfs_distances(indptr, nbr, source, n):
    """BFS distances from ``source``; unreachable vertices get -1."""
    dist = np.full(n, -1, dtype=np.int64)
    dist[source] = 0
    frontier = np.array([source], dtype=np.int64)
    d = 0
    while frontier.size:
        starts = indptr[frontier]
        counts = indptr[frontier + 1] - starts
        total = int(counts.sum())
        if total == 0:
            break
        offs = np.repeat(np.cumsum(counts) - counts, counts)
        idx = np.repeat(starts, counts) + (np.arange(total) - offs)
        cand = nbr[idx]
        cand = cand[dist[cand] < 0]
        if cand.size == 0:
            break
        frontier = np.unique(cand)
        d += 1
        dist[frontier] = d
    return dist


def two_core_mask(indptr, nbr, eid, degrees, m):
    """Boolean mask of the 2-core (fixpoint of deleting degree<=1 vertices)."""
    n = len(degrees)
    deg = degrees.astype(np.int64, copy=True)
    alive_v = np.ones(n, dtype=bool)
    alive_e = np.ones(m, dtype=bool)
    stack = list(np.flatnonzero(deg <= 1))
    while stack:
        v = stack.pop()
        if not alive_v[v]:
            continue
        alive_v[v] = False
        for k in range(indptr[v], indptr[v + 1]):
            e = eid[k]
            if alive_e[e]:
                alive_e[e] = False
                w = nbr[k]
                if w != v and alive_v[w]:
                    deg[w] -= 1
                    if deg[w] <= 1:
                        stack.append(int(w))
    return alive_v


def walk_path(indptr, nbr, start, uniforms):
    """Trajectory of the simple random walk driven by uniform variates.

    Step ``t`` moves to the adjacency slot ``int(uniforms[t] * degree)``, so
    identical variates give identical paths in both backends.
    """
    steps = len(uniforms)
    path = np.empty(steps + 1, dtype=np.int64)
    v = int(start)
    path[0] = v
    ip = indptr
    nb = nbr
    un = uniforms
    for t in range(steps):
        lo = ip[v]
        d = ip[v + 1] - lo
        v = int(nb[lo + int(un[t] * d)])
        path[t + 1] = v
    return path


def cheeger_scan(vweights, eu, ev, ew, tol):
    """Exact minimization of cut(S)/mass(S) over all vertex subsets.

    ``vweights[v]`` is the stationary mass of v (degree for a plain graph);
    edges ``(eu[k], ev[k])`` contribute ``ew[k]`` to the cut when separated.
    Feasible subsets satisfy ``0 < mass(S) <= total/2 + tol``.  Returns
    ``(cut, mass, mask)`` of the minimizer; ties prefer the smaller mask.
    Exact for integer-valued weights (everything stays below 2**53).
    """
    n = len(vweights)
    if n > 30:
        raise ValueError("subset scan limited to 30 vertices")
    total = float(np.sum(vweights))
    half = total / 2.0 + tol
    nsub = 1 << n
    chunk = 1 << 18
    best_cut = np.inf
    best_mass = 1.0
    best_mask = -1
    vw = np.asarray(vweights, dtype=np.float64)
    ew = np.asarray(ew, dtype=np.float64)
    for base in range(0, nsub, chunk):
        idx = np.arange(base, min(base + chunk, nsub), dtype=np.uint64)
        if base == 0:
            idx = idx[1:]  # skip the empty set
        mass = np.zeros(len(idx))
        for v in range(n):
            bit = (idx >> np.uint64(v)) & np.uint64(1)
            mass += vw[v] * bit
        cut = np.zeros(len(idx))
        for k in range(len(eu)):
            u, w = int(eu[k]), int(ev[k])
            if u == w:
                continue
            bu = (idx >> np.uint64(u)) & np.uint64(1)
            bw = (idx >> np.uint64(w)) & np.uint64(1)
            cut += ew[k] * (bu ^ bw)
        feas = (mass > 0) & (mass <= half)
        if not feas.any():
            continue
        quot = np.full(len(idx), np.inf)
        np.divide(cut, mass, out=quot, where=feas)
        pos = int(np.argmin(quot))
        if not np.isfinite(quot[pos]):
            continue
        ties = np.flatnonzero(quot == quot[pos])
        pos = int(ties[np.argmin(idx[ties])])
        c, ms, mk = float(cut[pos]), float(mass[pos]), int(idx[pos])
        # cross-multiplied comparison keeps integer-weight cases exact
        if (c * best_mass < best_cut * ms) or (
            c * best_mass == best_cut * ms and (best_mask < 0 or mk < best_mask)
        ):
            best_cut, best_mass, best_mask = c, ms, mk
    return best_cut, best_mass, best_mask
