"""Deterministic structural decompositions.

The chain runs: graph -> 2-core -> trimmed core (drop isolated cycles) ->
kernel (suppress all degree-2 vertices, keeping each suppressed 2-path so the
input can be reconstructed exactly).  ``attached_forest`` measures the trees
hanging off the 2-core inside a connected graph, and ``tail_statistics`` is
the exponential-tail fit used by the experiment harness.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from coremix import kernels as _k
from coremix.multigraph import Multigraph, component_partition, induced_subgraph


def two_core(g: Multigraph) -> Multigraph:
    """Maximum subgraph of minimum degree >= 2 (possibly empty).

    Equals the fixpoint of repeatedly deleting degree-<=1 vertices; the
    result's ``labels`` give the surviving vertex ids in ``g``.
    """
    indptr, nbr, eid = g.adjacency()
    mask = _k.two_core_mask(indptr, nbr, eid, g.degrees(), g.edge_count)
    return induced_subgraph(g, mask)


def trimmed_core(g: Multigraph) -> Multigraph:
    """2-core minus its isolated-cycle components; labels refer to ``g``."""
    core = two_core(g)
    if core.vertex_count == 0:
        return core
    part = component_partition(core)
    branchy = np.bincount(part.labels[core.degrees() >= 3], minlength=part.count) > 0
    sub = induced_subgraph(core, branchy[part.labels])
    sub.labels = core.labels[sub.labels]
    return sub


@dataclass
class KernelResult:
    """Kernel of a min-degree-2 graph plus everything needed to undo it.

    ``path_map[k]`` lists the suppressed degree-2 vertices of kernel edge k in
    path order, directed from the smaller endpoint to the larger (loops:
    oriented so the first interior id is smallest).  ``dropped_cycles`` holds
    any isolated-cycle components, in cycle order.  Vertex ids in ``path_map``
    and ``dropped_cycles`` are ids of the input graph; ``kernel.labels`` maps
    kernel vertices back the same way.
    """

    kernel: Multigraph
    path_map: list = field(default_factory=list)
    dropped_cycles: list = field(default_factory=list)
    source_vertex_count: int = 0


def kernel(g0: Multigraph) -> KernelResult:
    """Suppress every degree-2 vertex of a min-degree-2 graph.

    Each maximal 2-path joining two vertices of degree >= 3 becomes one
    kernel edge; isolated cycles are dropped (and recorded).  Raises if the
    input has a vertex of degree < 2.
    """
    deg = g0.degrees()
    if g0.vertex_count and deg.min() < 2:
        raise ValueError("kernel requires minimum degree >= 2")
    indptr, nbr, eid = g0.adjacency()
    is_branch = deg >= 3
    branch_ids = np.flatnonzero(is_branch)
    new_id = np.cumsum(is_branch) - 1

    edge_used = np.zeros(g0.edge_count, dtype=bool)
    v_used = np.zeros(g0.vertex_count, dtype=bool)
    kedges = []
    path_map = []
    for u in branch_ids:
        for slot in range(indptr[u], indptr[u + 1]):
            e0 = int(eid[slot])
            if edge_used[e0]:
                continue
            edge_used[e0] = True
            interior = []
            prev = e0
            cur = int(nbr[slot])
            while not is_branch[cur]:
                interior.append(cur)
                v_used[cur] = True
                k0, k1 = indptr[cur], indptr[cur] + 1
                k = k1 if eid[k0] == prev else k0
                prev = int(eid[k])
                edge_used[prev] = True
                cur = int(nbr[k])
            w = cur
            a, b = int(u), int(w)
            if a > b or (a == b and interior and interior[0] > interior[-1]):
                interior.reverse()
                a, b = b, a
            kedges.append((new_id[a], new_id[b]))
            path_map.append(interior)

    dropped = []
    for v in np.flatnonzero((deg == 2) & ~v_used):
        if v_used[v]:
            continue
        cycle = [int(v)]
        v_used[v] = True
        k0 = indptr[v]
        prev = int(eid[k0])
        cur = int(nbr[k0])
        while cur != v:
            cycle.append(cur)
            v_used[cur] = True
            k0, k1 = indptr[cur], indptr[cur] + 1
            k = k1 if eid[k0] == prev else k0
            prev = int(eid[k])
            cur = int(nbr[k])
        dropped.append(cycle)

    kg = Multigraph(len(branch_ids), np.asarray(kedges, dtype=np.int64).reshape(-1, 2),
                    labels=branch_ids)
    return KernelResult(kernel=kg, path_map=path_map, dropped_cycles=dropped,
                        source_vertex_count=g0.vertex_count)


def expand_kernel(kres: KernelResult) -> Multigraph:
    """Rebuild the graph the kernel came from (identical vertex ids)."""
    labels = kres.kernel.labels
    edges = []
    for k, (ku, kw) in enumerate(kres.kernel.edges):
        chain = [int(labels[ku])] + list(kres.path_map[k]) + [int(labels[kw])]
        edges.extend(zip(chain[:-1], chain[1:]))
    for cycle in kres.dropped_cycles:
        edges.extend(zip(cycle, cycle[1:]))
        edges.append((cycle[-1], cycle[0]))
    return Multigraph(kres.source_vertex_count, np.asarray(edges, dtype=np.int64).reshape(-1, 2))


def maximal_2paths(g0: Multigraph) -> list:
    """One (length, (u, w)) entry per kernel edge; length counts interior vertices."""
    kres = kernel(g0)
    labels = kres.kernel.labels
    return [
        (len(kres.path_map[k]), (int(labels[u]), int(labels[w])))
        for k, (u, w) in enumerate(kres.kernel.edges)
    ]


@dataclass
class ForestStats:
    """Sizes of the trees hanging off each 2-core vertex of a connected graph."""

    tree_size: np.ndarray  # indexed by 2-core vertex id (core numbering)
    r: int  # vertices of the graph outside the 2-core
    s: int  # vertices of the 2-core
    rho: float  # s / (s + r)


def attached_forest(giant: Multigraph, core: Multigraph) -> ForestStats:
    """Per-core-vertex counts of the non-core vertices attached there.

    ``core`` must equal ``two_core(giant)``; deleting the core's edges from
    the (connected) graph leaves a forest with exactly one core vertex per
    tree.
    """
    indptr, nbr, eid = giant.adjacency()
    mask = _k.two_core_mask(indptr, nbr, eid, giant.degrees(), giant.edge_count)
    s = int(mask.sum())
    if s == 0:
        raise ValueError("the 2-core of the graph is empty")
    if core.vertex_count != s or core.edge_count != int(
        (mask[giant.edges[:, 0]] & mask[giant.edges[:, 1]]).sum()
    ):
        raise ValueError("core argument is not the 2-core of the graph")
    # forest = giant minus the core's edges (the 2-core is induced)
    keep_e = ~(mask[giant.edges[:, 0]] & mask[giant.edges[:, 1]])
    forest = Multigraph(giant.vertex_count, giant.edges[keep_e])
    part = component_partition(forest)
    core_per_comp = np.bincount(part.labels[mask], minlength=part.count)
    if (core_per_comp != 1).any() and giant.vertex_count > s:
        bad = (core_per_comp != 1) & (np.bincount(part.labels, minlength=part.count) > 0)
        if bad.any() and (core_per_comp[np.bincount(part.labels, minlength=part.count) > 1] != 1).any():
            raise ValueError("a tree of the forest does not meet the 2-core exactly once")
    tree_size = np.zeros(s, dtype=np.int64)
    comp_sizes = part.sizes
    core_ids = np.flatnonzero(mask)
    tree_size[:] = comp_sizes[part.labels[core_ids]] - 1
    return ForestStats(tree_size=tree_size, r=giant.vertex_count - s, s=s,
                       rho=s / giant.vertex_count)


@dataclass
class TailFit:
    """Least-squares slope of the log-ccdf of a set of nonnegative counts."""

    ccdf: np.ndarray  # rows (j, fraction >= j)
    slope: float
    intercept: float
    passed: bool
    rate_min: float


def tail_statistics(values, rate_min: float = 0.05, min_count: int = 20) -> TailFit:
    """Fit the exponential-tail rate of a sample of nonnegative integers.

    The ccdf point at j is the fraction of values >= j; the fit uses only the
    points with fraction >= 5/len(values) (the extreme tail is noise).  The
    sample passes when the slope is <= -rate_min.
    """
    vals = np.asarray(values, dtype=np.int64)
    if len(vals) < min_count:
        raise ValueError(f"need at least {min_count} values to fit a tail")
    if vals.min() < 0:
        raise ValueError("values must be nonnegative")
    n = len(vals)
    cnt = np.bincount(vals)
    ge = np.cumsum(cnt[::-1])[::-1]
    frac = ge / n
    js = np.arange(len(frac))
    ccdf = np.column_stack([js, frac])
    eligible = frac >= 5.0 / n
    if eligible.sum() < 2:
        # the tail dies immediately: trivially an exponential tail
        return TailFit(ccdf=ccdf, slope=-np.inf, intercept=0.0, passed=True,
                       rate_min=rate_min)
    slope, intercept = np.polyfit(js[eligible], np.log(frac[eligible]), 1)
    return TailFit(ccdf=ccdf, slope=float(slope), intercept=float(intercept),
                   passed=bool(slope <= -rate_min), rate_min=rate_min)
