"""Multigraph container and elementary graph queries.

Vertices are ``0..n-1``.  Edges form an ordered list of endpoint pairs whose
position is the stable edge id.  A loop is stored once in the edge list but
appears twice in its vertex's adjacency, so it contributes 2 to the degree
and the degree sum is always ``2 * edge_count``.

Graphs are immutable after construction and safe to share across threads.
Operations that survive a subset of vertices (``giant_component``,
``induced_subgraph``, and the core/stripping pipeline built on them) renumber
the survivors to a contiguous range preserving their relative order, and
record the pre-image in ``labels`` (ids in the outermost ancestor graph).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from coremix import kernels
from coremix.errors import DisconnectedGraphError

_APSP_CUTOFF = 512  # all-pairs BFS below this size, iFUB above


class Multigraph:
    """Immutable multigraph with loops and parallel edges."""

    __slots__ = ("vertex_count", "edges", "labels", "_adj", "_degrees")

    def __init__(self, vertex_count, edges=(), labels=None):
        n = int(vertex_count)
        if n < 0:
            raise ValueError("vertex_count must be nonnegative")
        e = np.asarray(edges, dtype=np.int64)
        if e.size == 0:
            e = np.empty((0, 2), dtype=np.int64)
        if e.ndim != 2 or e.shape[1] != 2:
            raise ValueError("edges must be an (m, 2) array of endpoints")
        if e.size and (e.min() < 0 or e.max() >= n):
            raise ValueError("edge endpoint out of range")
        e.setflags(write=False)
        self.vertex_count = n
        self.edges = e
        self.labels = None if labels is None else np.asarray(labels, dtype=np.int64)
        self._adj = None
        self._degrees = None

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def adjacency(self):
        """CSR-style adjacency: (indptr, neighbour, edge id) arrays.

        Every edge contributes one slot at each endpoint; a loop contributes
        two slots at its vertex.
        """
        if self._adj is None:
            m = len(self.edges)
            ends = self.edges.ravel()
            other = self.edges[:, ::-1].ravel()
            eids = np.repeat(np.arange(m, dtype=np.int64), 2)
            order = np.argsort(ends, kind="stable")
            indptr = np.zeros(self.vertex_count + 1, dtype=np.int64)
            np.add.at(indptr, ends + 1, 1)
            np.cumsum(indptr, out=indptr)
            self._adj = (indptr, other[order], eids[order])
        return self._adj

    def degrees(self) -> np.ndarray:
        if self._degrees is None:
            indptr = self.adjacency()[0]
            d = indptr[1:] - indptr[:-1]
            d.setflags(write=False)
            self._degrees = d
        return self._degrees

    def degree(self, v: int) -> int:
        if not 0 <= v < self.vertex_count:
            raise ValueError(f"invalid vertex id {v}")
        return int(self.degrees()[v])

    def __repr__(self):
        return f"Multigraph(n={self.vertex_count}, m={self.edge_count})"


@dataclass
class ComponentPartition:
    """Connected components: per-vertex id plus size and edge tallies."""

    labels: np.ndarray
    sizes: np.ndarray
    edge_counts: np.ndarray

    @property
    def count(self) -> int:
        return len(self.sizes)


def degree(g: Multigraph, v: int) -> int:
    """Degree of ``v`` with every loop counted twice."""
    return g.degree(v)


def is_simple(g: Multigraph) -> bool:
    """True iff the graph has no loops and no parallel edges."""
    e = g.edges
    if e.size == 0:
        return True
    if (e[:, 0] == e[:, 1]).any():
        return False
    key = np.sort(e, axis=1)
    flat = key[:, 0] * g.vertex_count + key[:, 1]
    return len(np.unique(flat)) == len(flat)


def component_partition(g: Multigraph) -> ComponentPartition:
    indptr, nbr, _ = g.adjacency()
    labels, ncomp = kernels.component_labels(indptr, nbr, g.vertex_count)
    sizes = np.bincount(labels, minlength=ncomp)
    edge_counts = (
        np.bincount(labels[g.edges[:, 0]], minlength=ncomp)
        if g.edge_count
        else np.zeros(ncomp, dtype=np.int64)
    )
    return ComponentPartition(labels, sizes, edge_counts)


def induced_subgraph(g: Multigraph, keep) -> Multigraph:
    """Subgraph induced on a vertex subset, renumbered order-preservingly.

    ``keep`` is a boolean mask or an array of vertex ids.  The result's
    ``labels`` hold the surviving vertices' ids in ``g`` itself; pipelines
    that chain subgraph operations compose labels explicitly.
    """
    if isinstance(keep, np.ndarray) and keep.dtype == bool:
        mask = keep
    else:
        mask = np.zeros(g.vertex_count, dtype=bool)
        mask[np.asarray(keep, dtype=np.int64)] = True
    new_id = np.cumsum(mask) - 1
    kept_edges = mask[g.edges[:, 0]] & mask[g.edges[:, 1]] if g.edge_count else np.empty(0, bool)
    edges = new_id[g.edges[kept_edges]] if g.edge_count else np.empty((0, 2), np.int64)
    return Multigraph(int(mask.sum()), edges, labels=np.flatnonzero(mask))


def giant_component(g: Multigraph) -> Multigraph:
    """Largest component by vertex count; ties go to the smallest vertex id."""
    if g.vertex_count == 0:
        return Multigraph(0)
    part = component_partition(g)
    # component labels are numbered by first occurrence, so argmax breaks
    # ties in favour of the component containing the smallest vertex id
    target = int(np.argmax(part.sizes))
    return induced_subgraph(g, part.labels == target)


def _bfs(g: Multigraph, source: int) -> np.ndarray:
    indptr, nbr, _ = g.adjacency()
    return kernels.bfs_distances(indptr, nbr, source, g.vertex_count)


def _farthest(dist: np.ndarray) -> int:
    # smallest id among vertices at maximum distance
    return int(np.argmax(dist))


def double_sweep_lower_bound(g: Multigraph) -> int:
    """Diameter lower bound by two BFS sweeps (never exceeds the exact value)."""
    if g.vertex_count == 0:
        return 0
    start = int(np.argmax(g.degrees()))
    d1 = _bfs(g, start)
    if (d1 < 0).any():
        raise DisconnectedGraphError("graph is not connected")
    d2 = _bfs(g, _farthest(d1))
    return int(d2.max())


def diameter(g: Multigraph) -> int:
    """Exact diameter (max BFS distance over all pairs); errors if disconnected.

    Uses all-pairs BFS on small graphs and the iFUB refinement (still exact)
    at scale, where all-pairs is too slow even compiled.
    """
    n = g.vertex_count
    if n == 0:
        return 0
    if n <= _APSP_CUTOFF:
        best = 0
        for v in range(n):
            dist = _bfs(g, v)
            if (dist < 0).any():
                raise DisconnectedGraphError("graph is not connected")
            best = max(best, int(dist.max()))
        return best
    return _ifub_diameter(g)


def _ifub_diameter(g: Multigraph) -> int:
    indptr, nbr, _ = g.adjacency()
    start = int(np.argmax(g.degrees()))
    d_start = _bfs(g, start)
    if (d_start < 0).any():
        raise DisconnectedGraphError("graph is not connected")
    a = _farthest(d_start)
    d_a = _bfs(g, a)
    b = _farthest(d_a)
    lb = int(d_a[b])
    # midpoint of a shortest a-b path
    cur = b
    for step in range(lb, lb - lb // 2, -1):
        lo, hi = indptr[cur], indptr[cur + 1]
        nxt = nbr[lo:hi][d_a[nbr[lo:hi]] == step - 1]
        cur = int(nxt.min())
    d_mid = _bfs(g, cur)
    lb = max(lb, int(d_mid.max()))
    order = np.argsort(-d_mid, kind="stable")
    for v in order:
        if 2 * int(d_mid[v]) <= lb:
            break
        ecc = int(_bfs(g, int(v)).max())
        lb = max(lb, ecc)
    return lb


def longest_2path(g: Multigraph) -> int:
    """Most vertices in a maximal path of degree-2 vertices.

    Isolated cycles made of degree-2 vertices count with their full length.
    """
    deg = g.degrees()
    indptr, nbr, eid = g.adjacency()
    is2 = deg == 2
    if not is2.any():
        return 0
    seen = np.zeros(g.vertex_count, dtype=bool)
    best = 0
    for v in np.flatnonzero(is2):
        if seen[v]:
            continue
        seen[v] = True
        count = 1
        for slot in (0, 1):
            prev_eid = eid[indptr[v] + slot]
            cur = int(nbr[indptr[v] + slot])
            while is2[cur] and not seen[cur]:
                seen[cur] = True
                count += 1
                k0, k1 = indptr[cur], indptr[cur] + 1
                if eid[k0] == eid[k1]:  # loop: single-vertex cycle, dead end
                    break
                k = k1 if eid[k0] == prev_eid else k0
                prev_eid = eid[k]
                cur = int(nbr[k])
        best = max(best, count)
    return best


def graphs_equal(a: Multigraph, b: Multigraph) -> bool:
    """Same vertex count and same edge multiset (ids and order ignored)."""
    if a.vertex_count != b.vertex_count or a.edge_count != b.edge_count:
        return False
    if a.edge_count == 0:
        return True
    ka = np.sort(np.sort(a.edges, axis=1), axis=0)
    kb = np.sort(np.sort(b.edges, axis=1), axis=0)
    return bool((ka == kb).all())


def write_edgelist(g: Multigraph, path) -> None:
    """Text format: first line ``n m``, then one ``u v`` line per edge."""
    with open(path, "w") as fh:
        fh.write(f"{g.vertex_count} {g.edge_count}\n")
        for u, v in g.edges:
            fh.write(f"{u} {v}\n")


def read_edgelist(path) -> Multigraph:
    with open(path) as fh:
        header = fh.readline().split()
        if len(header) != 2:
            raise ValueError("edge-list header must be 'n m'")
        n, m = int(header[0]), int(header[1])
        edges = np.empty((m, 2), dtype=np.int64)
        for k in range(m):
            parts = fh.readline().split()
            if len(parts) != 2:
                raise ValueError(f"bad edge line {k + 2}")
            edges[k] = (int(parts[0]), int(parts[1]))
    return Multigraph(n, edges)
