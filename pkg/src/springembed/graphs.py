"""Graph representation, boundary cycles, Laplacian blocks, model graphs.

Vertices are 0-based everywhere in memory; file formats are 1-based and the
conversion happens in :mod:`springembed.fileio` only.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

import numpy as np
import scipy.sparse as sp

from .errors import BoundaryError, InputError


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph.

    ``edges`` is canonical: each row (u, v) has u < v, rows sorted
    lexicographically, no duplicates. ``adjacency[i]`` is a sorted int array
    of the neighbors of vertex i. Instances are immutable and safe to share
    across threads.
    """

    n: int
    edges: np.ndarray
    adjacency: tuple = field(repr=False)

    @property
    def m(self) -> int:
        return len(self.edges)

    def degree(self, i: int) -> int:
        return len(self.adjacency[i])

    def degrees(self) -> np.ndarray:
        return np.array([len(a) for a in self.adjacency], dtype=np.int64)

    def has_edge(self, u: int, v: int) -> bool:
        return v in set(self.adjacency[u].tolist())


@dataclass(frozen=True)
class BoundaryFace:
    """Cyclically ordered boundary vertices.

    ``cycle[j]`` and ``cycle[(j+1) % n_gamma]`` are adjacent in the host
    graph whenever the face was built with validation on.
    """

    cycle: np.ndarray

    @property
    def n_gamma(self) -> int:
        return len(self.cycle)


@dataclass(frozen=True)
class BlockSystem:
    """Laplacian of a (graph, boundary) pair split into boundary blocks.

    Under the permutation (interior_index, boundary_index) the full
    Laplacian reads ``[[interior_matrix, -coupling], [-coupling.T,
    boundary_matrix]]``. ``interior_matrix`` is the interior Laplacian plus
    the diagonal of boundary-neighbor counts, and is positive definite for a
    connected graph with a nonempty boundary.
    """

    interior_matrix: sp.csr_matrix
    coupling: sp.csr_matrix
    boundary_matrix: sp.csr_matrix
    interior_index: np.ndarray
    boundary_index: np.ndarray

    @property
    def n_interior(self) -> int:
        return self.interior_matrix.shape[0]

    @property
    def n_gamma(self) -> int:
        return self.boundary_matrix.shape[0]

    @property
    def n(self) -> int:
        return self.n_interior + self.n_gamma

    def full_laplacian(self) -> sp.csr_matrix:
        """Reassemble the Laplacian in original vertex order."""
        permuted = sp.bmat(
            [
                [self.interior_matrix, -self.coupling],
                [-self.coupling.T, self.boundary_matrix],
            ],
            format="csr",
        )
        order = np.concatenate([self.interior_index, self.boundary_index])
        inverse = np.empty_like(order)
        inverse[order] = np.arange(len(order))
        return permuted[inverse][:, inverse].tocsr()


def build_graph(n: int, edge_list) -> Graph:
    """Build a graph from (possibly unordered, duplicated) vertex pairs.

    Rejects self-loops and out-of-range endpoints; parallel edges collapse.
    """
    if n < 1:
        raise InputError(f"vertex count must be >= 1, got {n}")
    pairs = set()
    for u, v in edge_list:
        u, v = int(u), int(v)
        if u == v:
            raise InputError(f"self-loop at vertex {u}")
        if not (0 <= u < n) or not (0 <= v < n):
            raise InputError(f"edge ({u}, {v}) out of range for n={n}")
        pairs.add((u, v) if u < v else (v, u))
    if pairs:
        edges = np.array(sorted(pairs), dtype=np.int64)
    else:
        edges = np.empty((0, 2), dtype=np.int64)
    neighbors = [[] for _ in range(n)]
    for u, v in edges:
        neighbors[u].append(v)
        neighbors[v].append(u)
    adjacency = tuple(np.array(sorted(a), dtype=np.int64) for a in neighbors)
    return Graph(n=n, edges=edges, adjacency=adjacency)


def laplacian(g: Graph) -> sp.csr_matrix:
    """Sparse graph Laplacian with exact integer entries (as float64)."""
    if g.m == 0:
        return sp.csr_matrix((g.n, g.n))
    u, v = g.edges[:, 0], g.edges[:, 1]
    ones = np.ones(g.m)
    adj = sp.coo_matrix((ones, (u, v)), shape=(g.n, g.n))
    adj = (adj + adj.T).tocsr()
    deg = np.asarray(adj.sum(axis=1)).ravel()
    return (sp.diags(deg) - adj).tocsr()


def laplacian_quadratic_form(g: Graph, x) -> float:
    """Sum over edges of squared endpoint differences,  <L x, x>."""
    x = np.asarray(x, dtype=float)
    if x.shape != (g.n,):
        raise InputError(f"vector length {x.shape} does not match n={g.n}")
    if g.m == 0:
        return 0.0
    diff = x[g.edges[:, 0]] - x[g.edges[:, 1]]
    return float(diff @ diff)


def is_connected(g: Graph) -> bool:
    if g.n == 1:
        return True
    seen = np.zeros(g.n, dtype=bool)
    seen[0] = True
    stack = [0]
    while stack:
        u = stack.pop()
        for w in g.adjacency[u]:
            if not seen[w]:
                seen[w] = True
                stack.append(int(w))
    return bool(seen.all())


def bfs_distances(g: Graph, source: int) -> np.ndarray:
    """Hop distances from ``source`` to every vertex (-1 if unreachable)."""
    if not (0 <= source < g.n):
        raise InputError(f"source {source} out of range")
    dist = np.full(g.n, -1, dtype=np.int64)
    dist[source] = 0
    queue = deque([source])
    while queue:
        u = queue.popleft()
        du = dist[u]
        for w in g.adjacency[u]:
            if dist[w] < 0:
                dist[w] = du + 1
                queue.append(int(w))
    return dist


def boundary_face(g: Graph, cycle, validate: bool = True) -> BoundaryFace:
    """Wrap a cyclic vertex sequence, optionally checking it is an induced
    simple cycle of ``g``.

    Validation is skippable for test graphs (stars, arbitrary subsets) since
    the block algebra works for any vertex subset.
    """
    cycle = np.asarray(cycle, dtype=np.int64)
    if cycle.ndim != 1 or len(cycle) < 1:
        raise InputError("boundary cycle must be a nonempty 1-d sequence")
    if len(set(cycle.tolist())) != len(cycle):
        raise BoundaryError("boundary cycle repeats a vertex")
    if cycle.min() < 0 or cycle.max() >= g.n:
        raise InputError("boundary cycle vertex out of range")
    if validate:
        validate_boundary(g, cycle)
    return BoundaryFace(cycle=cycle)


def validate_boundary(g: Graph, cycle: np.ndarray) -> None:
    """Check that ``cycle`` is an induced simple cycle of ``g``."""
    ng = len(cycle)
    if ng < 3:
        raise BoundaryError(f"boundary cycle needs >= 3 vertices, got {ng}")
    members = set(cycle.tolist())
    for j in range(ng):
        u, v = int(cycle[j]), int(cycle[(j + 1) % ng])
        if not g.has_edge(u, v):
            raise BoundaryError(f"consecutive boundary vertices ({u}, {v}) not adjacent")
    induced = 0
    for u in members:
        for w in g.adjacency[u]:
            if int(w) in members and int(w) > u:
                induced += 1
                if induced > ng:
                    break
    if induced != ng:
        chord = _find_chord(g, cycle)
        raise BoundaryError(
            f"boundary is not induced: G[gamma] has {induced} edges, expected {ng}"
            + (f" (chord {chord})" if chord else "")
        )


def boundary_is_induced(g: Graph, bf: BoundaryFace) -> bool:
    try:
        validate_boundary(g, bf.cycle)
    except BoundaryError:
        return False
    return True


def _find_chord(g: Graph, cycle: np.ndarray):
    ng = len(cycle)
    pos = {int(v): j for j, v in enumerate(cycle)}
    for j, u in enumerate(cycle):
        for w in g.adjacency[int(u)]:
            kk = pos.get(int(w))
            if kk is None:
                continue
            if (kk - j) % ng not in (1, ng - 1) and int(w) > int(u):
                return (int(u), int(w))
    return None


def block_partition(g: Graph, bf: BoundaryFace) -> BlockSystem:
    """Split the Laplacian of ``g`` into interior/boundary blocks for ``bf``.

    Entries are integers, so reassembly via :meth:`BlockSystem.full_laplacian`
    reproduces the Laplacian exactly.
    """
    full = laplacian(g)
    boundary_index = np.asarray(bf.cycle, dtype=np.int64)
    mask = np.ones(g.n, dtype=bool)
    mask[boundary_index] = False
    interior_index = np.flatnonzero(mask)

    interior = full[interior_index][:, interior_index].tocsr()
    boundary = full[boundary_index][:, boundary_index].tocsr()
    coupling = (-full[interior_index][:, boundary_index]).tocsr()
    return BlockSystem(
        interior_matrix=interior,
        coupling=coupling,
        boundary_matrix=boundary,
        interior_index=interior_index,
        boundary_index=boundary_index,
    )


def build_gkl(k: int, ell: int, star: bool = False):
    """Cartesian product of the k-cycle with the ell-path, optionally with
    the diagonal edges {(i,j),(i+-1,j+1)} added.

    Vertex (i, j), i in 1..k, j in 1..ell, maps to index (j-1)*k + (i-1).
    The boundary is ring j=1 in cyclic order. Returns (graph, boundary).
    """
    if k < 3:
        raise InputError(f"cycle length k must be >= 3, got {k}")
    if ell < 1:
        raise InputError(f"path length ell must be >= 1, got {ell}")
    edges = []
    for j in range(ell):
        base = j * k
        for i in range(k):
            edges.append((base + i, base + (i + 1) % k))
    for j in range(ell - 1):
        base = j * k
        for i in range(k):
            edges.append((base + i, base + k + i))
    if star:
        for j in range(ell - 1):
            base = j * k
            for i in range(k):
                edges.append((base + i, base + k + (i - 1) % k))
                edges.append((base + i, base + k + (i + 1) % k))
    g = build_graph(k * ell, edges)
    cycle = np.arange(k, dtype=np.int64)
    return g, boundary_face(g, cycle, validate=True)


def gkl_vertex(i: int, j: int, k: int) -> int:
    """Linear index of product vertex (i, j) with 1-based i, j."""
    return (j - 1) * k + ((i - 1) % k)
