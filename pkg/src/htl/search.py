"""Independent oracles: exhaustive labeling search and double walks on
cubic graphs.

The labeling search enumerates, for small instances, every proper labeling
of ``n`` polygons with ``k`` corners each, up to polygon reordering,
rotation, the global mirror and label renaming.  A completed search that
returns nothing is a certificate of non-existence.

For a single polygon whose corner count is divisible by six and whose
boundary never repeats a label on consecutive corners, proper labelings
correspond to closed walks on a connected 3-regular graph that traverse
every edge exactly twice without immediately re-using an edge; the
labeling is oriented exactly when every edge is walked once per direction.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._kernels import JIT_ENABLED, search_kernel
from .labeling import Labeling, LabelingError, StructureError, canonicalize, oriented, verify

DEFAULT_VERTEX_BUDGET = 24


class SearchBudgetError(LabelingError):
    """The instance exceeds the configured vertex budget."""


class SearchIncompleteError(LabelingError):
    """The search ran out of its node budget before finishing."""


@dataclass(frozen=True)
class SearchResult:
    """Outcome of an exhaustive search.

    ``complete`` distinguishes a certificate of non-existence (empty list,
    search finished) from a truncated run.
    """

    labelings: tuple[Labeling, ...]
    complete: bool
    nodes: int
    raw_count: int

    def __len__(self):
        return len(self.labelings)


def search_labelings(
    k: int,
    n: int,
    oriented_only: bool = False,
    no_runs: bool = False,
    limit: int | None = None,
    vertex_budget: int = DEFAULT_VERTEX_BUDGET,
    node_budget: int = 0,
    max_raw: int = 300_000,
) -> SearchResult:
    """All proper labelings of n k-gons, canonical, sorted, deduplicated.

    ``oriented_only`` restricts to oriented labelings, ``no_runs`` to
    labelings without repeated-label blocks.  ``node_budget`` of 0 means
    unbounded; a truncated search is reported, never silently emptied.
    """
    if k < 3 or n < 1:
        raise StructureError(f"degenerate search instance k={k}, n={n}")
    total = n * k
    if total > vertex_budget:
        raise SearchBudgetError(
            f"instance has {total} corners, over the budget of {vertex_budget}"
        )
    # divisibility certificates: 3 | nk, (nk/3) even, 6 | nk
    if total % 3 != 0 or (total // 3) % 2 != 0 or total % 6 != 0:
        return SearchResult((), True, 0, 0)
    m = total // 3
    raw, status, nodes = search_kernel(
        n, k, m, oriented_only, no_runs, max_raw, node_budget
    )
    if status == 2:
        raise SearchBudgetError("raw solution buffer overflow; raise max_raw")
    complete = status == 0
    seen: dict[Labeling, None] = {}
    for row in np.asarray(raw):
        polys = tuple(
            tuple(int(x) for x in row[p * k:(p + 1) * k]) for p in range(n)
        )
        lab = Labeling(polys, m)
        report = verify(lab, strict_size=k >= 7)
        assert report.proper, f"kernel produced a non-proper labeling: {lab}"
        if oriented_only:
            assert report.oriented
        seen.setdefault(canonicalize(lab))
    found = sorted(seen, key=lambda L: (L.sizes, L.polygons))
    if limit is not None:
        found = found[:limit]
    return SearchResult(tuple(found), complete, int(nodes), len(raw))


# ---------------------------------------------------------------------------
# cubic graphs and double walks


class GraphError(LabelingError):
    """The edge list does not describe a connected loop-free cubic graph."""


@dataclass(frozen=True)
class CubicGraph:
    """Connected 3-regular graph on vertices ``1..num_vertices``."""

    num_vertices: int
    edge_list: tuple[tuple[int, int], ...]
    allow_parallel: bool = False

    def __post_init__(self):
        m = self.num_vertices
        degs = [0] * (m + 1)
        seen = set()
        for u, v in self.edge_list:
            if not (1 <= u <= m and 1 <= v <= m):
                raise GraphError(f"edge ({u},{v}) mentions a vertex outside 1..{m}")
            if u == v:
                raise GraphError(f"loop at vertex {u} is not allowed")
            key = (min(u, v), max(u, v))
            if key in seen and not self.allow_parallel:
                raise GraphError(f"parallel edge {key} (pass allow_parallel to accept)")
            seen.add(key)
            degs[u] += 1
            degs[v] += 1
        bad = [v for v in range(1, m + 1) if degs[v] != 3]
        if bad:
            raise GraphError(f"vertices {bad} do not have degree 3")
        if 2 * len(self.edge_list) != 3 * m:
            raise GraphError("edge count is not 3m/2")
        # connectivity
        adj = self.adjacency()
        stack, visited = [1], {1}
        while stack:
            u = stack.pop()
            for v, _ in adj[u]:
                if v not in visited:
                    visited.add(v)
                    stack.append(v)
        if len(visited) != m:
            missing = sorted(set(range(1, m + 1)) - visited)
            raise GraphError(f"graph is disconnected; vertices {missing} unreachable from 1")

    @staticmethod
    def from_edges(edge_list, allow_parallel: bool = False) -> "CubicGraph":
        edges = tuple(
            (min(int(u), int(v)), max(int(u), int(v))) for u, v in edge_list
        )
        m = max((v for e in edges for v in e), default=0)
        return CubicGraph(m, tuple(sorted(edges)), allow_parallel)

    def adjacency(self) -> list[list[tuple[int, int]]]:
        """Per-vertex sorted list of (neighbour, edge index)."""
        adj: list[list[tuple[int, int]]] = [[] for _ in range(self.num_vertices + 1)]
        for idx, (u, v) in enumerate(self.edge_list):
            adj[u].append((v, idx))
            adj[v].append((u, idx))
        for lst in adj:
            lst.sort()
        return adj

    def edge_index(self, u: int, v: int) -> int:
        key = (min(u, v), max(u, v))
        for idx, e in enumerate(self.edge_list):
            if e == key:
                return idx
        raise GraphError(f"no edge {key}")


def complete_graph_k4() -> CubicGraph:
    return CubicGraph.from_edges([(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)])


@dataclass(frozen=True)
class DoubleWalk:
    """Closed walk using every edge exactly twice, never the same edge twice
    in a row (cyclically)."""

    graph: CubicGraph
    vertices: tuple[int, ...]

    def __post_init__(self):
        g = self.graph
        expected = 2 * len(g.edge_list)
        if len(self.vertices) != expected:
            raise GraphError(f"walk length {len(self.vertices)} != 2|E| = {expected}")
        counts = [0] * len(g.edge_list)
        prev_idx = None
        first_idx = None
        for step, (u, v) in enumerate(self.steps()):
            idx = g.edge_index(u, v)
            counts[idx] += 1
            if prev_idx == idx:
                raise GraphError(f"edge {g.edge_list[idx]} repeated immediately at step {step}")
            if first_idx is None:
                first_idx = idx
            prev_idx = idx
        if prev_idx == first_idx:
            raise GraphError("closing edge repeats the opening edge")
        if any(c != 2 for c in counts):
            raise GraphError(f"edge traversal counts {counts} are not all 2")

    def steps(self) -> list[tuple[int, int]]:
        vs = self.vertices
        return [(vs[i], vs[(i + 1) % len(vs)]) for i in range(len(vs))]

    def both_directions(self) -> bool:
        """True when every edge is walked once in each direction."""
        directed = set()
        for u, v in self.steps():
            if (u, v) in directed:
                return False
            directed.add((u, v))
        return True


def _walk_search(graph: CubicGraph, both_directions: bool, limit: int | None):
    """Backtracking enumeration of double walks, normalized to start at
    vertex 1 along its smallest neighbour (every walk can be rotated and,
    if needed, reversed into that form, so the enumeration is complete)."""
    adj = graph.adjacency()
    E = len(graph.edge_list)
    steps = 2 * E
    start = 1
    first_nb, first_edge = adj[start][0]
    remaining = [2] * E
    used_directed: set[tuple[int, int]] = set()
    found: list[tuple[int, ...]] = []

    seq = [start, first_nb]
    remaining[first_edge] -= 1
    used_directed.add((start, first_nb))

    def extend(current: int, prev_edge: int) -> bool:
        if len(seq) == steps:
            # must close back to start over an edge that is neither the
            # previous edge nor the opening edge
            for v, idx in adj[current]:
                if v != start or remaining[idx] != 1:
                    continue
                if idx == prev_edge or idx == first_edge:
                    continue
                if both_directions and (current, start) in used_directed:
                    continue
                found.append(tuple(seq))
                return limit is not None and len(found) >= limit
            return False
        for v, idx in adj[current]:
            if remaining[idx] == 0 or idx == prev_edge:
                continue
            if both_directions and (current, v) in used_directed:
                continue
            remaining[idx] -= 1
            used_directed.add((current, v))
            seq.append(v)
            if extend(v, idx):
                return True
            seq.pop()
            used_directed.discard((current, v))
            remaining[idx] += 1
        return False

    extend(first_nb, first_edge)
    return found


def double_hamiltonian(graph: CubicGraph, both_directions: bool = False) -> DoubleWalk | None:
    """First double walk in lexicographic order, or None (complete search:
    a None answer certifies there is no walk at all)."""
    found = _walk_search(graph, both_directions, limit=1)
    if not found:
        return None
    walk = DoubleWalk(graph, found[0])
    if both_directions:
        assert walk.both_directions()
    return walk


def all_double_walks(graph: CubicGraph, both_directions: bool = False) -> list[DoubleWalk]:
    """Every double walk up to rotation and reversal of the traversal."""
    return [DoubleWalk(graph, seq) for seq in _walk_search(graph, both_directions, None)]


def walk_to_labeling(graph: CubicGraph, walk: DoubleWalk) -> Labeling:
    """The single-polygon labeling whose boundary reads off the walk."""
    if walk.graph != graph:
        raise GraphError("walk does not belong to this graph")
    lab = Labeling((walk.vertices,), graph.num_vertices)
    report = verify(lab, strict_size=False)
    assert report.proper, "a double walk always yields a proper labeling"
    assert report.oriented == walk.both_directions()
    return lab


def labeling_to_walk(lab: Labeling) -> tuple[CubicGraph, DoubleWalk]:
    """Inverse of :func:`walk_to_labeling` for single-polygon labelings
    without consecutive equal labels."""
    if lab.n != 1:
        raise GraphError(f"walk extraction needs a single polygon, got {lab.n}")
    poly = lab.polygons[0]
    k = len(poly)
    if k % 6 != 0:
        raise GraphError(f"polygon size {k} is not divisible by 6")
    size = len(poly)
    pairs: dict[tuple[int, int], int] = {}
    for i in range(size):
        u, v = poly[i], poly[(i + 1) % size]
        if u == v:
            raise GraphError(f"consecutive equal labels {u} at position {i}")
        key = (min(u, v), max(u, v))
        pairs[key] = pairs.get(key, 0) + 1
    bad = {e: c for e, c in pairs.items() if c != 2}
    if bad:
        raise GraphError(f"adjacencies {bad} are not traversed exactly twice")
    graph = CubicGraph(lab.m, tuple(sorted(pairs)))
    walk = DoubleWalk(graph, poly)
    return graph, walk


def describe_backend() -> str:
    return "numba" if JIT_ENABLED else "pure-python"
