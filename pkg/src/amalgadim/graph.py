"""Immutable simple graphs with named vertices and exact hop distances.

Vertices are identified by name. The canonical vertex order, used for every
tie-break in the package, is plain lexicographic order of the names; vertex
``i`` of a graph is ``graph.vertices[i]`` and bit ``i`` of a vertex mask.
"""

from __future__ import annotations

from collections import deque
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import (
    Disconnected,
    DuplicateEdge,
    DuplicateVertex,
    GraphError,
    SelfLoop,
    SizeLimitExceeded,
    UnknownEdge,
    UnknownEndpoint,
    UnknownVertex,
)

UNREACHABLE = -1
EAGER_DISTANCE_LIMIT = 2048
CHROMATIC_CAP = 20

Edge = tuple[str, str]


def _check_name(name: str) -> str:
    if not isinstance(name, str) or not name or not name.isprintable() or any(c.isspace() for c in name):
        raise GraphError(f"invalid vertex name {name!r}")
    return name


def edge_key(u: str, v: str) -> Edge:
    return (u, v) if u <= v else (v, u)


class DistanceTable:
    """All-pairs hop distances; ``-1`` in :attr:`matrix` marks unreachable pairs.

    Below ``EAGER_DISTANCE_LIMIT`` vertices the table is filled on
    construction, above it rows are computed per source on first use.
    """

    def __init__(self, graph: "Graph", eager: bool | None = None):
        self._graph = graph
        n = graph.order
        if eager is None:
            eager = n < EAGER_DISTANCE_LIMIT
        self._rows: dict[int, np.ndarray] = {}
        self._matrix: np.ndarray | None = None
        if eager:
            self._fill()

    def _fill(self) -> None:
        n = self._graph.order
        m = np.empty((n, n), dtype=np.int32)
        for i in range(n):
            m[i] = self._rows[i] if i in self._rows else self._bfs(i)
        m.setflags(write=False)
        self._matrix = m
        self._rows.clear()

    def _bfs(self, source: int) -> np.ndarray:
        nbrs = self._graph.neighbor_indices
        dist = np.full(self._graph.order, UNREACHABLE, dtype=np.int32)
        dist[source] = 0
        queue = deque([source])
        while queue:
            x = queue.popleft()
            dx = dist[x] + 1
            for y in nbrs[x]:
                if dist[y] < 0:
                    dist[y] = dx
                    queue.append(y)
        return dist

    @property
    def matrix(self) -> np.ndarray:
        if self._matrix is None:
            self._fill()
        return self._matrix

    def row(self, i: int) -> np.ndarray:
        if self._matrix is not None:
            return self._matrix[i]
        r = self._rows.get(i)
        if r is None:
            r = self._bfs(i)
            r.setflags(write=False)
            self._rows[i] = r
        return r

    def get(self, u: str, v: str) -> int | None:
        """Distance between two named vertices, or ``None`` if unreachable."""
        d = int(self.row(self._graph.index(u))[self._graph.index(v)])
        return None if d == UNREACHABLE else d

    def __getitem__(self, pair: tuple[str, str]) -> int:
        u, v = pair
        d = self.get(u, v)
        if d is None:
            raise Disconnected(f"{u} and {v} lie in different components")
        return d


class Graph:
    """A simple undirected graph; immutable once built."""

    __slots__ = ("_vertices", "_index", "_nbrs", "_edges", "_dist")

    def __init__(self, vertices: Iterable[str], edges: Iterable[Sequence[str]] = ()):
        names = [_check_name(v) for v in vertices]
        seen: set[str] = set()
        for v in names:
            if v in seen:
                raise DuplicateVertex(f"vertex {v} declared twice")
            seen.add(v)
        self._vertices: tuple[str, ...] = tuple(sorted(names))
        self._index: dict[str, int] = {v: i for i, v in enumerate(self._vertices)}
        adj: list[set[int]] = [set() for _ in self._vertices]
        keys: set[Edge] = set()
        for e in edges:
            u, v = e
            if u not in self._index or v not in self._index:
                missing = u if u not in self._index else v
                raise UnknownEndpoint(f"edge {u}-{v} references undeclared vertex {missing}")
            if u == v:
                raise SelfLoop(f"self-loop at {u}")
            k = edge_key(u, v)
            if k in keys:
                raise DuplicateEdge(f"edge {k[0]}-{k[1]} listed twice")
            keys.add(k)
            i, j = self._index[u], self._index[v]
            adj[i].add(j)
            adj[j].add(i)
        self._nbrs: tuple[tuple[int, ...], ...] = tuple(tuple(sorted(a)) for a in adj)
        self._edges: tuple[Edge, ...] = tuple(sorted(keys))
        self._dist: DistanceTable | None = None

    # -- basic accessors -------------------------------------------------

    @property
    def vertices(self) -> tuple[str, ...]:
        return self._vertices

    @property
    def edges(self) -> tuple[Edge, ...]:
        return self._edges

    @property
    def order(self) -> int:
        return len(self._vertices)

    @property
    def size(self) -> int:
        return len(self._edges)

    @property
    def neighbor_indices(self) -> tuple[tuple[int, ...], ...]:
        return self._nbrs

    def index(self, v: str) -> int:
        try:
            return self._index[v]
        except KeyError:
            raise UnknownVertex(f"no vertex named {v}") from None

    def __contains__(self, v: object) -> bool:
        return v in self._index

    def neighbors(self, v: str) -> tuple[str, ...]:
        return tuple(self._vertices[j] for j in self._nbrs[self.index(v)])

    def degree(self, v: str) -> int:
        return len(self._nbrs[self.index(v)])

    def has_edge(self, u: str, v: str) -> bool:
        return u in self._index and v in self._index and self._index[v] in self._nbrs[self._index[u]]

    def mask(self, names: Iterable[str]) -> int:
        """Bit mask of a vertex set under the canonical order."""
        m = 0
        for v in names:
            m |= 1 << self.index(v)
        return m

    def names(self, mask: int) -> tuple[str, ...]:
        out = []
        i = 0
        while mask:
            if mask & 1:
                out.append(self._vertices[i])
            mask >>= 1
            i += 1
        return tuple(out)

    # -- distances -------------------------------------------------------

    @property
    def distances(self) -> DistanceTable:
        if self._dist is None:
            self._dist = DistanceTable(self)
        return self._dist

    @property
    def dmatrix(self) -> np.ndarray:
        return self.distances.matrix

    def dist(self, u: str, v: str) -> int:
        return self.distances[u, v]

    # -- comparisons -----------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._vertices == other._vertices and self._edges == other._edges

    def __hash__(self) -> int:
        return hash((self._vertices, self._edges))

    def __repr__(self) -> str:
        return f"Graph(order={self.order}, size={self.size})"


def build_graph(vertices: Iterable[str], edges: Iterable[Sequence[str]] = ()) -> Graph:
    return Graph(vertices, edges)


def all_pairs_distances(g: Graph) -> DistanceTable:
    return g.distances


def relabel(g: Graph, mapping: Mapping[str, str]) -> Graph:
    """Rename vertices; names missing from ``mapping`` are kept."""
    f = lambda v: mapping.get(v, v)  # noqa: E731
    return Graph([f(v) for v in g.vertices], [(f(u), f(v)) for u, v in g.edges])


def components(g: Graph) -> list[tuple[str, ...]]:
    """Connected components, each sorted, listed by smallest vertex."""
    seen = [False] * g.order
    out = []
    for s in range(g.order):
        if seen[s]:
            continue
        seen[s] = True
        comp = [s]
        stack = [s]
        while stack:
            x = stack.pop()
            for y in g.neighbor_indices[x]:
                if not seen[y]:
                    seen[y] = True
                    comp.append(y)
                    stack.append(y)
        out.append(tuple(g.vertices[i] for i in sorted(comp)))
    return out


def is_connected(g: Graph) -> bool:
    return g.order > 0 and len(components(g)) == 1


def require_connected(g: Graph, what: str = "graph") -> None:
    if not is_connected(g):
        raise Disconnected(f"{what} is not connected")


class Bipartition:
    """Result of :func:`is_bipartite`.

    Exactly one of ``coloring`` (vertex -> 0/1) and ``odd_cycle`` (closed walk
    listed without repeating the start) is set.
    """

    __slots__ = ("is_bipartite", "coloring", "odd_cycle")

    def __init__(self, ok: bool, coloring: dict[str, int] | None, odd_cycle: list[str] | None):
        self.is_bipartite = ok
        self.coloring = coloring
        self.odd_cycle = odd_cycle

    def __bool__(self) -> bool:
        return self.is_bipartite

    def __repr__(self) -> str:
        return f"Bipartition({self.is_bipartite})"


def is_bipartite(g: Graph) -> Bipartition:
    n = g.order
    color = [-1] * n
    parent = [-1] * n
    depth = [0] * n
    for s in range(n):
        if color[s] >= 0:
            continue
        color[s] = 0
        queue = deque([s])
        while queue:
            x = queue.popleft()
            for y in g.neighbor_indices[x]:
                if color[y] < 0:
                    color[y] = 1 - color[x]
                    parent[y] = x
                    depth[y] = depth[x] + 1
                    queue.append(y)
                elif color[y] == color[x]:
                    return Bipartition(False, None, _odd_cycle(g, parent, depth, x, y))
    return Bipartition(True, {g.vertices[i]: c for i, c in enumerate(color)}, None)


def _odd_cycle(g: Graph, parent: list[int], depth: list[int], x: int, y: int) -> list[str]:
    # x, y are BFS-tree vertices of equal colour joined by an edge
    left, right = [x], [y]
    a, b = x, y
    while depth[a] > depth[b]:
        a = parent[a]
        left.append(a)
    while depth[b] > depth[a]:
        b = parent[b]
        right.append(b)
    while a != b:
        a, b = parent[a], parent[b]
        left.append(a)
        right.append(b)
    cycle = left + right[-2::-1]
    return [g.vertices[i] for i in cycle]


def diameter(g: Graph) -> int:
    require_connected(g)
    return int(g.dmatrix.max())


def greedy_clique(g: Graph) -> list[int]:
    best: list[int] = []
    for s in sorted(range(g.order), key=lambda i: (-len(g.neighbor_indices[i]), i)):
        clique = [s]
        cand = set(g.neighbor_indices[s])
        while cand:
            v = min(cand, key=lambda i: (-len(cand.intersection(g.neighbor_indices[i])), i))
            clique.append(v)
            cand &= set(g.neighbor_indices[v])
        if len(clique) > len(best):
            best = clique
    return best


def chromatic_number(g: Graph, cap: int = CHROMATIC_CAP) -> tuple[int, list[tuple[str, ...]]]:
    """Exact chromatic number with an optimal colouring.

    Backtracking over vertices in DSATUR-like order, trying ``k`` colours
    upward from a greedy clique bound. Colour classes come back ordered by
    their smallest vertex.
    """
    n = g.order
    if n > cap:
        raise SizeLimitExceeded(f"chromatic_number is capped at {cap} vertices, got {n}")
    if n == 0:
        return 0, []
    nbrs = g.neighbor_indices
    lb = max(1, len(greedy_clique(g)))

    def attempt(k: int) -> list[int] | None:
        color = [-1] * n

        def pick() -> int:
            best, key = -1, None
            for v in range(n):
                if color[v] >= 0:
                    continue
                sat = len({color[u] for u in nbrs[v] if color[u] >= 0})
                kk = (-sat, -len(nbrs[v]), v)
                if key is None or kk < key:
                    best, key = v, kk
            return best

        def rec(done: int, used: int) -> bool:
            if done == n:
                return True
            v = pick()
            forbidden = {color[u] for u in nbrs[v]}
            # a fresh colour is interchangeable with any other unused one
            for c in range(min(k, used + 1)):
                if c in forbidden:
                    continue
                color[v] = c
                if rec(done + 1, max(used, c + 1)):
                    return True
            color[v] = -1
            return False

        return color if rec(0, 0) else None

    for k in range(lb, n + 1):
        col = attempt(k)
        if col is not None:
            classes: dict[int, list[str]] = {}
            for i, c in enumerate(col):
                classes.setdefault(c, []).append(g.vertices[i])
            return k, sorted((tuple(c) for c in classes.values()), key=lambda c: c[0])
    raise AssertionError("unreachable: n colours always suffice")


def delete_edges(g: Graph, edges: Iterable[Sequence[str]]) -> Graph:
    drop = set()
    for u, v in edges:
        if not g.has_edge(u, v):
            raise UnknownEdge(f"no edge {u}-{v}")
        drop.add(edge_key(u, v))
    return Graph(g.vertices, [e for e in g.edges if e not in drop])


def induced_subgraph(g: Graph, vertices: Iterable[str]) -> Graph:
    keep = set(vertices)
    for v in keep:
        g.index(v)
    return Graph(keep, [(u, v) for u, v in g.edges if u in keep and v in keep])


def disjoint_union(*graphs: Graph) -> Graph:
    return Graph([v for h in graphs for v in h.vertices], [e for h in graphs for e in h.edges])
