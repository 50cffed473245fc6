"""Distinguishing sets and the exact local metric dimension.

A vertex ``w`` distinguishes the edge ``uv`` when ``d(w,u) != d(w,v)``; a set
distinguishing every edge is a local metric set. The dimension is computed
as a minimum hitting set over the per-edge distinguisher sets.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .errors import Disconnected, Infeasible, UnknownEdge
from .graph import Edge, Graph, edge_key, is_bipartite, is_connected, require_connected
from .hitting import Budget, Search

DEFAULT_BASES_CAP = 10_000


def row_mask(flags: np.ndarray) -> int:
    """Bit mask of the True positions of a boolean vector."""
    return int.from_bytes(np.packbits(flags, bitorder="little").tobytes(), "little")


def distinguisher_mask(dm: np.ndarray, i: int, j: int) -> int:
    """Mask of vertices whose distances to ``i`` and ``j`` differ under ``dm``."""
    return row_mask(dm[:, i] != dm[:, j])


def edge_masks(g: Graph, edges: Iterable[Edge] | None = None, dm: np.ndarray | None = None) -> list[tuple[Edge, int]]:
    dm = g.dmatrix if dm is None else dm
    out = []
    for u, v in g.edges if edges is None else edges:
        out.append(((u, v), distinguisher_mask(dm, g.index(u), g.index(v))))
    return out


@dataclass(frozen=True)
class DistinguisherInstance:
    """Per-edge distinguisher sets restricted to a candidate universe."""

    universe: tuple[str, ...]
    constraints: tuple[tuple[Edge, tuple[str, ...]], ...]

    @property
    def infeasible_edges(self) -> tuple[Edge, ...]:
        return tuple(e for e, w in self.constraints if not w)

    @property
    def feasible(self) -> bool:
        return not self.infeasible_edges


def distinguisher_instance(g: Graph, universe: Iterable[str] | None = None) -> DistinguisherInstance:
    require_connected(g)
    uni = g.vertices if universe is None else tuple(sorted(set(universe)))
    umask = g.mask(uni)
    cons = tuple((e, g.names(m & umask)) for e, m in edge_masks(g))
    return DistinguisherInstance(uni, cons)


def distinguishers(g: Graph, edge: Sequence[str], universe: Iterable[str] | None = None) -> tuple[str, ...]:
    u, v = edge
    if not g.has_edge(u, v):
        raise UnknownEdge(f"no edge {u}-{v}")
    require_connected(g)
    m = distinguisher_mask(g.dmatrix, g.index(u), g.index(v))
    if universe is not None:
        m &= g.mask(universe)
    return g.names(m)


def first_undistinguished(g: Graph, s: Iterable[str], edges: Iterable[Edge] | None = None) -> Edge | None:
    """First edge (canonical order) not distinguished by ``s``, else ``None``."""
    idx = [g.index(v) for v in s]
    dm = g.dmatrix
    if not idx:
        for e in g.edges if edges is None else edges:
            return edge_key(*e)
        return None
    sub = dm[idx]
    for u, v in g.edges if edges is None else sorted(edge_key(*e) for e in edges):
        if (sub[:, g.index(u)] == sub[:, g.index(v)]).all():
            return (u, v)
    return None


def is_local_metric_set(g: Graph, s: Iterable[str]) -> tuple[bool, Edge | None]:
    if g.order > 1 and not is_connected(g):
        raise Disconnected("local metric sets need a connected graph")
    bad = first_undistinguished(g, s)
    return bad is None, bad


@dataclass(frozen=True)
class LocalBasis:
    size: int
    witness: tuple[str, ...]
    nodes: int = 0
    lower_bound: int = 0
    warnings: tuple[str, ...] = field(default=())


def _constraints(g: Graph) -> list[int]:
    return [m for _, m in edge_masks(g)]


def _prepare(g: Graph) -> None:
    if g.order > 1 and not is_connected(g):
        raise Disconnected("local metric dimension needs a connected graph")


def local_metric_dimension(g: Graph, budget: Budget = Budget()) -> LocalBasis:
    """Exact dimension with the lexicographically smallest minimum basis."""
    _prepare(g)
    if g.order == 1:
        return LocalBasis(0, (), warnings=("trivial graph: dimension taken as 0",))
    cons = _constraints(g)
    universe = (1 << g.order) - 1
    search = Search(budget)
    res = search.minimum(cons, universe)
    witness = search.lex_min(cons, universe, res.size)
    return LocalBasis(res.size, g.names(witness), search.nodes, res.lower_bound)


def min_hitting_names(
    g: Graph, masks: Sequence[int], universe: Iterable[str], budget: Budget = Budget()
) -> tuple[str, ...]:
    """Lexicographically smallest minimum subset of ``universe`` hitting every mask.

    Masks are over the vertex indices of ``g``.
    """
    umask = g.mask(universe)
    masks = list(masks)
    if not masks:
        return ()
    for m in masks:
        if not m & umask:
            raise Infeasible("a constraint cannot be hit from the given universe")
    search = Search(budget)
    res = search.minimum(masks, umask)
    return g.names(search.lex_min(masks, umask, res.size))


def all_min_hitting_names(
    g: Graph, masks: Sequence[int], universe: Iterable[str], cap: int = DEFAULT_BASES_CAP, budget: Budget = Budget()
) -> tuple[list[tuple[str, ...]], bool]:
    umask = g.mask(universe)
    masks = list(masks)
    if not masks:
        return [()], False
    search = Search(budget)
    res = search.minimum(masks, umask)
    found, truncated = search.enumerate(masks, umask, res.size, cap)
    return [g.names(m) for m in found], truncated


def enumerate_minimum_bases(
    g: Graph, cap: int = DEFAULT_BASES_CAP, budget: Budget = Budget()
) -> tuple[list[tuple[str, ...]], bool]:
    """All minimum local metric sets, sorted; the flag reports truncation at ``cap``."""
    _prepare(g)
    if g.order == 1:
        return [()], False
    return all_min_hitting_names(g, _constraints(g), g.vertices, cap, budget)


def vertex_in_some_basis(g: Graph, v: str, budget: Budget = Budget(), dimension: int | None = None) -> bool:
    _prepare(g)
    i = g.index(v)
    if g.order == 1:
        return False
    cons = _constraints(g)
    search = Search(budget)
    k = dimension if dimension is not None else search.minimum(cons, (1 << g.order) - 1).size
    rest = [c for c in cons if not c >> i & 1]
    return search.feasible(rest, ((1 << g.order) - 1) & ~(1 << i), k - 1)


def vertex_amalgam_dimension(parts: Sequence[tuple[Graph, str]], budget: Budget = Budget()) -> int:
    """Dimension of a one-vertex amalgam from the parts alone.

    All bipartite: 1. Exactly one non-bipartite part: its dimension.
    Otherwise the sum over parts of ``dim - eps`` where ``eps`` is 1 when the
    glued vertex lies in some basis of that part.
    """
    for g, v in parts:
        _prepare(g)
        g.index(v)
    nonbip = [(g, v) for g, v in parts if not is_bipartite(g)]
    if not nonbip:
        return 1
    if len(nonbip) == 1:
        return local_metric_dimension(nonbip[0][0], budget).size
    total = 0
    for g, v in parts:
        if g.order == 1:
            continue
        k = local_metric_dimension(g, budget).size
        total += k - int(vertex_in_some_basis(g, v, budget, k))
    return total
