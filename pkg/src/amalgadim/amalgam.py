"""Subgraph-amalgamation: gluing graphs along copies of a common induced subgraph."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Mapping, Sequence

from .errors import BadParameter, DisconnectedPart, InvalidEmbedding, UnknownVertex
from .graph import Graph, diameter, is_connected

SHARED = "J"


@dataclass(frozen=True)
class Embedding:
    """Injective map from the vertices of J into one part."""

    part: str
    mapping: Mapping[str, str]

    def __post_init__(self):
        object.__setattr__(self, "part", str(self.part))
        object.__setattr__(self, "mapping", dict(sorted(self.mapping.items())))

    def image(self) -> frozenset[str]:
        return frozenset(self.mapping.values())

    def __hash__(self):
        return hash((self.part, tuple(self.mapping.items())))


def check_embedding(j: Graph, g: Graph, mapping: Mapping[str, str]) -> tuple[bool, tuple[str, str, str] | None]:
    """Does ``mapping`` witness J as an induced subgraph of ``g``?

    Returns ``(ok, violation)`` where a violation is ``(a, b, reason)`` for the
    first offending pair of J-vertices in canonical order.
    """
    for a in j.vertices:
        if a not in mapping:
            raise UnknownVertex(f"embedding does not map J-vertex {a}")
        if mapping[a] not in g:
            raise UnknownVertex(f"embedding sends {a} to unknown vertex {mapping[a]}")
    for a in mapping:
        if a not in j:
            raise UnknownVertex(f"embedding maps unknown J-vertex {a}")
    for a, b in combinations(j.vertices, 2):
        x, y = mapping[a], mapping[b]
        if x == y:
            return False, (a, b, "not injective")
        if j.has_edge(a, b) != g.has_edge(x, y):
            reason = "edge missing in image" if j.has_edge(a, b) else "image has an extra edge"
            return False, (a, b, reason)
    return True, None


class Amalgam:
    """The amalgam H of parts G_i over J, with provenance.

    Non-shared vertices of part ``i`` are renamed ``p<i>.<name>``; shared
    vertices keep J's names.
    """

    def __init__(self, j: Graph, parts: Sequence[tuple[Graph, Embedding]]):
        if not parts:
            raise BadParameter("amalgamation needs at least one part")
        if j.order == 0:
            raise BadParameter("J needs at least one vertex")
        ids = [e.part for _, e in parts]
        if len(set(ids)) != len(ids):
            raise BadParameter(f"duplicate part ids {ids}")
        for g, emb in parts:
            ok, bad = check_embedding(j, g, emb.mapping)
            if not ok:
                a, b, why = bad
                raise InvalidEmbedding(f"part {emb.part}: J-vertices {a},{b}: {why}")
            if not is_connected(g):
                raise DisconnectedPart(f"part {emb.part} is not connected")
        self.j = j
        self.parts: tuple[tuple[Graph, Embedding], ...] = tuple(parts)
        self._index = {pid: k for k, pid in enumerate(ids)}
        self._to_h: list[dict[str, str]] = []
        provenance: dict[str, tuple[str, str]] = {a: (SHARED, a) for a in j.vertices}
        edges: set[tuple[str, str]] = set()
        for g, emb in parts:
            inv = {x: a for a, x in emb.mapping.items()}
            to_h = {}
            for x in g.vertices:
                if x in inv:
                    to_h[x] = inv[x]
                else:
                    name = f"p{emb.part}.{x}"
                    if name in provenance:
                        raise BadParameter(f"renamed vertex {name} collides with an existing name")
                    provenance[name] = (emb.part, x)
                    to_h[x] = name
            for x, y in g.edges:
                a, b = to_h[x], to_h[y]
                edges.add((a, b) if a <= b else (b, a))
            self._to_h.append(to_h)
        edges.update(j.edges)
        self.h = Graph(provenance, edges)
        self.provenance: dict[str, tuple[str, str]] = dict(sorted(provenance.items()))

    # -- navigation ------------------------------------------------------

    @property
    def n(self) -> int:
        return len(self.parts)

    @property
    def n_h(self) -> int:
        return self.h.order

    @property
    def part_ids(self) -> tuple[str, ...]:
        return tuple(e.part for _, e in self.parts)

    def _k(self, pid) -> int:
        try:
            return self._index[str(pid)]
        except KeyError:
            raise BadParameter(f"no part {pid}") from None

    def part(self, pid) -> tuple[Graph, Embedding]:
        return self.parts[self._k(pid)]

    def graph(self, pid) -> Graph:
        return self.parts[self._k(pid)][0]

    def embedding(self, pid) -> Embedding:
        return self.parts[self._k(pid)][1]

    def to_h(self, pid) -> dict[str, str]:
        """Map from part vertex names to H names."""
        return self._to_h[self._k(pid)]

    def from_h(self, pid) -> dict[str, str]:
        return {hv: x for x, hv in self._to_h[self._k(pid)].items()}

    def part_vertices(self, pid) -> tuple[str, ...]:
        """H names of all vertices of part ``pid`` (shared ones included)."""
        return tuple(sorted(self._to_h[self._k(pid)].values()))

    def outside(self, pid) -> tuple[str, ...]:
        """H names of V(G_i - J_i)."""
        pid = str(pid)
        return tuple(v for v, (p, _) in self.provenance.items() if p == pid)

    @property
    def shared(self) -> tuple[str, ...]:
        return self.j.vertices

    def __repr__(self) -> str:
        return f"Amalgam(n={self.n}, n_H={self.n_h}, |J|={self.j.order})"


def amalgamate(j: Graph, parts: Sequence[tuple[Graph, Embedding]]) -> Amalgam:
    return Amalgam(j, parts)


def amalgamate_maps(j: Graph, parts: Sequence[tuple[Graph, Mapping[str, str]]]) -> Amalgam:
    """Convenience form: parts given as ``(graph, mapping)``, numbered from 1."""
    return Amalgam(j, [(g, Embedding(str(k), m)) for k, (g, m) in enumerate(parts, 1)])


def isometry_violation(a: Amalgam) -> tuple[str, str, str, str, int, int] | None:
    """First ``(i, j, x, y, d_i, d_j)`` with differing J-distances, or ``None``."""
    jv = a.j.vertices
    if len(jv) < 2:
        return None
    ref_g, ref_e = a.parts[0]
    for x, y in combinations(jv, 2):
        d0 = ref_g.dist(ref_e.mapping[x], ref_e.mapping[y])
        for g, e in a.parts[1:]:
            d = g.dist(e.mapping[x], e.mapping[y])
            if d != d0:
                return (ref_e.part, e.part, x, y, d0, d)
    return None


def is_isometric_family(a: Amalgam) -> tuple[bool, tuple | None]:
    """Do all parts agree on distances between J-vertices (part-local metrics)?"""
    w = isometry_violation(a)
    return w is None, w


def is_isometrically_embedded(sub: Graph, host: Graph, mapping: Mapping[str, str]) -> bool:
    ok, bad = check_embedding(sub, host, mapping)
    if not ok:
        raise InvalidEmbedding(f"not an induced embedding: {bad}")
    ds, dh = sub.dmatrix, host.dmatrix
    idx = [host.index(mapping[v]) for v in sub.vertices]
    return bool((ds == dh[idx][:, idx]).all())


def part_isometric_in_h(a: Amalgam, pid) -> bool:
    return is_isometrically_embedded(a.graph(pid), a.h, a.to_h(pid))


def diam2_sufficiency(a: Amalgam) -> bool:
    """True when J is connected of diameter at most two (isometry then follows)."""
    return is_connected(a.j) and diameter(a.j) <= 2

