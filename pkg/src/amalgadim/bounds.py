"""Bounds on the local metric dimension of an amalgam.

Two distance conventions are in play. Parallel and solvable edges, covers
and M-sets are defined inside a single part and use that part's distances;
traversals, out-solving sets and co-traversals are about distinguishing
edges of H and use H-distances. For isometric families the two agree on
pairs inside a part.

Every upper bound is reported together with an explicit vertex set, and the
number is only marked certified after that set has been checked to be a
local metric set of H. The lower bound is measured, never assumed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Iterable, Mapping, Sequence

import numpy as np

from .amalgam import Amalgam, Embedding, is_isometric_family
from .errors import (
    BadParameter,
    BudgetExceeded,
    Infeasible,
    InfeasibleClassification,
    NotBipartiteAfterDeletion,
    NotIsometric,
)
from .graph import Edge, Graph, delete_edges, edge_key, is_bipartite
from .hitting import Budget
from .localmetric import (
    all_min_hitting_names,
    distinguisher_mask,
    enumerate_minimum_bases,
    first_undistinguished,
    is_local_metric_set,
    local_metric_dimension,
    min_hitting_names,
    row_mask,
)

COMPLETE = "complete"
SELF_RESOLVING = "self_resolving"
PLAIN = "plain"
CRUDE_ATTEMPTS = 4096


# -- part-local quantities ---------------------------------------------------


def dist_to_j(g: Graph, image: Iterable[str]) -> np.ndarray:
    """``d(x, J)`` for every vertex of ``g`` (min over the J-image)."""
    cols = [g.index(v) for v in image]
    if not cols:
        raise BadParameter("distance to an empty J is undefined")
    return g.dmatrix[:, cols].min(axis=1)


def parallel_edges(g: Graph, emb: Embedding | Mapping[str, str]) -> tuple[Edge, ...]:
    """Edges of G - J whose endpoints are equidistant from every J-vertex."""
    mapping = emb.mapping if isinstance(emb, Embedding) else emb
    image = set(mapping.values())
    cols = [g.index(v) for v in sorted(image)]
    dm = g.dmatrix
    out = []
    for u, v in g.edges:
        if u in image or v in image:
            continue
        if (dm[cols, g.index(u)] == dm[cols, g.index(v)]).all():
            out.append((u, v))
    return tuple(out)


def solvable_edges(g: Graph, emb: Embedding | Mapping[str, str]) -> tuple[Edge, ...]:
    """Edges whose endpoints lie at different distances from J."""
    mapping = emb.mapping if isinstance(emb, Embedding) else emb
    dj = dist_to_j(g, mapping.values())
    return tuple((u, v) for u, v in g.edges if dj[g.index(u)] != dj[g.index(v)])


def _outside_edges(g: Graph, image: set[str]) -> list[Edge]:
    return [(u, v) for u, v in g.edges if u not in image and v not in image]


def _h_edges(a: Amalgam, pid, edges: Iterable[Edge]) -> list[Edge]:
    to_h = a.to_h(pid)
    return [edge_key(to_h[u], to_h[v]) for u, v in edges]


def _distinguished(dm: np.ndarray, rows: Sequence[int], i: int, j: int) -> bool:
    return bool(rows) and bool((dm[rows, i] != dm[rows, j]).any())


# -- traversals and out-solving sets -----------------------------------------


def _traversal_masks(a: Amalgam, pid, metric: str = "H") -> list[int]:
    g, emb = a.part(pid)
    h = a.h
    edges = parallel_edges(g, emb)
    outside = h.mask(a.outside(pid))
    if metric == "H":
        return [distinguisher_mask(h.dmatrix, h.index(u), h.index(v)) & outside for u, v in _h_edges(a, pid, edges)]
    if metric != "part":
        raise BadParameter(f"unknown metric {metric!r}")
    to_h = a.to_h(pid)
    masks = []
    for u, v in edges:
        local = distinguisher_mask(g.dmatrix, g.index(u), g.index(v))
        masks.append(h.mask(to_h[x] for x in g.names(local)) & outside)
    return masks


def min_traversal(a: Amalgam, pid, budget: Budget = Budget(), metric: str = "H") -> tuple[str, ...]:
    """Smallest subset of V(G_i - J_i) distinguishing the parallel edges of part ``pid``."""
    masks = _traversal_masks(a, pid, metric)
    return min_hitting_names(a.h, masks, a.outside(pid), budget)


def all_min_traversals(a: Amalgam, pid, cap: int = 10_000, budget: Budget = Budget()) -> tuple[list[tuple[str, ...]], bool]:
    return all_min_hitting_names(a.h, _traversal_masks(a, pid), a.outside(pid), cap, budget)


def min_out_solving(a: Amalgam, budget: Budget = Budget(), universe: Iterable[str] | None = None) -> tuple[str, ...]:
    """Smallest vertex set of H distinguishing every edge of J (H-distances).

    The default universe is V(H); pass ``a.shared`` for the variant drawn
    from J only.
    """
    h = a.h
    masks = [distinguisher_mask(h.dmatrix, h.index(u), h.index(v)) for u, v in a.j.edges]
    return min_hitting_names(h, masks, h.vertices if universe is None else universe, budget)


# -- co-traversals -------------------------------------------------------------


def _require_isometric(a: Amalgam) -> None:
    ok, w = is_isometric_family(a)
    if not ok:
        raise NotIsometric(f"family is not isometric: {w}")


def cotraversal_masks(a: Amalgam, traversals: Mapping[str, Sequence[str]]) -> list[int]:
    h = a.h
    dm = h.dmatrix
    jmask = h.mask(a.shared)
    jedges = set(a.j.edges)
    masks = []
    for pid in a.part_ids:
        rows = [h.index(t) for t in traversals[pid]]
        for u, v in _h_edges(a, pid, a.graph(pid).edges):
            if (u, v) in jedges:
                continue
            i, j = h.index(u), h.index(v)
            if _distinguished(dm, rows, i, j):
                continue
            masks.append(distinguisher_mask(dm, i, j) & jmask)
    return masks


def min_cotraversal(a: Amalgam, traversals: Mapping[str, Sequence[str]], budget: Budget = Budget()) -> tuple[str, ...]:
    """Smallest C within V(J) such that C with T_i distinguishes E(G_i) - E(J) for every part."""
    _require_isometric(a)
    traversals = {str(k): v for k, v in traversals.items()}
    return min_hitting_names(a.h, cotraversal_masks(a, traversals), a.shared, budget)


def _oriented_solvable(a: Amalgam, pid) -> list[tuple[str, str]]:
    """Solvable edges of a part as (closer, farther) pairs in part names."""
    g, emb = a.part(pid)
    dj = dist_to_j(g, emb.mapping.values())
    out = []
    for u, v in solvable_edges(g, emb):
        out.append((u, v) if dj[g.index(u)] < dj[g.index(v)] else (v, u))
    return out


def is_projective(c: Iterable[str], a: Amalgam, traversals: Mapping[str, Sequence[str]]) -> bool:
    """Does every solvable edge missed by its traversal have its closer end projecting onto C?"""
    c = list(c)
    traversals = {str(k): v for k, v in traversals.items()}
    h = a.h
    for pid in a.part_ids:
        g, emb = a.part(pid)
        to_h = a.to_h(pid)
        dj = dist_to_j(g, emb.mapping.values())
        rows = [h.index(t) for t in traversals[pid]]
        ccols = [g.index(emb.mapping[x]) for x in c]
        for u, v in _oriented_solvable(a, pid):
            if _distinguished(h.dmatrix, rows, h.index(to_h[u]), h.index(to_h[v])):
                continue
            iu = g.index(u)
            if not any(g.dmatrix[iu, col] == dj[iu] for col in ccols):
                return False
    return True


# -- covers and M-sets -----------------------------------------------------------


@dataclass(frozen=True)
class Cover:
    vertices: tuple[str, ...]
    classification: str | None
    is_cover: bool


def _cover_masks(a: Amalgam, pid, c: Iterable[str]) -> list[int]:
    """For each c in C, the part vertices x with d(x, c) = d(x, J)."""
    g, emb = a.part(pid)
    dj = dist_to_j(g, emb.mapping.values())
    return [row_mask(g.dmatrix[:, g.index(emb.mapping[x])] == dj) for x in c]


def _residual_edges(a: Amalgam, pid, include_solvable: bool) -> list[Edge]:
    g, emb = a.part(pid)
    image = set(emb.mapping.values())
    drop = set(parallel_edges(g, emb))
    if include_solvable:
        drop |= set(solvable_edges(g, emb))
    return [e for e in _outside_edges(g, image) if e not in drop]


def classify_cover(c: Iterable[str], a: Amalgam, pid, cover: Iterable[str]) -> Cover:
    """Classify a candidate cover given in H names.

    ``self_resolving`` implies ``complete``; the empty set counts as complete
    when every edge of G_i - J_i is parallel or solvable.
    """
    g = a.graph(pid)
    from_h = a.from_h(pid)
    cover = tuple(sorted(cover))
    local = [from_h[x] for x in cover]
    lmask = g.mask(local)
    is_cover = all(m & lmask for m in _cover_masks(a, pid, c))
    strict_res = _residual_edges(a, pid, include_solvable=True)
    if not cover and not strict_res:
        self_res = first_undistinguished(g, local, _residual_edges(a, pid, False)) is None
        return Cover(cover, SELF_RESOLVING if self_res else COMPLETE, is_cover)
    if not is_cover:
        return Cover(cover, None, False)
    if first_undistinguished(g, local, _residual_edges(a, pid, False)) is None:
        return Cover(cover, SELF_RESOLVING, True)
    if first_undistinguished(g, local, strict_res) is None:
        return Cover(cover, COMPLETE, True)
    return Cover(cover, PLAIN, True)


def min_cover(
    c: Iterable[str], a: Amalgam, pid, require: str | None = None, budget: Budget = Budget()
) -> Cover:
    """Smallest C_i-cover of part ``pid``, optionally of a required class."""
    c = tuple(c)
    g = a.graph(pid)
    to_h = a.to_h(pid)
    masks = _cover_masks(a, pid, c)
    if require is None:
        pass
    elif require == COMPLETE:
        res = _residual_edges(a, pid, include_solvable=True)
        if not res:
            return classify_cover(c, a, pid, ())
        masks += [distinguisher_mask(g.dmatrix, g.index(u), g.index(v)) for u, v in res]
    elif require == SELF_RESOLVING:
        res = _residual_edges(a, pid, include_solvable=False)
        masks += [distinguisher_mask(g.dmatrix, g.index(u), g.index(v)) for u, v in res]
    else:
        raise BadParameter(f"unknown cover class {require!r}")
    try:
        local = min_hitting_names(g, masks, g.vertices, budget)
    except Infeasible:
        raise InfeasibleClassification(f"no {require or 'plain'} cover exists for part {pid}") from None
    return classify_cover(c, a, pid, [to_h[x] for x in local])


@dataclass(frozen=True)
class MSet:
    vertices: tuple[str, ...]
    cover: Cover


def m_set(a: Amalgam, pid) -> MSet:
    """Local maxima of the distance to J in G_i - E(J_i), classified against C = V(J)."""
    g, emb = a.part(pid)
    image = emb.mapping
    jedges = [(image[x], image[y]) for x, y in a.j.edges]
    stripped = delete_edges(g, jedges)
    if not is_bipartite(stripped):
        raise NotBipartiteAfterDeletion(f"part {pid} minus the edges of J is not bipartite")
    dj = dist_to_j(g, image.values())
    to_h = a.to_h(pid)
    keep = []
    for i, x in enumerate(stripped.vertices):
        if all(dj[g.index(stripped.vertices[y])] <= dj[g.index(x)] for y in stripped.neighbor_indices[i]):
            keep.append(to_h[x])
    keep.sort()
    return MSet(tuple(keep), classify_cover(a.shared, a, pid, keep))


# -- assembled report ----------------------------------------------------------


@dataclass
class PartAnalysis:
    part: str
    parallel_edges: tuple[Edge, ...]
    solvable_edges: tuple[Edge, ...]
    traversal: tuple[str, ...]
    m_set: tuple[str, ...] | None
    bipartite: bool


@dataclass
class BoundReport:
    n: int
    n_h: int
    parts: list[PartAnalysis]
    isometric: bool
    all_bipartite: bool
    out_solving: tuple[str, ...]
    out_solving_within_j: tuple[str, ...] | None
    cotraversal: tuple[str, ...] | None = None
    cotraversal_projective: bool | None = None
    covers: dict[str, Cover] | None = None
    c_subset_s: bool | None = None
    lower: int = 0
    upper_crude: int | None = None
    upper_iso: int | None = None
    upper_cotraversal: int | None = None
    upper_covers: int | None = None
    witnesses: dict[str, tuple[str, ...]] = field(default_factory=dict)
    certified: dict[str, bool] = field(default_factory=dict)
    exact: int | None = None
    exact_witness: tuple[str, ...] | None = None
    exact_status: str = "not_computed"
    notes: list[str] = field(default_factory=list)

    @property
    def lower_le_exact(self) -> bool | None:
        return None if self.exact is None else self.lower <= self.exact

    @property
    def audit_violation(self) -> bool:
        return self.lower_le_exact is False

    def records(self) -> list[tuple[str, str]]:
        """Flat ``(key, value)`` records with stable keys."""

        def num(x) -> str:
            return "na" if x is None else str(x)

        def names(xs) -> str:
            return "na" if xs is None else ",".join(xs)

        def flag(x) -> str:
            return "na" if x is None else str(x).lower()

        out = [
            ("n", str(self.n)),
            ("n_H", str(self.n_h)),
            ("isometric", flag(self.isometric)),
            ("all_bipartite", flag(self.all_bipartite)),
        ]
        for p in self.parts:
            out.append((f"part.{p.part}.parallel", ",".join(f"{u}-{v}" for u, v in p.parallel_edges)))
            out.append((f"part.{p.part}.traversal", ",".join(p.traversal)))
            out.append((f"part.{p.part}.m_set", names(p.m_set)))
        out += [
            ("out_solving", ",".join(self.out_solving)),
            ("out_solving_within_J", names(self.out_solving_within_j)),
            ("cotraversal", names(self.cotraversal)),
            ("cotraversal_projective", flag(self.cotraversal_projective)),
            ("C_subset_S", flag(self.c_subset_s)),
        ]
        if self.covers is not None:
            for pid, cov in self.covers.items():
                out.append((f"part.{pid}.cover", ",".join(cov.vertices)))
                out.append((f"part.{pid}.cover_class", cov.classification or "none"))
        out.append(("lower", str(self.lower)))
        for key in ("upper_crude", "upper_iso", "upper_cotraversal", "upper_covers"):
            out.append((key, num(getattr(self, key))))
            if key in self.witnesses:
                out.append((f"{key}.witness", ",".join(self.witnesses[key])))
                out.append((f"{key}.certified", flag(self.certified[key])))
        if self.exact_status == "timeout":
            out.append(("exact", "timeout"))
        else:
            out.append(("exact", num(self.exact)))
        if self.exact_witness is not None:
            out.append(("exact.witness", ",".join(self.exact_witness)))
        out.append(("lower_le_exact", flag(self.lower_le_exact)))
        return out


def _certify(report: BoundReport, h: Graph, key: str, witness: Iterable[str]) -> bool:
    w = tuple(sorted(set(witness)))
    ok, _ = is_local_metric_set(h, w)
    report.witnesses[key] = w
    report.certified[key] = ok
    return ok


def _crude(a: Amalgam, report: BoundReport) -> None:
    h = a.h
    outs = [a.outside(pid) for pid in a.part_ids]
    if any(not o for o in outs):
        report.notes.append("upper_crude: a part has no vertex outside J")
        return
    report.upper_crude = a.n_h - (a.n + 1)
    first = None
    for attempt, choice in enumerate(product(a.shared, *outs)):
        if attempt >= CRUDE_ATTEMPTS:
            break
        rest = set(h.vertices) - set(choice)
        if first is None:
            first = rest
        if is_local_metric_set(h, rest)[0]:
            _certify(report, h, "upper_crude", rest)
            return
    _certify(report, h, "upper_crude", first)
    report.notes.append("upper_crude: no complement of a (J-vertex, one vertex per part) choice is a local metric set")


def _covers_for_bound(
    a: Amalgam, c: tuple[str, ...], base: set[str], budget: Budget
) -> dict[str, Cover] | None:
    """Smallest admissible family of complete covers.

    Candidates are the minimum complete covers of every part, and the same
    family with one part switched to its minimum self-resolving cover. Among
    the smallest admissible candidates, one whose witness resolves H wins;
    otherwise the first in part order is returned.
    """
    covers: dict[str, Cover] = {}
    for pid in a.part_ids:
        try:
            covers[pid] = min_cover(c, a, pid, COMPLETE, budget)
        except InfeasibleClassification:
            return None

    def acceptable(cv: Mapping[str, Cover]) -> bool:
        if any(x.classification == SELF_RESOLVING and x.is_cover for x in cv.values()):
            return True
        for x in c:
            hits = [pid for pid in a.part_ids if any(m & a.graph(pid).mask(a.from_h(pid)[v] for v in cv[pid].vertices)
                                                     for m in _cover_masks(a, pid, [x]))]
            if len(hits) < 2:
                return False
        return True

    candidates = [covers]
    for pid in a.part_ids:
        try:
            sr = min_cover(c, a, pid, SELF_RESOLVING, budget)
        except InfeasibleClassification:
            continue
        trial = dict(covers)
        trial[pid] = sr
        candidates.append(trial)
    ranked = []
    for k, cv in enumerate(candidates):
        if not acceptable(cv):
            continue
        w = set(base).union(*(x.vertices for x in cv.values()))
        ok = is_local_metric_set(a.h, sorted(w))[0]
        ranked.append((sum(len(x.vertices) for x in cv.values()), not ok, k))
    if not ranked:
        return None
    return candidates[min(ranked)[2]]


def bound_report(a: Amalgam, compute_exact: bool = False, budget: Budget = Budget()) -> BoundReport:
    h = a.h
    iso, _ = is_isometric_family(a)
    parts = []
    traversals: dict[str, tuple[str, ...]] = {}
    for pid in a.part_ids:
        g, emb = a.part(pid)
        t = min_traversal(a, pid, budget)
        traversals[pid] = t
        try:
            ms = m_set(a, pid).vertices
        except NotBipartiteAfterDeletion:
            ms = None
        parts.append(PartAnalysis(
            pid,
            tuple(sorted(_h_edges(a, pid, parallel_edges(g, emb)))),
            tuple(sorted(_h_edges(a, pid, solvable_edges(g, emb)))),
            t,
            ms,
            bool(is_bipartite(g)),
        ))
    s = min_out_solving(a, budget)
    try:
        s_j = min_out_solving(a, budget, a.shared)
    except Infeasible:
        s_j = None
    report = BoundReport(
        n=a.n, n_h=a.n_h, parts=parts, isometric=iso,
        all_bipartite=all(p.bipartite for p in parts),
        out_solving=s, out_solving_within_j=s_j,
    )
    if s_j is not None and len(s_j) != len(s):
        report.notes.append(f"out-solving within J has size {len(s_j)} versus {len(s)} over V(H)")
    tsum = sum(len(t) for t in traversals.values())
    report.lower = tsum + len(s)
    _crude(a, report)

    if not iso:
        report.notes.append("upper_iso, upper_cotraversal, upper_covers: family is not isometric")
    else:
        bases = {pid: local_metric_dimension(a.graph(pid), budget) for pid in a.part_ids}
        union_bases = {a.to_h(pid)[x] for pid, b in bases.items() for x in b.witness}
        sum_dim = sum(b.size for b in bases.values())
        t_and_j = set().union(*traversals.values()) | set(a.shared)
        _certify(report, h, "upper_iso.sum_dims", union_bases)
        _certify(report, h, "upper_iso.traversals_plus_J", t_and_j)
        if sum_dim <= tsum + a.j.order:
            report.upper_iso = sum_dim
            _certify(report, h, "upper_iso", union_bases)
        else:
            report.upper_iso = tsum + a.j.order
            _certify(report, h, "upper_iso", t_and_j)

        c = min_cotraversal(a, traversals, budget)
        report.cotraversal = c
        report.c_subset_s = set(c) <= set(s)
        report.upper_cotraversal = tsum + len(set(c) | set(s))
        _certify(report, h, "upper_cotraversal", set().union(*traversals.values()) | set(c) | set(s))

        report.cotraversal_projective = is_projective(c, a, traversals)
        if not report.cotraversal_projective:
            report.notes.append("upper_covers: co-traversal is not projective")
        else:
            covers = _covers_for_bound(a, c, set().union(*traversals.values()) | set(s), budget)
            if covers is None:
                report.notes.append("upper_covers: no admissible family of complete covers")
            else:
                report.covers = covers
                report.upper_covers = tsum + len(s) + sum(len(x.vertices) for x in covers.values())
                w = set().union(*traversals.values()) | set(s)
                for x in covers.values():
                    w |= set(x.vertices)
                _certify(report, h, "upper_covers", w)
    if compute_exact:
        try:
            basis = local_metric_dimension(h, budget)
            report.exact = basis.size
            report.exact_witness = basis.witness
            report.exact_status = "ok"
        except BudgetExceeded:
            report.exact_status = "timeout"
    return report


# -- conditions for the dimension to be the sum over parts ---------------------


@dataclass(frozen=True)
class SumConditions:
    bases_pairwise_disjoint: bool
    all_bases_avoid_j: bool
    traversals_contain_basis: bool
    dim_equals_sum: bool
    dim_h: int
    sum_dims: int


def sum_dimension_conditions(a: Amalgam, cap: int = 10_000, budget: Budget = Budget()) -> SumConditions:
    _require_isometric(a)
    in_some: list[set[str]] = []
    avoid = True
    contain = True
    total = 0
    for pid in a.part_ids:
        g, emb = a.part(pid)
        bases, truncated = enumerate_minimum_bases(g, cap, budget)
        if truncated:
            raise BudgetExceeded(f"more than {cap} bases in part {pid}")
        total += len(bases[0])
        inv = {x: j for j, x in emb.mapping.items()}
        hit = {inv[x] for b in bases for x in b if x in inv}
        in_some.append(hit)
        if hit:
            avoid = False
        from_h = a.from_h(pid)
        trav, truncated = all_min_traversals(a, pid, cap, budget)
        if truncated:
            raise BudgetExceeded(f"more than {cap} traversals in part {pid}")
        basis_sets = [set(b) for b in bases]
        for t in trav:
            local = {from_h[x] for x in t}
            if not any(b <= local for b in basis_sets):
                contain = False
    disjoint = all(not (in_some[i] & in_some[j]) for i in range(len(in_some)) for j in range(i + 1, len(in_some)))
    dim_h = local_metric_dimension(a.h, budget).size
    return SumConditions(disjoint, avoid, contain, dim_h == total, dim_h, total)
