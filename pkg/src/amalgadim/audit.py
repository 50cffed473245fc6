"""Random isometric amalgams and the invariant checks run over them.

Checks come in two flavours. Assertable invariants follow from definitions
and short arguments; a failure is a bug and is reported as a violation. The
lower bound ``sum |T_i| + |S| <= dim`` and the covers upper bound are only
audited: an instance where either fails is counted and written out as a
counterexample bundle.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import combinations
from pathlib import Path
from typing import Callable

from .amalgam import Amalgam, amalgamate_maps, diam2_sufficiency, is_isometric_family, part_isometric_in_h
from .bounds import (
    BoundReport,
    bound_report,
    dist_to_j,
    parallel_edges,
    solvable_edges,
    sum_dimension_conditions,
)
from .errors import BudgetExceeded
from .formats import write_bundle
from .graph import Graph, components, edge_key, induced_subgraph, is_bipartite, is_connected
from .hitting import Budget
from .localmetric import first_undistinguished, is_local_metric_set, local_metric_dimension

SUM_CONDITIONS_CAP = 2000


@dataclass(frozen=True)
class Violation:
    check: str
    detail: str


@dataclass
class InstanceAudit:
    amalgam: Amalgam
    report: BoundReport | None
    violations: list[Violation] = field(default_factory=list)

    @property
    def lower_violation(self) -> bool:
        return self.report is not None and self.report.audit_violation

    @property
    def covers_violation(self) -> bool:
        """The covers bound applied but its witness is not a local metric set."""
        return self.report is not None and self.report.certified.get("upper_covers") is False


# -- random instances ---------------------------------------------------------------


def random_connected_graph(rng: random.Random, names: list[str], p: float) -> Graph:
    """Random spanning tree on ``names`` plus each remaining pair with probability ``p``."""
    order = list(names)
    rng.shuffle(order)
    edges = set()
    for k in range(1, len(order)):
        edges.add(edge_key(order[k], order[rng.randrange(k)]))
    for u, v in combinations(names, 2):
        if rng.random() < p:
            edges.add(edge_key(u, v))
    return Graph(names, edges)


def _random_part(rng: random.Random, j: Graph, outside: int, p: float) -> Graph:
    """J on its own names plus ``outside`` new vertices, connected, J left induced."""
    xs = [f"x{k}" for k in range(outside)]
    edges = set(j.edges)
    # attach every new vertex to something already placed
    placed = list(j.vertices)
    for x in xs:
        edges.add(edge_key(x, rng.choice(placed)))
        placed.append(x)
    for u, v in combinations(xs, 2):
        if rng.random() < p:
            edges.add(edge_key(u, v))
    for x in xs:
        for a in j.vertices:
            if rng.random() < p:
                edges.add(edge_key(x, a))
    g = Graph(list(j.vertices) + xs, edges)
    # J components not reached by any new vertex hang off the first one
    if not is_connected(g):
        for comp in _components(g):
            if xs[0] not in comp:
                edges.add(edge_key(xs[0], rng.choice(comp)))
        g = Graph(list(j.vertices) + xs, edges)
    return g


def _components(g: Graph) -> list[list[str]]:
    return [sorted(c) for c in components(g)]


def random_amalgam(rng: random.Random, size_cap: int, max_tries: int = 40) -> tuple[Amalgam, list[Amalgam]]:
    """A random isometric amalgam with at most ``size_cap`` vertices.

    Also returns the rejected (non-isometric) candidates met on the way, so
    that checks that do not need isometry can run on them too.
    """
    if size_cap < 4:
        raise ValueError("size cap must be at least 4")
    n = rng.randint(2, 3 if size_cap >= 7 else 2)
    k = rng.randint(1, max(1, min(3, size_cap - 2 * n)))
    o1 = rng.randint(1, max(1, (size_cap - k) // n))
    p = rng.choice((0.15, 0.3, 0.5))
    names = [f"y{t}" for t in range(k + o1)]
    g1 = random_connected_graph(rng, names, p)
    chosen = rng.sample(names, k)
    sub = induced_subgraph(g1, chosen)
    jnames = {v: f"j{t}" for t, v in enumerate(sorted(chosen), 1)}
    j = Graph([jnames[v] for v in sub.vertices], [(jnames[u], jnames[v]) for u, v in sub.edges])
    first_map = {jnames[v]: v for v in chosen}
    parts: list[tuple[Graph, dict[str, str]]] = [(g1, first_map)]
    ident = {a: a for a in j.vertices}
    rejected: list[Amalgam] = []
    for _ in range(1, n):
        outside = rng.randint(1, o1)
        for _attempt in range(max_tries):
            g = _random_part(rng, j, outside, p)
            cand = amalgamate_maps(j, parts + [(g, ident)])
            if is_isometric_family(cand)[0]:
                parts.append((g, ident))
                break
            if len(rejected) < 3:
                rejected.append(cand)
        else:
            parts.append((g1, first_map))
    return amalgamate_maps(j, parts), rejected


# -- assertable invariants ------------------------------------------------------------


def check_structure(a: Amalgam) -> list[Violation]:
    out = []
    expected = sum(g.order - a.j.order for g, _ in a.parts) + a.j.order
    if a.n_h != expected:
        out.append(Violation("order", f"n_H={a.n_h} expected {expected}"))
    shared = [v for v, (p, _) in a.provenance.items() if p == "J"]
    if tuple(shared) != a.j.vertices:
        out.append(Violation("provenance", "shared vertices differ from V(J)"))
    iso = is_isometric_family(a)[0]
    each = all(part_isometric_in_h(a, pid) for pid in a.part_ids)
    if iso != each:
        out.append(Violation("isometricity_equivalence", f"family={iso} parts={each}"))
    if diam2_sufficiency(a) and not iso:
        out.append(Violation("diam2_implies_isometric", "J connected of diameter <= 2 but not isometric"))
    return out


def _h_parallel(a: Amalgam, pid) -> list[tuple[str, str]]:
    g, emb = a.part(pid)
    to_h = a.to_h(pid)
    return [edge_key(to_h[u], to_h[v]) for u, v in parallel_edges(g, emb)]


def check_parallel_locality(a: Amalgam) -> list[Violation]:
    """Only vertices of G_i - J_i can tell apart the ends of a parallel edge of part i."""
    h = a.h
    dm = h.dmatrix
    out = []
    for pid in a.part_ids:
        own = set(a.outside(pid))
        for u, v in _h_parallel(a, pid):
            iu, iv = h.index(u), h.index(v)
            for w in h.vertices:
                iw = h.index(w)
                if dm[iw, iu] != dm[iw, iv] and w not in own:
                    out.append(Violation("parallel_locality", f"{w} distinguishes parallel edge {u}-{v} of part {pid}"))
    return out


def check_traversal_union(a: Amalgam, rng: random.Random, trials: int = 20) -> list[Violation]:
    """T covers all parallel edges iff each T restricted to a part covers that part's."""
    h = a.h
    per_part = {pid: _h_parallel(a, pid) for pid in a.part_ids}
    everything = sorted({e for es in per_part.values() for e in es})
    if not everything:
        return []
    out = []
    for _ in range(trials):
        t = [v for v in h.vertices if rng.random() < 0.3]
        whole = first_undistinguished(h, t, everything) is None
        split = all(
            first_undistinguished(h, [x for x in t if x in set(a.part_vertices(pid))], es) is None
            for pid, es in per_part.items() if es
        )
        if whole != split:
            out.append(Violation("traversal_union", f"T={','.join(t)} whole={whole} split={split}"))
    return out


def check_union_of_bases(a: Amalgam, budget: Budget) -> list[Violation]:
    if not is_isometric_family(a)[0]:
        return []
    union = set()
    for pid in a.part_ids:
        b = local_metric_dimension(a.graph(pid), budget).witness
        union |= {a.to_h(pid)[x] for x in b}
    ok, bad = is_local_metric_set(a.h, union)
    return [] if ok else [Violation("union_of_bases", f"edge {bad} not distinguished by {sorted(union)}")]


def check_projections(a: Amalgam) -> list[Violation]:
    """For a solvable edge uv (u closer to J), a J-vertex c realizing d(u,J) tells u from v,
    and so does any vertex of another part realizing its own distance to J at c."""
    if not is_isometric_family(a)[0]:
        return []
    h = a.h
    dm = h.dmatrix
    out = []
    jcols = [h.index(x) for x in a.shared]
    djh = dm[:, jcols].min(axis=1)
    for pid in a.part_ids:
        g, emb = a.part(pid)
        to_h = a.to_h(pid)
        dj = dist_to_j(g, emb.mapping.values())
        others = [v for q in a.part_ids if q != pid for v in a.part_vertices(q)]
        for u, v in solvable_edges(g, emb):
            if dj[g.index(u)] > dj[g.index(v)]:
                u, v = v, u
            iu, iv = h.index(to_h[u]), h.index(to_h[v])
            for c in a.shared:
                ic = h.index(c)
                if dm[iu, ic] != dj[g.index(u)]:
                    continue
                if dm[ic, iu] == dm[ic, iv]:
                    out.append(Violation("projection_center", f"{c} fails on {to_h[u]}-{to_h[v]}"))
                for s in others:
                    i_s = h.index(s)
                    if dm[i_s, ic] == djh[i_s] and dm[i_s, iu] == dm[i_s, iv]:
                        out.append(Violation("projection_other_part", f"{s} via {c} fails on {to_h[u]}-{to_h[v]}"))
    return out


def check_certificates(a: Amalgam, report: BoundReport) -> list[Violation]:
    out = []
    for key, w in report.witnesses.items():
        ok = is_local_metric_set(a.h, w)[0]
        if ok != report.certified[key]:
            out.append(Violation("certificate_recheck", f"{key} recorded {report.certified[key]} but is {ok}"))
        if ok and report.exact is not None and report.exact > len(w):
            out.append(Violation("certificate_size", f"{key} witness of size {len(w)} below exact {report.exact}"))
    if report.isometric:
        # the covers bound is audited like the lower bound, see covers_violation
        for key in ("upper_iso", "upper_cotraversal"):
            if key in report.certified and not report.certified[key]:
                out.append(Violation("certified_bound", f"{key} witness is not a local metric set"))
    return out


def check_sum_conditions(a: Amalgam, budget: Budget) -> list[Violation]:
    if not is_isometric_family(a)[0]:
        return []
    try:
        sc = sum_dimension_conditions(a, SUM_CONDITIONS_CAP, budget)
    except BudgetExceeded:
        return []
    out = []
    if sc.all_bases_avoid_j and not sc.dim_equals_sum:
        out.append(Violation("bases_avoid_J_implies_sum", f"dim {sc.dim_h} sum {sc.sum_dims}"))
    if sc.dim_equals_sum and not sc.bases_pairwise_disjoint:
        out.append(Violation("sum_implies_disjoint", f"dim {sc.dim_h} sum {sc.sum_dims}"))
    return out


def check_bipartite(a: Amalgam, report: BoundReport) -> list[Violation]:
    if not (report.isometric and report.all_bipartite):
        return []
    out = []
    if not is_bipartite(a.h):
        out.append(Violation("bipartite_parts", "H is not bipartite"))
    if report.exact is not None and report.exact != 1:
        out.append(Violation("bipartite_parts", f"dim {report.exact} != 1"))
    return out


def audit_instance(a: Amalgam, rng: random.Random, budget: Budget = Budget(), exhaustive: bool = True) -> InstanceAudit:
    report = bound_report(a, compute_exact=True, budget=budget)
    res = InstanceAudit(a, report)
    res.violations += check_structure(a)
    if exhaustive:
        res.violations += check_parallel_locality(a)
        res.violations += check_projections(a)
    res.violations += check_traversal_union(a, rng)
    res.violations += check_union_of_bases(a, budget)
    res.violations += check_certificates(a, report)
    res.violations += check_sum_conditions(a, budget)
    res.violations += check_bipartite(a, report)
    return res


# -- fuzz driver ---------------------------------------------------------------------


@dataclass
class FuzzSummary:
    count: int
    seed: int
    size_cap: int
    checked_rejected: int = 0
    invariant_violations: list[tuple[int, Violation]] = field(default_factory=list)
    lower_violations: list[int] = field(default_factory=list)
    covers_violations: list[int] = field(default_factory=list)
    bundles: list[str] = field(default_factory=list)
    exact_timeouts: int = 0

    def records(self) -> list[tuple[str, str]]:
        out = [
            ("instances", str(self.count)),
            ("seed", str(self.seed)),
            ("size_cap", str(self.size_cap)),
            ("non_isometric_checked", str(self.checked_rejected)),
            ("invariant_violations", str(len(self.invariant_violations))),
            ("lower_bound_violations", str(len(self.lower_violations))),
            ("covers_bound_violations", str(len(self.covers_violations))),
            ("exact_timeouts", str(self.exact_timeouts)),
        ]
        for k, v in self.invariant_violations:
            out.append((f"violation.{k}.{v.check}", v.detail))
        if self.lower_violations:
            out.append(("lower_bound_violation_instances", ",".join(map(str, self.lower_violations))))
        if self.covers_violations:
            out.append(("covers_bound_violation_instances", ",".join(map(str, self.covers_violations))))
        out.append(("bundles", str(len(self.bundles))))
        return out


def fuzz(
    count: int,
    size_cap: int,
    seed: int,
    budget: Budget = Budget(),
    bundle_dir: str | Path | None = None,
    progress: Callable[[int], None] | None = None,
) -> FuzzSummary:
    rng = random.Random(seed)
    summary = FuzzSummary(count, seed, size_cap)
    for k in range(count):
        a, rejected = random_amalgam(rng, size_cap)
        for cand in rejected:
            summary.checked_rejected += 1
            for v in check_structure(cand):
                summary.invariant_violations.append((k, v))
        res = audit_instance(a, rng, budget)
        if res.report.exact_status == "timeout":
            summary.exact_timeouts += 1
        for v in res.violations:
            summary.invariant_violations.append((k, v))
        if res.lower_violation:
            summary.lower_violations.append(k)
        if res.covers_violation:
            summary.covers_violations.append(k)
        if bundle_dir is not None and (res.lower_violation or res.covers_violation or res.violations):
            d = Path(bundle_dir) / f"instance{k:04d}"
            write_bundle(d, a, res.report.records() + [(f"violation.{v.check}", v.detail) for v in res.violations])
            summary.bundles.append(str(d))
        if progress is not None:
            progress(k)
    return summary
