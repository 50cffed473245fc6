"""Builders for the named example families, each with its expected quantities.

A builder returns a :class:`NamedInstance`: the graph or amalgam together with
a list of :class:`Claim` objects. A claim pairs an expected value with a
callable that measures it. Claims of kind ``"flag"`` record stated values
that are known to disagree with the definitions (or rest on an
interpretation); they are reported but never counted as failures.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Callable

from .amalgam import (
    Amalgam,
    amalgamate_maps,
    check_embedding,
    is_isometric_family,
    is_isometrically_embedded,
)
from .bounds import (
    COMPLETE,
    SELF_RESOLVING,
    bound_report,
    classify_cover,
    is_projective,
    m_set,
    min_cotraversal,
    min_cover,
    min_out_solving,
    min_traversal,
    parallel_edges,
    solvable_edges,
    sum_dimension_conditions,
)
from .errors import AmalgadimError, BadParameter, Disconnected
from .families import complete, cycle, empty, fan, join, path, prism, spider, wheel
from .graph import Graph, chromatic_number, diameter, edge_key, is_bipartite, is_connected
from .hitting import Budget
from .localmetric import enumerate_minimum_bases, is_local_metric_set, local_metric_dimension

PASS, FAIL, FLAGGED = "PASS", "FAIL", "FLAGGED"


@dataclass
class Claim:
    quantity: str
    expected: Any
    measure: Callable[[], Any]
    kind: str = "check"
    note: str = ""


@dataclass(frozen=True)
class ClaimResult:
    instance: str
    quantity: str
    expected: Any
    measured: Any
    status: str
    note: str = ""


@dataclass
class NamedInstance:
    name: str
    params: dict[str, Any]
    amalgam: Amalgam | None = None
    graph: Graph | None = None
    claims: list[Claim] = field(default_factory=list)

    @property
    def label(self) -> str:
        if not self.params:
            return self.name
        return self.name + "(" + ",".join(f"{k}={_fmt(v)}" for k, v in self.params.items()) + ")"

    def claim(self, quantity: str, expected: Any, measure: Callable[[], Any], kind: str = "check", note: str = "") -> None:
        self.claims.append(Claim(quantity, expected, measure, kind, note))

    def evaluate(self) -> list[ClaimResult]:
        out = []
        for c in self.claims:
            expected = c.expected() if callable(c.expected) else c.expected
            try:
                measured = c.measure()
            except AmalgadimError as exc:
                out.append(ClaimResult(self.label, c.quantity, expected, f"error: {exc}", FAIL, c.note))
                continue
            if c.kind == "flag":
                status = FLAGGED
            else:
                status = PASS if measured == expected else FAIL
            out.append(ClaimResult(self.label, c.quantity, expected, measured, status, c.note))
        return out


def _fmt(v: Any) -> str:
    if isinstance(v, (list, tuple)):
        return "(" + ",".join(_fmt(x) for x in v) + ")"
    if isinstance(v, Graph):
        return f"G{v.order}"
    return str(v)


def _ceil_div(a: int, b: int) -> int:
    return -(-a // b)


# -- small shared measurements ------------------------------------------------


def _dim(g: Graph, budget: Budget) -> Callable[[], int]:
    return lambda: local_metric_dimension(g, budget).size


def _is_lms(g: Graph, s) -> Callable[[], bool]:
    return lambda: is_local_metric_set(g, s)[0]


def _hnames(a: Amalgam, pid, names) -> tuple[str, ...]:
    to_h = a.to_h(pid)
    return tuple(sorted(to_h[x] for x in names))


def _hedges(a: Amalgam, pid, edges) -> tuple[tuple[str, str], ...]:
    to_h = a.to_h(pid)
    return tuple(sorted(edge_key(to_h[u], to_h[v]) for u, v in edges))


def is_cycle_graph(g: Graph) -> bool:
    return is_connected(g) and g.order >= 3 and all(g.degree(v) == 2 for v in g.vertices)


def rename(g: Graph, mapping: dict[str, str]) -> Graph:
    f = lambda v: mapping.get(v, v)  # noqa: E731
    return Graph([f(v) for v in g.vertices], [(f(u), f(v)) for u, v in g.edges])


def hub_fan(r: int, hub: str = "v0") -> Graph:
    """``hub + P_r`` with path vertices ``u1..ur``."""
    return rename(fan(1, r), {"v1": hub})


# -- builders --------------------------------------------------------------------


def build_path_pair(budget: Budget = Budget()) -> NamedInstance:
    """P_3 and P_4 glued at their end vertices over two isolated vertices."""
    j = empty(2, "x")
    a = amalgamate_maps(j, [
        (path(3, "u"), {"x1": "u1", "x2": "u3"}),
        (path(4, "v"), {"x1": "v1", "x2": "v4"}),
    ])
    inst = NamedInstance("path-pair", {}, amalgam=a)
    inst.claim("H_is_C5", True, lambda: is_cycle_graph(a.h) and a.n_h == 5)
    inst.claim("dim_H", 2, _dim(a.h, budget))
    inst.claim("isometric", False, lambda: is_isometric_family(a)[0])
    return inst


def build_spider_amalgam(n: int, budget: Budget = Budget()) -> NamedInstance:
    """Sp{2^n} and Sp{3^n} glued at the heads and at matching leg tips."""
    if n < 2:
        raise BadParameter("spider amalgam needs n >= 2")
    g1 = spider([(2, n)], strict=False)
    g2 = spider([(3, n)], strict=False)
    j = Graph(["h"] + [f"t{i}" for i in range(1, n + 1)])
    m1 = {"h": "h", **{f"t{i}": f"leg{i}_2" for i in range(1, n + 1)}}
    m2 = {"h": "h", **{f"t{i}": f"leg{i}_3" for i in range(1, n + 1)}}
    a = amalgamate_maps(j, [(g1, m1), (g2, m2)])
    inst = NamedInstance("spider-amalgam", {"n": n}, amalgam=a)
    inst.claim("order_G1", 1 + 2 * n, lambda: g1.order)
    inst.claim("order_G2", 1 + 3 * n, lambda: g2.order)
    inst.claim("n_H", 4 * n + 1, lambda: a.n_h)
    inst.claim("H_minus_head_is_paths", True, lambda: _cycles_through(a.h, "h", 5) == n)
    inst.claim("dim_H", n, _dim(a.h, budget))
    return inst


def _cycles_through(g: Graph, head: str, length: int) -> int:
    """Number of blocks when ``g`` is a bouquet of equal cycles at ``head``, else -1."""
    rest = Graph([v for v in g.vertices if v != head], [e for e in g.edges if head not in e])
    from .graph import components

    comps = components(rest)
    for comp in comps:
        sub_deg = [sum(1 for w in g.neighbors(v) if w != head) for v in comp]
        touching = [v for v in comp if g.has_edge(v, head)]
        if len(comp) != length - 1 or sorted(sub_deg) != [1, 1] + [2] * (length - 3) or len(touching) != 2:
            return -1
    if g.degree(head) != 2 * len(comps):
        return -1
    return len(comps)


def build_wheel_prism(n: int, budget: Budget = Budget()) -> NamedInstance:
    """Wheel W_{1,n} and prism C_n x K_2 glued along the n-cycle."""
    if n < 4:
        raise BadParameter("wheel-prism needs n >= 4")
    j = cycle(n, "u")
    a = amalgamate_maps(j, [
        (wheel(1, n), {f"u{k}": f"u{k}" for k in range(1, n + 1)}),
        (prism(n), {f"u{k}": f"o{k}" for k in range(1, n + 1)}),
    ])
    inst = NamedInstance("prismas", {"n": n}, amalgam=a)
    q = _ceil_div(n, 4)
    inst.claim("n_H", 1 + 2 * n, lambda: a.n_h)
    inst.claim("traversal_1", 0, lambda: len(min_traversal(a, "1", budget)))
    inst.claim("traversal_2", 0, lambda: len(min_traversal(a, "2", budget)))
    inst.claim("out_solving", q, lambda: len(min_out_solving(a, budget)))
    inst.claim("dim_H", q, _dim(a.h, budget))
    inst.claim("lower_equals_exact", True, lambda: _lower_equals_exact(a, budget))
    return inst


def _lower_equals_exact(a: Amalgam, budget: Budget) -> bool:
    r = bound_report(a, compute_exact=True, budget=budget)
    return r.lower == r.exact


def watermelon_block() -> Graph:
    """C_17 on u1..u17 plus v, with chords u1u9, u5u14 and edges vu5, vu14."""
    c = cycle(17, "u")
    return Graph(list(c.vertices) + ["v"], list(c.edges) + [("u1", "u9"), ("u5", "u14"), ("v", "u5"), ("v", "u14")])


def build_watermelon(n: int, budget: Budget = Budget()) -> NamedInstance:
    if n < 4:
        raise BadParameter("watermelon needs n >= 4")
    q = watermelon_block()
    inner_j = Graph(["a", "b", "c"], [("a", "b")])
    g1 = amalgamate_maps(inner_j, [(q, {"a": "u1", "b": "u9", "c": "v"})] * n).h
    g2 = Graph(["v0", "w1", "w2", "w3"], [("w1", "w2"), ("w2", "w3"), ("v0", "w1"), ("v0", "w2"), ("v0", "w3")])
    j = Graph(["b", "c"])
    a = amalgamate_maps(j, [(g1, {"b": "b", "c": "c"}), (g2, {"b": "w1", "c": "w3"})])
    inst = NamedInstance("watermelon", {"n": n}, amalgam=a)
    h = a.h
    inst.claim("order_Q", 18, lambda: q.order)
    inst.claim("size_Q", 21, lambda: q.size)
    inst.claim("n_H", 15 * n + 5, lambda: a.n_h)
    inst.claim("ab_resolves_G1", True, _is_lms(g1, ["a", "b"]))
    inst.claim("dim_G1", 2, _dim(g1, budget))
    inst.claim("v0w2_resolves_G2", True, _is_lms(g2, ["v0", "w2"]))
    inst.claim("dim_G2", 2, _dim(g2, budget))
    for i in range(1, n + 1):
        u5, u14 = f"p1.p{i}.u5", f"p1.p{i}.u14"
        inst.claim(f"d(a,u5^{i})", 4, lambda u5=u5: h.dist("p1.a", u5))
        inst.claim(f"d(a,u14^{i})", 4, lambda u14=u14: h.dist("p1.a", u14))
        inst.claim(f"d(b,u5^{i})", 3, lambda u5=u5: h.dist("b", u5))
        inst.claim(f"d(c,u5^{i})", 1, lambda u5=u5: h.dist("c", u5))
        inst.claim(f"d(v0,u5^{i})", 2, lambda u5=u5: h.dist("p2.v0", u5))
        inst.claim(f"d(w2,u5^{i})", 2, lambda u5=u5: h.dist("p2.w2", u5))
    inst.claim("dim_H", n + 1, _dim(h, budget))
    return inst


def build_crude_tight(m_list: tuple[int, ...], r: int, budget: Budget = Budget()) -> NamedInstance:
    """Complete graphs K_{m_i} glued along a common K_r."""
    m_list = tuple(m_list)
    if r < 1 or len(m_list) < 1 or any(m <= r for m in m_list):
        raise BadParameter("crude-tight needs every m_i > r >= 1")
    j = complete(r, "j")
    a = amalgamate_maps(j, [(complete(m, "u"), {f"j{k}": f"u{k}" for k in range(1, r + 1)}) for m in m_list])
    n = len(m_list)
    formula = sum(m_list) - (r + 1) * (n - 1) - 2
    inst = NamedInstance("crude-tight", {"m": m_list, "r": r}, amalgam=a)
    inst.claim("n_H_minus_n_plus_1", formula, lambda: a.n_h - (n + 1))
    inst.claim("dim_H", formula, _dim(a.h, budget))
    inst.claim("crude_certified", True, lambda: bound_report(a, budget=budget).certified.get("upper_crude"))
    return inst


def build_fan_chain(m: int, n: int, variant: str = "sum", budget: Budget = Budget()) -> NamedInstance:
    """Copies of a fan glued along its path (``sum``) or along spaced path vertices (``dim2``).

    ``sum``: n copies of v0 + P_m over J = P_m.
    ``dim2``: n copies of v0 + P_{4m+1} over J = m isolated vertices placed
    at u3, u7, ..., u_{4m-1}.
    """
    if n < 2:
        raise BadParameter("fan chain needs n >= 2 parts")
    if variant == "sum":
        if m < 2:
            raise BadParameter("fan chain (sum) needs m >= 2")
        g = hub_fan(m)
        j = path(m, "u")
        a = amalgamate_maps(j, [(g, {v: v for v in j.vertices})] * n)
        inst = NamedInstance("fan-chain-sum", {"m": m, "n": n}, amalgam=a)
        q = _ceil_div(m - 1, 4)
        inst.claim("dim_G", q, _dim(g, budget))
        inst.claim("traversals", 0, lambda: sum(len(min_traversal(a, p, budget)) for p in a.part_ids))
        inst.claim("dim_H", q, _dim(a.h, budget))
        inst.claim("lower", q, lambda: bound_report(a, budget=budget).lower)
        return inst
    if variant != "dim2":
        raise BadParameter(f"unknown fan chain variant {variant!r}")
    if m < 2:
        raise BadParameter("fan chain (dim2) needs m >= 2")
    r = 4 * m + 1
    g = hub_fan(r)
    j = empty(m, "x")
    mapping = {f"x{k + 1}": f"u{4 * k + 3}" for k in range(m)}
    a = amalgamate_maps(j, [(g, mapping)] * n)
    inst = NamedInstance("fan-chain-dim2", {"m": m, "n": n}, amalgam=a)
    hubs = [f"p{p}.v0" for p in a.part_ids]
    stated = tuple(sorted(
        edge_key("v0", f"u{4 * k + d}") for k in range(m) for d in (2, 4)
    ))
    inst.claim("J_is_basis_of_G", True, _is_lms(g, sorted(mapping.values())))
    inst.claim("dim_G", m, _dim(g, budget))
    inst.claim("parallel_edges", stated, lambda: parallel_edges(g, mapping), kind="flag",
               note="the hub is adjacent to every path vertex, so no hub edge is equidistant from two spaced J-vertices")
    inst.claim("hubs_resolve_H", True, _is_lms(a.h, hubs))
    inst.claim("dim_H", n, _dim(a.h, budget))
    return inst


def build_chi_construction(j: Graph, m: int, budget: Budget = Budget()) -> NamedInstance:
    """A graph G containing J as an induced subgraph with dim(G) = m and a basis avoiding J.

    Edgeless J: G = J + K_1 (m = 1) or J + P_{4m+1} with basis u3, u7, ...
    Otherwise: m new edges x_i y_i; both ends are joined to every J-vertex
    whose colour class index is congruent to i (mod chi), and through
    private length-2 paths to every other J-vertex.
    """
    chi, classes = chromatic_number(j)
    if m < chi or m < 1:
        raise BadParameter(f"need m >= chi(J) = {chi}")
    jv = list(j.vertices)
    used = set(jv)
    params = {"J": j, "m": m}
    if chi == 1:
        if m == 1:
            g = join(j, Graph(["z"]), prefix=False)
            basis = ("z",)
            x_edges: tuple = ()
        else:
            p = path(4 * m + 1, "z")
            g = join(j, p, prefix=False)
            basis = tuple(sorted(f"z{4 * i - 1}" for i in range(1, m + 1)))
            x_edges = ()
        if used & (set(g.vertices) - used) != set():
            raise BadParameter("J vertex names clash with construction names")
    else:
        cls_of = {v: k for k, cls in enumerate(classes, 1) for v in cls}
        vs = list(jv)
        edges = list(j.edges)
        for i in range(1, m + 1):
            x, y = f"x{i}", f"y{i}"
            vs += [x, y]
            edges.append((x, y))
            for u in jv:
                if (i - cls_of[u]) % chi == 0:
                    edges += [(x, u), (y, u)]
                else:
                    px, py = f"s{i}.{u}.x", f"s{i}.{u}.y"
                    vs += [px, py]
                    edges += [(x, px), (px, u), (y, py), (py, u)]
        if len(set(vs)) != len(vs):
            raise BadParameter("J vertex names clash with construction names")
        g = Graph(vs, edges)
        basis = tuple(sorted(f"x{i}" for i in range(1, m + 1)))
        x_edges = tuple(sorted(edge_key(f"x{i}", f"y{i}") for i in range(1, m + 1)))
    ident = {v: v for v in jv}
    inst = NamedInstance("chi-construction", params, graph=g)
    inst.claim("J_induced", True, lambda: check_embedding(j, g, ident)[0])
    inst.claim("basis_resolves", True, _is_lms(g, basis))
    inst.claim("dim_G", m, _dim(g, budget))
    inst.claim("basis_avoiding_J", True, lambda: any(not set(b) & set(jv) for b in enumerate_minimum_bases(g, budget=budget)[0]))
    if chi > 1:
        inst.claim("parallel_edges", x_edges, lambda: parallel_edges(g, ident))
        # two copies over J, so traversals are measured in an amalgam
        doubled = amalgamate_maps(j, [(g, ident)] * 2)
        inst.claim("traversal_size", m, lambda: len(min_traversal(doubled, "1", budget)))
        inst.claim("x_is_traversal", True, lambda: _is_traversal(doubled, "1", _hnames(doubled, "1", basis)))
    return inst


def _is_traversal(a: Amalgam, pid, t) -> bool:
    h = a.h
    rows = [h.index(x) for x in t]
    for u, v in _hedges(a, pid, parallel_edges(*a.part(pid))):
        i, k = h.index(u), h.index(v)
        if not any(h.dmatrix[r, i] != h.dmatrix[r, k] for r in rows):
            return False
    return True


def build_subdivided_join_extension(j: Graph, r: int) -> Graph:
    """J + K_r with every join edge replaced by a path of length diam(J).

    Added vertices: ``k1..kr`` and internal path vertices ``k<a>~<u>.<t>``.
    """
    if r < 1:
        raise BadParameter("r must be >= 1")
    if not is_connected(j):
        raise Disconnected("J must be connected")
    d = diameter(j)
    ks = [f"k{a}" for a in range(1, r + 1)]
    vs = list(j.vertices) + ks
    edges = list(j.edges) + [(ks[a], ks[b]) for a in range(r) for b in range(a + 1, r)]
    for k in ks:
        for u in j.vertices:
            chain = [k] + [f"{k}~{u}.{t}" for t in range(1, d)] + [u]
            vs += chain[1:-1]
            edges += list(zip(chain, chain[1:]))
    if len(set(vs)) != len(vs):
        raise BadParameter("J vertex names clash with construction names")
    return Graph(vs, edges)


def subdivided_join_instance(j: Graph, r: int) -> NamedInstance:
    a = build_subdivided_join_extension(j, r)
    ident = {v: v for v in j.vertices}
    kr = tuple(sorted(edge_key(f"k{x}", f"k{y}") for x in range(1, r + 1) for y in range(x + 1, r + 1)))
    inst = NamedInstance("subdivided-join", {"J": j, "r": r}, graph=a)
    inst.claim("J_isometric_in_A", True, lambda: is_isometrically_embedded(j, a, ident))
    inst.claim("parallel_edges", kr, lambda: parallel_edges(a, ident))
    return inst


def build_join_kbar(j: Graph, m_list: tuple[int, ...], budget: Budget = Budget()) -> NamedInstance:
    """Parts J + (m_i isolated vertices ``k1..``) glued along J."""
    m_list = tuple(m_list)
    if not m_list or any(m < 1 for m in m_list):
        raise BadParameter("every m_i must be >= 1")
    if any(v.startswith("k") for v in j.vertices):
        raise BadParameter("J vertex names must not start with 'k'")
    ident = {v: v for v in j.vertices}
    a = amalgamate_maps(j, [(join(j, empty(m, "k"), prefix=False), ident) for m in m_list])
    cone = join(j, Graph(["k1"]), prefix=False)
    inst = NamedInstance("join-kbar", {"J": j, "m": m_list}, amalgam=a)
    inst.claim("parallel_empty", True, lambda: all(not parallel_edges(*a.part(p)) for p in a.part_ids))
    inst.claim("dim_H_equals_dim_cone", _dim(cone, budget), _dim(a.h, budget))
    return inst


def build_cota_sup_tight(budget: Budget = Budget()) -> NamedInstance:
    """Two copies of (v0 + P6 glued to C4 at v0) glued along the C4."""
    inner = Graph(["o"])
    g = amalgamate_maps(inner, [(hub_fan(6), {"o": "v0"}), (cycle(4, "c"), {"o": "c1"})]).h
    # g: shared "o" (hub = c1), fan path p1.u1..p1.u6, cycle p2.c2..p2.c4
    j = cycle(4, "c")
    m = {"c1": "o", "c2": "p2.c2", "c3": "p2.c3", "c4": "p2.c4"}
    a = amalgamate_maps(j, [(g, m), (g, m)])
    inst = NamedInstance("cota-sup-tight", {}, amalgam=a)
    inst.claim("order_G", 10, lambda: g.order)
    inst.claim("dim_G", 2, _dim(g, budget))
    inst.claim("isometric", True, lambda: is_isometric_family(a)[0])
    inst.claim("dim_H", 4, _dim(a.h, budget))
    return inst


def build_cota_sup_second(m: int, budget: Budget = Budget()) -> NamedInstance:
    """K_m and C_{2m+1} glued along an edge (the complete graph's order taken equal to m)."""
    if m < 4:
        raise BadParameter("needs m >= 4")
    j = complete(2, "e")
    a = amalgamate_maps(j, [
        (complete(m, "u"), {"e1": "u1", "e2": "u2"}),
        (cycle(2 * m + 1, "v"), {"e1": "v1", "e2": "v2"}),
    ])
    inst = NamedInstance("cota-sup-second", {"m": m}, amalgam=a)
    note = "stated with two different orders for the complete part; built with both equal to m"
    inst.claim("traversal_1", m - 3, lambda: len(min_traversal(a, "1", budget)), kind="flag", note=note)
    inst.claim("traversal_2", 0, lambda: len(min_traversal(a, "2", budget)), kind="flag", note=note)
    inst.claim("dim_H", m - 1, _dim(a.h, budget), kind="flag", note=note)
    inst.claim("sum_dims", m + 1, lambda: _dim(a.graph("1"), budget)() + _dim(a.graph("2"), budget)(), kind="flag", note=note)
    return inst


def build_inferior_tight(f_list: tuple[Graph, ...], j: Graph, budget: Budget = Budget()) -> NamedInstance:
    """Parts F_i + J glued along J."""
    for f in f_list:
        if set(f.vertices) & set(j.vertices):
            raise BadParameter("F_i and J must use disjoint names")
    ident = {v: v for v in j.vertices}
    a = amalgamate_maps(j, [(join(f, j, prefix=False), ident) for f in f_list])
    inst = NamedInstance("inferior-tight", {"F": tuple(f_list), "J": j}, amalgam=a)
    note = "reads the undefined M_i in the tightness argument as F_i"

    def formula() -> int:
        total = 0
        for f in f_list:
            cone = join(Graph(["c0"]), f, prefix=False)
            k = local_metric_dimension(cone, budget).size
            total += k - int(any("c0" in b for b in enumerate_minimum_bases(cone, budget=budget)[0]))
        cone = join(Graph(["c0"]), j, prefix=False)
        k = local_metric_dimension(cone, budget).size
        total += k - int(any("c0" in b for b in enumerate_minimum_bases(cone, budget=budget)[0]))
        return total

    inst.claim("dim_H_formula", formula, _dim(a.h, budget), kind="flag", note=note)
    inst.claim("lower_equals_exact", True, lambda: _lower_equals_exact(a, budget), kind="flag", note=note)
    return inst


def build_odd_paths(m_list: tuple[int, ...], budget: Budget = Budget()) -> NamedInstance:
    """Odd paths glued at their two ends over two isolated vertices."""
    m_list = tuple(m_list)
    if any(m < 3 or m % 2 == 0 for m in m_list) or len(m_list) < 2:
        raise BadParameter("needs at least two odd lengths >= 3")
    j = empty(2, "x")
    a = amalgamate_maps(j, [(path(m, "u"), {"x1": "u1", "x2": f"u{m}"}) for m in m_list])
    inst = NamedInstance("odd-paths", {"m": m_list}, amalgam=a)
    inst.claim("crude_value", 1 + sum(m - 3 for m in m_list), lambda: a.n_h - (a.n + 1))
    inst.claim("H_bipartite", True, lambda: bool(is_bipartite(a.h)))
    inst.claim("dim_H", 1, _dim(a.h, budget))
    return inst


def k5_variant() -> Graph:
    return Graph([f"u{i}" for i in range(1, 6)],
                 [e for e in complete(5, "u").edges if e not in {("u1", "u3"), ("u1", "u4")}])


def build_k5_variant_pair(which: str, budget: Budget = Budget()) -> NamedInstance:
    g = k5_variant()
    if which == "out_come":
        j = Graph(["u3", "u4"], [("u3", "u4")])
        a = amalgamate_maps(j, [(g, {"u3": "u3", "u4": "u4"})] * 2)
        inst = NamedInstance("k5-variant-out-come", {}, amalgam=a)
        inst.claim("parallel_1", (("u2", "u5"),), lambda: parallel_edges(g, {"u3": "u3", "u4": "u4"}))
        inst.claim("out_solving", ("u3",), lambda: min_out_solving(a, budget))
        inst.claim("cotraversal", ("u3",), lambda: min_cotraversal(a, _traversals(a, budget), budget))
        inst.claim("dim_H", 3, _dim(a.h, budget))
        inst.claim("lower", 3, lambda: bound_report(a, budget=budget).lower)
        return inst
    if which != "covers":
        raise BadParameter(f"unknown variant {which!r}")
    j = Graph(["u4", "u5"], [("u4", "u5")])
    c5 = cycle(5, "v")
    a = amalgamate_maps(j, [(g, {"u4": "u4", "u5": "u5"}), (c5, {"u4": "v3", "u5": "v4"})])
    inst = NamedInstance("k5-variant-covers", {}, amalgam=a)
    e1, e2 = a.embedding("1"), a.embedding("2")
    inst.claim("parallel_1", (("u2", "u3"),), lambda: parallel_edges(g, e1))
    inst.claim("parallel_2", (), lambda: parallel_edges(c5, e2))
    inst.claim("traversal_1", ("p1.u1",), lambda: min_traversal(a, "1", budget))
    inst.claim("out_solving", ("p1.u1",), lambda: min_out_solving(a, budget))
    inst.claim("solvable_1", tuple(e for e in g.edges if e not in {("u1", "u2"), ("u2", "u3"), ("u4", "u5")}),
               lambda: solvable_edges(g, e1))
    inst.claim("solvable_2", tuple(e for e in c5.edges if e != ("v3", "v4")), lambda: solvable_edges(c5, e2))
    inst.claim("VJ_projective", True, lambda: is_projective(a.shared, a, _traversals(a, budget)))
    inst.claim("cover_2_v1", SELF_RESOLVING, lambda: classify_cover(a.shared, a, "2", ["p2.v1"]).classification)
    inst.claim("min_cover_2", ("p2.v1",), lambda: min_cover(a.shared, a, "2", budget=budget).vertices)
    inst.claim("m_set_2", ("p2.v1",), lambda: m_set(a, "2").vertices)
    inst.claim("m_set_2_class", SELF_RESOLVING, lambda: m_set(a, "2").cover.classification)
    inst.claim("cover_1_empty", COMPLETE, lambda: classify_cover(a.shared, a, "1", ()).classification, kind="flag",
               note="u1u2 lies in G_1 - J_1 but is neither parallel nor solvable, and the empty set covers no vertex of C")
    inst.claim("basis_u1_v1", True, _is_lms(a.h, ["p1.u1", "p2.v1"]))
    inst.claim("dim_H", 2, _dim(a.h, budget))
    return inst


def _traversals(a: Amalgam, budget: Budget) -> dict[str, tuple[str, ...]]:
    return {p: min_traversal(a, p, budget) for p in a.part_ids}


def build_disjoint_bases(budget: Budget = Budget()) -> NamedInstance:
    """K_4 plus v (on u1,u2) and w (on u2,u3); two copies glued along the K_4."""
    g = Graph(["u1", "u2", "u3", "u4", "v", "w"],
              list(complete(4, "u").edges) + [("v", "u1"), ("v", "u2"), ("w", "u2"), ("w", "u3")])
    j = complete(4, "u")
    ident = {v: v for v in j.vertices}
    a = amalgamate_maps(j, [(g, ident), (g, ident)])
    inst = NamedInstance("disjoint-bases-not-sufficient", {}, amalgam=a)
    inst.claim("bases_G", [("v", "w")], lambda: enumerate_minimum_bases(g, budget=budget)[0])
    inst.claim("bases_pairwise_disjoint", True, lambda: sum_dimension_conditions(a, budget=budget).bases_pairwise_disjoint)
    inst.claim("dim_H", 2, _dim(a.h, budget))
    return inst


def build_fan_pair(budget: Budget = Budget()) -> NamedInstance:
    """Two copies of v + P_9 glued along v + P_3 at opposite path ends: a copy of F_{1,15}."""
    g = hub_fan(9, "v")
    j = Graph(["v", "y1", "y2", "y3"], [("y1", "y2"), ("y2", "y3"), ("v", "y1"), ("v", "y2"), ("v", "y3")])
    a = amalgamate_maps(j, [
        (g, {"v": "v", "y1": "u7", "y2": "u8", "y3": "u9"}),
        (g, {"v": "v", "y1": "u1", "y2": "u2", "y3": "u3"}),
    ])
    inst = NamedInstance("fan-pair", {}, amalgam=a)
    inst.claim("H_is_F_1_15", True, lambda: _is_fan(a.h, "v", 15))
    inst.claim("bases_G", [("u3", "u7")], lambda: enumerate_minimum_bases(g, budget=budget)[0])
    inst.claim("dim_H", 4, _dim(a.h, budget))
    inst.claim("dim_equals_sum", True, lambda: sum_dimension_conditions(a, budget=budget).dim_equals_sum)
    inst.claim("all_bases_avoid_J", False, lambda: sum_dimension_conditions(a, budget=budget).all_bases_avoid_j)
    return inst


def _is_fan(g: Graph, hub: str, n: int) -> bool:
    if g.order != n + 1 or g.degree(hub) != n:
        return False
    rest = Graph([v for v in g.vertices if v != hub], [e for e in g.edges if hub not in e])
    degs = sorted(rest.degree(v) for v in rest.vertices)
    return is_connected(rest) and degs == [1, 1] + [2] * (n - 2)


# -- registry used by the verification command ---------------------------------


def named_instances(budget: Budget = Budget()) -> list[NamedInstance]:
    """Every named instance with its default parameters, in a fixed order."""
    out = [build_path_pair(budget)]
    out += [build_spider_amalgam(n, budget) for n in (2, 3, 4)]
    out += [build_wheel_prism(n, budget) for n in range(4, 13)]
    out.append(build_watermelon(4, budget))
    out += [build_crude_tight(m, r, budget) for m, r in (((4, 4), 2), ((5, 4), 2), ((4, 4, 4), 2), ((3, 3), 1))]
    out.append(build_odd_paths((3, 5, 7), budget))
    out.append(build_fan_chain(9, 3, "sum", budget))
    out += [build_fan_chain(2, n, "dim2", budget) for n in (2, 3)]
    out.append(build_cota_sup_tight(budget))
    out.append(build_cota_sup_second(6, budget))
    out.append(build_disjoint_bases(budget))
    out.append(build_fan_pair(budget))
    out += [build_chi_construction(jg, max(2, chromatic_number(jg)[0]), budget)
            for jg in (empty(3, "a"), cycle(5, "a"), complete(4, "a"))]
    out.append(build_chi_construction(empty(3, "a"), 1, budget))
    out += [build_k5_variant_pair("out_come", budget), build_k5_variant_pair("covers", budget)]
    out += [build_join_kbar(cycle(5, "a"), (2, 2), budget), build_join_kbar(complete(2, "a"), (1, 1), budget)]
    out += [subdivided_join_instance(path(3, "a"), 2), subdivided_join_instance(complete(2, "a"), 3)]
    out.append(build_inferior_tight((path(5, "f"), cycle(5, "g")), cycle(5, "a"), budget))
    for inst in out:
        if inst.amalgam is not None:
            inst.claim("lower_le_exact", True, lambda a=inst.amalgam: bound_report(a, True, budget).lower_le_exact)
    return out


def fan_formula_instances(budget: Budget = Budget()) -> list[NamedInstance]:
    out = []
    for m in range(6, 14):
        g = hub_fan(m)
        inst = NamedInstance("fan-formula", {"m": m}, graph=g)
        inst.claim("dim", _ceil_div(m - 1, 4), _dim(g, budget))
        out.append(inst)
    return out
