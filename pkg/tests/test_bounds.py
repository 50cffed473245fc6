import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from amalgadim.amalgam import amalgamate_maps, is_isometric_family
from amalgadim.audit import random_amalgam
from amalgadim.bounds import (
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
from amalgadim.constructions import (
    build_disjoint_bases,
    build_fan_chain,
    build_fan_pair,
    build_k5_variant_pair,
    build_wheel_prism,
    hub_fan,
    k5_variant,
)
from amalgadim.errors import NotBipartiteAfterDeletion, NotIsometric
from amalgadim.families import complete, cycle, empty, path, prism, wheel
from amalgadim.graph import Graph, is_bipartite
from amalgadim.localmetric import local_metric_dimension

from oracles import distances, min_sets, parallel, solvable

K2 = Graph(["a", "b"], [("a", "b")])


def two_k4():
    return amalgamate_maps(K2, [(complete(4), {"a": "u1", "b": "u2"})] * 2)


# -- brute force on H ----------------------------------------------------------


def _sep(d, s, u, v):
    return any(d[w][u] != d[w][v] for w in s)


def oracle_traversals(a):
    d = distances(a.h)
    out = {}
    for pid in a.part_ids:
        g, emb = a.part(pid)
        to_h = a.to_h(pid)
        par = [(to_h[u], to_h[v]) for u, v in parallel(g, emb.mapping.values())]
        out[pid] = min_sets(a.outside(pid), lambda s: all(_sep(d, s, u, v) for u, v in par))[0]
    return out


def oracle_out_solving(a):
    d = distances(a.h)
    return min_sets(a.h.vertices, lambda s: all(_sep(d, s, u, v) for u, v in a.j.edges))[0]


def oracle_cotraversal(a, traversals):
    d = distances(a.h)
    jedges = set(a.j.edges)
    need = []
    for pid in a.part_ids:
        to_h = a.to_h(pid)
        for u, v in a.graph(pid).edges:
            e = tuple(sorted((to_h[u], to_h[v])))
            if e not in jedges:
                need.append((pid, e))
    return min_sets(a.shared, lambda c: all(_sep(d, set(c) | set(traversals[p]), u, v) for p, (u, v) in need))[0]


# -- part-local sets ---------------------------------------------------------------


def test_parallel_examples():
    g = k5_variant()
    assert parallel_edges(g, {"a": "u3", "b": "u4"}) == (("u2", "u5"),)
    w = wheel(1, 6)
    rim = {f"r{i}": f"u{i}" for i in range(1, 7)}
    assert parallel_edges(w, rim) == ()


def test_solvable_examples():
    g = k5_variant()
    solv = set(solvable_edges(g, {"a": "u4", "b": "u5"}))
    assert solv == set(g.edges) - {("u1", "u2"), ("u2", "u3"), ("u4", "u5")}
    c5 = cycle(5, "v")
    assert set(solvable_edges(c5, {"a": "v3", "b": "v4"})) == set(c5.edges) - {("v3", "v4")}
    assert solvable_edges(c5, {f"x{i}": f"v{i}" for i in range(1, 6)}) == ()


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 10**6))
def test_parallel_and_solvable_match_oracle(seed):
    a, _ = random_amalgam(random.Random(seed), 12)
    for pid in a.part_ids:
        g, emb = a.part(pid)
        image = list(emb.mapping.values())
        par = set(parallel_edges(g, emb))
        solv = set(solvable_edges(g, emb))
        assert par == parallel(g, image)
        assert solv == solvable(g, image)
        assert not par & solv
        assert all(u not in image and v not in image for u, v in par)


# -- traversal, out-solving, co-traversal --------------------------------------


def test_traversal_examples():
    a = build_k5_variant_pair("out_come").amalgam
    assert min_traversal(a, "1") == ("p1.u2",)
    assert min_traversal(a, "2") == ("p2.u2",)
    w = build_wheel_prism(5).amalgam
    assert min_traversal(w, "1") == ()


def test_out_solving_examples():
    a = amalgamate_maps(empty(2, "x"), [(path(3), {"x1": "u1", "x2": "u3"})] * 2)
    assert min_out_solving(a) == ()
    assert len(min_out_solving(build_wheel_prism(8).amalgam)) == 2
    assert min_out_solving(build_k5_variant_pair("out_come").amalgam) == ("u3",)


def test_cotraversal_examples():
    a = build_k5_variant_pair("out_come").amalgam
    t = oracle_traversals(a)
    got = min_cotraversal(a, t)
    assert got == oracle_cotraversal(a, t)
    # every edge u3x of a part is undistinguished by u2 when x is u4's twin
    assert got == ("u3", "u4")
    k4 = two_k4()
    t = oracle_traversals(k4)
    assert t == {"1": ("p1.u3",), "2": ("p2.u3",)}
    assert min_cotraversal(k4, t) == oracle_cotraversal(k4, t) == ("a", "b")


def test_cotraversal_requires_isometric():
    a = amalgamate_maps(empty(2, "x"), [(path(3), {"x1": "u1", "x2": "u3"}), (path(4), {"x1": "u1", "x2": "u4"})])
    with pytest.raises(NotIsometric):
        min_cotraversal(a, {"1": (), "2": ()})


def test_vj_is_always_a_cotraversal():
    inst = build_fan_chain(9, 2, "dim2")
    a = inst.amalgam
    t = {p: min_traversal(a, p) for p in a.part_ids}
    d = distances(a.h)
    for pid in a.part_ids:
        to_h = a.to_h(pid)
        for u, v in a.graph(pid).edges:
            e = tuple(sorted((to_h[u], to_h[v])))
            if e not in set(a.j.edges):
                assert _sep(d, set(a.shared) | set(t[pid]), *e)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_minimum_sets_match_oracle(seed):
    a, _ = random_amalgam(random.Random(seed), 11)
    t = oracle_traversals(a)
    assert {p: min_traversal(a, p) for p in a.part_ids} == t
    assert min_out_solving(a) == oracle_out_solving(a)
    assert min_cotraversal(a, t) == oracle_cotraversal(a, t)


# -- projective co-traversals, covers and M-sets -----------------------------------


def test_projective_examples():
    a = build_k5_variant_pair("covers").amalgam
    t = {p: min_traversal(a, p) for p in a.part_ids}
    assert is_projective(a.shared, a, t)
    assert not is_projective((), a, t)
    # nothing solvable is left once every solvable edge is already distinguished
    k4 = two_k4()
    assert is_projective((), k4, {"1": ("p1.u3", "p1.u4"), "2": ("p2.u3", "p2.u4")})


def test_cover_examples():
    a = build_k5_variant_pair("covers").amalgam
    assert min_cover(a.shared, a, "2").vertices == ("p2.v1",)
    assert classify_cover(a.shared, a, "2", ["p2.v1"]).classification == SELF_RESOLVING
    empty_1 = classify_cover(a.shared, a, "1", ())
    assert not empty_1.is_cover and empty_1.classification is None
    assert classify_cover((), a, "2", ()).is_cover
    c = min_cover(a.shared, a, "1", COMPLETE)
    assert c.is_cover and c.classification in (COMPLETE, SELF_RESOLVING)


def test_empty_cover_classes():
    a = two_k4()
    cov = classify_cover((), a, "1", ())
    # the one edge of K_4 outside J is parallel, so nothing is left to resolve
    assert cov.is_cover and cov.classification == SELF_RESOLVING
    five = amalgamate_maps(K2, [(cycle(5), {"a": "u1", "b": "u2"})] * 2)
    assert classify_cover((), five, "1", ()).classification == COMPLETE


def test_m_set_examples():
    a = build_k5_variant_pair("covers").amalgam
    ms = m_set(a, "2")
    assert ms.vertices == ("p2.v1",) and ms.cover.classification == SELF_RESOLVING
    p = amalgamate_maps(Graph(["x"]), [(path(6), {"x": "u1"}), (path(2), {"x": "u1"})])
    assert m_set(p, "1").vertices == ("p1.u6",)
    f = hub_fan(9)
    j = path(9, "j")
    fa = amalgamate_maps(j, [(f, {f"j{k}": f"u{k}" for k in range(1, 10)})] * 2)
    assert m_set(fa, "1").vertices == ("p1.v0",)
    with pytest.raises(NotBipartiteAfterDeletion):
        m_set(amalgamate_maps(Graph(["x"]), [(cycle(5), {"x": "u1"})] * 2), "1")


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_m_set_is_self_resolving_cover(seed):
    a, _ = random_amalgam(random.Random(seed), 12)
    for pid in a.part_ids:
        try:
            ms = m_set(a, pid)
        except NotBipartiteAfterDeletion:
            continue
        assert ms.cover.is_cover
        assert ms.cover.classification == SELF_RESOLVING


# -- the assembled report ----------------------------------------------------------


def test_report_prisms():
    r = bound_report(build_wheel_prism(8).amalgam, compute_exact=True)
    assert [p.traversal for p in r.parts] == [(), ()]
    assert r.lower == 2 and r.exact == 2
    assert r.upper_iso is None and r.upper_cotraversal is None
    assert dict(r.records())["upper_iso"] == "na"


def test_report_two_k4():
    r = bound_report(two_k4(), compute_exact=True)
    assert r.upper_crude == 3 and r.exact == 3
    assert r.certified["upper_crude"]
    assert r.lower <= r.exact


def test_report_fan_chain_nine():
    inst = build_fan_chain(9, 3, "sum")
    r = bound_report(inst.amalgam, compute_exact=True)
    assert r.lower == len(r.out_solving) and sum(len(p.traversal) for p in r.parts) == 0
    assert r.exact == 2


def test_report_records_are_stable():
    a = build_k5_variant_pair("covers").amalgam
    assert bound_report(a, True).records() == bound_report(a, True).records()


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 10**6))
def test_certified_bounds_hold(seed):
    a, _ = random_amalgam(random.Random(seed), 12)
    r = bound_report(a, compute_exact=True)
    assert r.isometric
    for key in ("upper_iso", "upper_cotraversal"):
        assert r.certified[key]
        assert r.exact <= getattr(r, key)
        assert len(r.witnesses[key]) <= getattr(r, key)
    assert r.certified["upper_iso.sum_dims"]
    assert r.certified["upper_iso.traversals_plus_J"]


# -- structural lemmas ---------------------------------------------------------------


def _small_instances():
    out = [two_k4(), build_wheel_prism(5).amalgam, build_fan_pair().amalgam,
           build_k5_variant_pair("covers").amalgam, build_k5_variant_pair("out_come").amalgam,
           build_fan_chain(9, 3, "sum").amalgam, build_disjoint_bases().amalgam]
    rng = random.Random(2024)
    while len(out) < 80:
        out.append(random_amalgam(rng, 14)[0])
    return [a for a in out if a.n_h <= 30]


def test_parallel_edges_are_separated_only_inside_their_part():
    for a in _small_instances():
        d = distances(a.h)
        for pid in a.part_ids:
            g, emb = a.part(pid)
            to_h = a.to_h(pid)
            inside = set(a.outside(pid))
            for u, v in parallel_edges(g, emb):
                hu, hv = to_h[u], to_h[v]
                for x in a.h.vertices:
                    if d[x][hu] != d[x][hv]:
                        assert x in inside


def test_union_of_traversals_splits_by_part():
    rng = random.Random(8)
    for a in _small_instances():
        d = distances(a.h)
        par = {pid: [(a.to_h(pid)[u], a.to_h(pid)[v]) for u, v in parallel_edges(*a.part(pid))] for pid in a.part_ids}
        allpar = [e for es in par.values() for e in es]
        for _ in range(10):
            t = {x for x in a.h.vertices if rng.random() < 0.3}
            whole = all(_sep(d, t, u, v) for u, v in allpar)
            each = all(all(_sep(d, t & set(a.to_h(p).values()), u, v) for u, v in par[p]) for p in a.part_ids)
            assert whole == each


def test_projection_lemma():
    for a in _small_instances():
        if not is_isometric_family(a)[0]:
            continue
        d = distances(a.h)
        for pid in a.part_ids:
            g, emb = a.part(pid)
            to_h = a.to_h(pid)
            for u, v in solvable_edges(g, emb):
                hu, hv = to_h[u], to_h[v]
                dju, djv = (min(d[x][c] for c in a.shared) for x in (hu, hv))
                if dju > djv:
                    hu, hv, dju = hv, hu, djv
                for c in a.shared:
                    if d[hu][c] != dju:
                        continue
                    assert d[c][hu] != d[c][hv]
                    for other in a.part_ids:
                        if other == pid:
                            continue
                        for s in a.outside(other):
                            if d[s][c] == min(d[s][x] for x in a.shared):
                                assert d[s][hu] != d[s][hv]


def test_union_of_part_bases_resolves_h():
    for a in _small_instances():
        if not is_isometric_family(a)[0]:
            continue
        union = {a.to_h(p)[x] for p in a.part_ids for x in local_metric_dimension(a.graph(p)).witness}
        d = distances(a.h)
        assert all(_sep(d, union, u, v) for u, v in a.h.edges)


# -- sums of dimensions ----------------------------------------------------------------


def test_sum_conditions_examples():
    sc = sum_dimension_conditions(build_disjoint_bases().amalgam)
    assert sc.bases_pairwise_disjoint and not sc.dim_equals_sum
    assert (sc.dim_h, sc.sum_dims) == (2, 4)
    sc = sum_dimension_conditions(build_fan_pair().amalgam)
    assert sc.dim_equals_sum and not sc.all_bases_avoid_j and sc.dim_h == 4


def test_two_bipartite_parts_never_sum():
    rng = random.Random(4)
    seen = 0
    for _ in range(400):
        a, _ = random_amalgam(rng, 12)
        if not all(is_bipartite(g) for g, _ in a.parts):
            continue
        sc = sum_dimension_conditions(a)
        if sc.sum_dims > 1:
            seen += 1
            assert not sc.dim_equals_sum
    assert seen > 3


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_sum_condition_implications(seed):
    a, _ = random_amalgam(random.Random(seed), 11)
    sc = sum_dimension_conditions(a)
    if sc.all_bases_avoid_j:
        assert sc.dim_equals_sum
    if sc.dim_equals_sum:
        assert sc.bases_pairwise_disjoint


def test_bipartite_parts_do_not_change_dimension():
    base = [(cycle(5), {"a": "u1", "b": "u2"})]
    extras = [(path(2), {"a": "u1", "b": "u2"}), (cycle(4), {"a": "u1", "b": "u2"}), (prism(4), {"a": "i1", "b": "i2"}),
              (cycle(6), {"a": "u1", "b": "u2"})]
    d0 = local_metric_dimension(amalgamate_maps(K2, base).h).size
    for k in range(1, len(extras) + 1):
        for combo in itertools.combinations(extras, k):
            a = amalgamate_maps(K2, base + list(combo))
            assert is_isometric_family(a)[0]
            assert local_metric_dimension(a.h).size == d0
