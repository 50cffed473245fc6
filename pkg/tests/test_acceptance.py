"""Acceptance criteria, one test each.

Every test prints a single ``PASS criterion N: ...`` or ``FAIL criterion N: ...``
line (also repeated in the pytest summary) and then asserts it. Dimension
values are compared exactly; each criterion also has a wall-clock limit.
"""

import io
import math
import random
import time
from contextlib import redirect_stdout

import networkx as nx

from amalgadim.amalgam import amalgamate_maps, is_isometric_family
from amalgadim.audit import fuzz, random_amalgam
from amalgadim.bounds import (
    bound_report,
    m_set,
    min_cotraversal,
    min_out_solving,
    min_traversal,
    parallel_edges,
)
from amalgadim.cli import main
from amalgadim.constructions import (
    build_chi_construction,
    build_cota_sup_tight,
    build_crude_tight,
    build_fan_chain,
    build_k5_variant_pair,
    build_spider_amalgam,
    build_watermelon,
    build_wheel_prism,
    hub_fan,
    named_instances,
)
from amalgadim.families import complete, cycle, empty, path
from amalgadim.formats import write_graph
from amalgadim.graph import chromatic_number, is_bipartite
from amalgadim.localmetric import enumerate_minimum_bases, is_local_metric_set, local_metric_dimension

from oracles import distances, is_lms, local_dim, random_connected, to_nx

RESULTS: list[str] = []


def verdict(n: int, ok: bool, text: str, start: float, limit: float) -> None:
    elapsed = time.perf_counter() - start
    ok = ok and elapsed < limit
    line = f"{'PASS' if ok else 'FAIL'} criterion {n}: {text} [{elapsed:.2f}s < {limit:g}s]"
    print(line)
    RESULTS.append(line)
    assert ok, line


def test_criterion_01_path_pair_is_c5():
    t = time.perf_counter()
    a = amalgamate_maps(empty(2, "x"), [
        (path(3, "u"), {"x1": "u1", "x2": "u3"}),
        (path(4, "v"), {"x1": "v1", "x2": "v4"}),
    ])
    iso = nx.is_isomorphic(to_nx(a.h), nx.cycle_graph(5))
    k = local_metric_dimension(a.h).size
    verdict(1, iso and k == 2, f"H isomorphic to C_5: {iso}, dim_l(H) = {k} (want 2)", t, 1)


def test_criterion_02_spider_amalgam():
    t = time.perf_counter()
    got = {n: local_metric_dimension(build_spider_amalgam(n).amalgam.h).size for n in (2, 3, 4)}
    verdict(2, all(got[n] == n for n in got), f"dim_l(H) by n: {got} (want n)", t, 5)


def test_criterion_03_wheel_prism():
    t = time.perf_counter()
    bad = []
    for n in range(4, 13):
        a = build_wheel_prism(n).amalgam
        q = math.ceil(n / 4)
        r = bound_report(a, compute_exact=True)
        tsum = sum(len(p.traversal) for p in r.parts)
        if not (r.exact == q and tsum == 0 and len(r.out_solving) == q and r.lower == q == r.exact):
            bad.append(f"n={n}: exact={r.exact} lower={r.lower} ceil(n/4)={q}")
    verdict(3, not bad, "dim_l = ceil(n/4) = lower for n in 4..12" + (f"; mismatches {bad}" if bad else ""), t, 30)


def test_criterion_04_crude_tight():
    t = time.perf_counter()
    rows = []
    ok = True
    for m_list, r in (((4, 4), 2), ((5, 4), 2), ((4, 4, 4), 2)):
        a = build_crude_tight(m_list, r).amalgam
        brute = local_dim(a.h)
        fast = local_metric_dimension(a.h).size
        bound = a.n_h - (a.n + 1)
        ok &= brute == fast == bound
        rows.append(f"{m_list}/{r}: {brute}={bound}")
    verdict(4, ok, "brute-force dim = n_H - (n+1): " + ", ".join(rows), t, 10)


def test_criterion_05_watermelon():
    t = time.perf_counter()
    a = build_watermelon(4).amalgam
    d = distances(a.h)
    pinned = all((d["p1.a"][f"p1.p{i}.u5"], d["b"][f"p1.p{i}.u5"], d["c"][f"p1.p{i}.u5"]) == (4, 3, 1)
                 for i in range(1, 5))
    k = local_metric_dimension(a.h).size
    verdict(5, a.n_h == 65 and pinned and k == 5,
            f"n_H = {a.n_h}, distances (4,3,1) hold: {pinned}, dim_l(H) = {k} (want 5)", t, 300)


def test_criterion_06_fan_chain_hubs():
    t = time.perf_counter()
    rows = []
    ok = True
    for n in (2, 3):
        a = build_fan_chain(2, n, "dim2").amalgam
        hubs = [f"p{p}.v0" for p in a.part_ids]
        k = local_metric_dimension(a.h).size
        resolves = is_local_metric_set(a.h, hubs)[0] and is_lms(a.h, hubs)
        ok &= k == n and resolves
        rows.append(f"n={n}: dim={k}, hubs resolve={resolves}")
    verdict(6, ok, "; ".join(rows) + " (want dim = n)", t, 30)


def test_criterion_07_fan_chain_sum():
    t = time.perf_counter()
    a = build_fan_chain(9, 3, "sum").amalgam
    r = bound_report(a, compute_exact=True)
    verdict(7, r.exact == 2 == r.lower, f"dim_l(H) = {r.exact}, lower = {r.lower} (want 2 = 2)", t, 10)


def test_criterion_08_cota_sup_tight():
    t = time.perf_counter()
    a = build_cota_sup_tight().amalgam
    parts = [local_metric_dimension(a.graph(p)).size for p in a.part_ids]
    k = local_metric_dimension(a.h).size
    verdict(8, parts == [2, 2] and k == 4 and is_isometric_family(a)[0],
            f"dim_l(G_i) = {parts}, dim_l(H) = {k} (want [2, 2] and 4)", t, 30)


def test_criterion_09_k5_variant_cotraversal():
    t = time.perf_counter()
    a = build_k5_variant_pair("out_come").amalgam
    k = local_metric_dimension(a.h).size
    s = min_out_solving(a)
    c = min_cotraversal(a, {p: min_traversal(a, p) for p in a.part_ids})
    verdict(9, k == 3 and s == ("u3",) and c == ("u3",),
            f"dim = {k}, S = {set(s)}, C = {set(c)} (want 3, {{'u3'}}, {{'u3'}})", t, 1)


def test_criterion_10_covers_example():
    t = time.perf_counter()
    a = build_k5_variant_pair("covers").amalgam
    basis = ["p1.u1", "p2.v1"]
    lms = is_local_metric_set(a.h, basis)[0]
    k = local_metric_dimension(a.h).size
    ms = m_set(a, "2")
    verdict(10, lms and k == 2 and ms.vertices == ("p2.v1",) and ms.cover.classification == "self_resolving",
            f"{{u1, v1}} resolves H: {lms}, dim = {k}, M_2 = {set(ms.vertices)} ({ms.cover.classification})", t, 1)


def test_criterion_11_fan_formula():
    t = time.perf_counter()
    got = {m: local_metric_dimension(hub_fan(m)).size for m in range(6, 14)}
    want = {m: math.ceil((m - 1) / 4) for m in got}
    verdict(11, got == want, f"dim_l(F_1,m) for m = 6..13: {list(got.values())} (want {list(want.values())})", t, 10)


def test_criterion_12_chi_construction():
    t = time.perf_counter()
    rows = []
    ok = True
    for name, j in (("K3bar", empty(3, "a")), ("C5", cycle(5, "a")), ("K4", complete(4, "a"))):
        m = max(2, chromatic_number(j)[0])
        g = build_chi_construction(j, m).graph
        k = local_metric_dimension(g).size
        bases, _ = enumerate_minimum_bases(g)
        avoid = any(not set(b) & set(j.vertices) for b in bases)
        ok &= k == m and avoid
        rows.append(f"{name}: m={m} dim={k} basis avoiding J={avoid}")
    verdict(12, ok, "; ".join(rows), t, 60)


def _random_graphs(count: int = 300, seed: int = 13):
    rng = random.Random(seed)
    return [random_connected(rng, rng.randint(2, 10), rng.choice([0.05, 0.2, 0.4, 0.7, 1.0])) for _ in range(count)]


def test_criterion_13_oracle_properties():
    t = time.perf_counter()
    graphs = _random_graphs()
    mismatch = bip = comp = 0
    for g in graphs:
        k = local_metric_dimension(g).size
        if k != local_dim(g):
            mismatch += 1
        if (k == 1) != bool(is_bipartite(g)):
            bip += 1
        if (k == g.order - 1) != (g.size == g.order * (g.order - 1) // 2):
            comp += 1
    verdict(13, mismatch == bip == comp == 0,
            f"{len(graphs)} graphs: {mismatch} dimension mismatches, {bip} bipartite and {comp} complete "
            "characterization failures", t, 120)


def _sep(d, s, u, v):
    return any(d[w][u] != d[w][v] for w in s)


def test_criterion_14_amalgam_properties(tmp_path):
    t = time.perf_counter()
    rng = random.Random(14)
    locality = union = 0
    bad_witness: dict[str, int] = {}
    for _ in range(200):
        a, _ = random_amalgam(rng, 14)
        d = distances(a.h)
        for pid in a.part_ids:
            g, emb = a.part(pid)
            to_h = a.to_h(pid)
            inside = set(a.outside(pid))
            for u, v in parallel_edges(g, emb):
                if any(d[x][to_h[u]] != d[x][to_h[v]] and x not in inside for x in a.h.vertices):
                    locality += 1
        bases = set()
        for pid in a.part_ids:
            bases |= {a.to_h(pid)[x] for x in local_metric_dimension(a.graph(pid)).witness}
        if not all(_sep(d, bases, u, v) for u, v in a.h.edges):
            union += 1
        r = bound_report(a)
        for key in ("upper_iso", "upper_cotraversal", "upper_covers"):
            if key in r.witnesses and not is_lms(a.h, r.witnesses[key], d):
                bad_witness[key] = bad_witness.get(key, 0) + 1
    named = [i for i in named_instances() if i.amalgam is not None]
    lower_named = [i.label for i in named if bound_report(i.amalgam, compute_exact=True).audit_violation]
    summary = fuzz(200, 14, 14, bundle_dir=tmp_path)
    ok = not (locality or union or bad_witness or lower_named or summary.invariant_violations)
    verdict(14, ok,
            f"200 amalgams: {locality} locality and {union} basis-union failures, failing witnesses {bad_witness}; "
            f"named instances with lower > exact: {lower_named}; fuzz: {len(summary.invariant_violations)} "
            f"invariant violations, {len(summary.lower_violations)} lower-bound findings bundled", t, 300)


def _cli(argv):
    buf = io.StringIO()
    with redirect_stdout(buf):
        code = main(argv)
    return code, buf.getvalue()


def test_criterion_15_thread_determinism(tmp_path):
    t = time.perf_counter()
    for k, g in enumerate(_random_graphs(40)):
        write_graph(g, tmp_path / f"g{k:03d}.gr")
    _cli(["gen", "watermelon", "4", "-o", str(tmp_path / "w4.amg")])
    _cli(["gen", "prismas", "8", "-o", str(tmp_path / "w8.amg")])
    runs = {}
    for threads in ("1", "4"):
        out = [_cli(["verify-paper", "--threads", threads])]
        out += [_cli(["bounds", str(tmp_path / f), "--exact", "--threads", threads]) for f in ("w4.amg", "w8.amg")]
        out += [_cli(["dim", str(p), "--threads", threads]) for p in sorted(tmp_path.glob("g*.gr"))]
        out.append(_cli(["fuzz", "200", "14", "--seed", "14", "--threads", threads, "-o", str(tmp_path / "bundles")]))
        runs[threads] = out
    same = runs["1"] == runs["4"]
    verdict(15, same, f"{len(runs['1'])} command outputs byte-identical for --threads 1 and 4: {same}", t, 600)
