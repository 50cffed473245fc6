import filecmp
import random

from amalgadim.amalgam import amalgamate_maps
from amalgadim.audit import (
    audit_instance,
    check_certificates,
    fuzz,
    random_amalgam,
    random_connected_graph,
)
from amalgadim.bounds import bound_report
from amalgadim.families import cycle, path
from amalgadim.formats import load_amalgam, read_graph
from amalgadim.graph import Graph, is_connected


def test_random_graphs_are_connected():
    rng = random.Random(1)
    for n in range(1, 15):
        g = random_connected_graph(rng, [f"v{i}" for i in range(n)], 0.2)
        assert g.order == n and is_connected(g)


def test_random_amalgams_are_isometric_and_capped():
    rng = random.Random(9)
    for _ in range(50):
        a, _ = random_amalgam(rng, 10)
        assert a.n_h <= 10 and 1 <= a.j.order <= 3


def test_fuzz_is_deterministic(tmp_path):
    a = fuzz(60, 12, 3, bundle_dir=tmp_path / "a")
    b = fuzz(60, 12, 3, bundle_dir=tmp_path / "b")
    assert a.records() == b.records()
    assert not a.invariant_violations
    for x, y in zip(a.bundles, b.bundles):
        names = sorted(p.name for p in (tmp_path / "a" / x.split("/")[-1]).iterdir())
        _, mismatch, errors = filecmp.cmpfiles(x, y, names, shallow=False)
        assert not mismatch and not errors


def test_bundles_reload(tmp_path):
    s = fuzz(120, 14, 7, bundle_dir=tmp_path)
    assert len(s.bundles) == len(set(s.lower_violations) | set(s.covers_violations))
    for d in s.bundles:
        a = load_amalgam(f"{d}/instance.amg")
        assert read_graph(f"{d}/H.gr") == a.h
        rec = dict(line.split("\t", 1) for line in open(f"{d}/report.tsv").read().splitlines())
        assert rec["n_H"] == str(a.n_h)


def test_lower_bound_audit_records_counterexamples(tmp_path):
    s = fuzz(300, 14, 7, bundle_dir=tmp_path)
    # the measured lower bound is not a theorem here; it is counted, never raised
    for k in s.lower_violations:
        assert f"{tmp_path}/instance{k:04d}" in s.bundles


def test_known_instances_audit_clean():
    k2 = Graph(["a", "b"], [("a", "b")])
    a = amalgamate_maps(k2, [(cycle(5), {"a": "u1", "b": "u2"}), (path(4), {"a": "u1", "b": "u2"})])
    res = audit_instance(a, random.Random(0))
    assert not res.violations and not res.lower_violation


def test_tampered_witness_is_caught():
    a, _ = random_amalgam(random.Random(12), 12)
    r = bound_report(a, compute_exact=True)
    r.witnesses["upper_iso"] = ()
    r.certified["upper_iso"] = True
    assert any(v.check.startswith("certificate") for v in check_certificates(a, r))
