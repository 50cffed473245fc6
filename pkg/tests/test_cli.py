import subprocess
import sys

import pytest

from amalgadim.cli import main
from amalgadim.families import complete, path
from amalgadim.formats import read_graph, write_graph
from amalgadim.graph import Graph


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def records(text, sep="="):
    return dict(line.split(sep, 1) for line in text.splitlines() if sep in line)


@pytest.fixture
def k5(tmp_path):
    p = tmp_path / "k5.gr"
    write_graph(complete(5), p)
    return str(p)


def test_dim(capsys, k5, tmp_path):
    code, out = run(capsys, "dim", k5)
    assert code == 0 and records(out)["dim_l"] == "4"
    write_graph(path(7), tmp_path / "p7.gr")
    code, out = run(capsys, "dim", str(tmp_path / "p7.gr"))
    assert records(out)["dim_l"] == "1" and records(out)["basis"] == "u1"


def test_dim_tsv(capsys, k5):
    code, out = run(capsys, "dim", k5, "--format", "tsv")
    assert out.splitlines()[2] == "dim_l\t4"


def test_dim_exit_codes(capsys, tmp_path):
    bad = tmp_path / "bad.gr"
    bad.write_text("v a\nq a\n")
    code, out = run(capsys, "dim", str(bad))
    assert code == 2 and "bad.gr:2" in out
    split = tmp_path / "split.gr"
    write_graph(Graph(["a", "b"]), split)
    assert run(capsys, "dim", str(split))[0] == 3
    big = tmp_path / "big.gr"
    write_graph(complete(9), big)
    code, out = run(capsys, "dim", str(big), "--nodes", "1")
    assert code == 4 and records(out)["dim_l"] == "timeout"


def test_env_override(capsys, k5, monkeypatch):
    monkeypatch.setenv("AMALGADIM_FORMAT", "tsv")
    code, out = run(capsys, "dim", k5)
    assert "dim_l\t4" in out
    code, out = run(capsys, "dim", k5, "--format", "text")
    assert "dim_l=4" in out


def test_gen_and_amalgamate(capsys, tmp_path):
    code, out = run(capsys, "gen", "path-pair", "-o", str(tmp_path / "pp.amg"))
    assert code == 0
    code, out = run(capsys, "amalgamate", str(tmp_path / "pp.amg"))
    r = records(out)
    assert code == 0 and (r["n_H"], r["isometric"]) == ("5", "false")
    h_text = (tmp_path / "pp.H.gr").read_text()
    assert "# from 1.u2 as p1.u2" in h_text
    assert read_graph(tmp_path / "pp.H.gr").order == 5


def test_gen_family_to_stdout(capsys):
    code, out = run(capsys, "gen", "cycle", "4")
    assert code == 0 and out.count("\ne ") + out.startswith("e ") == 4
    code, out = run(capsys, "gen", "cycle", "x")
    assert code == 2


def test_amalgamate_bad_map(capsys, tmp_path):
    write_graph(Graph(["a"]), tmp_path / "j.gr")
    write_graph(path(3), tmp_path / "p.gr")
    (tmp_path / "x.amg").write_text("j j.gr\npart 1 p.gr\nmap 1 a nowhere\n")
    assert run(capsys, "amalgamate", str(tmp_path / "x.amg"))[0] == 5
    (tmp_path / "y.amg").write_text("j j.gr\npart 1 p.gr\nmap 1 a\n")
    assert run(capsys, "amalgamate", str(tmp_path / "y.amg"))[0] == 2


def test_bounds_prisms_and_non_isometric(capsys, tmp_path):
    run(capsys, "gen", "prismas", "8", "-o", str(tmp_path / "w8.amg"))
    code, out = run(capsys, "bounds", str(tmp_path / "w8.amg"), "--exact")
    r = records(out)
    assert code == 0 and (r["lower"], r["exact"], r["lower_le_exact"]) == ("2", "2", "true")
    assert r["upper_iso"] == "na"
    for key in ("lower", "upper_crude", "upper_iso", "upper_cotraversal", "upper_covers", "exact"):
        assert key in r


def test_watermelon_end_to_end(capsys, tmp_path):
    run(capsys, "gen", "watermelon", "4", "-o", str(tmp_path / "w4.amg"))
    code, out = run(capsys, "bounds", str(tmp_path / "w4.amg"), "--exact")
    assert code == 0 and records(out)["exact"] == "5"


def test_verify_filter(capsys):
    code, out = run(capsys, "verify-paper", "--filter", "crude")
    assert code == 0
    assert records(out)["fail"] == "0"
    assert all(line.startswith("PASS ") for line in out.splitlines() if "crude-tight" in line)
    code, out = run(capsys, "verify-paper", "--filter", "prismas(n=4)")
    assert code == 1 and out.startswith("PASS prismas(n=4) n_H")


def test_fuzz_is_repeatable(capsys, tmp_path):
    a = run(capsys, "fuzz", "40", "12", "--seed", "7", "-o", str(tmp_path / "one"))
    b = run(capsys, "fuzz", "40", "12", "--seed", "7", "-o", str(tmp_path / "two"))
    assert a[0] == 0
    strip = lambda out: [l for l in out.splitlines() if "one" not in l and "two" not in l]  # noqa: E731
    assert strip(a[1]) == strip(b[1])


def test_usage_errors(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["dim"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit):
        main(["dim", "x.gr", "--threads", "0"])
    assert run(capsys, "gen", "nosuch")[0] == 2


def test_threads_do_not_change_output(capsys, tmp_path):
    run(capsys, "gen", "k5-covers", "-o", str(tmp_path / "k.amg"))
    one = run(capsys, "bounds", str(tmp_path / "k.amg"), "--exact", "--threads", "1")
    four = run(capsys, "bounds", str(tmp_path / "k.amg"), "--exact", "--threads", "4")
    assert one == four


def test_module_entry_point(k5):
    res = subprocess.run([sys.executable, "-m", "amalgadim", "dim", k5], capture_output=True, text=True)
    assert res.returncode == 0 and "dim_l=4" in res.stdout
