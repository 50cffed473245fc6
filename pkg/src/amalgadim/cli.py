"""Command-line front end.

Every command prints ``key=value`` records (``key<TAB>value`` with
``--format tsv``). Exit codes: 0 success, 1 failed verification or fuzz
invariant, 2 parse or usage error, 3 disconnected graph, 4 search budget
exceeded, 5 invalid embedding.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path
from typing import Any, Callable, Sequence

from . import constructions as cons
from .amalgam import is_isometric_family
from .audit import fuzz
from .bounds import bound_report
from .errors import (
    AmalgadimError,
    BadParameter,
    BudgetExceeded,
    Disconnected,
    DisconnectedPart,
    InvalidEmbedding,
    ParseError,
)
from .families import FAMILIES, FamilySpec, generate
from .formats import dump_amalgam, format_graph, format_records, load_amalgam, provenance_comments, read_graph, write_graph
from .graph import Graph
from .hitting import DEFAULT_NODES, DEFAULT_TIMEOUT, Budget
from .localmetric import local_metric_dimension

EXIT_OK, EXIT_FAIL, EXIT_PARSE, EXIT_DISCONNECTED, EXIT_BUDGET, EXIT_EMBEDDING = 0, 1, 2, 3, 4, 5
ENV_PREFIX = "AMALGADIM_"

Records = list[tuple[str, str]]


class Output:
    def __init__(self, fmt: str, stream=None):
        self.fmt = fmt
        self.stream = stream or sys.stdout

    def emit(self, records: Records) -> None:
        self.stream.write(format_records(records, self.fmt))
        self.stream.flush()


def _env(name: str, default: Any, cast: Callable = str) -> Any:
    raw = os.environ.get(ENV_PREFIX + name.upper())
    if raw is None:
        return default
    try:
        return cast(raw)
    except ValueError:
        raise SystemExit(f"bad value for {ENV_PREFIX}{name.upper()}: {raw!r}") from None


def _positive_int(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return v


def _positive_float(text: str) -> float:
    v = float(text)
    if v <= 0:
        raise argparse.ArgumentTypeError("must be > 0")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--threads", type=_positive_int, default=_env("threads", 1, int), help="search workers")
    common.add_argument("--timeout", type=_positive_float, default=_env("timeout", DEFAULT_TIMEOUT, float),
                        help="seconds per exact search")
    common.add_argument("--nodes", type=_positive_int, default=_env("nodes", DEFAULT_NODES, int),
                        help="node cap per exact search")
    common.add_argument("--format", choices=("text", "tsv"), default=_env("format", "text"))
    common.add_argument("--seed", type=int, default=_env("seed", 0, int))
    common.add_argument("-o", "--output", default=_env("output", None))

    parser = argparse.ArgumentParser(prog="amalgadim", description="Local metric dimension of graphs and amalgams.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("dim", parents=[common], help="dimension and a basis of a .gr graph")
    p.add_argument("graph")

    p = sub.add_parser("amalgamate", parents=[common], help="build H from an .amg file")
    p.add_argument("spec")

    p = sub.add_parser("bounds", parents=[common], help="bound report for an .amg file")
    p.add_argument("spec")
    p.add_argument("--exact", action="store_true", help="also compute the exact dimension of H")

    p = sub.add_parser("gen", parents=[common], help="write a family graph or a named instance")
    p.add_argument("family")
    p.add_argument("params", nargs="*")

    p = sub.add_parser("verify-paper", parents=[common], help="check every named instance")
    p.add_argument("--filter", default=None, help="only instances whose label contains this text")

    p = sub.add_parser("fuzz", parents=[common], help="random isometric amalgams against the invariants")
    p.add_argument("count", type=_positive_int)
    p.add_argument("size_cap", type=int)
    return parser


def _budget(args) -> Budget:
    return Budget(args.nodes, args.timeout, args.threads)


def fmt_value(v: Any) -> str:
    if v is None:
        return "na"
    if isinstance(v, bool):
        return str(v).lower()
    if isinstance(v, Graph):
        return f"graph(n={v.order},m={v.size})"
    if isinstance(v, (list, tuple)):
        if v and all(isinstance(x, tuple) and len(x) == 2 and all(isinstance(y, str) for y in x) for x in v):
            return ",".join(f"{a}-{b}" for a, b in v)
        if v and all(isinstance(x, (list, tuple)) for x in v):
            return ";".join(fmt_value(x) or "{}" for x in v)
        return ",".join(str(x) for x in v)
    return str(v)


# -- commands ---------------------------------------------------------------------


def cmd_dim(args, out: Output) -> int:
    g = read_graph(args.graph)
    records: Records = [("n", str(g.order)), ("m", str(g.size))]
    try:
        basis = local_metric_dimension(g, _budget(args))
    except BudgetExceeded as exc:
        records += [("dim_l", "timeout"), ("lower_bound", fmt_value(exc.lower_bound))]
        out.emit(records)
        return EXIT_BUDGET
    records += [("dim_l", str(basis.size)), ("basis", ",".join(basis.witness))]
    for w in basis.warnings:
        records.append(("warning", w))
    out.emit(records)
    return EXIT_OK


def _default_h_path(spec: str) -> Path:
    p = Path(spec)
    stem = p.name[:-4] if p.name.endswith(".amg") else p.name
    return p.parent / f"{stem}.H.gr"


def cmd_amalgamate(args, out: Output) -> int:
    a = load_amalgam(args.spec)
    target = Path(args.output) if args.output else _default_h_path(args.spec)
    write_graph(a.h, target, provenance_comments(a))
    iso, _ = is_isometric_family(a)
    out.emit([("n", str(a.n)), ("n_H", str(a.n_h)), ("isometric", fmt_value(iso)), ("output", str(target))])
    return EXIT_OK


def cmd_bounds(args, out: Output) -> int:
    a = load_amalgam(args.spec)
    report = bound_report(a, compute_exact=args.exact, budget=_budget(args))
    records = report.records()
    records += [("note", n) for n in report.notes]
    out.emit(records)
    return EXIT_BUDGET if report.exact_status == "timeout" else EXIT_OK


def _ints(params: Sequence[str], name: str) -> list[int]:
    try:
        return [int(x) for x in params]
    except ValueError:
        raise BadParameter(f"{name}: integer parameters expected, got {' '.join(params)}") from None


def _family_token(tok: str) -> FamilySpec:
    fam, _, rest = tok.partition(":")
    return FamilySpec(fam, tuple(_ints(rest.split(","), fam)) if rest else ())


def _need_count(params, k: int, name: str) -> None:
    if len(params) != k:
        raise BadParameter(f"{name} takes {k} parameter(s)")


def _named_builders(budget: Budget) -> dict[str, Callable[[list[str]], Any]]:
    def ints(p, name, k=None):
        if k is not None:
            _need_count(p, k, name)
        return _ints(p, name)

    def bare(p, name, build):
        _need_count(p, 0, name)
        return build(budget)

    def with_graph(p, name, k):
        _need_count(p, k, name)
        return read_graph(p[0]), _ints(p[1:], name)

    return {
        "path-pair": lambda p: bare(p, "path-pair", cons.build_path_pair),
        "spider-amalgam": lambda p: cons.build_spider_amalgam(*ints(p, "spider-amalgam", 1), budget=budget),
        "prismas": lambda p: cons.build_wheel_prism(*ints(p, "prismas", 1), budget=budget),
        "watermelon": lambda p: cons.build_watermelon(*ints(p, "watermelon", 1), budget=budget),
        "crude-tight": lambda p: (lambda v: cons.build_crude_tight(tuple(v[1:]), v[0], budget))(ints(p, "crude-tight")),
        "odd-paths": lambda p: cons.build_odd_paths(tuple(ints(p, "odd-paths")), budget),
        "fan-chain-sum": lambda p: cons.build_fan_chain(*ints(p, "fan-chain-sum", 2), "sum", budget),
        "fan-chain-dim2": lambda p: cons.build_fan_chain(*ints(p, "fan-chain-dim2", 2), "dim2", budget),
        "cota-sup-tight": lambda p: bare(p, "cota-sup-tight", cons.build_cota_sup_tight),
        "cota-sup-second": lambda p: cons.build_cota_sup_second(*ints(p, "cota-sup-second", 1), budget=budget),
        "disjoint-bases": lambda p: bare(p, "disjoint-bases", cons.build_disjoint_bases),
        "fan-pair": lambda p: bare(p, "fan-pair", cons.build_fan_pair),
        "k5-out-come": lambda p: bare(p, "k5-out-come", lambda b: cons.build_k5_variant_pair("out_come", b)),
        "k5-covers": lambda p: bare(p, "k5-covers", lambda b: cons.build_k5_variant_pair("covers", b)),
        "chi-construction": lambda p: (lambda g, v: cons.build_chi_construction(g, v[0], budget))(*with_graph(p, "chi-construction", 2)),
        "join-kbar": lambda p: (lambda g, v: cons.build_join_kbar(g, tuple(v), budget))(*_split_graph(p, "join-kbar")),
        "subdivided-join": lambda p: (lambda g, v: cons.subdivided_join_instance(g, v[0]))(*with_graph(p, "subdivided-join", 2)),
    }


def _split_graph(p: Sequence[str], name: str):
    if len(p) < 2:
        raise BadParameter(f"{name} takes a .gr path and at least one integer")
    return read_graph(p[0]), _ints(p[1:], name)


def cmd_gen(args, out: Output) -> int:
    fam, params = args.family, list(args.params)
    if fam in FAMILIES:
        if fam == "join":
            _need_count(params, 2, "join")
            spec = FamilySpec("join", (), (_family_token(params[0]), _family_token(params[1])))
        else:
            spec = FamilySpec(fam, tuple(_ints(params, fam)))
        g = generate(spec)
        if args.output:
            write_graph(g, args.output)
            out.emit([("n", str(g.order)), ("m", str(g.size)), ("output", args.output)])
        else:
            out.stream.write(format_graph(g))
        return EXIT_OK
    builders = _named_builders(_budget(args))
    if fam not in builders:
        raise BadParameter(f"unknown family or instance {fam!r}; choose from {', '.join(FAMILIES + tuple(builders))}")
    inst = builders[fam](params)
    records: Records = [("instance", inst.label)]
    if inst.amalgam is not None:
        if not args.output:
            raise BadParameter("named amalgams need -o PATH.amg")
        written = dump_amalgam(inst.amalgam, args.output)
        records += [("n", str(inst.amalgam.n)), ("n_H", str(inst.amalgam.n_h))]
        records += [("output", str(w)) for w in written]
    else:
        g = inst.graph
        if args.output:
            write_graph(g, args.output)
            records += [("n", str(g.order)), ("m", str(g.size)), ("output", args.output)]
        else:
            out.stream.write(format_graph(g))
            return EXIT_OK
    out.emit(records)
    return EXIT_OK


def cmd_verify(args, out: Output) -> int:
    budget = _budget(args)
    insts = cons.named_instances(budget) + cons.fan_formula_instances(budget)
    if args.filter:
        insts = [i for i in insts if args.filter in i.label]
    counts = {cons.PASS: 0, cons.FAIL: 0, cons.FLAGGED: 0}
    sep = "\t" if out.fmt == "tsv" else " "
    for inst in insts:
        for r in inst.evaluate():
            counts[r.status] += 1
            row = [r.status, r.instance, r.quantity, fmt_value(r.expected), fmt_value(r.measured)]
            if out.fmt == "text":
                row[3] = "expected=" + row[3]
                row[4] = "measured=" + row[4]
            if r.note:
                row.append(r.note if out.fmt == "tsv" else f"note={r.note}")
            out.stream.write(sep.join(row) + "\n")
    out.emit([("instances", str(len(insts))), ("pass", str(counts[cons.PASS])),
              ("fail", str(counts[cons.FAIL])), ("flagged", str(counts[cons.FLAGGED]))])
    return EXIT_FAIL if counts[cons.FAIL] else EXIT_OK


def cmd_fuzz(args, out: Output) -> int:
    bundle_dir = args.output or "counterexamples"
    summary = fuzz(args.count, args.size_cap, args.seed, _budget(args), bundle_dir)
    out.emit(summary.records())
    return EXIT_FAIL if summary.invariant_violations else EXIT_OK


COMMANDS = {
    "dim": cmd_dim,
    "amalgamate": cmd_amalgamate,
    "bounds": cmd_bounds,
    "gen": cmd_gen,
    "verify-paper": cmd_verify,
    "fuzz": cmd_fuzz,
}


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    out = Output(args.format)
    try:
        return COMMANDS[args.command](args, out)
    except ParseError as exc:
        out.emit([("error", "parse"), ("message", str(exc))])
        return EXIT_PARSE
    except (Disconnected, DisconnectedPart) as exc:
        out.emit([("error", "disconnected"), ("message", str(exc))])
        return EXIT_DISCONNECTED
    except BudgetExceeded as exc:
        out.emit([("error", "budget"), ("message", str(exc))])
        return EXIT_BUDGET
    except InvalidEmbedding as exc:
        out.emit([("error", "invalid_embedding"), ("message", str(exc))])
        return EXIT_EMBEDDING
    except (BadParameter, ValueError) as exc:
        out.emit([("error", "usage"), ("message", str(exc))])
        return EXIT_PARSE
    except AmalgadimError as exc:
        out.emit([("error", type(exc).__name__), ("message", str(exc))])
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
