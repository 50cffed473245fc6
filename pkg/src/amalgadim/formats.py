"""Text formats: graphs (.gr), amalgam specs (.amg) and counterexample bundles.

.gr lines::

    # comment
    v <name>
    e <name1> <name2>

.amg lines::

    j <path.gr>
    part <id> <path.gr>
    map <id> <J-vertex> <G-vertex>

Relative paths in an .amg file resolve against the file's own directory.
Writers sort everything, so equal values always produce equal bytes.
"""

from __future__ import annotations

import os
from pathlib import Path
from typing import Iterable, Sequence

from .amalgam import Amalgam, Embedding
from .errors import GraphError, InvalidEmbedding, ParseError, UnknownVertex
from .graph import Graph

PathLike = str | os.PathLike


def _lines(text: str):
    for no, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if line and not line.startswith("#"):
            yield no, line.split()


def parse_graph(text: str, path: str | None = None) -> Graph:
    vertices: list[str] = []
    seen_v: dict[str, int] = {}
    edges: list[tuple[str, str, int]] = []
    for no, tok in _lines(text):
        if tok[0] == "v":
            if len(tok) != 2:
                raise ParseError("expected 'v <name>'", no, path)
            if tok[1] in seen_v:
                raise ParseError(f"vertex {tok[1]} already declared on line {seen_v[tok[1]]}", no, path)
            seen_v[tok[1]] = no
            vertices.append(tok[1])
        elif tok[0] == "e":
            if len(tok) != 3:
                raise ParseError("expected 'e <name1> <name2>'", no, path)
            edges.append((tok[1], tok[2], no))
        else:
            raise ParseError(f"unknown directive {tok[0]!r}", no, path)
    seen_e: dict[tuple[str, str], int] = {}
    for u, v, no in edges:
        for x in (u, v):
            if x not in seen_v:
                raise ParseError(f"edge endpoint {x} is not a declared vertex", no, path)
        if u == v:
            raise ParseError(f"self-loop at {u}", no, path)
        key = (u, v) if u <= v else (v, u)
        if key in seen_e:
            raise ParseError(f"edge {u}-{v} already given on line {seen_e[key]}", no, path)
        seen_e[key] = no
    try:
        return Graph(vertices, [(u, v) for u, v, _ in edges])
    except GraphError as exc:
        raise ParseError(str(exc), 0, path) from None


def format_graph(g: Graph, comments: Iterable[str] = ()) -> str:
    out = [f"# {c}" for c in comments]
    out += [f"v {v}" for v in g.vertices]
    out += [f"e {u} {v}" for u, v in g.edges]
    return "\n".join(out) + "\n"


def read_graph(path: PathLike) -> Graph:
    p = Path(path)
    try:
        text = p.read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read: {exc.strerror}", 0, str(p)) from None
    return parse_graph(text, str(p))


def write_graph(g: Graph, path: PathLike, comments: Iterable[str] = ()) -> None:
    Path(path).write_text(format_graph(g, comments), encoding="utf-8")


def provenance_comments(a: Amalgam) -> list[str]:
    out = []
    for v, (pid, orig) in a.provenance.items():
        out.append(f"from {pid}.{orig} as {v}")
    return out


# -- amalgam specs -----------------------------------------------------------------


def load_amalgam(path: PathLike) -> Amalgam:
    p = Path(path)
    try:
        text = p.read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read: {exc.strerror}", 0, str(p)) from None
    base = p.parent
    where = str(p)
    j_path = None
    part_paths: dict[str, Path] = {}
    order: list[str] = []
    maps: dict[str, dict[str, str]] = {}
    map_lines: list[tuple[int, str, str, str]] = []
    for no, tok in _lines(text):
        kind = tok[0]
        if kind == "j":
            if len(tok) != 2:
                raise ParseError("expected 'j <path.gr>'", no, where)
            if j_path is not None:
                raise ParseError("'j' given more than once", no, where)
            j_path = base / tok[1]
        elif kind == "part":
            if len(tok) != 3:
                raise ParseError("expected 'part <id> <path.gr>'", no, where)
            if tok[1] in part_paths:
                raise ParseError(f"part {tok[1]} declared twice", no, where)
            part_paths[tok[1]] = base / tok[2]
            order.append(tok[1])
            maps[tok[1]] = {}
        elif kind == "map":
            if len(tok) != 4:
                raise ParseError("expected 'map <id> <J-vertex> <G-vertex>'", no, where)
            map_lines.append((no, tok[1], tok[2], tok[3]))
        else:
            raise ParseError(f"unknown directive {kind!r}", no, where)
    if j_path is None:
        raise ParseError("missing 'j' line", 0, where)
    if not order:
        raise ParseError("no 'part' line", 0, where)
    j = read_graph(j_path)
    parts = {pid: read_graph(part_paths[pid]) for pid in order}
    for no, pid, a, x in map_lines:
        if pid not in maps:
            raise ParseError(f"map refers to undeclared part {pid}", no, where)
        if a not in j:
            raise InvalidEmbedding(f"{where}:{no}: {a} is not a vertex of J")
        if x not in parts[pid]:
            raise InvalidEmbedding(f"{where}:{no}: {x} is not a vertex of part {pid}")
        if a in maps[pid]:
            raise InvalidEmbedding(f"{where}:{no}: J-vertex {a} mapped twice in part {pid}")
        maps[pid][a] = x
    for pid in order:
        missing = [a for a in j.vertices if a not in maps[pid]]
        if missing:
            raise InvalidEmbedding(f"{where}: part {pid} does not map J-vertex {missing[0]}")
    try:
        return Amalgam(j, [(parts[pid], Embedding(pid, maps[pid])) for pid in order])
    except UnknownVertex as exc:
        raise InvalidEmbedding(str(exc)) from None


def format_amalgam_spec(a: Amalgam, j_file: str, part_files: Sequence[str]) -> str:
    out = [f"j {j_file}"]
    for pid, f in zip(a.part_ids, part_files):
        out.append(f"part {pid} {f}")
    for pid in a.part_ids:
        for x, y in a.embedding(pid).mapping.items():
            out.append(f"map {pid} {x} {y}")
    return "\n".join(out) + "\n"


def dump_amalgam(a: Amalgam, path: PathLike) -> list[Path]:
    """Write the .amg description and its graph files next to it; returns every file written.

    Graph files are named ``<stem>.J.gr`` and ``<stem>.part<id>.gr``.
    """
    p = Path(path)
    stem = p.name[:-4] if p.name.endswith(".amg") else p.name
    j_file = f"{stem}.J.gr"
    part_files = [f"{stem}.part{pid}.gr" for pid in a.part_ids]
    written = [p.parent / j_file]
    write_graph(a.j, written[0])
    for pid, f in zip(a.part_ids, part_files):
        write_graph(a.graph(pid), p.parent / f)
        written.append(p.parent / f)
    p.write_text(format_amalgam_spec(a, j_file, part_files), encoding="utf-8")
    written.append(p)
    return written


# -- records and bundles ------------------------------------------------------------


def format_records(records: Sequence[tuple[str, str]], fmt: str = "text") -> str:
    sep = "\t" if fmt == "tsv" else "="
    return "".join(f"{k}{sep}{v}\n" for k, v in records)


def write_bundle(directory: PathLike, a: Amalgam, records: Sequence[tuple[str, str]]) -> Path:
    """Counterexample bundle: H.gr, instance.amg (with graph files) and report.tsv."""
    d = Path(directory)
    d.mkdir(parents=True, exist_ok=True)
    write_graph(a.h, d / "H.gr", provenance_comments(a))
    dump_amalgam(a, d / "instance.amg")
    (d / "report.tsv").write_text(format_records(records, "tsv"), encoding="utf-8")
    return d
