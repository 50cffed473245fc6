"""Generators for the standard graph families.

Naming is deterministic: path/cycle/complete/empty vertices are ``u1..un``;
fans and wheels put the independent hub set on ``v1..vm`` and the path or
rim on ``u1..un``; a prism has outer cycle ``o1..on`` and inner cycle
``i1..in`` with rungs ``ok-ik``; a spider has head ``h`` and leg vertices
``leg<i>_<depth>``; a generic join prefixes operand names with ``1.``/``2.``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .errors import BadParameter
from .graph import Graph

FAMILIES = ("path", "cycle", "complete", "empty", "join", "spider", "fan", "wheel", "prism")


def _need(cond: bool, msg: str) -> None:
    if not cond:
        raise BadParameter(msg)


def _names(prefix: str, n: int) -> list[str]:
    return [f"{prefix}{k}" for k in range(1, n + 1)]


def path(n: int, prefix: str = "u") -> Graph:
    _need(n >= 1, "path needs n >= 1")
    vs = _names(prefix, n)
    return Graph(vs, zip(vs, vs[1:]))


def cycle(n: int, prefix: str = "u") -> Graph:
    _need(n >= 3, "cycle needs n >= 3")
    vs = _names(prefix, n)
    return Graph(vs, [(vs[k], vs[(k + 1) % n]) for k in range(n)])


def complete(n: int, prefix: str = "u") -> Graph:
    _need(n >= 1, "complete graph needs n >= 1")
    vs = _names(prefix, n)
    return Graph(vs, [(a, b) for i, a in enumerate(vs) for b in vs[i + 1:]])


def empty(n: int, prefix: str = "u") -> Graph:
    _need(n >= 1, "empty graph needs n >= 1")
    return Graph(_names(prefix, n))


def join(g: Graph, h: Graph, prefix: bool = True) -> Graph:
    """``g + h``; with ``prefix=False`` the operands must have disjoint names."""
    if prefix:
        a = {v: f"1.{v}" for v in g.vertices}
        b = {v: f"2.{v}" for v in h.vertices}
    else:
        a = {v: v for v in g.vertices}
        b = {v: v for v in h.vertices}
        _need(not set(a) & set(b), "join operands share vertex names")
    edges = [(a[x], a[y]) for x, y in g.edges] + [(b[x], b[y]) for x, y in h.edges]
    edges += [(a[x], b[y]) for x in g.vertices for y in h.vertices]
    return Graph(list(a.values()) + list(b.values()), edges)


def fan(m: int, n: int) -> Graph:
    """Generalized fan: ``m`` independent hubs joined to ``P_n``."""
    _need(m >= 1 and n >= 1, "fan needs m, n >= 1")
    return join(empty(m, "v"), path(n), prefix=False)


def wheel(m: int, n: int) -> Graph:
    """Generalized wheel: ``m`` independent hubs joined to ``C_n``."""
    _need(m >= 1 and n >= 3, "wheel needs m >= 1, n >= 3")
    return join(empty(m, "v"), cycle(n), prefix=False)


def prism(n: int) -> Graph:
    _need(n >= 3, "prism needs n >= 3")
    o, i = _names("o", n), _names("i", n)
    edges = [(o[k], o[(k + 1) % n]) for k in range(n)]
    edges += [(i[k], i[(k + 1) % n]) for k in range(n)]
    edges += list(zip(o, i))
    return Graph(o + i, edges)


def spider(legs: Sequence[tuple[int, int]], strict: bool = True) -> Graph:
    """Spider from ``(leg length, multiplicity)`` pairs.

    Legs are numbered from 1 in the order given. ``strict`` enforces a head
    of degree at least three; pass ``False`` to allow the degenerate
    two-legged case (a path through the head).
    """
    _need(len(legs) > 0, "spider needs at least one leg")
    for length, mult in legs:
        _need(length >= 1 and mult >= 1, "spider leg lengths and multiplicities must be >= 1")
    total = sum(mult for _, mult in legs)
    if strict:
        _need(total >= 3, "spider head must have degree >= 3")
    vs, edges = ["h"], []
    leg = 0
    for length, mult in legs:
        for _ in range(mult):
            leg += 1
            prev = "h"
            for depth in range(1, length + 1):
                v = f"leg{leg}_{depth}"
                vs.append(v)
                edges.append((prev, v))
                prev = v
    return Graph(vs, edges)


@dataclass(frozen=True)
class FamilySpec:
    """A named family plus integer parameters.

    ``params`` holds the integers (``spider`` takes flattened
    ``length, multiplicity`` pairs); ``operands`` is used only by ``join``.
    """

    family: str
    params: tuple[int, ...] = ()
    operands: tuple["FamilySpec", ...] = field(default=())

    def __post_init__(self):
        _need(self.family in FAMILIES, f"unknown family {self.family!r}")
        _need(all(isinstance(p, int) and p >= 1 for p in self.params), "parameters must be integers >= 1")


_ARITY = {"path": 1, "cycle": 1, "complete": 1, "empty": 1, "prism": 1, "fan": 2, "wheel": 2}


def generate(spec: FamilySpec) -> Graph:
    fam, p = spec.family, spec.params
    if fam == "join":
        _need(len(spec.operands) == 2 and not p, "join takes exactly two operand specs")
        return join(generate(spec.operands[0]), generate(spec.operands[1]))
    _need(not spec.operands, f"{fam} takes no operands")
    if fam == "spider":
        _need(len(p) >= 2 and len(p) % 2 == 0, "spider takes length/multiplicity pairs")
        return spider(list(zip(p[::2], p[1::2])))
    _need(len(p) == _ARITY[fam], f"{fam} takes {_ARITY[fam]} parameter(s)")
    return {
        "path": path, "cycle": cycle, "complete": complete, "empty": empty,
        "prism": prism, "fan": fan, "wheel": wheel,
    }[fam](*p)
