"""The ``mixedgraph v1`` text format and DOT export."""

from __future__ import annotations

import re
from importlib import resources
from pathlib import Path

from .core import GraphError, MixedGraph

HEADER = "mixedgraph v1"

_N_RE = re.compile(r"^n=(\d+)$")
_REC_RE = re.compile(r"^([EA])\s+(-?\d+)\s+(-?\d+)$")


class ParseError(GraphError):
    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


def parse_graph(text: str) -> MixedGraph:
    """Parse v1 text. Errors carry the offending line number.

    The header line is optional on input so that hand-written snippets such
    as ``"n=2\\nE 0 1"`` load; serialization always writes it.
    """
    n: int | None = None
    edges: dict[tuple[int, int], int] = {}
    arcs: dict[tuple[int, int], int] = {}
    seen_header = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line == HEADER:
            if seen_header or n is not None:
                raise ParseError(lineno, "header must come first and only once")
            seen_header = True
            continue
        if n is None:
            m = _N_RE.match(line)
            if not m:
                raise ParseError(lineno, f"expected 'n=<int>', got {line!r}")
            n = int(m.group(1))
            continue
        m = _REC_RE.match(line)
        if not m:
            raise ParseError(lineno, f"malformed record {line!r}")
        kind, i, j = m.group(1), int(m.group(2)), int(m.group(3))
        for x in (i, j):
            if not 0 <= x < n:
                raise ParseError(lineno, f"vertex {x} out of range 0..{n - 1}")
        if i == j:
            raise ParseError(lineno, f"loop at vertex {i}")
        if kind == "E":
            if i > j:
                raise ParseError(lineno, f"edge must be written low index first: E {j} {i}")
            if (i, j) in edges:
                raise ParseError(lineno, f"duplicate edge {i} {j} (first on line {edges[(i, j)]})")
            for a in ((i, j), (j, i)):
                if a in arcs:
                    raise ParseError(lineno, f"edge {i} {j} conflicts with arc {a[0]} {a[1]} on line {arcs[a]}")
            edges[(i, j)] = lineno
        else:
            if (i, j) in arcs:
                raise ParseError(lineno, f"duplicate arc {i} {j} (first on line {arcs[(i, j)]})")
            e = (min(i, j), max(i, j))
            if e in edges:
                raise ParseError(lineno, f"arc {i} {j} conflicts with edge {e[0]} {e[1]} on line {edges[e]}")
            arcs[(i, j)] = lineno
    if n is None:
        raise ParseError(0, "missing 'n=<int>' line")
    return MixedGraph(n, edges, arcs)


def serialize_graph(g: MixedGraph) -> str:
    lines = [HEADER, f"n={g.n}"]
    lines += [f"E {u} {v}" for u, v in g.sorted_edges()]
    lines += [f"A {u} {v}" for u, v in g.sorted_arcs()]
    return "\n".join(lines) + "\n"


def normalize_text(text: str) -> str:
    return serialize_graph(parse_graph(text))


def read_graph(path: str | Path) -> MixedGraph:
    return parse_graph(Path(path).read_text(encoding="utf-8"))


def write_graph(g: MixedGraph, path: str | Path) -> None:
    Path(path).write_text(serialize_graph(g), encoding="utf-8")


def load_fixture(name: str) -> MixedGraph:
    """Load a data file shipped with the package (``fig1`` or ``fig6``)."""
    return parse_graph(fixture_text(name))


def fixture_text(name: str) -> str:
    return resources.files("mixedmoore").joinpath("data", f"{name}.mg").read_text(encoding="utf-8")


def to_dot(g: MixedGraph, name: str = "G") -> str:
    """DOT with edges drawn without arrowheads and arcs with them."""
    out = [f"digraph {name} {{"]
    out += [f"  {u};" for u in range(g.n)]
    out += [f"  {u} -> {v} [dir=none];" for u, v in g.sorted_edges()]
    out += [f"  {u} -> {v};" for u, v in g.sorted_arcs()]
    out.append("}")
    return "\n".join(out) + "\n"
