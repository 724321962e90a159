"""Canonical labeling of mixed graphs by colour refinement and individualization.

Edges, arcs and arc direction are all part of the structure, so two graphs
get the same canonical code exactly when some relabeling carries edges to
edges and arcs to arcs with direction kept.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

from .core import MixedGraph


@dataclass(frozen=True)
class CanonicalForm:
    code: bytes
    labeling: tuple[int, ...]  # vertex -> canonical label
    aut_order: int | None = None

    def canonical_graph(self, g: MixedGraph) -> MixedGraph:
        return g.relabel(self.labeling)

    def hex(self) -> str:
        return self.code.hex()


def _refine(g: MixedGraph, colors: list[int]) -> list[int]:
    """Coarsest equitable refinement; colour values depend only on the structure."""
    ncolors = len(set(colors))
    while True:
        sigs = [
            (
                colors[v],
                tuple(sorted(colors[w] for w in g.und(v))),
                tuple(sorted(colors[w] for w in g.out(v))),
                tuple(sorted(colors[w] for w in g.inn(v))),
            )
            for v in range(g.n)
        ]
        rank = {s: i for i, s in enumerate(sorted(set(sigs)))}
        new = [rank[s] for s in sigs]
        if len(rank) == ncolors:
            return new
        colors, ncolors = new, len(rank)


def _individualize(colors: list[int], v: int) -> list[int]:
    out = [2 * c + 1 for c in colors]
    out[v] = 2 * colors[v]
    return out


def _target_cell(colors: list[int]) -> list[int] | None:
    cells: dict[int, list[int]] = {}
    for v, c in enumerate(colors):
        cells.setdefault(c, []).append(v)
    best = None
    for c in sorted(cells):
        cell = cells[c]
        if len(cell) > 1 and (best is None or len(cell) < len(best)):
            best = cell
    return best


def _leaf_code(g: MixedGraph, labels: list[int], vertex_colors: Sequence[int]) -> tuple:
    n = g.n
    inv = [0] * n
    for v, lab in enumerate(labels):
        inv[lab] = v
    edges = tuple(sorted(tuple(sorted((labels[u], labels[v]))) for u, v in g.edges))
    arcs = tuple(sorted((labels[u], labels[v]) for u, v in g.arcs))
    cols = tuple(vertex_colors[inv[i]] for i in range(n))
    return (cols, edges, arcs)


def _initial_colors(g: MixedGraph, vertex_colors: Sequence[int] | None) -> list[int]:
    if vertex_colors is None:
        return [0] * g.n
    if len(vertex_colors) != g.n:
        raise ValueError("need one colour per vertex")
    rank = {c: i for i, c in enumerate(sorted(set(vertex_colors)))}
    return [rank[c] for c in vertex_colors]


class _Search:
    def __init__(self, g: MixedGraph, vertex_colors: list[int]):
        self.g = g
        self.vcols = vertex_colors
        self.best_code: tuple | None = None
        self.best_labels: list[int] | None = None
        self.automorphisms: list[list[int]] = []

    def run(self, colors: list[int], prefix: tuple[int, ...]) -> None:
        colors = _refine(self.g, colors)
        cell = _target_cell(colors)
        if cell is None:
            self._leaf(colors)
            return
        explored: list[int] = []
        for v in cell:
            if explored and self._equivalent(v, explored, prefix):
                continue
            explored.append(v)
            self.run(_individualize(colors, v), prefix + (v,))

    def _leaf(self, labels: list[int]) -> None:
        code = _leaf_code(self.g, labels, self.vcols)
        if self.best_code is None or code < self.best_code:
            self.best_code, self.best_labels = code, labels
        elif code == self.best_code:
            inv_best = [0] * self.g.n
            for v, lab in enumerate(self.best_labels):
                inv_best[lab] = v
            self.automorphisms.append([inv_best[labels[v]] for v in range(self.g.n)])

    def _equivalent(self, v: int, explored: list[int], prefix: tuple[int, ...]) -> bool:
        # orbit of v under automorphisms found so far that fix the prefix pointwise
        gens = [a for a in self.automorphisms if all(a[p] == p for p in prefix)]
        if not gens:
            return False
        orbit = {v}
        stack = [v]
        while stack:
            x = stack.pop()
            for a in gens:
                y = a[x]
                if y not in orbit:
                    orbit.add(y)
                    stack.append(y)
        return any(e in orbit for e in explored)


def _encode(g: MixedGraph, code: tuple) -> bytes:
    cols, edges, arcs = code
    n = g.n
    mat = bytearray(n * n)
    for u, v in edges:
        mat[u * n + v] = mat[v * n + u] = 1
    for u, v in arcs:
        mat[u * n + v] = 2
    head = f"{n};{','.join(map(str, cols))};".encode()
    return head + bytes(mat)


def canonical_form(
    g: MixedGraph,
    vertex_colors: Sequence[int] | None = None,
    with_aut_order: bool = False,
) -> CanonicalForm:
    """Canonical code and labeling; optional vertex colours must be preserved by isomorphisms."""
    init = _initial_colors(g, vertex_colors)
    vcols = list(vertex_colors) if vertex_colors is not None else [0] * g.n
    if g.n == 0:
        return CanonicalForm(_encode(g, ((), (), ())), (), 1 if with_aut_order else None)
    s = _Search(g, vcols)
    s.run(init, ())
    aut = automorphism_group_order(g, vertex_colors) if with_aut_order else None
    return CanonicalForm(_encode(g, s.best_code), tuple(s.best_labels), aut)


def are_isomorphic(g: MixedGraph, h: MixedGraph) -> bool:
    if g.n != h.n or len(g.edges) != len(h.edges) or len(g.arcs) != len(h.arcs):
        return False
    return canonical_form(g).code == canonical_form(h).code


# automorphism group order ------------------------------------------------------


def _find_leaf(g: MixedGraph, colors: list[int], vcols: Sequence[int], target: tuple | None):
    """First leaf below ``colors`` (target None) or whether some leaf has code ``target``."""
    colors = _refine(g, colors)
    cell = _target_cell(colors)
    if cell is None:
        code = _leaf_code(g, colors, vcols)
        return code if target is None else code == target
    if target is None:
        return _find_leaf(g, _individualize(colors, cell[0]), vcols, None)
    return any(_find_leaf(g, _individualize(colors, w), vcols, target) for w in cell)


def automorphism_group_order(g: MixedGraph, vertex_colors: Sequence[int] | None = None) -> int:
    """|Aut(g)| by orbit-stabilizer along the leftmost path of the search tree."""
    vcols = list(vertex_colors) if vertex_colors is not None else [0] * g.n
    colors = _initial_colors(g, vertex_colors)
    order = 1
    while True:
        colors = _refine(g, colors)
        cell = _target_cell(colors)
        if cell is None:
            return order
        v = cell[0]
        ref = _find_leaf(g, _individualize(colors, v), vcols, None)
        orbit = 1 + sum(
            1 for w in cell[1:] if _find_leaf(g, _individualize(colors, w), vcols, ref)
        )
        order *= orbit
        colors = _individualize(colors, v)


# brute force reference -------------------------------------------------------------


def isomorphic_bruteforce(g: MixedGraph, h: MixedGraph) -> bool:
    """Try every permutation; only for small graphs."""
    if g.n != h.n or len(g.edges) != len(h.edges) or len(g.arcs) != len(h.arcs):
        return False
    for perm in itertools.permutations(range(g.n)):
        if all((min(perm[u], perm[v]), max(perm[u], perm[v])) in h.edges for u, v in g.edges) and all(
            (perm[u], perm[v]) in h.arcs for u, v in g.arcs
        ):
            return True
    return False


def automorphism_count_bruteforce(g: MixedGraph) -> int:
    return sum(
        1
        for perm in itertools.permutations(range(g.n))
        if all((min(perm[u], perm[v]), max(perm[u], perm[v])) in g.edges for u, v in g.edges)
        and all((perm[u], perm[v]) in g.arcs for u, v in g.arcs)
    )
