"""Named graphs and parametric generators (dihedral Cayley graphs, collapsed Kautz digraphs)."""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass

from .core import GraphError, MixedGraph


class GeneratorError(GraphError):
    pass


# fixed graphs ---------------------------------------------------------------

_FIG1_EDGES = [(1, 2), (1, 5), (2, 3), (3, 4), (4, 5), (6, 7), (6, 10), (7, 8), (8, 9), (9, 10)]
_FIG1_ARCS = [(2, 6), (6, 5), (5, 10), (10, 3), (3, 9), (9, 1), (1, 8), (8, 4), (4, 7), (7, 2)]


def almost_moore_10() -> MixedGraph:
    """The (2,1,2;-1)-graph on 10 vertices (labels v1..v10 become 0..9)."""
    return MixedGraph(
        10,
        [(u - 1, v - 1) for u, v in _FIG1_EDGES],
        [(u - 1, v - 1) for u, v in _FIG1_ARCS],
    )


def excess_one_12() -> MixedGraph:
    """The (2,1,2;+1)-graph: a 12-cycle plus four directed triangles jumping by 4 or 8."""
    edges = [(i, (i + 1) % 12) for i in range(12)]
    triangles = [(0, 4, 8), (2, 6, 10), (1, 9, 5), (3, 11, 7)]
    arcs = [(t[i], t[(i + 1) % 3]) for t in triangles for i in range(3)]
    return MixedGraph(12, edges, arcs)


# dihedral groups -------------------------------------------------------------

Element = tuple[int, int]  # x^i y^f  ->  (i mod m, f)

_TOKEN = re.compile(r"([xye])(?:\^(-?\d+))?")


@dataclass(frozen=True)
class DihedralGroup:
    """<x, y : x^m = y^2 = e, y x y^-1 = x^-1>, order 2m; elements are (i, f) meaning x^i y^f."""

    m: int

    def __post_init__(self):
        if self.m < 1:
            raise ValueError("m must be >= 1")

    @property
    def order(self) -> int:
        return 2 * self.m

    @property
    def identity(self) -> Element:
        return (0, 0)

    def elements(self) -> list[Element]:
        return [(i, f) for f in (0, 1) for i in range(self.m)]

    def index(self, g: Element) -> int:
        return g[0] + self.m * g[1]

    def mul(self, g: Element, h: Element) -> Element:
        # x^i y^a x^j y^b = x^(i + (-1)^a j) y^(a+b)
        i, a = g
        j, b = h
        return ((i + (j if a == 0 else -j)) % self.m, (a + b) % 2)

    def inverse(self, g: Element) -> Element:
        i, a = g
        return ((-i) % self.m, 0) if a == 0 else g

    def power(self, g: Element, e: int) -> Element:
        if e < 0:
            g, e = self.inverse(g), -e
        out = self.identity
        for _ in range(e):
            out = self.mul(out, g)
        return out

    def evaluate(self, word: str) -> Element:
        """Evaluate a word such as ``"x^2"``, ``"xy"``, ``"yx^-1"`` or ``"e"``."""
        w = word.replace(" ", "").replace("*", "")
        if not w:
            raise GeneratorError("empty generator word")
        pos = 0
        out = self.identity
        for m in _TOKEN.finditer(w):
            if m.start() != pos:
                break
            pos = m.end()
            letter, exp = m.group(1), int(m.group(2) or 1)
            base = {"x": (1 % self.m, 0), "y": (0, 1), "e": self.identity}[letter]
            out = self.mul(out, self.power(base, exp))
        if pos != len(w):
            raise GeneratorError(f"cannot parse generator word {word!r}")
        return out

    def is_involution(self, g: Element) -> bool:
        return g != self.identity and self.mul(g, g) == self.identity

    def verify_axioms(self) -> bool:
        els = self.elements()
        e = self.identity
        for g in els:
            if self.mul(g, e) != g or self.mul(e, g) != g:
                return False
            if self.mul(g, self.inverse(g)) != e:
                return False
        for g, h, k in itertools.product(els, repeat=3):
            if self.mul(self.mul(g, h), k) != self.mul(g, self.mul(h, k)):
                return False
        x, y = self.evaluate("x"), self.evaluate("y")
        return (
            self.power(x, self.m) == e
            and self.mul(y, y) == e
            and self.mul(self.mul(y, x), self.inverse(y)) == self.inverse(x)
        )


def dihedral_cayley(m: int, arc_gens: list[str], edge_gens: list[str]) -> MixedGraph:
    """Cayley graph of the dihedral group of order 2m, neighbours of g being g*s.

    Edge generators must be involutions; arc generators must not be (an
    involution would pair every arc with its reverse).
    """
    grp = DihedralGroup(m)
    arc_el = [grp.evaluate(w) for w in arc_gens]
    edge_el = [grp.evaluate(w) for w in edge_gens]
    for w, s in zip(edge_gens, edge_el):
        if not grp.is_involution(s):
            raise GeneratorError(f"edge generator {w!r} is not an involution")
    for w, s in zip(arc_gens, arc_el):
        if s == grp.identity:
            raise GeneratorError(f"arc generator {w!r} is the identity")
        if grp.is_involution(s):
            raise GeneratorError(f"arc generator {w!r} is an involution")
        if s in edge_el:
            raise GeneratorError(f"generator {w!r} used for both arcs and edges")
    if len(set(edge_el)) != len(edge_el) or len(set(arc_el)) != len(arc_el):
        raise GeneratorError("repeated generator")
    edges, arcs = [], []
    for g in grp.elements():
        for s in edge_el:
            edges.append((grp.index(g), grp.index(grp.mul(g, s))))
        for s in arc_el:
            arcs.append((grp.index(g), grp.index(grp.mul(g, s))))
    return MixedGraph(grp.order, edges, arcs)


def left_multiplication(m: int, word: str) -> list[int]:
    """Vertex permutation g -> h*g of a dihedral Cayley graph, as an index list."""
    grp = DihedralGroup(m)
    h = grp.evaluate(word)
    perm = [0] * grp.order
    for g in grp.elements():
        perm[grp.index(g)] = grp.index(grp.mul(h, g))
    return perm


# Kautz ------------------------------------------------------------------------


def kautz_words(z: int) -> list[tuple[int, int]]:
    d = z + 2
    return [(a, b) for a in range(d) for b in range(d) if a != b]


def kautz_collapse(z: int) -> MixedGraph:
    """Kautz digraph on length-2 words over z+2 letters with each digon made an edge.

    Order z^2 + 3z + 2, every vertex with one edge (to its reversed word) and z arcs.
    """
    if z < 1:
        raise ValueError("z must be >= 1")
    words = kautz_words(z)
    idx = {w: i for i, w in enumerate(words)}
    edges, arcs = [], []
    for a, b in words:
        for c in range(z + 2):
            if c == b:
                continue
            if c == a:
                edges.append((idx[(a, b)], idx[(b, a)]))
            else:
                arcs.append((idx[(a, b)], idx[(b, c)]))
    return MixedGraph(len(words), edges, arcs)


def undirected_cycle(n: int) -> MixedGraph:
    return MixedGraph(n, [(i, (i + 1) % n) for i in range(n)])
