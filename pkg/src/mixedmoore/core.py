"""Mixed graphs: edges, arcs, degrees, neighbourhoods, non-backtracking walks."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

EDGE = "edge"
ARC = "arc"


class GraphError(ValueError):
    """Raised when a graph would violate the mixed-graph invariants."""


def _norm_edge(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class MixedGraph:
    """Immutable mixed graph on vertices ``0..n-1``.

    ``edges`` holds unordered pairs stored low-index-first, ``arcs`` ordered
    pairs. Loops, parallels and an edge sharing a pair with an arc are
    rejected at construction.
    """

    n: int
    edges: frozenset[tuple[int, int]]
    arcs: frozenset[tuple[int, int]]
    _und: tuple[tuple[int, ...], ...] = field(init=False, repr=False, compare=False)
    _out: tuple[tuple[int, ...], ...] = field(init=False, repr=False, compare=False)
    _in: tuple[tuple[int, ...], ...] = field(init=False, repr=False, compare=False)
    _und_mask: tuple[int, ...] = field(init=False, repr=False, compare=False)
    _out_mask: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __init__(self, n: int, edges: Iterable[Sequence[int]] = (), arcs: Iterable[Sequence[int]] = ()):
        if n < 0:
            raise GraphError(f"negative vertex count {n}")
        es: set[tuple[int, int]] = set()
        for u, v in edges:
            self._check_pair(n, u, v, "edge")
            es.add(_norm_edge(u, v))
        ars: set[tuple[int, int]] = set()
        for u, v in arcs:
            self._check_pair(n, u, v, "arc")
            if _norm_edge(u, v) in es:
                raise GraphError(f"arc ({u},{v}) conflicts with edge {{{u},{v}}}")
            ars.add((u, v))
        und: list[list[int]] = [[] for _ in range(n)]
        out: list[list[int]] = [[] for _ in range(n)]
        inn: list[list[int]] = [[] for _ in range(n)]
        for u, v in es:
            und[u].append(v)
            und[v].append(u)
        for u, v in ars:
            out[u].append(v)
            inn[v].append(u)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "edges", frozenset(es))
        object.__setattr__(self, "arcs", frozenset(ars))
        object.__setattr__(self, "_und", tuple(tuple(sorted(x)) for x in und))
        object.__setattr__(self, "_out", tuple(tuple(sorted(x)) for x in out))
        object.__setattr__(self, "_in", tuple(tuple(sorted(x)) for x in inn))
        object.__setattr__(self, "_und_mask", tuple(_mask(x) for x in und))
        object.__setattr__(self, "_out_mask", tuple(_mask(x) for x in out))

    @staticmethod
    def _check_pair(n: int, u: int, v: int, kind: str) -> None:
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"{kind} ({u},{v}) has an endpoint outside 0..{n - 1}")
        if u == v:
            raise GraphError(f"loop {kind} at vertex {u}")

    def __reduce__(self):
        return (MixedGraph, (self.n, sorted(self.edges), sorted(self.arcs)))

    # adjacency views -------------------------------------------------

    def und(self, u: int) -> tuple[int, ...]:
        return self._und[u]

    def out(self, u: int) -> tuple[int, ...]:
        return self._out[u]

    def inn(self, u: int) -> tuple[int, ...]:
        return self._in[u]

    def und_mask(self, u: int) -> int:
        return self._und_mask[u]

    def out_mask(self, u: int) -> int:
        return self._out_mask[u]

    def has_edge(self, u: int, v: int) -> bool:
        return (self._und_mask[u] >> v) & 1 == 1

    def has_arc(self, u: int, v: int) -> bool:
        return (self._out_mask[u] >> v) & 1 == 1

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def sorted_arcs(self) -> list[tuple[int, int]]:
        return sorted(self.arcs)

    def relabel(self, perm: Sequence[int]) -> MixedGraph:
        """Graph with vertex ``u`` renamed to ``perm[u]``."""
        if sorted(perm) != list(range(self.n)):
            raise GraphError("relabeling is not a permutation of the vertex set")
        return MixedGraph(
            self.n,
            [(perm[u], perm[v]) for u, v in self.edges],
            [(perm[u], perm[v]) for u, v in self.arcs],
        )

    def reversed_arcs(self) -> MixedGraph:
        return MixedGraph(self.n, self.edges, [(v, u) for u, v in self.arcs])

    def undirected_part(self) -> MixedGraph:
        return MixedGraph(self.n, self.edges, ())

    def directed_part(self) -> MixedGraph:
        return MixedGraph(self.n, (), self.arcs)

    def __repr__(self) -> str:
        return f"MixedGraph(n={self.n}, |E|={len(self.edges)}, |A|={len(self.arcs)})"


def _mask(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def mask_to_set(mask: int) -> frozenset[int]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return frozenset(out)


# degrees and neighbourhoods ------------------------------------------


@dataclass(frozen=True)
class DegreeProfile:
    """Per-vertex (undirected, out, in) degrees plus min/max aggregates."""

    undirected: tuple[int, ...]
    out: tuple[int, ...]
    inn: tuple[int, ...]

    def triple(self, u: int) -> tuple[int, int, int]:
        return (self.undirected[u], self.out[u], self.inn[u])

    @property
    def min_undirected(self) -> int:
        return min(self.undirected, default=0)

    @property
    def max_undirected(self) -> int:
        return max(self.undirected, default=0)

    @property
    def min_out(self) -> int:
        return min(self.out, default=0)

    @property
    def max_out(self) -> int:
        return max(self.out, default=0)

    @property
    def min_in(self) -> int:
        return min(self.inn, default=0)

    @property
    def max_in(self) -> int:
        return max(self.inn, default=0)

    def is_out_regular(self) -> bool:
        return len(set(self.undirected)) <= 1 and len(set(self.out)) <= 1


def degrees(g: MixedGraph) -> DegreeProfile:
    return DegreeProfile(
        tuple(len(g.und(u)) for u in range(g.n)),
        tuple(len(g.out(u)) for u in range(g.n)),
        tuple(len(g.inn(u)) for u in range(g.n)),
    )


@dataclass(frozen=True)
class NeighborSets:
    undirected: frozenset[int]
    out_arcs: frozenset[int]
    in_arcs: frozenset[int]

    @property
    def out_neighbors(self) -> frozenset[int]:
        return self.undirected | self.out_arcs

    @property
    def in_neighbors(self) -> frozenset[int]:
        return self.undirected | self.in_arcs


def _check_vertex(g: MixedGraph, u: int) -> None:
    if not 0 <= u < g.n:
        raise GraphError(f"vertex {u} out of range 0..{g.n - 1}")


def neighborhoods(g: MixedGraph, u: int) -> NeighborSets:
    _check_vertex(g, u)
    return NeighborSets(frozenset(g.und(u)), frozenset(g.out(u)), frozenset(g.inn(u)))


def out_neighbors(g: MixedGraph, u: int) -> frozenset[int]:
    return frozenset(g.und(u)) | frozenset(g.out(u))


# walks ----------------------------------------------------------------


def walk_endpoint_counts(g: MixedGraph, u: int, k: int) -> list[int]:
    """How many non-backtracking walks of length 1..k start at ``u`` and end at each vertex.

    A walk may not traverse an edge and then immediately the same edge back;
    every other step sequence (including arc followed by reverse arc, or edge
    followed by an arc back) is allowed.
    """
    _check_vertex(g, u)
    counts = [0] * g.n
    # frontier entries: (vertex, vertex we arrived from by an edge, or -1)
    frontier: list[tuple[int, int]] = [(u, -1)]
    for _ in range(k):
        nxt: list[tuple[int, int]] = []
        for v, back in frontier:
            for w in g.und(v):
                if w != back:
                    nxt.append((w, v))
                    counts[w] += 1
            for w in g.out(v):
                nxt.append((w, -1))
                counts[w] += 1
        frontier = nxt
    return counts


def count_nbt_walks(g: MixedGraph, u: int, v: int, k: int) -> int:
    """Number of non-backtracking walks of length 1..k from ``u`` to ``v``."""
    _check_vertex(g, v)
    if k < 1:
        raise ValueError("walk length bound k must be >= 1")
    return walk_endpoint_counts(g, u, k)[v]


def nbt_count_matrix(g: MixedGraph, k: int) -> list[list[int]]:
    return [walk_endpoint_counts(g, u, k) for u in range(g.n)]


# distances --------------------------------------------------------------


def distances_from(g: MixedGraph, u: int) -> list[int | None]:
    """Breadth-first distances from ``u``; ``None`` marks unreachable vertices."""
    _check_vertex(g, u)
    dist: list[int | None] = [None] * g.n
    dist[u] = 0
    queue = deque([u])
    while queue:
        v = queue.popleft()
        dv = dist[v]
        for w in g.und(v) + g.out(v):
            if dist[w] is None:
                dist[w] = dv + 1
                queue.append(w)
    return dist


def distance(g: MixedGraph, u: int, v: int) -> int | None:
    _check_vertex(g, v)
    return distances_from(g, u)[v]


def diameter(g: MixedGraph) -> float | int:
    """Largest distance over ordered pairs; ``math.inf`` if some pair is unreachable."""
    best = 0
    for u in range(g.n):
        for d in distances_from(g, u):
            if d is None:
                return float("inf")
            best = max(best, d)
    return best


def undirected_distances_from(g: MixedGraph, u: int) -> list[int | None]:
    dist: list[int | None] = [None] * g.n
    dist[u] = 0
    queue = deque([u])
    while queue:
        v = queue.popleft()
        for w in g.und(v):
            if dist[w] is None:
                dist[w] = dist[v] + 1
                queue.append(w)
    return dist


def undirected_components(g: MixedGraph) -> list[list[int]]:
    seen = [False] * g.n
    comps = []
    for s in range(g.n):
        if seen[s]:
            continue
        comp = [v for v, d in enumerate(undirected_distances_from(g, s)) if d is not None]
        for v in comp:
            seen[v] = True
        comps.append(comp)
    return comps
