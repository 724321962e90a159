"""Exhaustive isomorphism-reduced search for out-regular graphs near the Moore bound.

Opposite arc pairs (digons) are never created: a digon is an edge in disguise
and would raise the undirected degree.

Phase 1 enumerates the r-regular undirected part up to isomorphism, phase 2
adds z out-arcs per vertex depth first, and phase 3 merges survivors by
canonical form.

Pruning rests on one monotone quantity. For a root u, the *surplus* of its
Moore tree is (entries - distinct vertices). Adding arcs only adds walks, so
the surplus never decreases. In excess mode a k-geodetic graph has surplus 0
everywhere; in defect mode an out-regular graph of order M - delta with
diameter <= k has surplus exactly delta at every root. Either way a partial
graph whose surplus exceeds the allowance has no completion.
"""

from __future__ import annotations

import itertools
import logging
import os
import time
from concurrent.futures import FIRST_COMPLETED, ProcessPoolExecutor, wait
from dataclasses import dataclass, field

from .bounds import moore_bound
from .canon import canonical_form
from .certify import DEFECT, EXCESS, check_graph, moore_tree
from .constructions import undirected_cycle
from .core import MixedGraph, undirected_distances_from

log = logging.getLogger(__name__)

DEFAULT_BUDGET = 10**9
BUDGET_ENV = "MIXEDMOORE_BUDGET"


class InfeasibleSpec(ValueError):
    pass


class BudgetExceeded(RuntimeError):
    def __init__(self, nodes: int, budget: int):
        super().__init__(f"node budget exceeded: {nodes} > {budget}")
        self.nodes = nodes
        self.budget = budget


def default_budget() -> int:
    raw = os.environ.get(BUDGET_ENV)
    return int(raw) if raw else DEFAULT_BUDGET


@dataclass(frozen=True)
class SearchSpec:
    r: int
    z: int
    k: int
    mode: str
    slack: int
    assume_total_regular: bool = False
    enumerate_all: bool = True
    jobs: int = 1
    budget: int = field(default_factory=default_budget)
    arc_distance_prune: bool = False
    girth_prune: bool = True

    def __post_init__(self):
        if self.mode not in (DEFECT, EXCESS):
            raise InfeasibleSpec(f"mode must be 'defect' or 'excess', got {self.mode!r}")
        if self.r < 0 or self.z < 0 or self.k < 1 or self.slack < 0:
            raise InfeasibleSpec("need r, z, slack >= 0 and k >= 1")
        if self.jobs < 1 or self.budget < 1:
            raise InfeasibleSpec("jobs and budget must be positive")
        if self.target_order < 1:
            raise InfeasibleSpec(f"target order {self.target_order} is not positive")
        if self.arc_distance_prune and (self.r, self.z, self.k, self.mode, self.slack) != (2, 1, 2, EXCESS, 1):
            raise InfeasibleSpec("the distance-4 arc rule is only valid for (2,1,2;+1)")

    @property
    def moore_bound(self) -> int:
        return moore_bound(self.r, self.z, self.k)[0]

    @property
    def target_order(self) -> int:
        m = self.moore_bound
        return m - self.slack if self.mode == DEFECT else m + self.slack

    @property
    def surplus_allowance(self) -> int:
        return self.slack if self.mode == DEFECT else 0


@dataclass
class SearchResult:
    spec: SearchSpec
    graphs: list[MixedGraph]
    codes: list[bytes]
    nodes: int
    prunes: dict[str, int]
    undirected_classes: int
    girth_floor: int
    wall_time: float

    def to_dict(self) -> dict:
        s = self.spec
        return {
            "r": s.r,
            "z": s.z,
            "k": s.k,
            "mode": s.mode,
            "slack": s.slack,
            "target_order": s.target_order,
            "assume_total_regular": s.assume_total_regular,
            "enumerate_all": s.enumerate_all,
            "jobs": s.jobs,
            "found": len(self.graphs),
            "canonical_forms": [c.hex() for c in self.codes],
            "nodes": self.nodes,
            "prunes": dict(sorted(self.prunes.items())),
            "undirected_classes": self.undirected_classes,
            "girth_floor": self.girth_floor,
            "wall_time": round(self.wall_time, 3),
        }


# phase 1 -------------------------------------------------------------------------------


def two_factor_partitions(n: int, girth_floor: int) -> list[tuple[int, ...]]:
    """Cycle-length multisets (parts >= max(3, girth_floor)) summing to n."""
    lo = max(3, girth_floor)
    parts: list[tuple[int, ...]] = []

    def rec(rest: int, smallest: int, acc: tuple[int, ...]) -> None:
        if rest == 0:
            parts.append(acc)
            return
        for p in range(smallest, rest + 1):
            if rest - p == 0 or rest - p >= p:
                rec(rest - p, p, acc + (p,))

    if n >= lo:
        rec(n, lo, ())
    return sorted(parts, key=lambda p: (len(p), p))


def enumerate_2factors(n: int, girth_floor: int) -> list[MixedGraph]:
    """One 2-regular graph per multiset of cycle lengths; cycles get consecutive labels."""
    out = []
    for part in two_factor_partitions(n, girth_floor):
        edges = []
        start = 0
        for length in part:
            edges += [(start + i, start + (i + 1) % length) for i in range(length)]
            start += length
        out.append(MixedGraph(n, edges))
    return out


def regular_graphs(n: int, r: int, girth_floor: int = 3) -> list[MixedGraph]:
    """All r-regular simple graphs on n vertices with girth >= girth_floor, up to isomorphism."""
    if r < 0 or n < 0:
        return []
    if r == 0:
        return [MixedGraph(n)]
    if (n * r) % 2 or n < r + 1:
        return []
    if r == 1:
        return [MixedGraph(n, [(2 * i, 2 * i + 1) for i in range(n // 2)])]
    if r == 2:
        return enumerate_2factors(n, girth_floor)
    return _regular_backtrack(n, r, girth_floor)


def _regular_backtrack(n: int, r: int, girth_floor: int) -> list[MixedGraph]:
    adj: list[set[int]] = [set() for _ in range(n)]
    found: dict[bytes, MixedGraph] = {}

    def too_short(u: int, v: int) -> bool:
        # adding u-v closes a cycle of length dist(u, v) + 1
        seen = {u}
        frontier = [u]
        for _ in range(girth_floor - 2):
            nxt = []
            for x in frontier:
                for y in adj[x]:
                    if y == v:
                        return True
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        return False

    def rec(u: int) -> None:
        while u < n and len(adj[u]) == r:
            u += 1
        if u == n:
            g = MixedGraph(n, [(a, b) for a in range(n) for b in adj[a] if a < b])
            found.setdefault(canonical_form(g).code, g)
            return
        need = r - len(adj[u])
        cands = [v for v in range(u + 1, n) if len(adj[v]) < r and v not in adj[u]]
        for combo in itertools.combinations(cands, need):
            added = []
            ok = True
            for v in combo:
                if girth_floor > 3 and too_short(u, v):
                    ok = False
                    break
                adj[u].add(v)
                adj[v].add(u)
                added.append(v)
            if ok:
                rec(u + 1)
            for v in added:
                adj[u].discard(v)
                adj[v].discard(u)

    rec(0)
    return [found[c] for c in sorted(found)]


def cycle_surplus(length: int, k: int) -> int:
    """Surplus of a Moore tree of depth k rooted on an undirected cycle of this length."""
    return moore_tree(undirected_cycle(length), 0, k).surplus


def girth_floor_for(spec: SearchSpec) -> int:
    """Smallest undirected cycle length that alone does not exceed the surplus allowance."""
    if not spec.girth_prune:
        return 3
    allowance = spec.surplus_allowance
    length = 3
    while length <= 2 * spec.k and cycle_surplus(length, spec.k) > allowance:
        length += 1
    return length


# phase 2 --------------------------------------------------------------------------------


class _Engine:
    """Depth-first arc assignment over a fixed undirected part."""

    def __init__(self, base: MixedGraph, spec: SearchSpec, budget: int):
        self.n = base.n
        self.k = spec.k
        self.z = spec.z
        self.allow = spec.surplus_allowance
        self.total_regular = spec.assume_total_regular
        self.first_only = not spec.enumerate_all
        self.budget = budget
        self.und = [base.und(u) for u in range(self.n)]
        self.out: list[list[int]] = [[] for _ in range(self.n)]
        self.in_arcs: list[list[int]] = [[] for _ in range(self.n)]
        self.indeg = [0] * self.n
        self.order = list(range(self.n))
        self.nodes = 0
        self.prunes = {"surplus": 0, "in_degree": 0, "digon": 0}
        self.found: list[tuple[tuple[int, int], ...]] = []
        self.cands = []
        for v in range(self.n):
            nb = set(self.und[v])
            allowed = [w for w in range(self.n) if w != v and w not in nb]
            if spec.arc_distance_prune:
                dist = undirected_distances_from(base, v)
                allowed = [w for w in allowed if dist[w] is None or dist[w] >= 4]
            self.cands.append(allowed)

    # surplus of one root, stopping early once it exceeds the allowance
    def surplus(self, u: int) -> int:
        und, out, limit = self.und, self.out, self.allow
        seen = 1 << u
        dups = 0
        frontier = [(u, -1)]
        last = self.k - 1
        for depth in range(self.k):
            nxt = []
            for v, back in frontier:
                for w in und[v]:
                    if w != back:
                        bit = 1 << w
                        if seen & bit:
                            dups += 1
                            if dups > limit:
                                return dups
                        else:
                            seen |= bit
                        if depth < last:
                            nxt.append((w, v))
                for w in out[v]:
                    bit = 1 << w
                    if seen & bit:
                        dups += 1
                        if dups > limit:
                            return dups
                    else:
                        seen |= bit
                    if depth < last:
                        nxt.append((w, -1))
            frontier = nxt
        return dups

    def affected_roots(self, v: int) -> set[int]:
        roots = {v}
        frontier = [v]
        for _ in range(self.k - 1):
            nxt = []
            for x in frontier:
                for y in itertools.chain(self.und[x], self.in_arcs[x]):
                    if y not in roots:
                        roots.add(y)
                        nxt.append(y)
            frontier = nxt
        return roots

    def place(self, v: int, targets: tuple[int, ...]) -> bool:
        """Add arcs v -> targets; return False (and leave them in place) on a violation."""
        for w in targets:
            self.out[v].append(w)
            self.in_arcs[w].append(v)
            self.indeg[w] += 1
        self.nodes += 1
        if self.nodes > self.budget:
            raise BudgetExceeded(self.nodes, self.budget)
        for u in self.affected_roots(v):
            if self.surplus(u) > self.allow:
                self.prunes["surplus"] += 1
                return False
        return True

    def unplace(self, v: int, targets: tuple[int, ...]) -> None:
        for w in targets:
            self.out[v].pop()
            self.in_arcs[w].pop()
            self.indeg[w] -= 1

    def options(self, v: int) -> list[tuple[int, ...]]:
        cands = self.cands[v]
        # an arc against an existing arc would form a digon, which counts as an edge
        back = [w for w in cands if v in self.out[w]]
        if back:
            self.prunes["digon"] += len(back)
            cands = [w for w in cands if v not in self.out[w]]
        if self.total_regular:
            full = [w for w in cands if self.indeg[w] >= self.z]
            if full:
                self.prunes["in_degree"] += len(full)
                cands = [w for w in cands if self.indeg[w] < self.z]
        return list(itertools.combinations(cands, self.z))

    def run(self, prefix: list[tuple[int, ...]]) -> None:
        """Replay a fixed prefix of assignments, then search the remainder."""
        for i, targets in enumerate(prefix):
            v = self.order[i]
            if self.total_regular and any(self.indeg[w] >= self.z for w in targets):
                return
            if any(v in self.out[w] for w in targets):
                return
            if not self.place(v, targets):
                return
        self._dfs(len(prefix))

    def _dfs(self, i: int) -> bool:
        if i == self.n:
            if any(self.surplus(u) > self.allow for u in range(self.n)):
                self.prunes["surplus"] += 1
                return False
            self.found.append(tuple((v, w) for v in range(self.n) for w in self.out[v]))
            return self.first_only
        v = self.order[i]
        for targets in self.options(v):
            ok = self.place(v, targets)
            if ok and self._dfs(i + 1):
                self.unplace(v, targets)
                return True
            self.unplace(v, targets)
        return False


def _first_level(base: MixedGraph, spec: SearchSpec, engine: _Engine) -> list[tuple[int, ...]]:
    """Arc sets for vertex 0, one per orbit of the stabilizer of 0 in Aut(base)."""
    reps: dict[bytes, tuple[int, ...]] = {}
    for targets in engine.options(0):
        colors = [0] * base.n
        colors[0] = 1
        for w in targets:
            colors[w] = 2
        code = canonical_form(base, colors).code
        reps.setdefault(code, targets)
    return list(reps.values())


def _run_task(args) -> tuple[list, list[tuple[tuple[int, int], ...]], int, dict[str, int]]:
    base_edges, n, spec, prefix, budget = args
    eng = _Engine(MixedGraph(n, base_edges), spec, budget)
    eng.run(prefix)
    return base_edges, eng.found, eng.nodes, eng.prunes


def _tasks_for(base: MixedGraph, spec: SearchSpec) -> list[list[tuple[int, ...]]]:
    if base.n == 0:
        return [[]]
    first = _first_level(base, spec, _Engine(base, spec, spec.budget))
    tasks = [[t] for t in first]
    if spec.jobs > 1 and base.n > 1 and len(tasks) < 4 * spec.jobs:
        wider = []
        for (t0,) in tasks:
            eng = _Engine(base, spec, spec.budget)
            if not eng.place(0, t0):
                continue
            wider += [[t0, t1] for t1 in eng.options(1)]
        tasks = wider
    return tasks


# phase 3 ---------------------------------------------------------------------------------


def search_extremal(spec: SearchSpec) -> SearchResult:
    """All isomorphism classes of out-regular graphs of the target order meeting the mode's constraint."""
    start = time.perf_counter()
    n = spec.target_order
    floor = girth_floor_for(spec)
    bases = regular_graphs(n, spec.r, floor)
    log.info("target order %d, %d undirected classes (girth >= %d)", n, len(bases), floor)
    nodes = 0
    prunes: dict[str, int] = {}
    found: dict[bytes, MixedGraph] = {}
    tasks = [
        (sorted(base.edges), n, spec, prefix)
        for base in bases
        for prefix in _tasks_for(base, spec)
    ]

    def absorb(res) -> bool:
        nonlocal nodes
        base_edges, arcsets, cnt, pr = res
        nodes += cnt
        for key, val in pr.items():
            prunes[key] = prunes.get(key, 0) + val
        for arcs in arcsets:
            g = MixedGraph(n, base_edges, arcs)
            cf = canonical_form(g)
            found.setdefault(cf.code, cf.canonical_graph(g))
        if nodes > spec.budget:
            raise BudgetExceeded(nodes, spec.budget)
        return bool(found) and not spec.enumerate_all

    if spec.jobs == 1:
        for edges, nn, sp, prefix in tasks:
            try:
                res = _run_task((edges, nn, sp, prefix, spec.budget - nodes))
            except BudgetExceeded as exc:
                raise BudgetExceeded(nodes + exc.nodes, spec.budget) from None
            if absorb(res):
                break
    else:
        with ProcessPoolExecutor(max_workers=spec.jobs) as pool:
            pending = {pool.submit(_run_task, (*t, spec.budget)) for t in tasks}
            stop = False
            while pending and not stop:
                done, pending = wait(pending, return_when=FIRST_COMPLETED)
                for fut in done:
                    stop = absorb(fut.result()) or stop
            for fut in pending:
                fut.cancel()

    codes = sorted(found)
    graphs = [found[c] for c in codes]
    for g in graphs:
        rep = check_graph(g, spec.r, spec.z, spec.k, spec.mode)
        expect = spec.slack
        got = rep.delta if spec.mode == DEFECT else rep.epsilon
        if got != expect:
            raise AssertionError(f"search produced a graph that fails certification: {rep.classification}")
    return SearchResult(
        spec=spec,
        graphs=graphs,
        codes=codes,
        nodes=nodes,
        prunes=prunes,
        undirected_classes=len(bases),
        girth_floor=floor,
        wall_time=time.perf_counter() - start,
    )
