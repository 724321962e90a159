"""Certificates for graphs near the mixed Moore bound."""

from __future__ import annotations

from collections import Counter
from dataclasses import asdict, dataclass, field
from typing import Iterable

import numpy as np

from .bounds import moore_bound
from .core import (
    ARC,
    EDGE,
    GraphError,
    MixedGraph,
    DegreeProfile,
    degrees,
    diameter,
    out_neighbors,
    undirected_components,
    undirected_distances_from,
    walk_endpoint_counts,
)

PASS, FAIL, VACUOUS = "pass", "fail", "vacuous"
DEFECT, EXCESS = "defect", "excess"


class PreconditionError(GraphError):
    """A certificate was requested for a graph outside its domain."""


class DegreeViolation(PreconditionError):
    def __init__(self, message: str, vertices: list[int]):
        super().__init__(message)
        self.vertices = vertices


# Moore trees -------------------------------------------------------------------


@dataclass(frozen=True)
class TreeEntry:
    vertex: int
    level: int
    parent: int  # index into MooreTree.entries, -1 for the root
    step: str | None  # EDGE, ARC, or None for the root


@dataclass(frozen=True)
class MooreTree:
    root: int
    k: int
    entries: tuple[TreeEntry, ...]
    duplicates: dict[int, int]  # vertex -> number of appearances (>= 2)
    missing: frozenset[int]

    @property
    def surplus(self) -> int:
        return sum(c - 1 for c in self.duplicates.values())


def moore_tree(g: MixedGraph, u: int, k: int) -> MooreTree:
    """All non-backtracking walks of length <= k from ``u``, breadth first.

    Children of a node are its edge-neighbours in ascending order (minus the
    vertex just left by an edge) followed by its arc-neighbours ascending.
    """
    if not 0 <= u < g.n:
        raise GraphError(f"vertex {u} out of range")
    if k < 1:
        raise ValueError("k must be >= 1")
    entries = [TreeEntry(u, 0, -1, None)]
    level_start = 0
    for level in range(1, k + 1):
        level_end = len(entries)
        for idx in range(level_start, level_end):
            e = entries[idx]
            back = entries[e.parent].vertex if e.step == EDGE else -1
            for w in g.und(e.vertex):
                if w != back:
                    entries.append(TreeEntry(w, level, idx, EDGE))
            for w in g.out(e.vertex):
                entries.append(TreeEntry(w, level, idx, ARC))
        level_start = level_end
    counts = Counter(e.vertex for e in entries)
    dups = {v: c for v, c in sorted(counts.items()) if c >= 2}
    missing = frozenset(range(g.n)) - frozenset(counts)
    return MooreTree(u, k, tuple(entries), dups, missing)


def tree_to_dot(tree: MooreTree) -> str:
    lines = ["digraph MooreTree {"]
    for i, e in enumerate(tree.entries):
        lines.append(f'  u{i} [label="u{i}\\nv{e.vertex}"];')
    for i, e in enumerate(tree.entries):
        if e.parent >= 0:
            attr = " [dir=none]" if e.step == EDGE else ""
            lines.append(f"  u{e.parent} -> u{i}{attr};")
    lines.append("}")
    return "\n".join(lines) + "\n"


# geodecity ---------------------------------------------------------------------


@dataclass(frozen=True)
class GeodecityVerdict:
    geodetic: bool
    violation: tuple[int, int] | None = None  # first (u, v) with too many walks
    walks: int = 0

    def __bool__(self) -> bool:
        return self.geodetic


def is_k_geodetic(g: MixedGraph, k: int) -> GeodecityVerdict:
    """At most one walk of length 1..k between distinct vertices, none from a vertex to itself."""
    if k < 1:
        raise ValueError("k must be >= 1")
    for u in range(g.n):
        counts = walk_endpoint_counts(g, u, k)
        for v, c in enumerate(counts):
            limit = 0 if v == u else 1
            if c > limit:
                return GeodecityVerdict(False, (u, v), c)
    return GeodecityVerdict(True)


# repeats / outliers ---------------------------------------------------------------


def repeats(g: MixedGraph, k: int) -> dict[int, int]:
    """Map each vertex to the unique vertex appearing twice in its Moore tree."""
    out = {}
    for u in range(g.n):
        t = moore_tree(g, u, k)
        if len(t.duplicates) != 1 or next(iter(t.duplicates.values())) != 2:
            raise PreconditionError(
                f"not defect-one: Moore tree at {u} has duplicates {t.duplicates}"
            )
        out[u] = next(iter(t.duplicates))
    return out


def outliers(g: MixedGraph, k: int) -> dict[int, int]:
    """Map each vertex to the unique vertex its Moore tree misses."""
    out = {}
    for u in range(g.n):
        t = moore_tree(g, u, k)
        if len(t.missing) != 1:
            raise PreconditionError(f"not excess-one: Moore tree at {u} misses {sorted(t.missing)}")
        out[u] = next(iter(t.missing))
    return out


def deficiency_sets(g: MixedGraph, z: int) -> tuple[frozenset[int], frozenset[int]]:
    """(S, S'): vertices with in-degree below z, and above z."""
    ins = degrees(g).inn
    return (
        frozenset(v for v in range(g.n) if ins[v] < z),
        frozenset(v for v in range(g.n) if ins[v] > z),
    )


def total_regularity(g: MixedGraph, r: int, z: int) -> bool:
    p = degrees(g)
    return all(p.triple(u) == (r, z, z) for u in range(g.n))


def is_automorphism(g: MixedGraph, perm: dict[int, int] | list[int]) -> bool:
    images = [perm[u] for u in range(g.n)]
    if sorted(images) != list(range(g.n)):
        return False
    return g.relabel(images) == g


# matrix identities ---------------------------------------------------------------


def adjacency_matrix(g: MixedGraph) -> np.ndarray:
    a = np.zeros((g.n, g.n), dtype=np.int64)
    for u, v in g.edges:
        a[u, v] = a[v, u] = 1
    for u, v in g.arcs:
        a[u, v] = 1
    return a


def walk_matrix(g: MixedGraph) -> np.ndarray:
    """I + A + A^2: all walks of length <= 2, backtracking ones included."""
    a = adjacency_matrix(g)
    return np.eye(g.n, dtype=np.int64) + a + a @ a


def _common_undirected_degree(g: MixedGraph) -> int:
    und = set(degrees(g).undirected)
    if len(und) != 1:
        raise PreconditionError("undirected degree is not constant")
    return und.pop()


def _map_matrix(n: int, mapping: dict[int, int]) -> np.ndarray:
    m = np.zeros((n, n), dtype=np.int64)
    for u, v in mapping.items():
        m[u, v] = 1
    return m


@dataclass(frozen=True)
class IdentityVerdict:
    holds: bool
    mismatches: tuple[tuple[int, int], ...] = ()

    def __bool__(self) -> bool:
        return self.holds


def matrix_identity_defect(g: MixedGraph) -> IdentityVerdict:
    """Check I + A + A^2 = J + rI + P entrywise, P the repeat permutation matrix (k = 2)."""
    rep = repeats(g, 2)
    r = _common_undirected_degree(g)
    n = g.n
    rhs = np.ones((n, n), dtype=np.int64) + r * np.eye(n, dtype=np.int64) + _map_matrix(n, rep)
    diff = walk_matrix(g) != rhs
    return IdentityVerdict(not diff.any(), tuple(map(tuple, np.argwhere(diff).tolist())))


def matrix_identity_excess(g: MixedGraph, r: int) -> IdentityVerdict:
    """Check I + A + A^2 = J + rI - O entrywise, O the outlier matrix (k = 2)."""
    out = outliers(g, 2)
    if any(d != r for d in degrees(g).undirected):
        raise PreconditionError(f"undirected degree is not {r} everywhere")
    n = g.n
    rhs = np.ones((n, n), dtype=np.int64) + r * np.eye(n, dtype=np.int64) - _map_matrix(n, out)
    diff = walk_matrix(g) != rhs
    return IdentityVerdict(not diff.any(), tuple(map(tuple, np.argwhere(diff).tolist())))


def repeats_from_matrix(g: MixedGraph, r: int) -> dict[int, int]:
    """Repeat map read off (I + A + A^2) - J - rI; raises if that is not a 0/1 function matrix."""
    p = walk_matrix(g) - np.ones((g.n, g.n), dtype=np.int64) - r * np.eye(g.n, dtype=np.int64)
    return _function_from_matrix(p, "repeat")


def outliers_from_matrix(g: MixedGraph, r: int) -> dict[int, int]:
    o = np.ones((g.n, g.n), dtype=np.int64) + r * np.eye(g.n, dtype=np.int64) - walk_matrix(g)
    return _function_from_matrix(o, "outlier")


def _function_from_matrix(m: np.ndarray, what: str) -> dict[int, int]:
    if ((m != 0) & (m != 1)).any() or (m.sum(axis=1) != 1).any():
        raise PreconditionError(f"{what} matrix is not a 0/1 function matrix")
    return {int(i): int(j) for i, j in np.argwhere(m == 1).tolist()}


# structure audit --------------------------------------------------------------------


@dataclass(frozen=True)
class AuditCheck:
    name: str
    outcome: str  # PASS, FAIL or VACUOUS
    detail: str = ""


def _verdict(ok: bool) -> str:
    return PASS if ok else FAIL


def _image(f: dict[int, int], vs: Iterable[int]) -> frozenset[int]:
    return frozenset(f[v] for v in vs)


def structure_audit(g: MixedGraph, r: int, z: int, k: int, mode: str) -> list[AuditCheck]:
    """Evaluate the structural facts on a concrete defect-1 or excess-1 graph.

    The deficiency-set checks are reported as vacuous when S and S' are both
    empty, since they only constrain graphs that are not totally regular.
    Checks that need the repeat or outlier map fail when the map does not
    exist; the remaining checks still run.
    """
    if mode not in (DEFECT, EXCESS):
        raise PreconditionError(f"unknown mode {mode!r}")
    bound, _ = moore_bound(r, z, k)
    if mode == DEFECT and g.n != bound - 1:
        raise PreconditionError(f"defect audit needs order {bound - 1}, got {g.n}")
    if mode == EXCESS and g.n != bound + 1:
        raise PreconditionError(f"excess audit needs order {bound + 1}, got {g.n}")
    S, Sp = deficiency_sets(g, z)
    ins = degrees(g).inn
    regular = not S and not Sp
    nbr = [out_neighbors(g, u) for u in range(g.n)]
    checks: list[AuditCheck] = []

    def add(name: str, ok: bool, detail: str = "") -> None:
        checks.append(AuditCheck(name, VACUOUS if regular else _verdict(ok), detail))

    def missing_map(names: list[str], why: str) -> None:
        for name in names:
            checks.append(AuditCheck(name, FAIL, why))

    if mode == DEFECT:
        add(
            "in_degree_balance",
            sum(ins[v] - z for v in Sp) == sum(z - ins[v] for v in S),
        )
        try:
            rep = repeats(g, k)
        except PreconditionError as exc:
            missing_map(
                [
                    "S_in_out_nbhd_of_each_repeat",
                    "Sprime_in_repeats_of_out_nbhd",
                    "S_equals_out_nbhd_of_repeat",
                ],
                f"no repeat map: {exc}",
            )
            return checks
        add(
            "S_in_out_nbhd_of_each_repeat",
            all(ins[v] == z - 1 for v in S) and all(S <= nbr[rep[u]] for u in range(g.n)),
        )
        add(
            "Sprime_in_repeats_of_out_nbhd",
            all(Sp <= _image(rep, nbr[u]) for u in range(g.n)),
        )
        add("S_equals_out_nbhd_of_repeat", all(S == nbr[rep[u]] for u in range(g.n)))
        return checks

    try:
        out = outliers(g, k)
    except PreconditionError as exc:
        out = None
        missing_map(
            ["S_is_outlier_of_out_neighbours", "Sprime_equals_out_nbhd_of_outlier"],
            f"no outlier map: {exc}",
        )
    if out is not None:
        if z == 1:
            add(
                "S_is_outlier_of_out_neighbours",
                all(out[w] == v for v in S for w in g.out(v)),
            )
        else:
            checks.append(AuditCheck("S_is_outlier_of_out_neighbours", VACUOUS, "stated for z = 1 only"))
        add(
            "Sprime_equals_out_nbhd_of_outlier",
            all(Sp == nbr[out[u]] for u in range(g.n))
            and all(S <= (frozenset(g.und(v)) | frozenset(g.inn(v))) for v in Sp),
        )
    if (r, z, k) == (2, 1, 2):
        bad = []
        for u, v in g.sorted_arcs():
            d = undirected_distances_from(g, u)[v]
            if d is not None and d < 4:
                bad.append((u, v))
        checks.append(
            AuditCheck(
                "arcs_span_undirected_distance_4",
                _verdict(not bad),
                f"arcs too short: {bad}" if bad else "",
            )
        )
        checks.append(
            AuditCheck(
                "undirected_part_is_hamiltonian_cycle",
                _verdict(is_single_cycle(g)),
            )
        )
    return checks


def is_single_cycle(g: MixedGraph) -> bool:
    """True iff the undirected subgraph is one cycle through every vertex."""
    if g.n < 3 or any(len(g.und(u)) != 2 for u in range(g.n)):
        return False
    return len(undirected_components(g)) == 1


# full report ------------------------------------------------------------------------


@dataclass
class CheckReport:
    n: int
    r: int
    z: int
    k: int
    mode: str
    moore_bound: int
    degree_profile: DegreeProfile
    geodetic: bool
    diameter: float | int
    classification: str
    delta: int | None
    epsilon: int | None
    repeats: dict[int, int] | None
    outliers: dict[int, int] | None
    S: list[int]
    Sprime: list[int]
    totally_regular: bool
    audits: list[AuditCheck] = field(default_factory=list)

    @property
    def in_family(self) -> bool:
        return self.classification != "out-of-family"

    def to_dict(self) -> dict:
        diam = self.diameter if self.diameter != float("inf") else None
        return {
            "n": self.n,
            "r": self.r,
            "z": self.z,
            "k": self.k,
            "mode": self.mode,
            "moore_bound": self.moore_bound,
            "classification": self.classification,
            "delta": self.delta,
            "epsilon": self.epsilon,
            "geodetic": self.geodetic,
            "diameter": diam,
            "totally_regular": self.totally_regular,
            "repeats": None if self.repeats is None else {str(u): v for u, v in self.repeats.items()},
            "outliers": None if self.outliers is None else {str(u): v for u, v in self.outliers.items()},
            "S": self.S,
            "Sprime": self.Sprime,
            "audits": [asdict(a) for a in self.audits],
        }

    def to_text(self) -> str:
        d = self.to_dict()
        lines = []
        for key in ("classification", "delta", "epsilon", "geodetic", "diameter", "totally_regular"):
            lines.append(f"{key}: {_fmt(d[key])}")
        for key in ("repeats", "outliers"):
            val = d[key]
            lines.append(f"{key}: " + ("-" if val is None else " ".join(f"{u}->{v}" for u, v in val.items())))
        lines.append("S: " + (" ".join(map(str, self.S)) or "-"))
        lines.append("Sprime: " + (" ".join(map(str, self.Sprime)) or "-"))
        for a in self.audits:
            lines.append(f"audit {a.name}: {a.outcome}" + (f" ({a.detail})" if a.detail else ""))
        return "\n".join(lines) + "\n"


def _fmt(v) -> str:
    if v is None:
        return "-"
    if isinstance(v, bool):
        return "true" if v else "false"
    return str(v)


def check_graph(g: MixedGraph, r: int, z: int, k: int, mode: str) -> CheckReport:
    """Classify ``g`` against the (r, z, k) Moore bound in defect or excess mode.

    Raises DegreeViolation when the degree bounds of the mode fail.
    """
    if mode not in (DEFECT, EXCESS):
        raise PreconditionError(f"unknown mode {mode!r}")
    prof = degrees(g)
    if mode == DEFECT:
        bad = [u for u in range(g.n) if prof.undirected[u] > r or prof.out[u] > z]
        if bad:
            raise DegreeViolation(f"vertices exceed undirected degree {r} or out-degree {z}: {bad}", bad)
    else:
        bad = [u for u in range(g.n) if prof.undirected[u] < r or prof.out[u] < z]
        if bad:
            raise DegreeViolation(f"vertices below undirected degree {r} or out-degree {z}: {bad}", bad)
    bound, _ = moore_bound(r, z, k)
    geo = bool(is_k_geodetic(g, k))
    diam = diameter(g)
    S, Sp = deficiency_sets(g, z)
    delta = epsilon = None
    reps = outs = None
    if mode == DEFECT:
        if g.n > bound or diam > k:
            cls = "out-of-family"
        else:
            delta = bound - g.n
            cls = "moore" if delta == 0 else f"defect {delta}"
            if delta == 1:
                # undefined when some tree has no repeat (possible only off out-regularity)
                try:
                    reps = repeats(g, k)
                except PreconditionError:
                    reps = None
    else:
        if g.n < bound or not geo:
            cls = "out-of-family"
        else:
            epsilon = g.n - bound
            cls = "moore" if epsilon == 0 else f"excess {epsilon}"
            if epsilon == 1:
                try:
                    outs = outliers(g, k)
                except PreconditionError:
                    outs = None
    audits: list[AuditCheck] = []
    if reps is not None or outs is not None:
        audits = structure_audit(g, r, z, k, mode)
    return CheckReport(
        n=g.n,
        r=r,
        z=z,
        k=k,
        mode=mode,
        moore_bound=bound,
        degree_profile=prof,
        geodetic=geo,
        diameter=diam,
        classification=cls,
        delta=delta,
        epsilon=epsilon,
        repeats=reps,
        outliers=outs,
        S=sorted(S),
        Sprime=sorted(Sp),
        totally_regular=total_regularity(g, r, z),
        audits=audits,
    )
