from __future__ import annotations

import json
import random
from collections import Counter

import numpy as np
import pytest
from conftest import mixed_graphs, random_permutation
from hypothesis import given, settings

import oracles
from mixedmoore.certify import (
    FAIL,
    PASS,
    VACUOUS,
    DegreeViolation,
    PreconditionError,
    check_graph,
    deficiency_sets,
    is_automorphism,
    is_k_geodetic,
    matrix_identity_defect,
    matrix_identity_excess,
    moore_tree,
    outliers,
    outliers_from_matrix,
    repeats,
    repeats_from_matrix,
    structure_audit,
    total_regularity,
    tree_to_dot,
    walk_matrix,
)
from mixedmoore.constructions import kautz_collapse, undirected_cycle
from mixedmoore.core import MixedGraph

FIG1_REPEATS = {0: 3, 1: 4, 2: 0, 3: 1, 4: 2, 5: 9, 6: 5, 7: 6, 8: 7, 9: 8}


def test_fig1_trees_have_one_repeat(fig1):
    for u in range(fig1.n):
        t = moore_tree(fig1, u, 2)
        assert len(t.entries) == 11
        assert list(t.duplicates.values()) == [2]
        assert not t.missing


def test_fig6_tree_from_v0(fig6):
    t = moore_tree(fig6, 0, 2)
    assert not t.duplicates
    assert t.missing == {6}
    # children: edges ascending (skipping the way back), then arcs
    assert [e.vertex for e in t.entries] == [0, 1, 11, 4, 2, 9, 10, 7, 3, 5, 8]
    walks = oracles.enumerate_walks(fig6.n, fig6.edges, fig6.arcs, 0, 2)
    assert Counter(e.vertex for e in t.entries[1:]) == Counter(w[-1] for w in walks)


def test_tree_that_is_its_own_moore_tree():
    # a root with two edge children, each with one arc child: r = 2, z = 1 at the root only
    g = MixedGraph(5, [(0, 1), (0, 2)], [(1, 3), (2, 4)])
    t = moore_tree(g, 0, 2)
    assert not t.duplicates and not t.missing


def test_tree_dot_labels(fig6):
    dot = tree_to_dot(moore_tree(fig6, 0, 2))
    assert 'u0 [label="u0\\nv0"]' in dot
    assert "u0 -> u1 [dir=none];" in dot
    assert "u0 -> u3;" in dot


@settings(max_examples=100, deadline=None)
@given(mixed_graphs(max_n=6))
def test_tree_surplus_matches_enumeration(g):
    for k in (1, 2, 3):
        for u in range(g.n):
            assert moore_tree(g, u, k).surplus == oracles.tree_surplus_bruteforce(g.n, g.edges, g.arcs, u, k)


def test_geodecity(fig1, fig6):
    assert is_k_geodetic(fig6, 2)
    v = is_k_geodetic(fig1, 2)
    assert not v and v.violation is not None
    assert not is_k_geodetic(undirected_cycle(4), 2)
    assert is_k_geodetic(undirected_cycle(5), 2)


@settings(max_examples=150, deadline=None)
@given(mixed_graphs(max_n=6))
def test_geodecity_matches_enumeration(g):
    for k in (1, 2, 3):
        assert bool(is_k_geodetic(g, k)) == oracles.geodetic_bruteforce(g.n, g.edges, g.arcs, k)


def test_fig1_repeats(fig1):
    rep = repeats(fig1, 2)
    assert rep == FIG1_REPEATS
    assert is_automorphism(fig1, rep)
    assert repeats_from_matrix(fig1, 2) == rep


def test_repeats_equivariant(fig1):
    rng = random.Random(7)
    rep = repeats(fig1, 2)
    for _ in range(20):
        p = random_permutation(fig1.n, rng)
        assert repeats(fig1.relabel(p), 2) == {p[u]: p[v] for u, v in rep.items()}


def test_repeats_and_outliers_preconditions(fig1, fig6):
    with pytest.raises(PreconditionError):
        repeats(fig6, 2)
    with pytest.raises(PreconditionError):
        outliers(fig1, 2)


def test_fig6_outliers(fig6):
    out = outliers(fig6, 2)
    assert out[0] == 6
    assert sorted(out.values()) == list(range(12))
    assert out == {u: (u + 6) % 12 for u in range(12)}
    assert outliers_from_matrix(fig6, 2) == out
    # oracle: the only vertex no walk of length <= 2 reaches
    for u in range(fig6.n):
        reached = {w[-1] for w in oracles.enumerate_walks(fig6.n, fig6.edges, fig6.arcs, u, 2)} | {u}
        assert set(range(12)) - reached == {out[u]}


def test_deficiency_sets(fig1, fig6):
    assert deficiency_sets(fig1, 1) == (frozenset(), frozenset())
    assert deficiency_sets(fig6, 1) == (frozenset(), frozenset())
    g = MixedGraph(4, [], [(0, 1), (1, 2), (2, 0), (3, 0)])
    assert deficiency_sets(g, 1) == ({3}, {0})
    assert total_regularity(fig1, 2, 1) and total_regularity(fig6, 2, 1)
    assert not total_regularity(g, 0, 1)


def test_matrix_identity_defect(fig1, fig6):
    v = matrix_identity_defect(fig1)
    assert v.holds and not v.mismatches
    p = random_permutation(fig1.n, random.Random(3))
    assert matrix_identity_defect(fig1.relabel(p)).holds
    with pytest.raises(PreconditionError):
        matrix_identity_defect(fig6)


def test_matrix_identity_excess(fig1, fig6):
    assert matrix_identity_excess(fig6, 2).holds
    p = random_permutation(fig6.n, random.Random(5))
    assert matrix_identity_excess(fig6.relabel(p), 2).holds
    with pytest.raises(PreconditionError):
        matrix_identity_excess(fig1, 2)


def test_walk_matrix_oracle(fig6):
    # I + A + A^2 = I + (non-backtracking walks of length <= 2) + r I
    n = fig6.n
    nbt = np.array([[oracles.walk_counts(n, fig6.edges, fig6.arcs, u, 2)[v] for v in range(n)] for u in range(n)])
    assert np.array_equal(walk_matrix(fig6), np.eye(n, dtype=int) * 3 + nbt)
    outlier = np.zeros((n, n), dtype=int)
    for u in range(n):
        outlier[u, (u + 6) % n] = 1
    assert np.array_equal(walk_matrix(fig6), np.ones((n, n), dtype=int) + 2 * np.eye(n, dtype=int) - outlier)


def test_audit_fig1(fig1):
    checks = {c.name: c.outcome for c in structure_audit(fig1, 2, 1, 2, "defect")}
    assert checks == {
        "S_in_out_nbhd_of_each_repeat": VACUOUS,
        "in_degree_balance": VACUOUS,
        "Sprime_in_repeats_of_out_nbhd": VACUOUS,
        "S_equals_out_nbhd_of_repeat": VACUOUS,
    }


def test_audit_fig6(fig6):
    checks = {c.name: c.outcome for c in structure_audit(fig6, 2, 1, 2, "excess")}
    assert checks["arcs_span_undirected_distance_4"] == PASS
    assert checks["undirected_part_is_hamiltonian_cycle"] == PASS
    assert checks["Sprime_equals_out_nbhd_of_outlier"] == VACUOUS


def test_audit_short_arc_fails():
    cycle = [(i, (i + 1) % 12) for i in range(12)]
    arcs = [(i, (i + 4) % 12) for i in range(1, 12)] + [(0, 2)]
    checks = {c.name: c for c in structure_audit(MixedGraph(12, cycle, arcs), 2, 1, 2, "excess")}
    short = checks["arcs_span_undirected_distance_4"]
    assert short.outcome == FAIL and "(0, 2)" in short.detail
    assert checks["undirected_part_is_hamiltonian_cycle"].outcome == PASS


def test_audit_two_hexagons_fail_hamiltonicity():
    edges = [(i, (i + 1) % 6) for i in range(6)] + [(6 + i, 6 + (i + 1) % 6) for i in range(6)]
    arcs = [(i, 6 + i) for i in range(6)] + [(6 + i, (i + 3) % 6) for i in range(6)]
    checks = {c.name: c.outcome for c in structure_audit(MixedGraph(12, edges, arcs), 2, 1, 2, "excess")}
    assert checks["undirected_part_is_hamiltonian_cycle"] == FAIL


def test_audit_needs_the_right_order(fig6):
    with pytest.raises(PreconditionError):
        structure_audit(fig6, 2, 1, 2, "defect")


def test_check_fig1(fig1):
    rep = check_graph(fig1, 2, 1, 2, "defect")
    assert rep.classification == "defect 1" and rep.delta == 1
    assert rep.diameter == 2 and rep.totally_regular
    assert rep.repeats == FIG1_REPEATS
    assert all(a.outcome == VACUOUS for a in rep.audits)


def test_check_fig6(fig6):
    rep = check_graph(fig6, 2, 1, 2, "excess")
    assert rep.classification == "excess 1" and rep.epsilon == 1
    assert rep.geodetic and rep.totally_regular and rep.diameter == 3
    assert rep.outliers[0] == 6


def test_check_kautz_is_moore():
    rep = check_graph(kautz_collapse(1), 1, 1, 2, "defect")
    assert rep.classification == "moore" and rep.delta == 0


def test_check_degree_violation(fig6):
    with pytest.raises(DegreeViolation) as exc:
        check_graph(fig6, 1, 1, 2, "defect")
    assert exc.value.vertices == list(range(12))
    with pytest.raises(DegreeViolation):
        check_graph(fig6, 3, 1, 2, "excess")


def test_check_out_of_family(fig1, fig6):
    assert check_graph(fig1, 2, 1, 2, "excess").classification == "out-of-family"
    assert check_graph(fig6, 2, 1, 2, "defect").classification == "out-of-family"
    # order M - 1 with diameter 2 but two repeats in some tree
    assert not check_graph(undirected_cycle(4), 2, 1, 1, "defect").in_family


def test_report_json_roundtrip(fig1, fig6):
    for g, mode in ((fig1, "defect"), (fig6, "excess")):
        d = check_graph(g, 2, 1, 2, mode).to_dict()
        assert json.loads(json.dumps(d)) == d
        assert d["classification"] in ("defect 1", "excess 1")


def test_defect_one_without_repeat_map():
    # order M(2,1,1) - 1 = 3, diameter 1, but vertex 1 has no arc: no repeats at all
    g = MixedGraph(3, [(0, 1), (1, 2)], [(0, 2), (2, 0)])
    rep = check_graph(g, 2, 1, 1, "defect")
    assert rep.classification == "defect 1"
    assert rep.repeats is None and not rep.audits
