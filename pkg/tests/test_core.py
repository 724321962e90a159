from __future__ import annotations

import math
import pickle

import pytest
from conftest import mixed_graphs
from hypothesis import given, settings

import oracles
from mixedmoore.constructions import undirected_cycle
from mixedmoore.core import (
    GraphError,
    MixedGraph,
    count_nbt_walks,
    degrees,
    diameter,
    distance,
    distances_from,
    neighborhoods,
    nbt_count_matrix,
)


def test_rejects_loops_and_conflicts():
    with pytest.raises(GraphError):
        MixedGraph(2, [(0, 0)])
    with pytest.raises(GraphError):
        MixedGraph(2, [], [(1, 1)])
    with pytest.raises(GraphError):
        MixedGraph(2, [(0, 1)], [(0, 1)])
    with pytest.raises(GraphError):
        MixedGraph(2, [(0, 1)], [(1, 0)])
    with pytest.raises(GraphError):
        MixedGraph(2, [(0, 2)])
    with pytest.raises(GraphError):
        MixedGraph(-1)


def test_edges_are_sets():
    g = MixedGraph(3, [(0, 1), (1, 0)], [(1, 2), (1, 2)])
    assert g.edges == {(0, 1)}
    assert g.arcs == {(1, 2)}


def test_digon_is_allowed():
    g = MixedGraph(2, [], [(0, 1), (1, 0)])
    assert len(g.arcs) == 2


def test_degrees_fixtures(fig1, fig6):
    for g in (fig1, fig6):
        prof = degrees(g)
        assert all(prof.triple(u) == (2, 1, 1) for u in range(g.n))
        assert prof.is_out_regular()
    prof = degrees(MixedGraph(2, [(0, 1)]))
    assert prof.triple(0) == prof.triple(1) == (1, 0, 0)


def test_neighborhoods(fig1, fig6):
    nb = neighborhoods(fig6, 0)
    assert nb.undirected == {1, 11}
    assert nb.out_arcs == {4}
    assert nb.out_neighbors == {1, 11, 4}
    assert nb.in_arcs == {8}
    assert neighborhoods(fig1, 1).out_arcs == {5}  # drawn as v2 -> v6
    iso = neighborhoods(MixedGraph(3, [(0, 1)]), 2)
    assert not iso.undirected and not iso.out_arcs and not iso.in_arcs


def test_walk_counts_small_cases():
    c5 = undirected_cycle(5)
    assert count_nbt_walks(c5, 0, 1, 2) == 1
    c4 = undirected_cycle(4)
    assert count_nbt_walks(c4, 0, 2, 2) == 2
    digon = MixedGraph(2, [], [(0, 1), (1, 0)])
    assert count_nbt_walks(digon, 0, 0, 2) == 1
    # an edge traversed back and forth is the one forbidden pattern
    assert count_nbt_walks(MixedGraph(2, [(0, 1)]), 0, 0, 2) == 0
    with pytest.raises(ValueError):
        count_nbt_walks(c5, 0, 1, 0)


@settings(max_examples=150, deadline=None)
@given(mixed_graphs(max_n=6))
def test_walk_counts_match_enumeration(g):
    for k in (1, 2, 3):
        mat = nbt_count_matrix(g, k)
        for u in range(g.n):
            ref = oracles.walk_counts(g.n, g.edges, g.arcs, u, k)
            assert mat[u] == [ref[v] for v in range(g.n)]


def test_distances(fig1, fig6):
    assert diameter(fig1) == 2
    assert distance(fig6, 0, 6) == 3
    for u in range(fig6.n):
        assert distance(fig6, u, u) == 0
    assert distances_from(MixedGraph(2, [], [(0, 1)]), 1) == [None, 0]
    assert diameter(MixedGraph(2, [], [(0, 1)])) == math.inf


@settings(max_examples=100, deadline=None)
@given(mixed_graphs(max_n=7))
def test_diameter_matches_bfs_oracle(g):
    assert diameter(g) == oracles.bfs_diameter(g.n, g.edges, g.arcs)


@settings(max_examples=50, deadline=None)
@given(mixed_graphs(max_n=7))
def test_relabel_and_pickle_roundtrip(g):
    perm = list(reversed(range(g.n)))
    h = g.relabel(perm)
    assert h.relabel(perm) == g
    assert pickle.loads(pickle.dumps(g)) == g
    assert sorted(degrees(g).undirected) == sorted(degrees(h).undirected)
