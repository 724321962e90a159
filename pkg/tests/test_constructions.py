from __future__ import annotations

import itertools

import pytest

import oracles
from mixedmoore.canon import are_isomorphic
from mixedmoore.certify import check_graph, is_automorphism, total_regularity
from mixedmoore.constructions import (
    DihedralGroup,
    GeneratorError,
    almost_moore_10,
    dihedral_cayley,
    excess_one_12,
    kautz_collapse,
    left_multiplication,
)
from mixedmoore.core import degrees, undirected_components


def _perm_dihedral(m):
    """D_m as symmetries of the m-gon: independent of the (i, f) encoding."""
    x = tuple((i + 1) % m for i in range(m))
    y = tuple((-i) % m for i in range(m))
    e = tuple(range(m))

    def compose(p, q):  # p then q
        return tuple(q[p[i]] for i in range(m))


    elements = {e}
    frontier = [e]
    while frontier:
        nxt = []
        for g in frontier:
            for s in (x, y):
                h = compose(g, s)
                if h not in elements:
                    elements.add(h)
                    nxt.append(h)
        frontier = nxt
    return x, y, e, compose, sorted(elements)


def _perm_cayley(m, arc_gens, edge_gens):
    x, y, e, compose, elements = _perm_dihedral(m)

    def power(g, k):
        out = e
        for _ in range(k % (2 * m)):
            out = compose(out, g)
        return out

    gens = {"x": x, "y": y, "e": e}

    def evaluate(w):
        g = e
        for letter, exp in oracles_tokens(w):
            g = compose(g, power(gens[letter], exp))
        return g

    index = {g: i for i, g in enumerate(elements)}
    arcs = {(index[g], index[compose(evaluate(w), g)]) for g in elements for w in arc_gens}
    edges = {tuple(sorted((index[g], index[compose(evaluate(w), g)]))) for g in elements for w in edge_gens}
    return len(elements), sorted(edges), sorted(arcs)


def oracles_tokens(word):
    out = []
    i = 0
    while i < len(word):
        letter = word[i]
        i += 1
        exp = 1
        if i < len(word) and word[i] == "^":
            j = i + 1
            while j < len(word) and (word[j].isdigit() or word[j] == "-"):
                j += 1
            exp = int(word[i + 1 : j])
            i = j
        out.append((letter, exp))
    return out


def test_fig1_shape():
    g = almost_moore_10()
    assert (g.n, len(g.edges), len(g.arcs)) == (10, 10, 10)
    assert check_graph(g, 2, 1, 2, "defect").delta == 1
    assert total_regularity(g, 2, 1)


def test_fig6_shape(fig6):
    assert (fig6.n, len(fig6.edges), len(fig6.arcs)) == (12, 12, 12)
    rep = check_graph(fig6, 2, 1, 2, "excess")
    assert rep.geodetic and rep.epsilon == 1
    assert len(undirected_components(fig6)) == 1
    assert all(len(fig6.und(u)) == 2 for u in range(12))
    # every arc jumps by 4 or 8 around the cycle
    assert {(v - u) % 12 for u, v in fig6.arcs} == {4, 8}


def test_dihedral_group_axioms():
    for m in range(1, 9):
        grp = DihedralGroup(m)
        assert grp.verify_axioms()
        assert len(set(grp.elements())) == 2 * m
        x, y = grp.evaluate("x"), grp.evaluate("y")
        assert grp.mul(grp.mul(y, x), y) == grp.inverse(x)
        assert grp.evaluate("x^-1") == grp.inverse(x)
        assert grp.evaluate(f"x^{m}") == grp.identity


def test_fig6_as_cayley_graph(fig6):
    g = dihedral_cayley(6, ["x^2"], ["y", "xy"])
    assert are_isomorphic(g, fig6)
    assert oracles.nx_isomorphic(12, (g.edges, g.arcs), (fig6.edges, fig6.arcs))


@pytest.mark.parametrize(
    "m, arcs, edges",
    [(6, ["x^2"], ["y", "xy"]), (6, ["x^2"], ["x^3"]), (5, ["x"], ["y"]), (4, ["x"], ["xy"])],
)
def test_cayley_matches_permutation_model(m, arcs, edges):
    g = dihedral_cayley(m, arcs, edges)
    n, e_ref, a_ref = _perm_cayley(m, arcs, edges)
    assert g.n == n
    # the two models label elements differently; compare up to isomorphism (left vs right action)
    assert oracles.nx_isomorphic(n, (g.edges, g.arcs), (e_ref, a_ref))


def test_cayley_graphs_are_vertex_transitive():
    m = 6
    g = dihedral_cayley(m, ["x^2"], ["y", "xy"])
    for w in ("x", "y", "xy", "x^3y"):
        assert is_automorphism(g, left_multiplication(m, w))


def test_cayley_rotation_involution():
    g = dihedral_cayley(6, ["x^2"], ["x^3"])
    prof = degrees(g)
    assert g.n == 12 and len(g.edges) == 6 and len(g.arcs) == 12
    assert prof.max_undirected == prof.min_undirected == 1
    assert prof.max_out == prof.min_out == 1
    # a valid (1,1,2) candidate: the certifier accepts its degrees in both modes
    for mode in ("defect", "excess"):
        check_graph(g, 1, 1, 2, mode)


@pytest.mark.parametrize(
    "arcs, edges",
    [(["x^2"], ["x^2"]), (["x^2"], ["x"]), (["y"], []), (["e"], []), (["x", "x"], []), (["x", "x^7"], [])],
)
def test_bad_generators(arcs, edges):
    with pytest.raises(GeneratorError):
        dihedral_cayley(6, arcs, edges)


@pytest.mark.parametrize("z", range(1, 7))
def test_kautz_moore(z):
    g = kautz_collapse(z)
    assert g.n == z * z + 3 * z + 2
    rep = check_graph(g, 1, z, 2, "defect")
    assert rep.delta == 0 and rep.classification == "moore"
    assert rep.totally_regular
    prof = degrees(g)
    assert set(prof.inn) == {z} and set(prof.out) == {z} and set(prof.undirected) == {1}


def test_kautz_has_no_digons():
    for z in range(1, 5):
        g = kautz_collapse(z)
        assert not any((v, u) in g.arcs for u, v in g.arcs)


def test_fig1_reversal_is_isomorphic(fig1):
    rev = fig1.reversed_arcs()
    assert are_isomorphic(fig1, rev)
    assert oracles.nx_isomorphic(10, (fig1.edges, fig1.arcs), (rev.edges, rev.arcs))


def test_small_dihedral_enumeration_is_consistent():
    # every generator set on D_4 either builds or is rejected for a stated reason
    words = ["x", "x^2", "x^3", "y", "xy", "x^2y", "x^3y"]
    for k in range(1, 3):
        for arcs in itertools.combinations(words, k):
            try:
                g = dihedral_cayley(4, list(arcs), [])
            except GeneratorError:
                continue
            assert degrees(g).is_out_regular()
