"""Graphs, forms, roots, involutions."""

import itertools
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from quivertangent.dynkin import (
    all_orientations,
    coxeter_number,
    default_orientation,
    dynkin_graph,
    euler_form,
    graph_distance,
    maximal_root,
    nakayama_involution,
    parse_orientation,
    positive_roots,
    quiver_from_json,
    tits_form,
    vec_add,
)


def reflection_closure_roots(graph):
    """Independent oracle: close the simple roots under the reflections
    s_a(d) = d with the a-th coordinate replaced by -d_a + sum of neighbor
    coordinates; keep the nonnegative ones."""
    n = graph.rank
    idx = {a: i for i, a in enumerate(graph.vertices)}
    nbr = {i: [idx[b] for b in graph.neighbors(a)] for a, i in idx.items()}
    simples = [tuple(1 if j == i else 0 for j in range(n)) for i in range(n)]
    seen = set(simples)
    frontier = list(simples)
    while frontier:
        d = frontier.pop()
        for i in range(n):
            e = list(d)
            e[i] = -d[i] + sum(d[j] for j in nbr[i])
            e = tuple(e)
            if e not in seen:
                seen.add(e)
                frontier.append(e)
    return sorted(r for r in seen if all(x >= 0 for x in r) and any(r))


ALL_GRAPHS = [("A", 1), ("A", 2), ("A", 3), ("A", 4), ("A", 5),
              ("D", 4), ("D", 5), ("D", 6), ("E", 6), ("E", 7), ("E", 8)]


def test_build_a3_is_a_path():
    g = dynkin_graph("A", 3)
    assert g.vertices == ("a1", "a2", "a3")
    assert len(g.edges) == 2
    assert g.degree("a2") == 2 and g.degree("a1") == 1


def test_build_d4_is_a_star():
    g = dynkin_graph("D", 4)
    assert set(g.neighbors("b0")) == {"c'", "c''", "c"}
    assert g.degree("b0") == 3


@pytest.mark.parametrize("kind,rank", [("D", 3), ("A", 0), ("E", 5), ("E", 9)])
def test_illegal_ranks_rejected(kind, rank):
    with pytest.raises(ValueError):
        dynkin_graph(kind, rank)


def test_tree_shape_invariants():
    for kind, rank in ALL_GRAPHS:
        g = dynkin_graph(kind, rank)
        assert len(g.edges) == rank - 1
        degrees = [g.degree(a) for a in g.vertices]
        assert max(degrees) <= 3
        branch = sum(1 for d in degrees if d == 3)
        assert branch == (0 if kind == "A" else 1)
        # connected: every vertex at finite distance from the first
        for a in g.vertices:
            graph_distance(g, g.vertices[0], a)


def test_tits_form_values():
    g = dynkin_graph("D", 4)
    assert tits_form(g, (0, 0, 0, 0)) == 0
    assert tits_form(g, (1, 1, 2, 1)) == 1
    a4 = dynkin_graph("A", 4)
    assert tits_form(a4, (1, 1, 1, 1)) == 1
    with pytest.raises(ValueError):
        tits_form(g, (1, 2, 3))


def test_tits_form_positive_definite_exhaustive_small():
    for kind, rank in [("A", 3), ("D", 4)]:
        g = dynkin_graph(kind, rank)
        for d in itertools.product(range(-6, 7), repeat=rank):
            if any(d):
                assert tits_form(g, d) > 0


def test_tits_form_positive_definite_sampled_large():
    rng = random.Random(11)
    for kind, rank in [("D", 6), ("E", 7), ("E", 8)]:
        g = dynkin_graph(kind, rank)
        for _ in range(400):
            d = tuple(rng.randint(-6, 6) for _ in range(rank))
            if any(d):
                assert tits_form(g, d) > 0


def test_euler_form_values():
    g = dynkin_graph("A", 2)
    q = parse_orientation(g, "a1>a2")
    assert euler_form(q, (3, 5), (0, 0)) == 0
    assert euler_form(q, (1, 0), (0, 1)) == -1
    assert euler_form(q, (0, 1), (1, 0)) == 0


def test_euler_form_diagonal_is_tits_form():
    g = dynkin_graph("D", 5)
    q = default_orientation(g)
    rng = random.Random(5)
    for _ in range(100):
        d = tuple(rng.randint(-4, 4) for _ in range(5))
        assert euler_form(q, d, d) == tits_form(g, d)


@given(st.tuples(*[st.integers(-5, 5)] * 4), st.tuples(*[st.integers(-5, 5)] * 4))
def test_euler_form_polarization(d, e):
    g = dynkin_graph("D", 4)
    q = default_orientation(g)
    lhs = euler_form(q, d, e) + euler_form(q, e, d)
    rhs = tits_form(g, vec_add(d, e)) - tits_form(g, d) - tits_form(g, e)
    assert lhs == rhs


def test_coxeter_numbers():
    assert coxeter_number(dynkin_graph("A", 5)) == 6
    assert coxeter_number(dynkin_graph("D", 6)) == 10
    assert coxeter_number(dynkin_graph("E", 7)) == 18


def test_positive_root_counts():
    for kind, rank in ALL_GRAPHS:
        g = dynkin_graph(kind, rank)
        roots = positive_roots(g)
        assert len(roots) == rank * coxeter_number(g) // 2
        assert len(set(roots)) == len(roots)
        for r in roots:
            assert tits_form(g, r) == 1 and all(x >= 0 for x in r)


def test_positive_roots_match_reflection_oracle():
    for kind, rank in [("A", 3), ("A", 4), ("D", 4), ("D", 5), ("E", 6)]:
        g = dynkin_graph(kind, rank)
        assert sorted(positive_roots(g)) == reflection_closure_roots(g)


def test_maximal_root_values():
    assert maximal_root(dynkin_graph("A", 4)) == (1, 1, 1, 1)
    assert maximal_root(dynkin_graph("D", 6)) == (1, 1, 2, 2, 2, 1)
    assert maximal_root(dynkin_graph("E", 8)) == (2, 4, 6, 3, 5, 4, 3, 2)


def test_maximal_root_dominates_all_roots():
    for kind, rank in ALL_GRAPHS:
        g = dynkin_graph(kind, rank)
        top = maximal_root(g)
        assert tits_form(g, top) == 1
        for r in positive_roots(g):
            assert all(t - x >= 0 for t, x in zip(top, r))


def test_involution_cases():
    assert nakayama_involution(dynkin_graph("D", 6)) == {
        a: a for a in dynkin_graph("D", 6).vertices}
    phi5 = nakayama_involution(dynkin_graph("D", 5))
    assert phi5["c'"] == "c''" and phi5["c''"] == "c'" and phi5["b0"] == "b0"
    phi_a4 = nakayama_involution(dynkin_graph("A", 4))
    assert phi_a4 == {"a1": "a4", "a2": "a3", "a3": "a2", "a4": "a1"}


def test_involution_is_graph_automorphism():
    for kind, rank in ALL_GRAPHS:
        g = dynkin_graph(kind, rank)
        phi = nakayama_involution(g)
        assert all(phi[phi[a]] == a for a in g.vertices)
        edges = {frozenset(e) for e in g.edges}
        assert {frozenset((phi[u], phi[v])) for u, v in g.edges} == edges


def test_graph_distance():
    g = dynkin_graph("D", 6)
    assert graph_distance(g, "b1", "b1") == 0
    assert graph_distance(g, "c'", "c''") == 2
    # c' - b0 - b1 - b2 - c
    assert graph_distance(g, "c'", "c") == 4
    with pytest.raises(ValueError):
        graph_distance(g, "c'", "bogus")


def test_orientations():
    g = dynkin_graph("A", 3)
    assert len(list(all_orientations(g))) == 4
    q = parse_orientation(g, "a2>a1")
    assert ("a2", "a1") in q.arrows and ("a2", "a3") in q.arrows
    with pytest.raises(ValueError):
        parse_orientation(g, "a1>a3")
    with pytest.raises(ValueError):
        parse_orientation(g, "a1>a2,a2>a1")


def test_quiver_json_roundtrip():
    q = parse_orientation(dynkin_graph("D", 5), "b0>c',b0>c''")
    data = q.to_json_dict()
    assert quiver_from_json(data) == q
