import random

import pytest
from hypothesis import given, settings

from glocal.graph import Graph, InvalidGraphOperation
from glocal.families import gen_repeater
from glocal.localsets import TypePartition, vertex_types
from glocal.moves import LC, Pivot, replay
from glocal.standardform import (
    is_standard_form,
    measure,
    to_standard_form,
    update_types_lc,
    update_types_pivot,
)
from strategies import graph_and_edge, graph_and_vertex, graphs


def test_is_standard_form_examples():
    p = Graph.path(3)
    assert not is_standard_form(p, vertex_types(p))
    # reindex a < c < b: the centre comes last
    q = Graph.from_edges(3, [(0, 2), (1, 2)])
    assert is_standard_form(q, vertex_types(q))
    k3 = Graph.complete(3)
    assert not is_standard_form(k3, vertex_types(k3))


def test_leaf_parent_graph_needs_no_moves():
    g = gen_repeater("complete", 3)
    assert to_standard_form(g).moves == []


def test_k3():
    res = to_standard_form(Graph.complete(3))
    assert res.moves[0] == LC(0)
    assert sorted(res.types.labels) == ["X", "X", "Z"]
    assert is_standard_form(res.graph, res.types)


def test_lc_table_on_k3():
    k3 = Graph.complete(3)
    t = update_types_lc(vertex_types(k3), k3, 0)
    assert t.labels == ("Z", "X", "X")
    assert t == vertex_types(k3.local_complement(0))


def test_lc_on_isolated_vertex_keeps_types():
    g = Graph.from_edges(3, [(1, 2)])
    t = vertex_types(g)
    assert update_types_lc(t, g, 0) == t


def test_pivot_table_on_path():
    p = Graph.path(3)
    t = update_types_pivot(vertex_types(p), p, 0, 1)
    assert t.labels == ("Z", "X", "X")
    assert t == vertex_types(p.pivot(0, 1))
    with pytest.raises(InvalidGraphOperation):
        update_types_pivot(vertex_types(p), p, 0, 2)


def test_bot_endpoints_unchanged():
    e = Graph.path(2)
    t = vertex_types(e)
    assert t.labels == ("bot", "bot")
    assert update_types_pivot(t, e, 0, 1) == t


def test_measure():
    assert measure(TypePartition(("X", "Y", "Z", "bot"))) == 3


@settings(max_examples=150)
@given(graph_and_vertex())
def test_lc_table_matches_recomputation(gu):
    g, u = gu
    assert update_types_lc(vertex_types(g), g, u) == vertex_types(g.local_complement(u))


@settings(max_examples=150)
@given(graph_and_edge())
def test_pivot_table_matches_recomputation(ge):
    g, (u, v) = ge
    assert update_types_pivot(vertex_types(g), g, u, v) == vertex_types(g.pivot(u, v))


@settings(max_examples=150)
@given(graphs(1, 9))
def test_standard_form_properties(g):
    res = to_standard_form(g, check_tables=True)
    assert replay(g, res.moves) == res.graph
    assert is_standard_form(res.graph, vertex_types(res.graph))
    for step in res.trace:
        if step.rule <= 4:
            assert step.measure_after < step.measure_before
        else:
            assert isinstance(step.move, Pivot)
            assert step.move.v < step.move.u


def test_standard_form_random_batch():
    rng = random.Random(11)
    for _ in range(200):
        g = Graph.random(rng.randint(1, 10), rng.random(), rng)
        res = to_standard_form(g)
        assert is_standard_form(res.graph, res.types)
