import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from glocal.bits import iter_bits
from glocal.families import (
    FamilySpec,
    all_ones_witness,
    binom,
    check_obstruction,
    check_sufficient_lcr,
    family_caps,
    formula_params,
    gen_family,
    gen_repeater,
    hierarchy_params,
    incidence_closed_form,
    leaf_criterion,
    leaf_mask,
    search_hierarchy_pair,
    v2,
    v2_binomial,
    verify_family_pair,
)
from glocal.genlc import VertexMultiset, apply_rlc, is_r_incident
from glocal.graph import Graph
from glocal.io import load_fixture
from glocal.localsets import vertex_types
from glocal.standardform import is_standard_form
from oracles import common, v2_binomial_direct, v2_direct, weight


def test_layout():
    spec = FamilySpec(4, 2)
    assert spec.subsets() == [(1, 2), (1, 3), (2, 3), (1, 4), (2, 4), (3, 4)]
    assert spec.labels()[-4:] == ["1", "2", "3", "4"]
    assert spec.order == 10 and spec.integer_vertex(1) == 6
    with pytest.raises(ValueError):
        FamilySpec(2, 3)
    with pytest.raises(ValueError):
        FamilySpec(4, 2, "D")


def test_small_families():
    g = gen_family(FamilySpec(4, 2))
    assert g.n == 10 and g.num_edges() == 12
    gp = gen_family(FamilySpec(4, 2, "C'"))
    assert gp.num_edges() == 12 + 6
    c43 = gen_family(FamilySpec(4, 3))
    spec = FamilySpec(4, 3)
    for i in range(1, 5):
        assert len(list(iter_bits(c43.rows[spec.integer_vertex(i)]))) == 3


def test_memory_cap():
    with pytest.raises(MemoryError):
        gen_family(FamilySpec(40, 20))


def test_v2_examples():
    assert v2_binomial(5, 3) == 1
    assert v2_binomial(9, 0) == 0
    assert v2(12) == 2
    with pytest.raises(ValueError):
        v2(0)
    with pytest.raises(ValueError):
        v2_binomial(3, 4)


def test_v2_binomial_exhaustive():
    for m in range(65):
        for s in range(m + 1):
            assert v2_binomial(m, s) == v2_binomial_direct(m, s)


@given(st.integers(1, 10 ** 30))
def test_v2_matches_direct(x):
    assert v2(x) == v2_direct(x)


def test_sufficient_examples():
    assert check_sufficient_lcr(7, 5, 2).sufficient_ok
    assert not check_sufficient_lcr(4, 3, 2).sufficient_ok
    for t in range(3, 12):
        for k in range(2, t + 1):
            assert check_sufficient_lcr(t, k, 1).sufficient_ok == (binom(t - 2, k - 2) % 2 == 1)


def test_obstruction_examples():
    assert check_obstruction(7, 5, 1)
    assert not check_obstruction(7, 5, 2)
    for t in (8, 9, 12, 13):
        assert not check_obstruction(t, 3, 1)
    with pytest.raises(ValueError):
        check_obstruction(6, 4, 1)
    with pytest.raises(ValueError):
        check_obstruction(5, 5, 1)


def test_hierarchy_formula():
    assert formula_params(2) == (7, 5)
    assert formula_params(3) == (11, 9)
    assert formula_params(4) == (23, 17)
    assert hierarchy_params(2).valid
    assert hierarchy_params(4).valid
    p3 = hierarchy_params(3)
    assert not p3.valid and p3.fallback == (15, 9)
    with pytest.raises(ValueError):
        formula_params(1)


def test_hierarchy_scan():
    assert search_hierarchy_pair(2, 20) == (7, 5)
    assert search_hierarchy_pair(3, 20) == (15, 9)
    assert search_hierarchy_pair(1, 10) == (5, 3)
    assert search_hierarchy_pair(3, 10) is None


@pytest.mark.parametrize("t,k,r", [(7, 5, 2), (5, 3, 1), (15, 9, 3), (8, 4, 1)])
def test_closed_form_matches_graph(t, k, r):
    spec = FamilySpec(t, k)
    g = gen_family(spec)
    s = all_ones_witness(spec)
    ints = [spec.integer_vertex(i) for i in range(1, t + 1)]
    for size in (2, 3):
        for kk in (ints[:size], ints[-size:]):
            assert weight(s.mult, common(g, kk)) == incidence_closed_form(t, k, size)


@pytest.mark.parametrize("t,k,r", [(7, 5, 2), (5, 3, 1), (15, 9, 3)])
def test_family_pair_maps(t, k, r):
    out = verify_family_pair(t, k, r)
    assert out["r_incident"] and out["maps_to_prime"]


def test_c43_fixture_matches_generator():
    spec = FamilySpec(4, 3)
    g = gen_family(spec)
    fx = load_fixture("fig1_c43")
    assert sorted(len(list(iter_bits(r))) for r in g.rows) == sorted(len(list(iter_bits(r))) for r in fx.graph.rows)
    assert g.num_edges() == fx.graph.num_edges()


def test_family_types_and_standard_form():
    spec = FamilySpec(5, 3)
    g = gen_family(spec)
    types = vertex_types(g)
    assert all(types[u] == "X" for u in iter_bits(spec.subset_mask))
    assert all(types[u] == "Z" for u in iter_bits(spec.integer_mask))
    assert is_standard_form(g, types)


def test_repeaters():
    tri = gen_repeater("complete", 3)
    assert tri.n == 6 and tri.num_edges() == 6
    p4 = gen_repeater("biclique", 1)
    assert sorted(len(list(iter_bits(r))) for r in p4.rows) == [1, 1, 2, 2]
    assert gen_repeater("complete", 1) == Graph.path(2)
    with pytest.raises(ValueError):
        gen_repeater("ring", 2)


@pytest.mark.parametrize("kind", ["complete", "biclique"])
@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_leaf_criterion_on_repeaters(kind, n):
    assert leaf_criterion(gen_repeater(kind, n))


def test_leaf_criterion_examples():
    assert not leaf_criterion(Graph.complete(3))
    assert leaf_criterion(Graph.path(4))


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(["complete", "biclique"]), st.integers(2, 3), st.integers(1, 2), st.data())
def test_rlc_over_leaves_is_identity(kind, n, r, data):
    g = gen_repeater(kind, n)
    leaves = [u for u in iter_bits(leaf_mask(g))]
    mult = [0] * g.n
    for u in leaves:
        mult[u] = data.draw(st.integers(0, (1 << r) - 1))
    s = VertexMultiset(tuple(mult))
    if is_r_incident(g, s, r, family_caps()).ok:
        assert apply_rlc(g, s, r) == g
