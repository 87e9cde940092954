from collections import Counter
from fractions import Fraction as F

import pytest
from hypothesis import assume, given

from wildrep.catalog import NAMES, catalog
from wildrep.errors import ExcludedRankOne
from wildrep.fission import canonical_form, is_isomorphic, tree_key, tree_leaves
from wildrep.readings import (distinct_forests, distinct_reading_forests, enriched_tree, finite_singularities,
                              orbit_readings, reading_ranks, readings)

from conftest import global_classes

TABLE = {
    "PI": {(3, 1), (2, 1)},
    "PII": {(3, 1), (2, 1), (2, 2)},
    "PIII2": {(4, 1), (2, 3), (2, 2)},
    "PIII1": Counter({(4, 1): 1, (2, 2): 2}),
    "PIII0": {(5, 1), (2, 2), (3, 2)},
    "PIV": Counter({(3, 1): 1, (2, 2): 3}),
    "PV": Counter({(4, 1): 1, (2, 3): 2}),
    "PVI": {(5, 1), (2, 4), (3, 2)},
}


def table(name):
    rows = [(r.rank, r.total_sings) for r in readings(enriched_tree(catalog(name)))]
    return Counter(rows)


@pytest.mark.parametrize("name", NAMES)
def test_catalog_tables(name):
    want = TABLE[name]
    assert table(name) == (want if isinstance(want, Counter) else Counter(want))


def test_piii_generic_tree_shape():
    T = enriched_tree(catalog("PIII2"))
    assert T.k == 2
    sizes = sorted(len(tree_leaves(p.tree)) for p in T.principal)
    assert sizes == [1, 2]
    assert sorted(finite_singularities(T, i) for i in range(2)) == [1, 2]


def random_tree(G):
    try:
        T = enriched_tree(G)
        orbit = orbit_readings(T)
    except ExcludedRankOne:
        assume(False)
    return T, orbit


def inf_rank(forest):
    return sum(l.mult * l.ram for t in forest.trees if t.point.is_inf for l, _ in tree_leaves(t))


@pytest.mark.parametrize("name", NAMES)
def test_routes_agree_on_catalog(name):
    T = enriched_tree(catalog(name))
    for a, b in zip(readings(T), orbit_readings(T)):
        assert canonical_form(a.forest, full=True) == canonical_form(b.forest, full=True)
        assert (a.rank, a.finite_sings) == (b.rank, b.finite_sings)


@given(global_classes(max_den=4, max_num=8))
def test_random_enriched_trees(G):
    """Route agreement, rank formula, forest coincidence and the N+ criterion on one draw."""
    T, orbit = random_tree(G)
    rs = readings(T)
    for a, b in zip(rs, orbit):
        assert canonical_form(a.forest, full=True) == canonical_form(b.forest, full=True)

    assert reading_ranks(T) == [r.rank for r in rs] == [inf_rank(r.forest) for r in rs]
    assert rs[0].total_sings == 1
    for i, r in enumerate(rs[1:]):
        assert r.total_sings == finite_singularities(T, i) + 1

    for i in range(T.k):
        for j in range(T.k):
            same_sub = tree_key(T.principal[i].tree) == tree_key(T.principal[j].tree)
            assert is_isomorphic(rs[i + 1].forest, rs[j + 1].forest) == same_sub
    assert distinct_forests(T) == distinct_reading_forests(rs)

    for p in T.principal:
        for leaf, path in tree_leaves(p.tree):
            assert any(1 < v.height < 2 for v in path) == any(1 < l < 2 for l in leaf.levels)


@pytest.mark.parametrize("name", NAMES)
def test_distinct_forest_count(name):
    T = enriched_tree(catalog(name))
    assert distinct_forests(T) == distinct_reading_forests(readings(T))
