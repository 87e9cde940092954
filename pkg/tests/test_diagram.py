from dataclasses import replace

import pytest
from hypothesis import assume, given, strategies as st

from wildrep.catalog import NAMES, catalog
from wildrep.diagram import Diagram, core_b_matrix, diagram, diagram_eq, dimension, legs
from wildrep.errors import ExcludedRankOne
from wildrep.fission import realize
from wildrep.formal import EigVal, conj_class, semisimple
from wildrep.readings import enriched_tree, readings

from conftest import global_classes

e1, e2, e3 = (EigVal.symbol(n) for n in ("e1", "e2", "e3"))
ONE = EigVal.exact(1)


def test_catalog_b_matrices():
    assert core_b_matrix(catalog("PI")) == [[2]]
    assert core_b_matrix(catalog("PIII1")) == [[-2, 4], [4, -2]]
    assert core_b_matrix(catalog("PIII0")) == [[-6, 6], [6, -2]]


def test_legs():
    assert legs(semisimple(e1, e2)) == [1]
    assert legs(semisimple(e1)) == []
    assert legs(semisimple(e1, e2, e3)) == [2, 1]
    assert legs(conj_class([(e1, [2]), (e2, [1])])) == [2, 1]
    assert legs(conj_class([(e1, [1, 1]), (e2, [1])])) == [1]


def test_dimension_examples():
    assert dimension(Diagram(("a",), (1,), ((0,),), ((),))) == 0
    d4 = Diagram(tuple("abcde"), (2, 1, 1, 1, 1),
                 ((0, 1, 1, 1, 1), (1, 0, 0, 0, 0), (1, 0, 0, 0, 0), (1, 0, 0, 0, 0), (1, 0, 0, 0, 0)),
                 ((),) * 5)
    assert dimension(d4) == 2


def test_eq_and_relabel():
    D = diagram(catalog("PIII2"))
    perm = [2, 0, 1]
    R = Diagram(tuple(D.labels[i] for i in perm), tuple(D.d[i] for i in perm),
                tuple(tuple(D.B[i][j] for j in perm) for i in perm), tuple(D.legs[i] for i in perm))
    assert diagram_eq(D, R)
    assert not diagram_eq(diagram(catalog("PII")), diagram(catalog("PIII1")))


@pytest.mark.parametrize("name", NAMES)
def test_catalog_dimension_and_invariance(name):
    G = catalog(name)
    D = diagram(G)
    assert dimension(D) == 2
    for r in readings(enriched_tree(G)):
        E = diagram(realize(r.forest))
        assert diagram_eq(D, E)
        assert dimension(E) == 2


@given(global_classes())
def test_b_symmetric_integral(G):
    B = core_b_matrix(G)
    circs = [e.circle for L in G.locals for e in L.entries]
    for i, I in enumerate(circs):
        for j, J in enumerate(circs):
            assert B[i][j] == B[j][i] and isinstance(B[i][j], int)
            if not I.point.is_inf and not J.point.is_inf and I.point != J.point:
                assert B[i][j] == 0


@given(global_classes(max_den=4, max_num=8))
def test_diagram_same_for_every_reading(G):
    try:
        T = enriched_tree(G)
    except ExcludedRankOne:
        assume(False)
    D = diagram(G)
    for r in readings(T):
        assert diagram_eq(D, diagram(realize(r.forest)))
