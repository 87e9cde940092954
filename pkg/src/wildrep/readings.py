"""Enriched trees and the k+1 readings of nearby representations.

Two independent routes are provided:

* :func:`readings` works on the enriched tree alone (leaf levels and gluing
  heights), the way the theory describes the nongeneric readings;
* :func:`orbit_readings` applies ``Fourier o Twist(-a_i)`` to the generic shape class.

The test-suite checks that they agree.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

from .fission import (DatumEntry, FissionDatum, FissionForest, FissionTree, build_tree,
                      canonical_form, ram_of_levels, tree_fission, tree_key, tree_leaves)
from .exact import INF, SpherePoint
from .formal import negate_class
from .sl2 import (Deep, Fourier, ShapeClass, Twist, apply_word, forest_of_shapes, genericize,
                  lambda_coeff, transport)

TWO = Fraction(2)


@dataclass(frozen=True)
class PrincipalSubtree:
    tree: FissionTree
    lam: Fraction = field(default=Fraction(0), compare=False)


@dataclass(frozen=True)
class EnrichedTree:
    principal: tuple
    generic: ShapeClass | None = field(default=None, compare=False, repr=False)
    word: tuple = field(default=(), compare=False)

    @property
    def k(self) -> int:
        return len(self.principal)


def _groups(S: ShapeClass) -> list:
    lams = []
    for e in S.entries:
        lam = lambda_coeff(e.shape)
        assert not lam.is_inf, "shape class is not of generic form"
        lam = lam.value.to_fraction()
        if lam not in lams:
            lams.append(lam)
    lams.sort()
    return [(lam, [i for i, e in enumerate(S.entries) if lambda_coeff(e.shape).value.to_fraction() == lam]) for lam in lams]


def enriched_tree(G) -> EnrichedTree:
    """Short tree of the generic form, one principal subtree per value of lambda."""
    Sg, word = genericize(G)
    subs = []
    for lam, idx in _groups(Sg):
        ents = tuple(DatumEntry(Sg.entries[i].shape.deep.levels, Sg.entries[i].mult, Sg.entries[i].cls) for i in idx)
        f = tuple(tuple(Sg.fission[i][j] for j in idx) for i in idx)
        subs.append(PrincipalSubtree(build_tree(FissionDatum(ents, f), top=TWO), lam))
    return EnrichedTree(tuple(subs), Sg, tuple(word))


def enriched_key(T: EnrichedTree, full: bool = False) -> str:
    return json.dumps(sorted(tree_key(p.tree, full) for p in T.principal))


# leaf bookkeeping -----------------------------------------------------------

@dataclass
class _LeafInfo:
    group: int
    levels: tuple
    mult: int
    cls: object
    plus: bool
    bclass: int | None

    @property
    def ram(self) -> int:
        return ram_of_levels(self.levels)

    @property
    def top(self) -> Fraction:
        return self.levels[0] if self.levels else Fraction(0)


def _leaves(T: EnrichedTree):
    infos, f = [], {}
    for gi, p in enumerate(T.principal):
        lv = tree_leaves(p.tree)
        base = len(infos)
        firsts = []
        for leaf, path in lv:
            plus = any(1 < v.height < 2 for v in path)
            b = None
            if not plus:
                assert path and path[0].height == 1
                if not any(path[0] is x for x in firsts):
                    firsts.append(path[0])
                b = next(k for k, x in enumerate(firsts) if x is path[0])
            infos.append(_LeafInfo(gi, leaf.levels, leaf.mult, leaf.cls, plus, b))
        fm = tree_fission(p.tree)
        for a in range(len(lv)):
            for c in range(len(lv)):
                f[base + a, base + c] = fm[a][c]
    n = len(infos)
    for a in range(n):
        for c in range(n):
            if infos[a].group != infos[c].group:
                f[a, c] = TWO
    return infos, f


def finite_singularities(T: EnrichedTree, i: int) -> int:
    """Number of height-1 children of the i-th height-2 vertex."""
    return sum(1 for c in T.principal[i].tree.children if getattr(c, "height", None) == 1)


# readings -------------------------------------------------------------------

@dataclass(frozen=True)
class Reading:
    label: str
    forest: FissionForest
    rank: int
    finite_sings: int

    @property
    def total_sings(self) -> int:
        return self.finite_sings + 1


def _flip(cls, s: int):
    return negate_class(cls) if s % 2 else cls


def _datum(items, fmat) -> FissionDatum:
    return FissionDatum(tuple(items), tuple(tuple(r) for r in fmat))


def _reading_from_parts(label, inf_items, inf_f, finite_parts) -> Reading:
    trees = []
    if inf_items:
        trees.append(build_tree(_datum(inf_items, inf_f), point=INF))
    for n, (items, fm) in enumerate(finite_parts):
        trees.append(build_tree(_datum(items, fm), point=SpherePoint.finite(n)))
    rank = sum(e.mult * ram_of_levels(e.levels) for e in inf_items)
    return Reading(label, FissionForest(tuple(trees)), rank, len(finite_parts))


def generic_reading(T: EnrichedTree) -> Reading:
    infos, f = _leaves(T)
    items = [DatumEntry(x.levels, x.mult, x.cls) for x in infos]
    n = len(infos)
    fm = [[f[a, c] for c in range(n)] for a in range(n)]
    return _reading_from_parts("generic", items, fm, [])


def nongeneric_reading(T: EnrichedTree, i: int) -> Reading:
    infos, f = _leaves(T)
    n = len(infos)
    inf_idx, items, kappa = [], [], {}
    for a, x in enumerate(infos):
        if x.group != i:
            inf_idx.append(a)
            items.append(DatumEntry(x.levels, x.mult, x.cls))
        elif x.plus:
            r = x.ram
            s = int(x.top * r)
            d = transport(Deep(r, x.top, x.levels), s - r)
            inf_idx.append(a)
            kappa[a] = x.top
            items.append(DatumEntry(d.levels, x.mult, _flip(x.cls, s)))
    fm = []
    for a in inf_idx:
        row = []
        for c in inf_idx:
            if a == c:
                row.append(Fraction(0))
            elif a in kappa and c in kappa:
                ka, kc = kappa[a], kappa[c]
                row.append(f[a, c] / (ka - 1) if f[a, c] < max(ka, kc) else max(ka / (ka - 1), kc / (kc - 1)))
            elif a in kappa or c in kappa:
                k = kappa.get(a, kappa.get(c))
                row.append(k / (k - 1))
            else:
                row.append(f[a, c])
        fm.append(row)
    parts = []
    bclasses = sorted({x.bclass for x in infos if x.group == i and not x.plus})
    for b in bclasses:
        idx = [a for a, x in enumerate(infos) if x.group == i and not x.plus and x.bclass == b]
        its, ks = [], []
        for a in idx:
            x = infos[a]
            k = x.top
            ks.append(k)
            if k == 0:
                its.append(DatumEntry((), x.mult, negate_class(x.cls), Fraction(0)))
            else:
                r = x.ram
                s = int(k * r)
                d = transport(Deep(r, k, x.levels), r - s)
                its.append(DatumEntry(d.levels, x.mult, _flip(x.cls, s), d.slope))
        sub = []
        for p, a in enumerate(idx):
            row = []
            for q, c in enumerate(idx):
                if a == c:
                    row.append(Fraction(0))
                    continue
                ka, kc = ks[p], ks[q]
                row.append(f[a, c] / (1 - ka) if f[a, c] < max(ka, kc) else max(ka / (1 - ka), kc / (1 - kc)))
            sub.append(row)
        parts.append((its, sub))
    return _reading_from_parts(f"nongeneric {i + 1}", items, fm, parts)


def readings(T: EnrichedTree) -> list:
    return [generic_reading(T)] + [nongeneric_reading(T, i) for i in range(T.k)]


def orbit_readings(T: EnrichedTree) -> list:
    """Same readings, obtained by acting on the generic shape class."""
    S = T.generic
    out = [_shape_reading("generic", S)]
    for i, p in enumerate(T.principal):
        out.append(_shape_reading(f"nongeneric {i + 1}", apply_word(S, [Twist(-p.lam), Fourier()])))
    return out


def _shape_reading(label, S: ShapeClass) -> Reading:
    rank = sum(e.mult * e.shape.ram for e in S.entries if e.shape.point.is_inf)
    pts = {e.shape.point for e in S.entries if not e.shape.point.is_inf}
    return Reading(label, forest_of_shapes(S), rank, len(pts))


def reading_ranks(T: EnrichedTree) -> list:
    """Closed rank formulas: generic rank, then one value per principal subtree."""
    infos, _ = _leaves(T)
    gen = sum(x.mult * x.ram for x in infos)
    out = [gen]
    for i in range(T.k):
        r = sum(x.mult * x.ram for x in infos if x.group != i)
        r += sum(x.mult * (int(x.top * x.ram) - x.ram) for x in infos if x.group == i and x.plus)
        out.append(r)
    return out


def distinct_forests(T: EnrichedTree) -> int:
    return 1 + len({tree_key(p.tree) for p in T.principal})


def distinct_reading_forests(rs) -> int:
    return len({canonical_form(r.forest) for r in rs})
