"""Level data, fission data, fission trees and forests.

Tree conventions used throughout:

* a branch with level datum ``L`` carries the possible exponents of ``L`` as vertices,
  strictly below the tree top;
* the top is the largest gluing height, or the first integer above the top level when
  that is larger; the root itself is formal and has no height;
* each leaf hangs under the lowest vertex of its branch (or under the root).
"""
from __future__ import annotations

import json
from bisect import bisect_right
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import floor, lcm

from .circle import circle, fission_exponent, levels, slope
from .errors import Unrealizable
from .exact import INF, SpherePoint, rat_str
from .formal import ConjClass, Entry, GlobalClass, LocalClass, global_class, local_class

FORMAT_TAG = "wildrep-forest/1"


# level data -----------------------------------------------------------------

def partial_rams(L) -> list:
    out, r = [], 1
    for l in L:
        r = lcm(r, l.denominator)
        out.append(r)
    return out


def ram_of_levels(L) -> int:
    return partial_rams(L)[-1] if L else 1


def is_level_datum(L) -> bool:
    L = list(L)
    if any(a <= b for a, b in zip(L, L[1:])) or any(l <= 0 for l in L):
        return False
    prev = 1
    for r in partial_rams(L):
        if r <= prev:
            return False
        prev = r
    return True


def _intervals(L) -> list:
    """``(lo, hi, step)``: possible exponents are the multiples of ``step`` in ``(lo, hi]``."""
    L = list(L)
    bounds = [None] + L + [Fraction(0)]
    steps = [Fraction(1)] + [Fraction(1, r) for r in partial_rams(L)]
    return [(bounds[j + 1], bounds[j], steps[j]) for j in range(len(L) + 1)]


@lru_cache(maxsize=65536)
def _possible(L: tuple, upto: Fraction) -> tuple:
    out = []
    for lo, hi, st in _intervals(L):
        top = upto if hi is None else min(hi, upto)
        h = floor(top / st) * st
        while h > lo:
            out.append(h)
            h -= st
    return tuple(sorted(set(out), reverse=True))


def possible_exponents(L, upto) -> list:
    """Possible exponents in ``(0, upto]``, descending."""
    return list(_possible(tuple(L), Fraction(upto)))


def next_possible(L, h) -> Fraction:
    """Least possible exponent strictly above ``h``."""
    return _next(tuple(L), Fraction(h))


@lru_cache(maxsize=65536)
def _next(L: tuple, h: Fraction) -> Fraction:
    best = None
    for lo, hi, st in _intervals(L):
        c = (floor(max(h, lo) / st) + 1) * st
        if (hi is None or c <= hi) and (best is None or c < best):
            best = c
    return best


# fission data ---------------------------------------------------------------

@dataclass(frozen=True)
class DatumEntry:
    levels: tuple
    mult: int
    cls: ConjClass
    slope: Fraction | None = field(default=None, compare=False)


@dataclass(frozen=True)
class FissionDatum:
    entries: tuple
    f: tuple  # symmetric matrix of Fractions


def fission_datum(L: LocalClass) -> FissionDatum:
    ents = L.entries
    fin = not L.point.is_inf
    entries = tuple(DatumEntry(levels(e.circle), e.mult, e.cls, slope(e.circle) if fin else None) for e in ents)
    f = tuple(tuple(fission_exponent(a.circle, b.circle) for b in ents) for a in ents)
    return FissionDatum(entries, f)


# trees ----------------------------------------------------------------------

@dataclass(frozen=True)
class Leaf:
    mult: int
    cls: ConjClass
    levels: tuple
    slope: Fraction | None = field(default=None, compare=False)

    @property
    def ram(self) -> int:
        return ram_of_levels(self.levels)


@dataclass(frozen=True)
class Vertex:
    height: Fraction
    mandatory: bool
    children: tuple


@dataclass(frozen=True)
class FissionTree:
    children: tuple
    point: SpherePoint | None = field(default=None, compare=False)


@dataclass(frozen=True)
class FissionForest:
    trees: tuple


def _gluing(D: FissionDatum) -> dict:
    n = len(D.entries)
    g = {}
    for i in range(n):
        for j in range(i + 1, n):
            f = D.f[i][j]
            if f <= 0:
                raise Unrealizable("distinct entries need a positive fission exponent")
            g[i, j] = g[j, i] = min(next_possible(D.entries[i].levels, f), next_possible(D.entries[j].levels, f))
    return g


def build_tree(D: FissionDatum, top=None, point: SpherePoint | None = None) -> FissionTree:
    n = len(D.entries)
    for e in D.entries:
        if not is_level_datum(e.levels):
            raise Unrealizable(f"not a level datum: {e.levels}")
    g = _gluing(D)
    if top is None:
        cands = list(g.values()) + [Fraction(floor(e.levels[0]) + 1) for e in D.entries if e.levels]
        top = max(cands, default=None)
    elif any(v > top for v in g.values()):
        raise Unrealizable("gluing height above the requested top")
    V = []
    for e in D.entries:
        vs = [h for h in possible_exponents(e.levels, top) if h < top] if top else []
        V.append(vs)
    for (i, j), gij in g.items():
        if i < j:
            a = [(h, h in D.entries[i].levels) for h in V[i] if h >= gij]
            b = [(h, h in D.entries[j].levels) for h in V[j] if h >= gij]
            if a != b:
                raise Unrealizable(f"branches {i},{j} disagree above their gluing height {gij}")
            for k in range(n):
                if k not in (i, j) and g[i, k] > max(gij, g[j, k]):
                    raise Unrealizable("gluing heights are not ultrametric")

    Vneg = [[-h for h in vs] for vs in V]

    def build(S, below):
        groups = []
        for i in S:
            for grp in groups:
                if g[i, grp[0]] < below:
                    grp.append(i)
                    break
            else:
                groups.append([i])
        out = []
        for grp in groups:
            i = grp[0]
            at = bisect_right(Vneg[i], -below)
            if at == len(V[i]):
                if len(grp) > 1:
                    raise Unrealizable("coincident leaves")
                e = D.entries[i]
                out.append(Leaf(e.mult, e.cls, e.levels, e.slope))
                continue
            h = V[i][at]
            out.append(Vertex(h, h in D.entries[i].levels, build(grp, h)))
        return tuple(sorted(out, key=node_key))

    inf = Fraction(10**9)
    return FissionTree(build(list(range(n)), top or inf), point)


def forest_of(G: GlobalClass) -> FissionForest:
    return FissionForest(tuple(build_tree(fission_datum(L), point=L.point) for L in G.locals))


# read-back ------------------------------------------------------------------

def tree_leaves(T) -> list:
    """``[(leaf, path)]`` where ``path`` lists the vertices from the root down."""
    out = []

    def walk(children, path):
        for c in children:
            if isinstance(c, Leaf):
                out.append((c, path))
            else:
                walk(c.children, path + (c,))

    walk(T.children, ())
    return out


def _child_height(path, depth) -> Fraction:
    return path[depth].height if depth < len(path) else Fraction(0)


def tree_fission(T) -> list:
    """Recover the fission matrix: the larger of the two heights just below the meeting point."""
    lv = tree_leaves(T)
    n = len(lv)
    f = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            p, q = lv[i][1], lv[j][1]
            d = 0
            while d < len(p) and d < len(q) and p[d] is q[d]:
                d += 1
            f[i][j] = f[j][i] = max(_child_height(p, d), _child_height(q, d))
    return f


def tree_datum(T) -> FissionDatum:
    lv = tree_leaves(T)
    ents = tuple(DatumEntry(l.levels, l.mult, l.cls, l.slope) for l, _ in lv)
    return FissionDatum(ents, tuple(map(tuple, tree_fission(T))))


# canonical forms ------------------------------------------------------------

def _cls_key(c: ConjClass, full: bool):
    if full:
        return (c.dim, tuple((e.key(), b) for e, b in c.spectrum))
    return c.type_key()


@lru_cache(maxsize=65536)
def node_key(n, full: bool = False):
    if isinstance(n, Leaf):
        return ("L", n.mult, _cls_key(n.cls, full))
    return ("V", rat_str(n.height), n.mandatory, tuple(sorted(node_key(c, full) for c in n.children)))


def tree_key(T, full: bool = False):
    return tuple(sorted(node_key(c, full) for c in T.children))


def canonical_form(F, full: bool = False) -> bytes:
    """Deterministic serialization; ``full`` also distinguishes eigenvalue identities."""
    trees = F.trees if isinstance(F, FissionForest) else (F,)
    # the tree at infinity is told apart from the others; untagged trees count as finite
    body = sorted((bool(T.point is not None and T.point.is_inf), tree_key(T, full)) for T in trees)
    return (FORMAT_TAG + "\n" + json.dumps(body, separators=(",", ":"))).encode()


def is_isomorphic(F1, F2, full: bool = False) -> bool:
    return canonical_form(F1, full) == canonical_form(F2, full)


# realization ----------------------------------------------------------------

def _primes():
    p = 2
    while True:
        if all(p % d for d in range(2, int(p**0.5) + 1)):
            yield p
        p += 1


def realize(F: FissionForest, name: str = "realized") -> GlobalClass:
    primes = _primes()
    locs = []
    nxt = 0
    seen_inf = False
    for T in F.trees:
        if T.point is not None and T.point.is_inf and not seen_inf:
            pt, seen_inf = INF, True
        else:
            pt = SpherePoint.finite(nxt)
            nxt += 1
        ents = []

        def walk(children, terms):
            sep = len(children) > 1
            for c in children:
                t = dict(terms)
                if isinstance(c, Leaf):
                    if c.slope is not None:
                        # a known slope caps the separators above it
                        t = {k: v for k, v in t.items() if k <= c.slope}
                        if c.slope > max(t, default=0):
                            t[c.slope] = 1
                    ents.append(Entry(circle(t.items(), pt), c.mult, c.cls))
                    continue
                if sep:
                    t[c.height] = next(primes)
                if c.mandatory:
                    t.setdefault(c.height, 1)
                walk(c.children, t)

        walk(T.children, {})
        locs.append(local_class(pt, ents))
    return global_class(locs, "modified", name)
