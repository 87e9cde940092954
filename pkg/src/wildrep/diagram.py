"""Diagrams of modified classes: core B-matrix, legs and the dimension formula."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations, product

from .circle import irr, irr_hom, ram
from .formal import ConjClass, GlobalClass


@dataclass(frozen=True)
class Diagram:
    labels: tuple  # one per core node
    d: tuple  # multiplicities of the core nodes
    B: tuple  # symmetric integer matrix on core nodes
    legs: tuple  # per core node, leg dimensions going outward

    def full(self):
        """Adjacency over core and leg nodes, and the dimension vector."""
        n = len(self.d)
        dims = list(self.d)
        edges = []
        for i, leg in enumerate(self.legs):
            prev = i
            for x in leg:
                dims.append(x)
                edges.append((prev, len(dims) - 1))
                prev = len(dims) - 1
        N = len(dims)
        M = [[0] * N for _ in range(N)]
        for i in range(n):
            for j in range(n):
                M[i][j] = self.B[i][j]
        for a, b in edges:
            M[a][b] = M[b][a] = 1
        return M, dims


def _b_inf(I, J, same: bool) -> int:
    if same:
        return irr_hom(I, I) - ram(I) ** 2 + 1
    return irr_hom(I, J) - ram(I) * ram(J)


def core_b_matrix(G: GlobalClass) -> list:
    circs = [e.circle for L in G.locals for e in L.entries]
    n = len(circs)
    B = [[0] * n for _ in range(n)]
    for i, I in enumerate(circs):
        for j, J in enumerate(circs):
            a, b = I.point, J.point
            if a.is_inf and b.is_inf:
                v = _b_inf(I, J, i == j)
            elif a == b:
                v = _b_inf(I, J, i == j) - irr(I) * ram(J) - irr(J) * ram(I)
            elif a.is_inf:
                v = ram(I) * (irr(J) + ram(J))
            elif b.is_inf:
                v = ram(J) * (irr(I) + ram(I))
            else:
                v = 0
            B[i][j] = v
    return B


def legs(C: ConjClass) -> list:
    """Ranks of successive products of ``(A - xi)`` until the product vanishes."""
    order = sorted(C.spectrum, key=lambda t: (-sum(t[1]), t[0].key()))
    remaining = {k: list(b) for k, (_, b) in enumerate(order)}
    out = []
    for k, (_, blocks) in enumerate(order):
        for _ in range(max(blocks)):
            remaining[k] = [x - 1 for x in remaining[k] if x > 1]
            r = sum(sum(b) for b in remaining.values())
            if r == 0:
                return out
            out.append(r)
    return out


def diagram(G: GlobalClass) -> Diagram:
    ents = [(L.point, e) for L in G.locals for e in L.entries]
    labels = tuple(f"{e.circle}" for _, e in ents)
    B = core_b_matrix(G)
    return Diagram(labels, tuple(e.mult for _, e in ents), tuple(map(tuple, B)),
                   tuple(tuple(legs(e.cls)) for _, e in ents))


def dimension(D: Diagram) -> int:
    M, d = D.full()
    N = len(d)
    q = 0
    for i in range(N):
        for j in range(N):
            c = (2 if i == j else 0) - M[i][j]
            q += d[i] * c * d[j]
    return 2 - q


def canonical_diagram(D: Diagram) -> tuple:
    n = len(D.d)
    sig = [(D.d[i], D.legs[i], D.B[i][i], tuple(sorted(D.B[i]))) for i in range(n)]
    order = sorted(range(n), key=lambda i: sig[i])
    groups = []
    for i in order:
        if groups and sig[groups[-1][0]] == sig[i]:
            groups[-1].append(i)
        else:
            groups.append([i])
    best = None
    for choice in product(*(permutations(g) for g in groups)):
        perm = [i for grp in choice for i in grp]
        key = tuple(tuple(D.B[a][b] for b in perm) for a in perm)
        if best is None or key < best:
            best = key
    return (tuple(sig[i] for i in order), best)


def diagram_eq(D1: Diagram, D2: Diagram) -> bool:
    return canonical_diagram(D1) == canonical_diagram(D2)
