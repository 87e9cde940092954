"""Analysis pipeline plus JSON and Graphviz output."""
from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field
from fractions import Fraction

from .diagram import Diagram, diagram, diagram_eq, dimension
from .dsl import print_class
from .errors import Incompatible, ParseError, WildrepError
from .exact import INF, ExactScalar, SpherePoint, rat_str
from .fission import FORMAT_TAG, FissionForest, FissionTree, Leaf, Vertex, realize
from .formal import ConjClass, EigVal, GlobalClass, global_class, is_compatible, modify
from .readings import EnrichedTree, distinct_forests, enriched_tree, readings

log = logging.getLogger(__name__)

SCHEMA = "wildrep-report/1"


@dataclass
class Report:
    name: str
    source: str
    tree: EnrichedTree
    readings: list
    diagram: Diagram
    dimension: int
    distinct_forests: int
    verified: list = field(default_factory=list)

    @property
    def k(self) -> int:
        return self.tree.k

    def to_dict(self) -> dict:
        D = self.diagram
        M, d = D.full()
        out = {
            "schema": SCHEMA,
            "name": self.name,
            "input": self.source,
            "k": self.k,
            "enriched_tree": [{"lambda": rat_str(p.lam), "tree": tree_to_json(p.tree)} for p in self.tree.principal],
            "readings": [],
            "diagram": {
                "nodes": list(D.labels),
                "B": [list(r) for r in D.B],
                "legs": [list(l) for l in D.legs],
                "d": d,
                "dimension": self.dimension,
            },
            "distinct_forests": self.distinct_forests,
        }
        for n, r in enumerate(self.readings):
            row = {
                "label": r.label,
                "rank": r.rank,
                "finite_singularities": r.finite_sings,
                "total_singularities": r.total_sings,
                "forest": forest_to_json(r.forest),
            }
            if self.verified:
                row["diagram_matches"] = self.verified[n]
            out["readings"].append(row)
        return out


def analyze(G: GlobalClass, unmodified: bool = False, verify: bool = False) -> Report:
    if unmodified and G.flavor != "unmodified":
        G = global_class(G.locals, "unmodified", G.name)
    if G.flavor == "unmodified":
        G = modify(G)
    if not is_compatible(G):
        raise Incompatible(f"{G.name}: some finite point has rank above the rank at infinity")
    T = enriched_tree(G)
    rs = readings(T)
    D = diagram(G)
    rep = Report(G.name, print_class(G), T, rs, D, dimension(D), distinct_forests(T))
    if verify:
        rep.verified = [diagram_eq(diagram(realize(r.forest)), D) for r in rs]
        bad = [r.label for r, ok in zip(rs, rep.verified) if not ok]
        if bad:
            raise WildrepError(f"{G.name}: diagram changes on readings {', '.join(bad)}")
    return rep


def emit_json(reports) -> bytes:
    body = [r.to_dict() for r in reports] if isinstance(reports, list) else reports.to_dict()
    return (json.dumps(body, indent=2, ensure_ascii=False) + "\n").encode()


# forests as JSON -----------------------------------------------------------

def _eig_to_json(e: EigVal):
    if e.value is None:
        return {"symbol": e.name, "sign": e.sign}
    v = e.value
    return {"magnitude": [[p, rat_str(x)] for p, x in v.magnitude], "turn": rat_str(v.turn)}


def _eig_from_json(o) -> EigVal:
    if "symbol" in o:
        return EigVal.symbol(o["symbol"], int(o.get("sign", 1)))
    mag = tuple((int(p), Fraction(x)) for p, x in o["magnitude"])
    return EigVal(value=ExactScalar(False, mag, Fraction(o["turn"])))


def _node_to_json(n):
    if isinstance(n, Leaf):
        return {
            "leaf": True,
            "mult": n.mult,
            "levels": [rat_str(x) for x in n.levels],
            "slope": None if n.slope is None else rat_str(n.slope),
            "class": {"dim": n.cls.dim, "spectrum": [[_eig_to_json(e), list(b)] for e, b in n.cls.spectrum]},
        }
    return {"height": rat_str(n.height), "mandatory": n.mandatory, "children": [_node_to_json(c) for c in n.children]}


def _node_from_json(o):
    if o.get("leaf"):
        c = o["class"]
        cls = ConjClass(int(c["dim"]), tuple((_eig_from_json(e), tuple(b)) for e, b in c["spectrum"]))
        slope = None if o.get("slope") is None else Fraction(o["slope"])
        return Leaf(int(o["mult"]), cls, tuple(Fraction(x) for x in o["levels"]), slope)
    return Vertex(Fraction(o["height"]), bool(o["mandatory"]), tuple(_node_from_json(c) for c in o["children"]))


def _point_str(p: SpherePoint | None):
    if p is None:
        return None
    return "inf" if p.is_inf else str(p.value)


def tree_to_json(T: FissionTree) -> dict:
    return {"point": _point_str(T.point), "children": [_node_to_json(c) for c in T.children]}


def forest_to_json(F: FissionForest) -> dict:
    return {"format": FORMAT_TAG, "trees": [tree_to_json(T) for T in F.trees]}


def forest_from_json(o) -> FissionForest:
    if not isinstance(o, dict) or o.get("format") != FORMAT_TAG:
        raise ParseError(f"expected a forest document tagged {FORMAT_TAG}")
    trees = []
    for t in o["trees"]:
        p = t.get("point")
        pt = None if p is None else INF if p == "inf" else SpherePoint.finite(Fraction(p))
        trees.append(FissionTree(tuple(_node_from_json(c) for c in t["children"]), pt))
    return FissionForest(tuple(trees))


# graphviz ------------------------------------------------------------------

def _q(s) -> str:
    return '"' + str(s).replace("\\", "\\\\").replace('"', '\\"') + '"'


def _tree_body(T: FissionTree, prefix: str, lines: list):
    root = f"{prefix}r"
    lines.append(f'  {root} [shape=square, label="", width=0.15];')
    heights = {}
    count = [0]

    def walk(parent, children):
        for c in children:
            count[0] += 1
            nid = f"{prefix}n{count[0]}"
            if isinstance(c, Leaf):
                label = f"{c.mult}" if c.mult > 1 else ""
                lines.append(f"  {nid} [shape=point, xlabel={_q(label)}];")
                heights.setdefault(Fraction(0), []).append(nid)
            else:
                style = "filled" if c.mandatory else "solid"
                lines.append(f'  {nid} [shape=circle, style={style}, fillcolor=black, width=0.12, label="", xlabel={_q(rat_str(c.height))}];')
                heights.setdefault(c.height, []).append(nid)
                walk(nid, c.children)
            lines.append(f"  {parent} -> {nid};")

    walk(root, T.children)
    for h in sorted(heights, reverse=True):
        lines.append("  { rank=same; " + " ".join(heights[h]) + " }")


def emit_dot(obj, name: str = "G") -> bytes:
    lines = [f"digraph {_q(name)} {{", "  edge [arrowhead=none];"]
    if isinstance(obj, FissionTree):
        _tree_body(obj, "t", lines)
    elif isinstance(obj, FissionForest):
        for i, T in enumerate(obj.trees):
            lines.append(f"  subgraph cluster_{i} {{ label={_q(_point_str(T.point) or i)};")
            _tree_body(T, f"t{i}", lines)
            lines.append("  }")
    elif isinstance(obj, Diagram):
        lines = [f"graph {_q(name)} {{"] + _diagram_body(obj)
    else:
        raise TypeError(f"cannot draw {type(obj).__name__}")
    lines.append("}")
    return ("\n".join(lines) + "\n").encode()


def _diagram_body(D: Diagram) -> list:
    lines = []
    n = len(D.d)
    for i in range(n):
        lines.append(f'  c{i} [shape=circle, style=filled, fillcolor=lightgray, label="{D.d[i]}", tooltip={_q(D.labels[i])}];')
        b = D.B[i][i]
        if b:
            if b % 2:
                log.warning("odd loop value %s on node %s", b, D.labels[i])
            lab = rat_str(Fraction(b, 2))
            style = ", style=dashed" if b < 0 else ""
            lines.append(f"  c{i} -- c{i} [label={_q(lab)}{style}];")
        prev = f"c{i}"
        for j, x in enumerate(D.legs[i]):
            nid = f"l{i}_{j}"
            lines.append(f'  {nid} [shape=circle, label="{x}"];')
            lines.append(f"  {prev} -- {nid};")
            prev = nid
    for i in range(n):
        for j in range(i + 1, n):
            b = D.B[i][j]
            if b:
                lab = f", label={_q(abs(b))}" if abs(b) > 1 else ""
                style = ", style=dashed" if b < 0 else ""
                attrs = (lab + style).lstrip(", ")
                lines.append(f"  c{i} -- c{j} [{attrs}];" if attrs else f"  c{i} -- c{j};")
    return lines
