"""Formal monodromy classes and global irregular classes (modified and unmodified)."""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction

from .circle import ExpFactor, StokesCircle, circle, ram
from .errors import Incompatible, SemanticError, SymbolicScale, TargetTooSmall
from .exact import INF, ONE, ExactScalar, SpherePoint, scalar, scalar_try_add


@dataclass(frozen=True)
class EigVal:
    """Exact value, or a named symbol with a sign."""

    value: ExactScalar | None = None
    name: str | None = None
    sign: int = 1

    @staticmethod
    def exact(x) -> "EigVal":
        x = scalar(x)
        if x.zero:
            raise SemanticError("eigenvalues must be nonzero")
        return EigVal(value=x)

    @staticmethod
    def symbol(name: str, sign: int = 1) -> "EigVal":
        return EigVal(name=name, sign=sign)

    @property
    def is_one(self) -> bool:
        return self.value is not None and self.value == ONE

    def negated(self) -> "EigVal":
        if self.value is not None:
            return EigVal(value=-self.value)
        return EigVal(name=self.name, sign=-self.sign)

    def scaled(self, g: "EigVal") -> "EigVal":
        if g.value is None:
            raise SymbolicScale("cannot scale by a symbolic eigenvalue")
        if self.value is not None:
            return EigVal(value=self.value * g.value)
        if g.value == ONE:
            return self
        if g.value == -ONE:
            return self.negated()
        raise SymbolicScale(f"cannot scale symbolic {self} by {g}")

    def key(self):
        if self.value is not None:
            return (0, str(self.value), 0)
        return (1, self.name, -self.sign)

    def __str__(self) -> str:
        if self.value is not None:
            return str(self.value)
        return self.name if self.sign > 0 else f"-{self.name}"


@dataclass(frozen=True)
class ConjClass:
    dim: int
    spectrum: tuple = ()  # ((EigVal, (block sizes, descending)), ...) sorted by eigenvalue key

    def __str__(self) -> str:
        return "{" + "; ".join(f"{e}:[{','.join(map(str, b))}]" for e, b in self.spectrum) + "}"

    def type_key(self) -> tuple:
        """Jordan type without eigenvalue identities."""
        return (self.dim, tuple(sorted(b for _, b in self.spectrum)))

    def key(self) -> tuple:
        return (self.dim, tuple((e.key(), b) for e, b in self.spectrum))


def conj_class(spec) -> ConjClass:
    """``spec`` is a list or dict of ``(EigVal, [blocks])``."""
    items = list(spec.items()) if isinstance(spec, dict) else list(spec)
    seen = set()
    out = []
    for e, blocks in items:
        if e in seen:
            raise SemanticError(f"repeated eigenvalue {e}")
        seen.add(e)
        blocks = tuple(sorted((int(b) for b in blocks), reverse=True))
        if any(b <= 0 for b in blocks):
            raise SemanticError("Jordan block sizes must be positive")
        if blocks:
            out.append((e, blocks))
    out.sort(key=lambda t: t[0].key())
    return ConjClass(sum(sum(b) for _, b in out), tuple(out))


def semisimple(*eigs) -> ConjClass:
    return conj_class([(e, [1]) for e in eigs])


def _ones(C: ConjClass) -> tuple:
    for e, b in C.spectrum:
        if e.is_one:
            return b
    return ()


def child(C: ConjClass) -> ConjClass:
    spec = []
    for e, b in C.spectrum:
        if e.is_one:
            b = [x - 1 for x in b if x > 1]
        spec.append((e, b))
    return conj_class(spec)


def parent(C: ConjClass, target_dim: int) -> ConjClass:
    ones = _ones(C)
    grown = C.dim + len(ones)
    if target_dim < grown:
        raise TargetTooSmall(f"parent of {C} needs dimension at least {grown}")
    spec = [(e, b) for e, b in C.spectrum if not e.is_one]
    spec.append((EigVal.exact(1), [x + 1 for x in ones] + [1] * (target_dim - grown)))
    return conj_class(spec)


def negate_class(C: ConjClass) -> ConjClass:
    return conj_class([(e.negated(), b) for e, b in C.spectrum])


def scale_class(C: ConjClass, g: EigVal) -> ConjClass:
    return conj_class([(e.scaled(g), b) for e, b in C.spectrum])


@dataclass(frozen=True)
class Entry:
    circle: StokesCircle
    mult: int
    cls: ConjClass

    @property
    def rank(self) -> int:
        return self.mult * ram(self.circle)


@dataclass(frozen=True)
class LocalClass:
    point: SpherePoint
    entries: tuple = ()

    @property
    def rank(self) -> int:
        return sum(e.rank for e in self.entries)

    def tame(self) -> Entry | None:
        for e in self.entries:
            if not e.circle.terms:
                return e
        return None


def local_class(point: SpherePoint, entries) -> LocalClass:
    out = []
    seen = set()
    for e in entries:
        if not isinstance(e, Entry):
            e = Entry(*e)
        if e.circle.point != point:
            raise SemanticError(f"circle {e.circle} is not at {point}")
        if e.circle in seen:
            raise SemanticError(f"circle {e.circle} listed twice at {point}")
        if e.mult <= 0:
            raise SemanticError("multiplicities must be positive")
        if e.cls.dim != e.mult:
            raise SemanticError(f"class {e.cls} has dimension {e.cls.dim}, expected {e.mult}")
        seen.add(e.circle)
        out.append(e)
    return LocalClass(point, tuple(out))


@dataclass(frozen=True)
class GlobalClass:
    locals: tuple = ()
    flavor: str = "modified"
    name: str = field(default="G", compare=False)

    def at(self, a: SpherePoint) -> LocalClass | None:
        for L in self.locals:
            if L.point == a:
                return L
        return None

    @property
    def finite(self) -> tuple:
        return tuple(L for L in self.locals if not L.point.is_inf)


def global_class(locals_, flavor: str = "modified", name: str = "G") -> GlobalClass:
    pts = set()
    out = []
    for L in locals_:
        if L.point in pts:
            raise SemanticError(f"point {L.point} listed twice")
        pts.add(L.point)
        if L.entries:
            out.append(L)
    out.sort(key=lambda L: L.point.sort_key())
    G = GlobalClass(tuple(out), flavor, name)
    if flavor == "unmodified":
        ranks = {L.rank for L in G.locals}
        if len(ranks) > 1:
            raise SemanticError(f"unmodified class must have equal rank everywhere, got {sorted(ranks)}")
    return G


def rank_at(G: GlobalClass, a: SpherePoint) -> int:
    L = G.at(a)
    return L.rank if L else 0


def is_compatible(G: GlobalClass) -> bool:
    n = rank_at(G, INF)
    return all(L.rank <= n for L in G.finite)


def modify(G: GlobalClass) -> GlobalClass:
    if G.flavor != "unmodified":
        raise SemanticError("modify expects an unmodified class")
    locs = []
    for L in G.locals:
        if L.point.is_inf:
            locs.append(L)
            continue
        ents = []
        for e in L.entries:
            if not e.circle.terms:
                c = child(e.cls)
                if c.dim:
                    ents.append(Entry(e.circle, c.dim, c))
            else:
                ents.append(e)
        locs.append(LocalClass(L.point, tuple(ents)))
    return global_class(locs, "modified", G.name)


def unmodify(G: GlobalClass) -> GlobalClass:
    if G.flavor != "modified":
        raise SemanticError("unmodify expects a modified class")
    if not is_compatible(G):
        raise Incompatible("some finite point has rank above the rank at infinity")
    n = rank_at(G, INF)
    locs = []
    for L in G.locals:
        if L.point.is_inf:
            locs.append(L)
            continue
        t = L.tame()
        wild = [e for e in L.entries if e.circle.terms]
        need = n - sum(e.rank for e in wild)
        cls = parent(t.cls if t else conj_class([]), need)
        ents = list(L.entries) if t else wild + [None]
        tame = Entry(circle((), L.point), need, cls)
        ents = [tame if (e is None or e is t) else e for e in ents]
        locs.append(LocalClass(L.point, tuple(e for e in ents if e.mult)))
    return global_class(locs, "unmodified", G.name)


def _sub_terms(p: tuple, q: tuple) -> tuple:
    a = dict(p)
    for k, c in q:
        a[k] = scalar_try_add(a.get(k, ExactScalar(True)), -c)
    return tuple((k, c) for k, c in a.items() if not c.zero)


def formal_twist(G: GlobalClass, a: SpherePoint, q0: ExpFactor, g: EigVal) -> GlobalClass:
    locs = []
    for L in G.locals:
        if L.point != a:
            locs.append(L)
            continue
        ents = [Entry(circle(_sub_terms(e.circle.terms, q0.terms), a), e.mult, scale_class(e.cls, g)) for e in L.entries]
        locs.append(local_class(a, ents))
    return global_class(locs, G.flavor, G.name)
