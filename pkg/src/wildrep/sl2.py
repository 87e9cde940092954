"""Circle shapes and the action of twists, scalings and the formal Fourier transform.

A shape remembers only what an admissible deformation cannot change, plus the
explicit coefficients the sphere action needs: the point, and at infinity the
coefficients of ``x^2`` and ``x``.  Everything else about the exponential factor
is its *deep part*, kept as ``(ram, slope, levels)``.

Conventions (chosen so that ``lambda(A.I) = h_A(lambda(I))`` holds with the
matrices below):

* ``Twist(r)``  = [[1, r], [0, 1]]: ``x^2`` coefficient at infinity decreases by r/2.
* ``Scale(v)``  = [[1/v, 0], [0, v]]: finite positions multiply by v, the ``x^2``
  coefficient divides by v^2 and the ``x`` coefficient by v.
* ``Fourier``   = [[0, 1], [-1, 0]].

Under the Fourier transform an exponent ``n/r`` of a circle of ramification r and
irregularity s becomes ``n/r'`` with ``r'`` one of ``s - r``, ``r - s`` or ``r + s``.
Levels, slopes and fission exponents are all transported by this rule.
"""
from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction

from .circle import fission_exponent, levels, ram, slope
from .errors import ExcludedRankOne, NotSl2
from .exact import INF, SpherePoint
from .fission import DatumEntry, FissionDatum, FissionForest, build_tree, ram_of_levels
from .formal import ConjClass, GlobalClass, negate_class

HALF = Fraction(1, 2)


# matrices and words ---------------------------------------------------------

@dataclass(frozen=True)
class Sl2:
    a: Fraction
    b: Fraction
    c: Fraction
    d: Fraction

    def __post_init__(self):
        for k in "abcd":
            object.__setattr__(self, k, Fraction(getattr(self, k)))
        if self.a * self.d - self.b * self.c != 1:
            raise NotSl2(f"determinant of {self} is not 1")

    def __matmul__(self, o: "Sl2") -> "Sl2":
        return Sl2(self.a * o.a + self.b * o.c, self.a * o.b + self.b * o.d,
                   self.c * o.a + self.d * o.c, self.c * o.b + self.d * o.d)

    def rows(self):
        return [[self.a, self.b], [self.c, self.d]]


IDENTITY = Sl2(1, 0, 0, 1)


@dataclass(frozen=True)
class Twist:
    lam: Fraction

    def matrix(self) -> Sl2:
        return Sl2(1, self.lam, 0, 1)


@dataclass(frozen=True)
class Scale:
    v: Fraction

    def matrix(self) -> Sl2:
        v = Fraction(self.v)
        return Sl2(1 / v, 0, 0, v)


@dataclass(frozen=True)
class Fourier:
    def matrix(self) -> Sl2:
        return Sl2(0, 1, -1, 0)


def word_matrix(word) -> Sl2:
    """Matrix of a word listed in application order (first step first)."""
    M = IDENTITY
    for step in word:
        M = step.matrix() @ M
    return M


def sl2_factor(A: Sl2) -> list:
    """Elementary word (application order) whose matrix is ``A``."""
    if A.c == 0:
        return [Twist(A.b / A.a), Scale(1 / A.a)]
    return [Twist(A.d / A.c), Scale(-1 / A.c), Fourier(), Twist(A.a / A.c)]


def homography(A: Sl2, p: SpherePoint) -> SpherePoint:
    if p.is_inf:
        return INF if A.c == 0 else SpherePoint.finite(A.a / A.c)
    z = p.value.to_fraction()
    den = A.c * z + A.d
    return INF if den == 0 else SpherePoint.finite((A.a * z + A.b) / den)


# shapes ---------------------------------------------------------------------

@dataclass(frozen=True)
class Deep:
    ram: int = 1
    slope: Fraction = Fraction(0)
    levels: tuple = ()

    @property
    def irr(self) -> int:
        v = self.ram * self.slope
        assert v.denominator == 1
        return int(v)


TAME_DEEP = Deep()


def transport(d: Deep, r_new: int) -> Deep:
    """Same numerators over the new denominator; the top becomes a level iff it is not integral."""
    s = d.irr
    new = {Fraction(s, r_new)} if s % r_new else set()
    new |= {l * d.ram / r_new for l in d.levels if l * d.ram != s}
    lv = tuple(sorted(new, reverse=True))
    assert ram_of_levels(lv) == r_new, (d, r_new, lv)
    return Deep(r_new, Fraction(s, r_new), lv)


@dataclass(frozen=True)
class CircleShape:
    point: SpherePoint
    quad: Fraction | None = None
    linear: Fraction | None = None
    deep: Deep = TAME_DEEP

    @property
    def total_slope(self) -> Fraction:
        if not self.point.is_inf:
            return self.deep.slope
        s = self.deep.slope
        if self.quad:
            s = max(s, Fraction(2))
        if self.linear:
            s = max(s, Fraction(1))
        return s

    @property
    def ram(self) -> int:
        return self.deep.ram

    @property
    def position(self) -> Fraction:
        return self.point.value.to_fraction()


def normalized(sh: CircleShape) -> CircleShape:
    """Forget coefficients that no later step can read."""
    if not sh.point.is_inf:
        return replace(sh, quad=None, linear=None)
    ts = sh.total_slope
    if ts > 2:
        return replace(sh, quad=None, linear=None)
    quad = sh.quad or Fraction(0)
    lin = sh.linear if sh.deep.slope < 1 else None
    return replace(sh, quad=quad, linear=lin)


@dataclass(frozen=True)
class ShapeEntry:
    shape: CircleShape
    mult: int
    cls: ConjClass


@dataclass(frozen=True)
class ShapeClass:
    entries: tuple
    fission: tuple  # n x n, None for pairs at different points

    def __len__(self):
        return len(self.entries)


def _rational(x) -> Fraction:
    return x.to_fraction()


def shape_of(G: GlobalClass) -> ShapeClass:
    ents = []
    circs = []
    for L in G.locals:
        for e in L.entries:
            I = e.circle
            if L.point.is_inf:
                coef = dict(I.terms)
                rest = [k for k, _ in I.terms if k not in (1, 2)]
                sh = CircleShape(INF, _rational(coef[Fraction(2)]) if 2 in coef else Fraction(0),
                                 _rational(coef[Fraction(1)]) if 1 in coef else Fraction(0),
                                 Deep(ram(I), max(rest, default=Fraction(0)), levels(I)))
            else:
                sh = CircleShape(L.point, None, None, Deep(ram(I), slope(I), levels(I)))
            ents.append(ShapeEntry(normalized(sh), e.mult, e.cls))
            circs.append(I)
    n = len(circs)
    f = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            if circs[i].point == circs[j].point:
                f[i][j] = fission_exponent(circs[i], circs[j]) if i != j else Fraction(0)
    return ShapeClass(tuple(ents), tuple(map(tuple, f)))


def lambda_coeff(sh: CircleShape) -> SpherePoint:
    if not sh.point.is_inf or sh.total_slope > 2:
        return INF
    return SpherePoint.finite(-2 * sh.quad)


def twist(S: ShapeClass, lam) -> ShapeClass:
    lam = Fraction(lam)
    out = []
    for e in S.entries:
        sh = e.shape
        if sh.point.is_inf and sh.quad is not None:
            sh = normalized(replace(sh, quad=sh.quad - lam / 2))
        out.append(replace(e, shape=sh))
    return ShapeClass(tuple(out), S.fission)


def scale(S: ShapeClass, v) -> ShapeClass:
    v = Fraction(v)
    if v == 0:
        raise ValueError("scale factor must be nonzero")
    out = []
    for e in S.entries:
        sh = e.shape
        if sh.point.is_inf:
            sh = replace(sh, quad=None if sh.quad is None else sh.quad / v**2,
                         linear=None if sh.linear is None else sh.linear / v)
        else:
            sh = replace(sh, point=SpherePoint.finite(sh.position * v))
        out.append(replace(e, shape=sh))
    return ShapeClass(tuple(out), S.fission)


def _flip(C: ConjClass, s: int) -> ConjClass:
    return negate_class(C) if s % 2 else C


def _check_rank_one(S: ShapeClass) -> None:
    if len(S.entries) == 1:
        e = S.entries[0]
        sh = e.shape
        if sh.point.is_inf and e.mult == 1 and sh.ram == 1 and sh.total_slope <= 1:
            raise ExcludedRankOne("the Fourier transform is not defined on a rank one class with pole order < 2")


def _fourier_shape(e: ShapeEntry):
    """Return ``(kind, kappa, new entry)``; kappa is the slope the pair rules use."""
    sh = e.shape
    if not sh.point.is_inf:
        a = sh.position
        d = sh.deep
        if d.slope == 0:
            new = CircleShape(INF, Fraction(0), -a, TAME_DEEP)
            return "fin", Fraction(0), ShapeEntry(normalized(new), e.mult, negate_class(e.cls))
        new = CircleShape(INF, Fraction(0), -a, transport(d, d.ram + d.irr))
        return "fin", d.slope, ShapeEntry(normalized(new), e.mult, _flip(e.cls, d.irr))
    ts = sh.total_slope
    if ts <= 1:
        d = sh.deep
        pt = SpherePoint.finite(sh.linear)
        if d.slope == 0:
            return "low", Fraction(0), ShapeEntry(CircleShape(pt, deep=TAME_DEEP), e.mult, negate_class(e.cls))
        new = CircleShape(pt, deep=transport(d, d.ram - d.irr))
        return "low", d.slope, ShapeEntry(new, e.mult, _flip(e.cls, d.irr))
    r = sh.ram
    s = int(r * ts)
    if ts == 2:
        q = sh.quad
        lin = None if sh.linear is None else sh.linear / (2 * q)
        new = CircleShape(INF, -1 / (4 * q), lin, sh.deep)
    else:
        d = transport(Deep(r, ts, sh.deep.levels), s - r)
        new = CircleShape(INF, Fraction(0) if d.slope < 2 else None, None, d)
    return "high", ts, ShapeEntry(normalized(new), e.mult, _flip(e.cls, s))


def fourier(S: ShapeClass) -> ShapeClass:
    _check_rank_one(S)
    info = [_fourier_shape(e) for e in S.entries]
    n = len(info)
    f = [[None] * n for _ in range(n)]
    for i in range(n):
        f[i][i] = Fraction(0)
        for j in range(i + 1, n):
            f[i][j] = f[j][i] = _pair_rule(S, i, j, info)
    return ShapeClass(tuple(x[2] for x in info), tuple(map(tuple, f)))


def _pair_rule(S, i, j, info):
    (ki, a, ei), (kj, b, ej) = info[i], info[j]
    if ei.shape.point != ej.shape.point:
        return None
    f = S.fission[i][j]
    if {ki, kj} == {"fin", "high"}:
        return max(ei.shape.total_slope, ej.shape.total_slope)
    if ki == kj == "fin" and f is None:
        return Fraction(1)
    common = f < max(a, b)
    if ki == "fin":
        return f / (a + 1) if common else max(a / (a + 1), b / (b + 1))
    if ki == "high":
        return f / (a - 1) if common else max(a / (a - 1), b / (b - 1))
    return f / (1 - a) if common else max(a / (1 - a), b / (1 - b))


def apply_step(S: ShapeClass, step) -> ShapeClass:
    if isinstance(step, Twist):
        return twist(S, step.lam)
    if isinstance(step, Scale):
        return scale(S, step.v)
    return fourier(S)


def apply_word(S: ShapeClass, word) -> ShapeClass:
    for step in word:
        S = apply_step(S, step)
    return S


def apply_sl2(S: ShapeClass, A: Sl2) -> ShapeClass:
    return apply_word(S, sl2_factor(A))


def is_generic(S: ShapeClass) -> bool:
    return all(not lambda_coeff(e.shape).is_inf for e in S.entries)


def genericize(S) -> tuple:
    """Twist by the least admissible non-negative integer, then Fourier transform."""
    if isinstance(S, GlobalClass):
        S = shape_of(S)
    _check_rank_one(S)
    bad = {-lambda_coeff(e.shape).value.to_fraction() for e in S.entries if not lambda_coeff(e.shape).is_inf}
    rho = 0
    while rho in bad:
        rho += 1
    word = [Twist(Fraction(rho)), Fourier()]
    return apply_word(S, word), word


def forest_of_shapes(S: ShapeClass) -> FissionForest:
    pts = []
    for e in S.entries:
        if e.shape.point not in pts:
            pts.append(e.shape.point)
    pts.sort(key=lambda p: p.sort_key())
    trees = []
    for p in pts:
        idx = [i for i, e in enumerate(S.entries) if e.shape.point == p]
        ents = tuple(DatumEntry(S.entries[i].shape.deep.levels, S.entries[i].mult, S.entries[i].cls,
                                None if p.is_inf else S.entries[i].shape.deep.slope) for i in idx)
        f = tuple(tuple(S.fission[i][j] for j in idx) for i in idx)
        trees.append(build_tree(FissionDatum(ents, f), point=p))
    return FissionForest(tuple(trees))
