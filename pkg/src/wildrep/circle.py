"""Exponential factors and Stokes circles.

The local coordinate is ``x = z`` at infinity and ``x = 1/(z - a)`` at a finite
point ``a``, so a factor ``q = sum c_i x^{k_i}`` always has slope equal to its
top exponent.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd, lcm
from typing import Iterable

from .errors import DifferentPoints
from .exact import INF, ExactScalar, SpherePoint, rat, scalar

Terms = tuple  # ((Fraction exponent, ExactScalar coeff), ...), exponents decreasing


def _norm_terms(terms: Iterable) -> Terms:
    out = {}
    for k, c in terms:
        k, c = rat(k), scalar(c)
        if k <= 0:
            raise ValueError(f"exponent must be positive, got {k}")
        if c.zero:
            continue
        if k in out:
            raise ValueError(f"repeated exponent {k}")
        out[k] = c
    return tuple(sorted(out.items(), key=lambda t: -t[0]))


def terms_ram(terms: Terms) -> int:
    return lcm(1, *(k.denominator for k, _ in terms))


@dataclass(frozen=True)
class ExpFactor:
    point: SpherePoint
    terms: Terms = ()


@dataclass(frozen=True)
class StokesCircle:
    """Galois orbit of an exponential factor, stored by its canonical representative."""

    point: SpherePoint
    terms: Terms = ()

    @property
    def representative(self) -> ExpFactor:
        return ExpFactor(self.point, self.terms)

    def __str__(self) -> str:
        return f"<{format_terms(self.terms)}>@{self.point}"


def format_terms(terms: Terms) -> str:
    if not terms:
        return "0"
    parts = []
    for k, c in terms:
        mon = "x" if k == 1 else (f"x^{k.numerator}" if k.denominator == 1 else f"x^({k})")
        parts.append(mon if c == scalar(1) else f"{c}*{mon}")
    return " + ".join(parts)


def _conj_terms(terms: Terms, r: int, j: int) -> Terms:
    if j % r == 0:
        return terms
    return tuple((k, c * ExactScalar.root_of_unity(Fraction(-j * int(k * r), r))) for k, c in terms)


@lru_cache(maxsize=65536)
def _canonical(terms: Terms) -> Terms:
    # conjugation only moves turns, so compare turn sequences before building scalars
    r = terms_ram(terms)
    best = None
    for j in range(r):
        key = tuple(((c.turn - Fraction(j * int(k * r), r)) % 1, c.magnitude) for k, c in terms)
        if best is None or key < best[0]:
            best = (key, j)
    return _conj_terms(terms, r, best[1])


def circle(terms: Iterable = (), point: SpherePoint = INF) -> StokesCircle:
    """Build a circle from ``[(exponent, coeff), ...]``; coefficients may be rationals."""
    return StokesCircle(point, _canonical(_norm_terms(terms)))


def circle_of(q: ExpFactor) -> StokesCircle:
    return circle(q.terms, q.point)


TAME = StokesCircle(INF, ())


def ram(I: StokesCircle) -> int:
    return terms_ram(I.terms)


def slope(I: StokesCircle) -> Fraction:
    return I.terms[0][0] if I.terms else Fraction(0)


def irr(I: StokesCircle) -> int:
    v = slope(I) * ram(I)
    assert v.denominator == 1
    return int(v)


def conjugate(I: StokesCircle, j: int) -> ExpFactor:
    return ExpFactor(I.point, _conj_terms(I.terms, ram(I), j))


def levels(I: StokesCircle) -> tuple:
    """Brute force: for each nontrivial deck shift j, the top exponent it moves."""
    r = ram(I)
    found = set()
    for j in range(1, r):
        for k, _ in I.terms:
            if (j * int(k * r)) % r:
                found.add(k)
                break
    return tuple(sorted(found, reverse=True))


def truncate(I: StokesCircle, cutoff, mode: str = ">=") -> StokesCircle:
    cutoff = rat(cutoff)
    keep = {
        ">=": lambda k: k >= cutoff,
        ">": lambda k: k > cutoff,
        "<=": lambda k: k <= cutoff,
        "<": lambda k: k < cutoff,
    }[mode]
    return circle([(k, c) for k, c in I.terms if keep(k)], I.point)


def circle_eq(I: StokesCircle, J: StokesCircle) -> bool:
    return I == J


def slope_of_difference(p: Terms, q: Terms) -> Fraction:
    """Largest exponent where the coefficients differ; 0 when the factors agree."""
    a, b = dict(p), dict(q)
    diff = [k for k in set(a) | set(b) if a.get(k) != b.get(k)]
    return max(diff, default=Fraction(0))


def _same_point(I: StokesCircle, J: StokesCircle) -> None:
    if I.point != J.point:
        raise DifferentPoints(f"{I} and {J} live at different points")


@lru_cache(maxsize=65536)
def common_part(I: StokesCircle, J: StokesCircle) -> tuple:
    """Return ``(I_{>=k}, k)`` for the least grid value ``k`` where the truncations agree."""
    _same_point(I, J)
    step = Fraction(1, ram(I) * ram(J))
    cands = {Fraction(0)}
    for k, _ in I.terms + J.terms:
        cands.add((k // step + 1) * step)
    for k in sorted(cands):
        if truncate(I, k) == truncate(J, k):
            return truncate(I, k), k
    raise AssertionError("unreachable: truncations agree above both slopes")


@lru_cache(maxsize=65536)
def fission_exponent(I: StokesCircle, J: StokesCircle) -> Fraction:
    """Least slope of a difference of conjugates.

    Every level of the common part sits above the cutoff while both sub-parts
    sit below it, so this agrees with the max-of-sub-part-slopes definition.
    """
    _same_point(I, J)
    rJ = ram(J)
    return min(slope_of_difference(I.terms, _conj_terms(J.terms, rJ, d)) for d in range(gcd(ram(I), rJ)))


@lru_cache(maxsize=65536)
def irr_hom(I: StokesCircle, J: StokesCircle) -> int:
    """Sum of difference slopes over all pairs of conjugates.

    Shared exponents have denominators dividing ``g = gcd(ram I, ram J)``, so the
    slope only depends on the relative shift modulo ``g``; each class has
    ``ram I * ram J / g`` members.
    """
    _same_point(I, J)
    rI, rJ = ram(I), ram(J)
    g = gcd(rI, rJ)
    total = sum(slope_of_difference(I.terms, _conj_terms(J.terms, rJ, d)) for d in range(g))
    total *= Fraction(rI * rJ, g)
    assert total.denominator == 1, total
    return int(total)
