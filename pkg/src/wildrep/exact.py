"""Exact scalars: rationals, multiplicative complex numbers and points of the sphere.

A nonzero :class:`ExactScalar` is ``prod(p**e_p) * exp(2*pi*i*turn)`` with rational
prime exponents and a rational turn in ``[0, 1)``.  Products, rational powers and
sign flips stay inside this group.  Sums only work in a few special cases.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Union

from .errors import NotRepresentable, WildrepError

Rat = Fraction
Number = Union[int, Fraction, "ExactScalar"]


def rat(x) -> Fraction:
    """Coerce ints, strings like ``"3/2"`` and Fractions to a Fraction."""
    if isinstance(x, Fraction):
        return x
    return Fraction(x)


def rat_str(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


@lru_cache(maxsize=4096)
def _factor(n: int) -> tuple:
    out = []
    p = 2
    while p * p <= n:
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        if e:
            out.append((p, e))
        p += 1 if p == 2 else 2
    if n > 1:
        out.append((n, 1))
    return tuple(out)


@dataclass(frozen=True, order=False)
class ExactScalar:
    zero: bool = False
    magnitude: tuple = ()  # sorted ((prime, Fraction exponent), ...)
    turn: Fraction = Fraction(0)

    # constructors
    @staticmethod
    def from_rational(x) -> "ExactScalar":
        x = rat(x)
        if x == 0:
            return ZERO
        mag: dict[int, Fraction] = {}
        for p, e in _factor(abs(x.numerator)):
            mag[p] = mag.get(p, Fraction(0)) + e
        for p, e in _factor(x.denominator):
            mag[p] = mag.get(p, Fraction(0)) - e
        return _make(mag, Fraction(1, 2) if x < 0 else Fraction(0))

    @staticmethod
    def root_of_unity(turn) -> "ExactScalar":
        return _make({}, rat(turn))

    # queries
    def is_rational(self) -> bool:
        if self.zero:
            return True
        return self.turn in (0, Fraction(1, 2)) and all(e.denominator == 1 for _, e in self.magnitude)

    def to_fraction(self) -> Fraction:
        if self.zero:
            return Fraction(0)
        if not self.is_rational():
            raise NotRepresentable(f"{self} is not rational")
        v = Fraction(1)
        for p, e in self.magnitude:
            v *= Fraction(p) ** int(e)
        return -v if self.turn else v

    def sort_key(self):
        return (0 if self.zero else 1, self.turn, self.magnitude)

    # arithmetic
    def __mul__(self, other: "ExactScalar") -> "ExactScalar":
        return scalar_mul(self, other)

    def __neg__(self) -> "ExactScalar":
        if self.zero:
            return self
        return _make(dict(self.magnitude), self.turn + Fraction(1, 2))

    def inverse(self) -> "ExactScalar":
        return scalar_pow(self, Fraction(-1))

    def __str__(self) -> str:
        if self.is_rational():
            return rat_str(self.to_fraction())
        mag = "*".join(f"{p}^({rat_str(e)})" for p, e in self.magnitude) or "1"
        return f"{mag}*e(2pi i*{rat_str(self.turn)})" if self.turn else mag


ZERO = ExactScalar(True, (), Fraction(0))


def _make(mag: dict, turn: Fraction) -> ExactScalar:
    turn = Fraction(turn) % 1
    return ExactScalar(False, tuple(sorted((p, e) for p, e in mag.items() if e != 0)), turn)


ONE = ExactScalar.from_rational(1)


def scalar_mul(x: ExactScalar, y: ExactScalar) -> ExactScalar:
    if x.zero or y.zero:
        return ZERO
    mag = dict(x.magnitude)
    for p, e in y.magnitude:
        mag[p] = mag.get(p, Fraction(0)) + e
    return _make(mag, x.turn + y.turn)


def scalar_pow(x: ExactScalar, e) -> ExactScalar:
    e = rat(e)
    if x.zero:
        if e <= 0:
            raise WildrepError("zero base with non-positive exponent")
        return ZERO
    return _make({p: k * e for p, k in x.magnitude}, x.turn * e)


def scalar_try_add(x: ExactScalar, y: ExactScalar) -> ExactScalar:
    if x.zero:
        return y
    if y.zero:
        return x
    if x == y:
        return scalar_mul(x, TWO)
    if x == -y:
        return ZERO
    if x.is_rational() and y.is_rational():
        return ExactScalar.from_rational(x.to_fraction() + y.to_fraction())
    raise NotRepresentable(f"cannot represent {x} + {y} exactly")


TWO = ExactScalar.from_rational(2)


def scalar(x) -> ExactScalar:
    return x if isinstance(x, ExactScalar) else ExactScalar.from_rational(x)


@dataclass(frozen=True)
class SpherePoint:
    """A point of the Riemann sphere; ``value is None`` means infinity."""

    value: ExactScalar | None = None

    @property
    def is_inf(self) -> bool:
        return self.value is None

    @staticmethod
    def finite(x) -> "SpherePoint":
        return SpherePoint(scalar(x))

    def sort_key(self):
        return (1, ()) if self.value is None else (0, self.value.sort_key())

    def __str__(self) -> str:
        return "inf" if self.value is None else str(self.value)


INF = SpherePoint(None)
