"""Reader and printer for the class description language.

Example::

    class PI {
      at inf: <x^(5/2)> #1 {t1:[1]};
    }

A leading ``unmodified`` keyword marks unmodified formal data; ``modified`` is the default.
Integer exponents may be written ``x^3`` as well as ``x^(3)``.
"""
from __future__ import annotations

import re
from fractions import Fraction

from .circle import _conj_terms, circle, ram
from .errors import ParseError, SemanticError
from .exact import INF, SpherePoint, rat_str
from .formal import EigVal, Entry, GlobalClass, conj_class, global_class, local_class

_TOKEN = re.compile(r"\s*(?:(//[^\n]*)|([A-Za-z_][A-Za-z0-9_]*)|(\d+)|(\S))", re.S)


class _Lexer:
    def __init__(self, text: str):
        self.toks = []
        pos = 0
        line, col0 = 1, 0
        for m in _TOKEN.finditer(text):
            start = m.start(m.lastindex) if m.lastindex else m.end()
            line += text.count("\n", pos, start)
            nl = text.rfind("\n", 0, start)
            col = start - nl
            pos = start
            if m.group(1):
                continue
            if m.group(2):
                self.toks.append(("id", m.group(2), line, col))
            elif m.group(3):
                self.toks.append(("int", m.group(3), line, col))
            elif m.group(4):
                self.toks.append(("sym", m.group(4), line, col))
        self.toks.append(("eof", "", line, 0))
        self.i = 0

    def peek(self, k: int = 0):
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def next(self):
        t = self.peek()
        self.i += 1
        return t

    def error(self, msg: str, tok=None):
        t = tok or self.peek()
        raise ParseError(f"{msg} (found {t[1]!r})" if t[0] != "eof" else f"{msg} (found end of input)", t[2], t[3])

    def expect(self, kind: str, value: str | None = None):
        t = self.peek()
        if t[0] != kind or (value is not None and t[1] != value):
            self.error(f"expected {value or kind}")
        return self.next()

    def accept(self, value: str) -> bool:
        if self.peek()[1] == value and self.peek()[0] in ("sym", "id"):
            self.i += 1
            return True
        return False


def _int(lx: _Lexer) -> int:
    return int(lx.expect("int")[1])


def _rational(lx: _Lexer, signed: bool = True) -> Fraction:
    neg = signed and lx.accept("-")
    num = _int(lx)
    den = 1
    if lx.accept("/"):
        tok = lx.peek()
        den = _int(lx)
        if den == 0:
            lx.error("zero denominator", tok)
    v = Fraction(num, den)
    return -v if neg else v


def _term(lx: _Lexer, sign: int):
    coef = Fraction(1)
    if lx.peek()[0] == "int" or lx.peek()[1] == "-":
        coef = _rational(lx)
        lx.expect("sym", "*")
    tok = lx.peek()
    if tok[1] != "x":
        lx.error("expected x")
    lx.next()
    exp = Fraction(1)
    if lx.accept("^"):
        if lx.accept("("):
            exp = _rational(lx)
            lx.expect("sym", ")")
        else:
            exp = Fraction(_int(lx))
    if exp <= 0:
        raise SemanticError(f"line {tok[2]}: exponents must be positive, got {exp}")
    if coef == 0:
        raise SemanticError(f"line {tok[2]}: zero coefficient")
    return exp, sign * coef


def _poly(lx: _Lexer):
    if lx.peek() [0] == "int" and lx.peek()[1] == "0" and lx.peek(1)[1] == ">":
        lx.next()
        return []
    terms = [_term(lx, 1)]
    while lx.peek()[1] in ("+", "-"):
        sign = 1 if lx.next()[1] == "+" else -1
        terms.append(_term(lx, sign))
    exps = [k for k, _ in terms]
    if len(set(exps)) != len(exps):
        raise SemanticError("repeated exponent in an exponential factor")
    return terms


def _eig(lx: _Lexer):
    t = lx.peek()
    if t[0] == "id" or (t[1] == "-" and lx.peek(1)[0] == "id"):
        sign = -1 if lx.accept("-") else 1
        e = EigVal.symbol(lx.expect("id")[1], sign)
    else:
        e = EigVal.exact(_rational(lx))
    lx.expect("sym", ":")
    lx.expect("sym", "[")
    blocks = [_int(lx)]
    while lx.accept(","):
        blocks.append(_int(lx))
    lx.expect("sym", "]")
    return e, blocks


class _Auto:
    def __init__(self):
        self.n = 0

    def __call__(self) -> EigVal:
        self.n += 1
        return EigVal.symbol(f"_e{self.n}")


def _entry(lx: _Lexer, point: SpherePoint, auto: _Auto) -> Entry:
    lx.expect("sym", "<")
    terms = _poly(lx)
    lx.expect("sym", ">")
    mult = 1
    if lx.accept("#"):
        mult = _int(lx)
        if mult <= 0:
            raise SemanticError("multiplicities must be positive")
    if lx.accept("{"):
        spec = [_eig(lx)]
        while lx.accept(";"):
            spec.append(_eig(lx))
        lx.expect("sym", "}")
    else:
        spec = [(auto(), [1]) for _ in range(mult)]
    return Entry(circle(terms, point), mult, conj_class(spec))


def parse_class(text: str) -> GlobalClass:
    lx = _Lexer(text)
    flavor = "modified"
    if lx.peek()[1] in ("modified", "unmodified"):
        flavor = lx.next()[1]
    lx.expect("id", "class")
    name = lx.expect("id")[1]
    lx.expect("sym", "{")
    auto = _Auto()
    blocks = []
    while not lx.accept("}"):
        lx.expect("id", "at")
        if lx.accept("inf"):
            point = INF
        else:
            point = SpherePoint.finite(_rational(lx))
        lx.expect("sym", ":")
        ents = [_entry(lx, point, auto)]
        while lx.accept(","):
            ents.append(_entry(lx, point, auto))
        lx.expect("sym", ";")
        blocks.append(local_class(point, ents))
    if not blocks:
        lx.error("a class needs at least one block")
    lx.expect("eof")
    return global_class(blocks, flavor, name)


# printing -------------------------------------------------------------------

def _printable_terms(I):
    r = ram(I)
    for j in range(r):
        t = _conj_terms(I.terms, r, j)
        if all(c.is_rational() for _, c in t):
            return [(k, c.to_fraction()) for k, c in t]
    raise SemanticError(f"{I} has no conjugate with rational coefficients")


def _mono(k: Fraction) -> str:
    if k == 1:
        return "x"
    return f"x^{k.numerator}" if k.denominator == 1 else f"x^({rat_str(k)})"


def format_poly(terms) -> str:
    if not terms:
        return "0"
    out = ""
    for i, (k, c) in enumerate(terms):
        mag = abs(c)
        body = _mono(k) if mag == 1 else f"{rat_str(mag)}*{_mono(k)}"
        if i == 0:
            out = body if c > 0 else (f"-{body}" if mag != 1 else f"-1*{body}")
        else:
            out += (" + " if c > 0 else " - ") + body
    return out


def format_entry(e: Entry) -> str:
    cls = "; ".join(f"{ev}:[{','.join(map(str, b))}]" for ev, b in e.cls.spectrum)
    return f"<{format_poly(_printable_terms(e.circle))}> #{e.mult} {{{cls}}}"


def print_class(G: GlobalClass) -> str:
    head = "unmodified class" if G.flavor == "unmodified" else "class"
    lines = [f"{head} {G.name} {{"]
    order = sorted(G.locals, key=lambda L: (0, ()) if L.point.is_inf else (1, L.point.value.to_fraction()))
    for L in order:
        ents = ", ".join(format_entry(e) for e in L.entries)
        lines.append(f"  at {'inf' if L.point.is_inf else rat_str(L.point.value.to_fraction())}: {ents};")
    lines.append("}")
    return "\n".join(lines) + "\n"
