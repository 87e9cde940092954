"""Shared hypothesis strategies."""
from fractions import Fraction

from hypothesis import settings, strategies as st

from wildrep.circle import circle
from wildrep.exact import INF, SpherePoint
from wildrep.formal import Entry, EigVal, global_class, local_class, semisimple

settings.register_profile("default", max_examples=200, deadline=None)
settings.load_profile("default")

small_q = st.builds(Fraction, st.integers(-6, 6).filter(bool), st.integers(1, 4))


@st.composite
def term_lists(draw, max_terms=3, max_den=6, max_num=9):
    den = draw(st.integers(1, max_den))
    nums = draw(st.lists(st.integers(1, max_num), min_size=0, max_size=max_terms, unique=True))
    return [(Fraction(n, den), draw(small_q)) for n in nums]


@st.composite
def circles(draw, point=INF, **kw):
    return circle(draw(term_lists(**kw)), point)


@st.composite
def wild_circles(draw, point=INF, **kw):
    """Circles with a nonzero top exponent."""
    I = draw(circles(point, **kw))
    if not I.terms:
        I = circle([(Fraction(draw(st.integers(1, 5))), 1)], point)
    return I


_counter = iter(range(10**9))


def fresh():
    return EigVal.symbol(f"h{next(_counter)}")


@st.composite
def local_classes(draw, point=INF, max_circles=3, **kw):
    cs = draw(st.lists(circles(point, **kw), min_size=1, max_size=max_circles, unique=True))
    ents = []
    for c in cs:
        m = draw(st.integers(1, 2))
        ents.append(Entry(c, m, semisimple(*(fresh() for _ in range(m)))))
    return local_class(point, ents)


FINITE = (SpherePoint.finite(1), SpherePoint.finite(4), SpherePoint.finite(-2))


def _raw_circle(max_den, max_num, max_terms):
    term = st.tuples(st.integers(1, max_num), st.integers(-6, 6).filter(bool), st.integers(1, 4))
    return st.tuples(st.integers(0, len(FINITE)), st.integers(1, max_den),
                     st.lists(term, max_size=max_terms, unique_by=lambda t: t[0]), st.integers(1, 2))


@st.composite
def global_classes(draw, max_finite=2, max_circles=3, max_den=6, max_num=9, max_terms=3):
    """Flat draw, then assembly: far cheaper than nested composites."""
    raw = draw(st.lists(_raw_circle(max_den, max_num, max_terms), min_size=1, max_size=2 + max_finite * 2))
    by_point = {}
    for n, (pi, den, terms, m) in enumerate(raw):
        pt = INF if n == 0 or pi > max_finite else FINITE[pi - 1] if pi else INF
        c = circle([(Fraction(k, den), Fraction(a, b)) for k, a, b in terms], pt)
        ents = by_point.setdefault(pt, {})
        if c not in ents and len(ents) < max_circles:
            ents[c] = Entry(c, m, semisimple(*(fresh() for _ in range(m))))
    return global_class([local_class(p, list(e.values())) for p, e in by_point.items()])


# acceptance bookkeeping -----------------------------------------------------

OUTCOMES: dict = {}  # (file name, test name) -> "passed" | "failed" | "skipped"


def pytest_collection_modifyitems(session, config, items):
    # acceptance checks reuse results recorded by the other modules, so run them last
    items.sort(key=lambda it: it.path.name == "test_acceptance.py")


def pytest_runtest_logreport(report):
    if report.when == "call" or report.outcome != "passed":
        path, _, name = report.nodeid.partition("::")
        OUTCOMES[(path.rsplit("/", 1)[-1], name)] = report.outcome
