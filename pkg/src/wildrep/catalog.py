"""Standard modified classes of the eight Painlevé cases.

Parameters are distinct small rationals and eigenvalues are symbolic, so every
coincidence the pipeline sees is structural.
"""
from __future__ import annotations

from .dsl import parse_class
from .formal import GlobalClass

SOURCES = {
    "PI": """class PI {
  at inf: <x^(5/2)> #1 {t1:[1]};
}""",
    "PII": """class PII {
  at inf: <x^3> #1 {t1:[1]}, <0> #1 {t2:[1]};
}""",
    "PIII2": """class PIII2 {
  at inf: <x> #1 {t1:[1]}, <2*x> #1 {t2:[1]};
  at 5: <3*x> #1 {t3:[1]};
}""",
    "PIII1": """class PIII1 {
  at inf: <x^(1/2)> #1 {t1:[1]};
  at 5: <2*x> #1 {t2:[1]};
}""",
    "PIII0": """class PIII0 {
  at inf: <x^(1/2)> #1 {t1:[1]};
  at 5: <2*x^(1/2)> #1 {t2:[1]};
}""",
    "PIV": """class PIV {
  at inf: <x^2> #1 {t1:[1]}, <2*x^2> #1 {t2:[1]};
  at 5: <0> #1 {t3:[1]};
}""",
    "PV": """class PV {
  at inf: <x> #1 {t1:[1]}, <2*x> #1 {t2:[1]};
  at 5: <0> #1 {t3:[1]};
  at 7: <0> #1 {t4:[1]};
}""",
    "PVI": """class PVI {
  at inf: <0> #2 {t1:[1]; t2:[1]};
  at 2: <0> #1 {t3:[1]};
  at 3: <0> #1 {t4:[1]};
  at 5: <0> #1 {t5:[1]};
}""",
}

NAMES = tuple(SOURCES)


def catalog(name: str) -> GlobalClass:
    key = name.upper().replace("(", "").replace(")", "")
    if key not in SOURCES:
        raise KeyError(f"unknown catalog entry {name!r}; choose from {', '.join(NAMES)}")
    return parse_class(SOURCES[key])
