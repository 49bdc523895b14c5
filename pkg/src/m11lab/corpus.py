"""Shipped polynomial corpus and the standard specialization values.

Entries are parsed lazily and cached; content hashes cover the raw
expression text so reports can cite exactly what they computed on.
"""

from __future__ import annotations

import hashlib
import re
from fractions import Fraction
from importlib import resources

from .parser import MPoly, RatExpr, parse_expression

COVER_KEYS = ("thm1", "thm3f", "thm3g", "thm4", "trh")

# t-values of the number-field specializations studied in the source
# computations, keyed by cover
SPECIALIZATIONS = {
    "thm1": {
        "f0": Fraction(1, 8),
        "f1": Fraction(25, 4),
        "f2": Fraction(25, 2),
        "f3": Fraction(2 * 3**6, 5**3),
    },
    "thm3f": {
        "f0": Fraction(40),
        "f1": Fraction(0),
        "f2": Fraction(-608),
    },
    "thm3g": {
        "g0": Fraction(440, 27),
    },
}

_cache: dict = {}


def _raw_sections() -> dict:
    if "sections" in _cache:
        return _cache["sections"]
    text = resources.files("m11lab.data").joinpath("corpus.txt").read_text()
    sections = {}
    for block in re.split(r"(?m)^\[", text)[1:]:
        key, rest = block.split("]", 1)
        body = rest.split("expr:", 1)[1]
        body = re.split(r"(?m)^\[", body)[0]
        sections[key.strip()] = " ".join(body.split())
    _cache["sections"] = sections
    return sections


def keys():
    base = sorted(_raw_sections())
    return base + ["trh"]


def content_hash(key: str) -> str:
    if key == "trh":
        joined = "|".join(_raw_sections()[f"trh_h{i}"] for i in range(1, 5))
        return hashlib.sha256(joined.encode()).hexdigest()
    return hashlib.sha256(_raw_sections()[key].encode()).hexdigest()


def corpus_hash() -> str:
    text = resources.files("m11lab.data").joinpath("corpus.txt").read_text()
    return hashlib.sha256(text.encode()).hexdigest()


def expression(key: str) -> RatExpr:
    if key not in _cache:
        sections = _raw_sections()
        if key == "trh":
            h1, h2, h3, h4 = (poly(f"trh_h{i}") for i in range(1, 5))
            t = MPoly.var("t")
            _cache[key] = RatExpr(h1**5 * h2 - t * (h3**3 * h4))
        elif key in sections:
            _cache[key] = parse_expression(sections[key])
        else:
            raise KeyError(f"no corpus entry {key!r}")
    return _cache[key]


def poly(key: str) -> MPoly:
    return expression(key).as_poly()


def cover_parts(key: str):
    """The (f, g) pair with F = f - t*g for a cover entry, as UniPoly."""
    if key not in COVER_KEYS:
        raise KeyError(f"{key!r} is not a cover entry")
    F = poly(key)
    if F.degree_in("t") != 1:
        raise ValueError(f"{key} is not linear in t")
    f_terms = {}
    g_terms = {}
    for mono, c in F.terms.items():
        d = dict(mono)
        te = d.pop("t", 0)
        xe = d.pop("x", 0)
        if d:
            raise ValueError("unexpected variables in cover entry")
        if te == 0:
            f_terms[xe] = c
        else:
            g_terms[xe] = -c
    from .polys import UniPoly

    deg_f = max(f_terms)
    deg_g = max(g_terms)
    f = UniPoly([f_terms.get(i, 0) for i in range(deg_f + 1)], "x")
    g = UniPoly([g_terms.get(i, 0) for i in range(deg_g + 1)], "x")
    return f, g


def specialized(key: str, t_value) -> "object":
    """The fiber polynomial F(x, t_value) as a UniPoly over Q."""
    f, g = cover_parts(key)
    return f - g.scale(Fraction(t_value))
