"""Expression grammar for the polynomial corpus.

Accepts integers, rationals a/b, identifiers (x, t, y, w, A_1, B_3,
...), the operators + - * / ^, parentheses, juxtaposition as
multiplication (2 A_1, 1/20(x+1), (x+1)(x-2)) and braced exponents
(A_1^{15}).  Every polynomial printed in the source paper passes this
grammar once stripped of pure layout.

Values are sparse multivariate polynomials over Q, or quotients of two
of them when a division does not come out exact.
"""

from __future__ import annotations

import re
from fractions import Fraction


class ParseError(ValueError):
    pass


class MPoly:
    """Sparse multivariate polynomial; keys are sorted ((var, exp), ...)."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        for mono, c in (terms or {}).items():
            if not isinstance(c, (int, Fraction)):
                c = Fraction(c)
            if c:
                mono = tuple(sorted((v, e) for v, e in mono if e))
                clean[mono] = clean.get(mono, 0) + c
        self.terms = {k: v for k, v in clean.items() if v}

    @classmethod
    def const(cls, c):
        return cls({(): c})

    @classmethod
    def var(cls, name):
        return cls({((name, 1),): 1})

    def variables(self):
        out = set()
        for mono in self.terms:
            out.update(v for v, _ in mono)
        return sorted(out)

    def is_zero(self):
        return not self.terms

    def is_constant(self):
        return all(not mono for mono in self.terms)

    def constant_value(self):
        if not self.is_constant():
            raise ValueError("not a constant")
        return self.terms.get((), Fraction(0))

    def degree_in(self, name) -> int:
        best = -1 if self.is_zero() else 0
        for mono in self.terms:
            for v, e in mono:
                if v == name:
                    best = max(best, e)
        return best

    def total_degree(self) -> int:
        return max((sum(e for _, e in mono) for mono in self.terms), default=-1)

    def __eq__(self, other):
        return isinstance(other, MPoly) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other):
        terms = dict(self.terms)
        for mono, c in other.terms.items():
            terms[mono] = terms.get(mono, 0) + c
        return MPoly(terms)

    def __neg__(self):
        return MPoly({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return MPoly({m: c * other for m, c in self.terms.items()})
        terms = {}
        for m1, c1 in self.terms.items():
            d1 = dict(m1)
            for m2, c2 in other.terms.items():
                d = dict(d1)
                for v, e in m2:
                    d[v] = d.get(v, 0) + e
                key = tuple(sorted(d.items()))
                terms[key] = terms.get(key, 0) + c1 * c2
        return MPoly(terms)

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative exponent on a polynomial")
        out = MPoly.const(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def substitute(self, assignments: dict):
        """Replace variables by Fractions or MPoly values."""
        out = MPoly.const(0)
        for mono, c in self.terms.items():
            term = MPoly.const(c)
            for v, e in mono:
                if v in assignments:
                    val = assignments[v]
                    if not isinstance(val, MPoly):
                        val = MPoly.const(Fraction(val))
                    term = term * val**e
                else:
                    term = term * MPoly.var(v) ** e
            out = out + term
        return out

    def evaluate_mod(self, assignments: dict, p: int) -> int:
        acc = 0
        for mono, c in self.terms.items():
            c = Fraction(c)
            v = c.numerator * pow(c.denominator, -1, p) % p
            for name, e in mono:
                v = v * pow(assignments[name] % p, e, p) % p
            acc = (acc + v) % p
        return acc

    def as_unipoly(self, var: str, p=None):
        from .polys import UniPoly

        coeffs = [0] * (self.degree_in(var) + 1)
        for mono, c in self.terms.items():
            rest = [(v, e) for v, e in mono if v != var]
            if rest:
                raise ValueError(f"extra variables {rest} in as_unipoly")
            e = dict(mono).get(var, 0)
            coeffs[e] = c
        return UniPoly(coeffs, var, p)

    def as_bipoly(self, var1: str, var2: str):
        from .bipoly import BiPoly

        terms = {}
        for mono, c in self.terms.items():
            d = dict(mono)
            extra = set(d) - {var1, var2}
            if extra:
                raise ValueError(f"extra variables {sorted(extra)} in as_bipoly")
            terms[(d.get(var1, 0), d.get(var2, 0))] = c
        return BiPoly(terms, (var1, var2))

    def format(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for mono, c in sorted(self.terms.items(), reverse=True):
            body = "*".join(v if e == 1 else f"{v}^{e}" for v, e in mono)
            if not body:
                parts.append(str(c))
            elif c == 1:
                parts.append(body)
            elif c == -1:
                parts.append("-" + body)
            else:
                parts.append(f"{c}*{body}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        return f"MPoly({self.format()})"


class RatExpr:
    """num/den pair of MPoly; den is the constant 1 for plain polynomials."""

    __slots__ = ("num", "den")

    def __init__(self, num: MPoly, den: MPoly | None = None):
        self.num = num
        self.den = den if den is not None else MPoly.const(1)
        if self.den.is_zero():
            raise ZeroDivisionError("zero denominator")

    def is_polynomial(self):
        return self.den.is_constant()

    def as_poly(self) -> MPoly:
        if not self.is_polynomial():
            raise ValueError("expression is a proper quotient")
        return self.num * (Fraction(1) / self.den.constant_value())

    def __add__(self, other):
        return RatExpr(self.num * other.den + other.num * self.den, self.den * other.den)

    def __sub__(self, other):
        return RatExpr(self.num * other.den - other.num * self.den, self.den * other.den)

    def __mul__(self, other):
        return RatExpr(self.num * other.num, self.den * other.den)

    def __truediv__(self, other):
        if other.num.is_zero():
            raise ZeroDivisionError("division by zero expression")
        return RatExpr(self.num * other.den, self.den * other.num)

    def __neg__(self):
        return RatExpr(-self.num, self.den)

    def __pow__(self, n):
        if n >= 0:
            return RatExpr(self.num**n, self.den**n)
        return RatExpr(self.den ** (-n), self.num ** (-n))


_TOKEN_RE = re.compile(
    r"\s*(?:(?P<num>\d+)|(?P<ident>[A-Za-z][A-Za-z0-9_]*)|(?P<op>[-+*/^(){}]))"
)


def _tokenize(text: str):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            if text[pos:].strip() == "":
                break
            raise ParseError(f"bad character at offset {pos}: {text[pos:pos+20]!r}")
        pos = m.end()
        if m.lastgroup == "num":
            tokens.append(("num", int(m.group("num"))))
        elif m.lastgroup == "ident":
            tokens.append(("ident", m.group("ident")))
        else:
            tokens.append(("op", m.group("op")))
    tokens.append(("end", None))
    return tokens


class _Parser:
    def __init__(self, tokens):
        self.tokens = tokens
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def next(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, op):
        kind, val = self.next()
        if kind != "op" or val != op:
            raise ParseError(f"expected {op!r}, got {val!r}")

    def parse_sum(self):
        left = self.parse_product()
        while True:
            kind, val = self.peek()
            if kind == "op" and val in "+-":
                self.next()
                right = self.parse_product()
                left = left + right if val == "+" else left - right
            else:
                return left

    def parse_product(self):
        kind, val = self.peek()
        negate = False
        while kind == "op" and val in "+-":
            self.next()
            if val == "-":
                negate = not negate
            kind, val = self.peek()
        left = self.parse_power()
        while True:
            kind, val = self.peek()
            if kind == "op" and val in "*/":
                self.next()
                right = self.parse_power()
                left = left * right if val == "*" else left / right
            elif kind in ("num", "ident") or (kind == "op" and val == "("):
                # juxtaposition
                right = self.parse_power()
                left = left * right
            else:
                break
        return -left if negate else left

    def parse_power(self):
        base = self.parse_atom()
        kind, val = self.peek()
        if kind == "op" and val == "^":
            self.next()
            expo = self.parse_exponent()
            return base**expo
        return base

    def parse_exponent(self) -> int:
        kind, val = self.next()
        if kind == "op" and val == "{":
            sign = 1
            kind, val = self.next()
            if kind == "op" and val == "-":
                sign = -1
                kind, val = self.next()
            if kind != "num":
                raise ParseError("expected integer exponent")
            self.expect("}")
            return sign * val
        if kind == "op" and val == "-":
            kind, val = self.next()
            if kind != "num":
                raise ParseError("expected integer exponent")
            return -val
        if kind != "num":
            raise ParseError("expected integer exponent")
        return val

    def parse_atom(self):
        kind, val = self.next()
        if kind == "num":
            return RatExpr(MPoly.const(val))
        if kind == "ident":
            return RatExpr(MPoly.var(val))
        if kind == "op" and val == "(":
            inner = self.parse_sum()
            self.expect(")")
            return inner
        if kind == "op" and val == "-":
            return -self.parse_power()
        raise ParseError(f"unexpected token {val!r}")


def parse_expression(text: str) -> RatExpr:
    parser = _Parser(_tokenize(text))
    expr = parser.parse_sum()
    if parser.peek()[0] != "end":
        raise ParseError(f"trailing input near token {parser.i}")
    return expr


def parse_poly(text: str) -> MPoly:
    """Parse an expression that must reduce to a polynomial."""
    expr = parse_expression(text)
    if not expr.is_polynomial():
        raise ParseError("expression is a quotient, not a polynomial")
    return expr.as_poly()


def poly_to_serialized(poly: MPoly) -> list:
    """JSON-ready [(exponent-dict, 'num/den'), ...] sorted by monomial."""
    out = []
    for mono, c in sorted(poly.terms.items()):
        out.append([dict(mono), str(Fraction(c))])
    return out
