"""Sparse exact bivariate polynomials, mainly f(x) - t*g(x) covers.

Coefficients are ints or Fractions keyed by (deg_first, deg_second);
zero entries are never stored.  The x-discriminant is computed by
specialize-and-interpolate: the t-degree of Res_x(F, dF/dx) is bounded
by the Sylvester row count, so sampling one more point than the bound
and checking the extras agree gives an exact certificate.
"""

from __future__ import annotations

from fractions import Fraction

from .polys import UniPoly, discriminant, lagrange_interpolate


class BiPoly:
    """Polynomial in two named variables over Q."""

    __slots__ = ("terms", "vars")

    def __init__(self, terms, variables=("x", "t")):
        clean = {}
        for (i, j), c in terms.items() if isinstance(terms, dict) else terms:
            if not isinstance(c, (int, Fraction)):
                c = Fraction(c)
            if c:
                clean[(int(i), int(j))] = clean.get((int(i), int(j)), 0) + c
        object.__setattr__(self, "terms", {k: v for k, v in clean.items() if v})
        object.__setattr__(self, "vars", tuple(variables))

    def __setattr__(self, *a):
        raise AttributeError("BiPoly is immutable")

    @classmethod
    def zero(cls, variables=("x", "t")):
        return cls({}, variables)

    @classmethod
    def from_unipoly(cls, f: UniPoly, position: int = 0, variables=("x", "t")):
        terms = {}
        for i, c in enumerate(f.coeffs):
            key = (i, 0) if position == 0 else (0, i)
            terms[key] = c
        return cls(terms, variables)

    @classmethod
    def cover(cls, f: UniPoly, g: UniPoly, variables=("x", "t")):
        """f(x) - t*g(x)."""
        terms = {(i, 0): c for i, c in enumerate(f.coeffs)}
        for i, c in enumerate(g.coeffs):
            terms[(i, 1)] = terms.get((i, 1), 0) - c
        return cls(terms, variables)

    def is_zero(self):
        return not self.terms

    def degree(self, var_index: int) -> int:
        if not self.terms:
            return -1
        return max(k[var_index] for k in self.terms)

    def __eq__(self, other):
        return isinstance(other, BiPoly) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other):
        terms = dict(self.terms)
        for k, c in other.terms.items():
            terms[k] = terms.get(k, 0) + c
        return BiPoly(terms, self.vars)

    def __neg__(self):
        return BiPoly({k: -c for k, c in self.terms.items()}, self.vars)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return BiPoly({k: c * other for k, c in self.terms.items()}, self.vars)
        terms = {}
        for (i1, j1), c1 in self.terms.items():
            for (i2, j2), c2 in other.terms.items():
                k = (i1 + i2, j1 + j2)
                terms[k] = terms.get(k, 0) + c1 * c2
        return BiPoly(terms, self.vars)

    __rmul__ = __mul__

    def __pow__(self, n):
        out = BiPoly({(0, 0): 1}, self.vars)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def derivative(self, var_index: int = 0):
        terms = {}
        for (i, j), c in self.terms.items():
            e = (i, j)[var_index]
            if e:
                k = (i - 1, j) if var_index == 0 else (i, j - 1)
                terms[k] = terms.get(k, 0) + c * e
        return BiPoly(terms, self.vars)

    def specialize_second(self, value) -> UniPoly:
        """Substitute the second variable; returns a UniPoly in the first."""
        out = [0] * (self.degree(0) + 1)
        value = Fraction(value) if not isinstance(value, int) else value
        for (i, j), c in self.terms.items():
            out[i] += c * value**j
        return UniPoly(out, self.vars[0])

    def specialize_first(self, value) -> UniPoly:
        out = [0] * (self.degree(1) + 1)
        value = Fraction(value) if not isinstance(value, int) else value
        for (i, j), c in self.terms.items():
            out[j] += c * value**i
        return UniPoly(out, self.vars[1])

    def coefficient_of_first(self, i: int) -> UniPoly:
        """Coefficient of first_var^i as a polynomial in the second."""
        out = [0] * (self.degree(1) + 1)
        for (a, j), c in self.terms.items():
            if a == i:
                out[j] += c
        return UniPoly(out, self.vars[1])

    def evaluate(self, x, t):
        acc = 0
        for (i, j), c in self.terms.items():
            acc += c * Fraction(x) ** i * Fraction(t) ** j
        return acc

    def swap_vars(self):
        return BiPoly({(j, i): c for (i, j), c in self.terms.items()},
                      (self.vars[1], self.vars[0]))

    def format(self) -> str:
        if not self.terms:
            return "0"
        x, t = self.vars
        parts = []
        for (i, j), c in sorted(self.terms.items(), reverse=True):
            mono = []
            if i:
                mono.append(x if i == 1 else f"{x}^{i}")
            if j:
                mono.append(t if j == 1 else f"{t}^{j}")
            body = "*".join(mono)
            if not body:
                parts.append(str(c))
            elif c == 1:
                parts.append(body)
            elif c == -1:
                parts.append(f"-{body}")
            else:
                parts.append(f"{c}*{body}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        return f"BiPoly({self.format()})"


def discriminant_x(F: BiPoly) -> UniPoly:
    """Discriminant of F with respect to its first variable, exact.

    Specializes the second variable at integer nodes where the leading
    x-coefficient survives, interpolates through one point beyond the
    Sylvester degree bound, and cross-checks two extra nodes.
    """
    n = F.degree(0)
    if n < 1:
        raise ValueError("discriminant needs positive x-degree")
    lead = F.coefficient_of_first(n)
    tdeg = F.degree(1)
    bound = (2 * n - 1) * tdeg  # Sylvester rows of (F, dF/dx) in t-degree
    nodes = []
    values = []
    k = 0
    while len(nodes) < bound + 3:
        if lead.evaluate(k) != 0:
            spec = F.specialize_second(k)
            if spec.degree == n:
                nodes.append(k)
                values.append(discriminant(spec) * Fraction(lead.evaluate(k)))
        k += 1
    # disc_x(F) * lc = Res(F, F_x) is polynomial in t; divide back after
    # interpolation to keep the standard normalization disc = Res/lc
    res_poly = lagrange_interpolate(list(zip(nodes[: bound + 1], values[: bound + 1])),
                                    var=F.vars[1])
    for extra in range(bound + 1, len(nodes)):
        if res_poly.evaluate(nodes[extra]) != values[extra]:
            raise ArithmeticError("interpolation degree bound violated")
    # divide by lc(t) exactly: disc has denominator lc
    num = res_poly
    den = lead
    q, r = divmod(num, den)
    if not r.is_zero():
        # the quotient is rational in t only when lc | res; fall back to
        # returning Res scaled, callers use the root set anyway
        raise ArithmeticError("leading coefficient does not divide the resultant")
    return q
