"""Arithmetic in Q[y]/(m(y)) and squarefree splitting of polynomials
with coefficients in such a field.

Used to read off inertia patterns of cover fibers over irrational
branch values: the multiplicity pattern of F(x, theta) for theta a root
of an irreducible m.  Elements are coefficient tuples of length deg(m);
everything is exact Fraction arithmetic (deg m stays tiny here, the
fibers have degree <= 12).
"""

from __future__ import annotations

from fractions import Fraction

from .polys import UniPoly


class NumberField:
    def __init__(self, minpoly: UniPoly):
        if minpoly.p is not None:
            raise ValueError("minpoly must be over Q")
        m = minpoly.monic()
        self.minpoly = m
        self.degree = m.degree

    # elements are tuples of Fractions, length self.degree
    def el(self, coeffs):
        out = [Fraction(c) for c in coeffs][: self.degree]
        out += [Fraction(0)] * (self.degree - len(out))
        return tuple(out)

    def zero(self):
        return self.el([])

    def one(self):
        return self.el([1])

    def gen(self):
        return self.el([0, 1])

    def from_rational(self, c):
        return self.el([c])

    def is_zero(self, a):
        return not any(a)

    def add(self, a, b):
        return tuple(x + y for x, y in zip(a, b))

    def sub(self, a, b):
        return tuple(x - y for x, y in zip(a, b))

    def neg(self, a):
        return tuple(-x for x in a)

    def mul(self, a, b):
        prod = [Fraction(0)] * (2 * self.degree - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        prod[i + j] += x * y
        rem = UniPoly(prod) % self.minpoly
        return self.el(rem.coeffs)

    def scalar_mul(self, c, a):
        c = Fraction(c)
        return tuple(c * x for x in a)

    def inv(self, a):
        if self.is_zero(a):
            raise ZeroDivisionError("inverse of zero field element")
        A = UniPoly(list(a))
        r0, r1 = self.minpoly, A
        t0, t1 = UniPoly.zero(), UniPoly.one()
        while not r1.is_zero():
            q = r0 // r1
            r0, r1 = r1, r0 - q * r1
            t0, t1 = t1, t0 - q * t1
        if r0.degree != 0:
            raise ZeroDivisionError("element not invertible (minpoly reducible?)")
        inv = t0.scale(Fraction(1) / r0.coeffs[0])
        return self.el((inv % self.minpoly).coeffs)


class KPoly:
    """Polynomials over a NumberField, dense low-to-high element lists."""

    def __init__(self, field: NumberField, coeffs):
        self.field = field
        cs = list(coeffs)
        while cs and field.is_zero(cs[-1]):
            cs.pop()
        self.coeffs = cs

    @classmethod
    def from_bipoly_fiber(cls, field: NumberField, F):
        """F(x, theta) for theta the field generator (F a BiPoly in (x, t))."""
        theta = field.gen()
        coeffs = []
        for i in range(F.degree(0) + 1):
            ai = F.coefficient_of_first(i)
            acc = field.zero()
            power = field.one()
            for c in ai.coeffs:
                acc = field.add(acc, field.scalar_mul(c, power))
                power = field.mul(power, theta)
            coeffs.append(acc)
        return cls(field, coeffs)

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def is_zero(self):
        return not self.coeffs

    def monic(self):
        if self.is_zero():
            return self
        inv = self.field.inv(self.coeffs[-1])
        return KPoly(self.field, [self.field.mul(inv, c) for c in self.coeffs])

    def derivative(self):
        K = self.field
        return KPoly(
            K,
            [K.scalar_mul(i, c) for i, c in enumerate(self.coeffs)][1:],
        )

    def divmod(self, other):
        K = self.field
        if other.is_zero():
            raise ZeroDivisionError
        rem = list(self.coeffs)
        db = other.degree
        inv_lc = K.inv(other.coeffs[-1])
        quot = [K.zero()] * max(0, len(rem) - db)
        for i in range(len(rem) - db - 1, -1, -1):
            c = K.mul(rem[i + db], inv_lc)
            if not K.is_zero(c):
                quot[i] = c
                for j, oc in enumerate(other.coeffs):
                    rem[i + j] = K.sub(rem[i + j], K.mul(c, oc))
        return KPoly(K, quot), KPoly(K, rem[:db])

    def __mod__(self, other):
        return self.divmod(other)[1]

    def exact_div(self, other):
        q, r = self.divmod(other)
        if not r.is_zero():
            raise ValueError("division not exact in K[x]")
        return q

    def gcd(self, other):
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        return a.monic() if not a.is_zero() else a


def squarefree_pattern_over_field(field: NumberField, F) -> tuple:
    """Multiplicity pattern of the fiber F(x, theta) over the algebraic
    closure: repeated gcd peeling, exactly as over Q."""
    f = KPoly.from_bipoly_fiber(field, F).monic()
    pattern = []
    mult = 1
    # peel: g_k = gcd of f and its derivative chain
    a = f.gcd(f.derivative())
    b = f.exact_div(a)  # product of distinct roots
    while b.degree > 0:
        c = a.gcd(b)
        exact_mult_part = b.exact_div(c)
        pattern.extend([mult] * exact_mult_part.degree)
        a = a.exact_div(c)
        b = c
        mult += 1
    return tuple(sorted(pattern, reverse=True))
