"""Dense exact univariate polynomials over Q and over prime fields.

Coefficients are stored low to high; over Q they are ints or Fractions
(ints are kept as ints so the common integer case stays fast), over F_p
they are ints in [0, p).  Resultants and gcds over Z run through the
subresultant PRS, so coefficient growth stays polynomial even for the
10^40-scale inputs of the totally-real checks.  No floating point
anywhere.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd as igcd
from math import lcm as ilcm


class UniPoly:
    """Immutable dense polynomial; p=None means rational coefficients."""

    __slots__ = ("coeffs", "var", "p")

    def __init__(self, coeffs, var="x", p=None):
        if p is not None:
            coeffs = [int(c) % p for c in coeffs]
        else:
            coeffs = [
                c if isinstance(c, (int, Fraction)) else Fraction(c) for c in coeffs
            ]
        while coeffs and not coeffs[-1]:
            coeffs.pop()
        object.__setattr__(self, "coeffs", tuple(coeffs))
        object.__setattr__(self, "var", var)
        object.__setattr__(self, "p", p)

    def __setattr__(self, *a):
        raise AttributeError("UniPoly is immutable")

    # -- constructors -------------------------------------------------
    @classmethod
    def zero(cls, var="x", p=None):
        return cls([], var, p)

    @classmethod
    def one(cls, var="x", p=None):
        return cls([1], var, p)

    @classmethod
    def constant(cls, c, var="x", p=None):
        return cls([c], var, p)

    @classmethod
    def gen(cls, var="x", p=None):
        return cls([0, 1], var, p)

    # -- basics -------------------------------------------------------
    @property
    def degree(self):
        return len(self.coeffs) - 1  # -1 for the zero polynomial

    def is_zero(self):
        return not self.coeffs

    def lc(self):
        return self.coeffs[-1] if self.coeffs else 0

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, UniPoly):
            return NotImplemented
        return self.p == other.p and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.coeffs, self.p))

    def __repr__(self):
        return f"UniPoly({self.format()})"

    def format(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            if i == 0:
                terms.append(str(c))
            else:
                mono = self.var if i == 1 else f"{self.var}^{i}"
                if c == 1:
                    terms.append(mono)
                elif c == -1:
                    terms.append(f"-{mono}")
                else:
                    terms.append(f"{c}*{mono}")
        out = " + ".join(terms)
        return out.replace("+ -", "- ")

    def _coerce(self, other):
        if isinstance(other, UniPoly):
            if other.p != self.p:
                raise ValueError("mixed coefficient rings")
            return other
        return UniPoly([other], self.var, self.p)

    # -- ring operations ----------------------------------------------
    def __add__(self, other):
        other = self._coerce(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return UniPoly(out, self.var, self.p)

    __radd__ = __add__

    def __neg__(self):
        return UniPoly([-c for c in self.coeffs], self.var, self.p)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return UniPoly.zero(self.var, self.p)
        out = [0] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if not ai:
                continue
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
        return UniPoly(out, self.var, self.p)

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative power")
        result = UniPoly.one(self.var, self.p)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __divmod__(self, other):
        other = self._coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        p = self.p
        rem = list(self.coeffs)
        db = other.degree
        qb = [0] * max(0, len(rem) - db)
        inv_lc = _inv(other.lc(), p)
        for i in range(len(rem) - db - 1, -1, -1):
            c = rem[i + db] * inv_lc if p is None else rem[i + db] * inv_lc % p
            if c:
                qb[i] = c
                for j, oc in enumerate(other.coeffs):
                    rem[i + j] -= c * oc
        return (
            UniPoly(qb, self.var, p),
            UniPoly(rem[:db], self.var, p),
        )

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other):
        q, r = divmod(self, self._coerce(other))
        if not r.is_zero():
            raise ValueError("division is not exact")
        return q

    def scale(self, c):
        """Multiply all coefficients by the scalar c."""
        if self.p is not None:
            c = int(c) % self.p
            return UniPoly([a * c % self.p for a in self.coeffs], self.var, self.p)
        return UniPoly([a * c for a in self.coeffs], self.var, self.p)

    def monic(self):
        if self.is_zero():
            return self
        lead = self.lc()
        if lead == 1:
            return self
        return self.scale(_inv(lead, self.p))

    # -- calculus and evaluation ---------------------------------------
    def derivative(self):
        if self.degree < 1:
            return UniPoly.zero(self.var, self.p)
        out = [i * c for i, c in enumerate(self.coeffs)][1:]
        return UniPoly(out, self.var, self.p)

    def __call__(self, x):
        return self.evaluate(x)

    def evaluate(self, x):
        acc = 0
        if self.p is not None:
            x = int(x) % self.p
            for c in reversed(self.coeffs):
                acc = (acc * x + c) % self.p
            return acc
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def compose(self, inner: "UniPoly") -> "UniPoly":
        acc = UniPoly.zero(inner.var, self.p)
        for c in reversed(self.coeffs):
            acc = acc * inner + c
        return acc

    def shift(self, a):
        """f(x + a)."""
        return self.compose(UniPoly([a, 1], self.var, self.p))

    def scale_arg(self, c):
        """f(c*x)."""
        out = []
        power = 1
        for coef in self.coeffs:
            out.append(coef * power)
            power *= c
        return UniPoly(out, self.var, self.p)

    def reverse(self):
        """x^deg * f(1/x)."""
        return UniPoly(list(reversed(self.coeffs)), self.var, self.p)

    # -- integer normalizations ----------------------------------------
    def denominator_lcm(self) -> int:
        d = 1
        for c in self.coeffs:
            d = ilcm(d, Fraction(c).denominator)
        return d

    def content(self):
        """Rational content (gcd of numerators over lcm of denominators)."""
        if self.is_zero():
            return Fraction(0)
        d = self.denominator_lcm()
        n = 0
        for c in self.coeffs:
            n = igcd(n, int(c * d))
        return Fraction(n, d)

    def primitive(self):
        """Integer primitive part with positive leading coefficient, and
        the rational factor taken out: f = factor * primitive."""
        if self.is_zero():
            return Fraction(0), self
        cont = self.content()
        if self.lc() < 0:
            cont = -cont
        prim = UniPoly([int(c / cont) for c in self.coeffs], self.var)
        return cont, prim

    def to_int_coeffs(self):
        cont, prim = self.primitive()
        return [int(c) for c in prim.coeffs]

    def map_coeffs(self, fn, p=None):
        return UniPoly([fn(c) for c in self.coeffs], self.var, p)

    def reduce_mod(self, p: int) -> "UniPoly":
        """Reduction mod p; denominators must be invertible mod p."""
        if self.p is not None:
            raise ValueError("already modular")
        out = []
        for c in self.coeffs:
            c = Fraction(c)
            if c.denominator % p == 0:
                raise ZeroDivisionError(f"denominator divisible by {p}")
            out.append(c.numerator * pow(c.denominator, -1, p) % p)
        return UniPoly(out, self.var, p)


def _inv(c, p):
    if p is None:
        return 1 if c == 1 else Fraction(1) / Fraction(c)
    return pow(int(c), -1, p)


def poly_from_roots(roots, var="x", p=None):
    f = UniPoly.one(var, p)
    for r in roots:
        f = f * UniPoly([-r, 1], var, p)
    return f


def lagrange_interpolate(points, var="t"):
    """Exact interpolation through (x_i, y_i) with rational arithmetic."""
    f = UniPoly.zero(var)
    for i, (xi, yi) in enumerate(points):
        if not yi:
            continue
        num = UniPoly.one(var)
        den = Fraction(1)
        for j, (xj, _) in enumerate(points):
            if i == j:
                continue
            num = num * UniPoly([-xj, 1], var)
            den *= Fraction(xi) - Fraction(xj)
        f = f + num.scale(Fraction(yi) / den)
    return f


# ---------------------------------------------------------------------------
# gcd and resultants


def poly_gcd(f: UniPoly, g: UniPoly) -> UniPoly:
    """Monic gcd.  Over Q this runs a primitive PRS on integer images to
    sidestep fraction blowup."""
    if f.p is not None:
        while not g.is_zero():
            f, g = g, f % g
        return f.monic() if not f.is_zero() else f
    if f.is_zero():
        return g.monic()
    if g.is_zero():
        return f.monic()
    _, a = f.primitive()
    _, b = g.primitive()
    if a.degree < b.degree:
        a, b = b, a
    while not b.is_zero():
        r = _pseudo_rem(a, b)
        if r.is_zero():
            b_ = b
            _, b_prim = b_.primitive()
            return b_prim.monic()
        _, r = r.primitive()
        a, b = b, r
    _, a_prim = a.primitive()
    return a_prim.monic()


def _pseudo_rem(a: UniPoly, b: UniPoly) -> UniPoly:
    """prem(a, b) over Z: lc(b)^(deg a - deg b + 1) * a mod b."""
    da, db = a.degree, b.degree
    lead = b.lc()
    rem = list(a.coeffs)
    for i in range(da - db, -1, -1):
        c = rem[i + db]
        for k in range(len(rem)):
            rem[k] *= lead
        if c:
            for j, bc in enumerate(b.coeffs):
                rem[i + j] -= c * bc
    return UniPoly(rem[:db], a.var)


def resultant(f: UniPoly, g: UniPoly):
    """Resultant over Q, computed modulo enough primes and CRT-combined.

    The prime products run past twice the Hadamard bound of the Sylvester
    matrix, so the lifted integer is exact (the usual production recipe;
    it also keeps the 10^40-coefficient inputs cheap since everything
    happens on word-size residues).  Primes dividing either leading
    coefficient are skipped to keep degrees stable.
    """
    if f.p is not None:
        return _resultant_modp(f, g)
    if f.is_zero() or g.is_zero():
        return Fraction(0)
    if f.degree == 0:
        return Fraction(f.lc()) ** g.degree
    if g.degree == 0:
        return Fraction(g.lc()) ** f.degree
    cf, A = f.primitive()
    cg, B = g.primitive()
    scale = Fraction(cf) ** g.degree * Fraction(cg) ** f.degree
    bound = _hadamard_bound(A, B)
    residues, moduli = [], []
    modulus = 1
    from .ntheory import primes_from

    for p in primes_from(1 << 30):
        if A.lc() % p == 0 or B.lc() % p == 0:
            continue
        rp = _resultant_modp(A.map_coeffs(lambda c: c % p, p), B.map_coeffs(lambda c: c % p, p))
        residues.append(rp)
        moduli.append(p)
        modulus *= p
        if modulus > 2 * bound:
            break
    from .ntheory import crt_list

    x, m = crt_list(residues, moduli)
    if x > m // 2:
        x -= m
    return scale * x


def _hadamard_bound(f: UniPoly, g: UniPoly) -> int:
    import math

    nf = sum(int(c) * int(c) for c in f.coeffs)
    ng = sum(int(c) * int(c) for c in g.coeffs)
    b2 = nf**g.degree * ng**f.degree
    return math.isqrt(b2) + 1


def _resultant_modp(f: UniPoly, g: UniPoly):
    p = f.p
    if f.is_zero() or g.is_zero():
        return 0
    res = 1
    A, B = f, g
    if A.degree < B.degree:
        if A.degree % 2 == 1 and B.degree % 2 == 1:
            res = p - 1
        A, B = B, A
    while B.degree > 0:
        R = A % B
        if R.is_zero():
            return 0
        res = res * pow(B.lc(), A.degree - R.degree, p) % p
        if A.degree % 2 == 1 and B.degree % 2 == 1:
            res = -res % p
        A, B = B, R
    res = res * pow(B.lc(), A.degree, p) % p
    return res


def discriminant(f: UniPoly):
    """(-1)^(n(n-1)/2) * res(f, f') / lc(f); exact, sign convention fixed."""
    n = f.degree
    if n < 1:
        raise ValueError("discriminant needs degree >= 1")
    r = resultant(f, f.derivative())
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    if f.p is not None:
        return sign * r * pow(f.lc(), -1, f.p) % f.p
    return sign * Fraction(r) / Fraction(f.lc())


# ---------------------------------------------------------------------------
# squarefree decomposition (Yun over Q, general over F_p)


def squarefree_split(f: UniPoly):
    """[(multiplicity, squarefree factor)] with f = lc * prod factor^mult.

    Factors are monic, pairwise coprime and squarefree; the leading
    coefficient is re-attached to the multiplicity-least factor slot by
    returning it separately: callers get (lead, parts).
    """
    if f.is_zero():
        raise ValueError("zero polynomial")
    lead = f.lc()
    f = f.monic()
    if f.p is None:
        return lead, _yun(f)
    return lead, _squarefree_modp(f)


def _yun(f: UniPoly):
    parts = []
    df = f.derivative()
    a = poly_gcd(f, df)
    b = f.exact_div(a)
    c = df.exact_div(a)
    i = 1
    while b.degree > 0:
        d = c - b.derivative()
        g = poly_gcd(b, d)
        if g.degree > 0:
            parts.append((i, g.monic()))
        b = b.exact_div(g)
        c = d.exact_div(g)
        i += 1
    return parts


def _squarefree_modp(f: UniPoly):
    p = f.p

    def rec(f, e):
        parts = []
        if f.degree <= 0:
            return parts
        df = f.derivative()
        if df.is_zero():
            # f = w(x^p) with w carrying the same coefficients (Frobenius
            # fixes F_p), so recurse with multiplicities scaled by p
            w = UniPoly([f.coeffs[i] for i in range(0, len(f.coeffs), p)], f.var, p)
            return rec(w, e * p)
        a = poly_gcd(f, df)
        b = f.exact_div(a)
        i = 1
        while b.degree > 0:
            c = poly_gcd(a, b)
            fac = b.exact_div(c)
            if fac.degree > 0:
                parts.append((i * e, fac.monic()))
            b = c
            a = a.exact_div(c)
            i += 1
        parts.extend(rec(a, e))
        return parts

    return _merge_sqf(rec(f.monic(), 1))


def _merge_sqf(parts):
    merged = {}
    for m, fac in parts:
        if fac.degree == 0:
            continue
        if m in merged:
            merged[m] = merged[m] * fac
        else:
            merged[m] = fac
    return sorted(merged.items())


def multiplicity_pattern(f: UniPoly):
    """Root multiplicities of f over the algebraic closure, as a
    descending tuple; this is the inertia cycle pattern of a fiber."""
    lead, parts = squarefree_split(f)
    out = []
    for mult, fac in parts:
        out.extend([mult] * _distinct_root_count(fac))
    out.sort(reverse=True)
    return tuple(out)


def _distinct_root_count(f: UniPoly) -> int:
    # squarefree input: the number of roots in the algebraic closure is
    # just the degree
    return f.degree


# ---------------------------------------------------------------------------
# Sturm sequences


class EndpointIsRoot(ValueError):
    pass


def _sturm_chain(f: UniPoly):
    chain = [f]
    g = f.derivative()
    while not g.is_zero():
        chain.append(g)
        nxt = -(chain[-2] % g)
        # keep entries primitive so coefficients stay small; positive
        # scaling preserves all sign patterns
        if not nxt.is_zero():
            _, prim = nxt.primitive()
            if nxt.lc() < 0:
                prim = prim.scale(-1)
            nxt = prim
        f, g = g, nxt
    return chain


def _sign_at(f: UniPoly, x):
    if x == "+inf":
        return _sgn(f.lc())
    if x == "-inf":
        return _sgn(f.lc()) * (-1 if f.degree % 2 else 1)
    return _sgn(f.evaluate(x))


def _sgn(v):
    return (v > 0) - (v < 0)


def _sign_changes(chain, x):
    signs = [s for s in (_sign_at(f, x) for f in chain) if s != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def sturm_real_roots(f: UniPoly, lo="-inf", hi="+inf") -> int:
    """Exact count of distinct real roots of f in the open interval.

    f is made squarefree first; rational endpoints must not be roots.
    """
    if f.p is not None:
        raise ValueError("Sturm counting works over Q")
    if f.is_zero():
        raise ValueError("zero polynomial")
    if f.degree == 0:
        return 0
    fsq = f.exact_div(poly_gcd(f, f.derivative()))
    for endpoint in (lo, hi):
        if endpoint not in ("-inf", "+inf") and fsq.evaluate(endpoint) == 0:
            raise EndpointIsRoot(f"{endpoint} is a root; perturb the interval")
    chain = _sturm_chain(fsq)
    return _sign_changes(chain, lo) - _sign_changes(chain, hi)


def isolate_real_roots(f: UniPoly, lo: Fraction, hi: Fraction, max_width=None):
    """Disjoint open rational intervals, one per distinct real root in
    (lo, hi); interval widths shrink below max_width when given."""
    fsq = f.exact_div(poly_gcd(f, f.derivative()))
    chain = _sturm_chain(fsq)

    def count(a, b):
        return _sign_changes(chain, a) - _sign_changes(chain, b)

    lo, hi = Fraction(lo), Fraction(hi)
    while fsq.evaluate(lo) == 0:
        lo -= Fraction(1, 997)
    while fsq.evaluate(hi) == 0:
        hi += Fraction(1, 997)
    work = [(lo, hi, count(lo, hi))]
    done = []
    while work:
        a, b, k = work.pop()
        if k == 0:
            continue
        if k == 1 and (max_width is None or b - a < max_width):
            done.append((a, b))
            continue
        mid = (a + b) / 2
        if fsq.evaluate(mid) == 0:
            mid += (b - a) / 1009
        work.append((a, mid, count(a, mid)))
        work.append((mid, b, k - count(a, mid)))
    return sorted(done)
