"""Polynomial factorization: prime fields and the rationals.

Mod p: squarefree split, distinct-degree, then Cantor-Zassenhaus
(equal-degree) with the trace-map variant in characteristic 2.  The
random splitting elements come from a seeded generator, so results are
reproducible.

Over Q: Zassenhaus.  Factor the squarefree primitive part modulo a
prime of good reduction, Hensel-lift the modular factors past twice the
Landau-Mignotte coefficient bound and recombine subsets.  Degrees here
stay below ~30, so subset recombination never explodes.
"""

from __future__ import annotations

import math
import random
from fractions import Fraction

from .ntheory import is_prime, primes_from
from .polys import UniPoly, poly_gcd, squarefree_split


class FactorError(ValueError):
    pass


def _powmod(base: UniPoly, e: int, mod: UniPoly) -> UniPoly:
    result = UniPoly.one(base.var, base.p)
    base = base % mod
    while e:
        if e & 1:
            result = result * base % mod
        base = base * base % mod
        e >>= 1
    return result


def distinct_degree_split(f: UniPoly):
    """[(d, product of the irreducible factors of degree d)] for
    squarefree monic f over F_p."""
    p = f.p
    out = []
    x = UniPoly.gen(f.var, p)
    h = x
    d = 0
    while f.degree > 2 * (d + 1) - 1 and f.degree > 0:
        d += 1
        h = _powmod(h, p, f)
        g = poly_gcd(f, h - x)
        if g.degree > 0:
            out.append((d, g))
            f = f.exact_div(g)
            h = h % f
    if f.degree > 0:
        out.append((f.degree, f))
    return out


def _equal_degree_split(f: UniPoly, d: int, rng) -> list:
    """Split squarefree monic f (all factors of degree d) into irreducibles."""
    p = f.p
    n = f.degree
    if n == d:
        return [f]
    pieces = [f]
    result = []
    while pieces:
        h = pieces.pop()
        if h.degree == d:
            result.append(h)
            continue
        g = _random_split(h, d, rng)
        pieces.append(g)
        pieces.append(h.exact_div(g))
    return result


def _random_split(f: UniPoly, d: int, rng) -> UniPoly:
    p = f.p
    n = f.degree
    while True:
        a = UniPoly([rng.randrange(p) for _ in range(n)], f.var, p)
        if a.degree < 1:
            continue
        g = poly_gcd(f, a)
        if 0 < g.degree < n:
            return g.monic()
        if p == 2:
            # trace map over F_{2^d}
            t = UniPoly.zero(f.var, p)
            b = a
            for _ in range(d):
                t = (t + b) % f
                b = b * b % f
            g = poly_gcd(f, t)
        else:
            e = (p**d - 1) // 2
            g = poly_gcd(f, _powmod(a, e, f) - 1)
        if 0 < g.degree < n:
            return g.monic()


def factor_mod_p(f: UniPoly, seed: int = 0) -> list:
    """Irreducible factorization over F_p as [(factor, multiplicity)],
    monic factors sorted; the unit is f.lc()."""
    if f.p is None:
        raise FactorError("factor_mod_p needs a mod-p polynomial")
    if not is_prime(f.p):
        raise FactorError(f"{f.p} is not prime")
    if f.is_zero():
        raise FactorError("zero polynomial")
    rng = random.Random((seed << 20) ^ f.p ^ len(f.coeffs))
    out = {}
    _, sqf = squarefree_split(f)
    for mult, part in sqf:
        for d, block in distinct_degree_split(part):
            for irr in _equal_degree_split(block, d, rng):
                key = irr.monic()
                out[key] = out.get(key, 0) + mult
    return sorted(out.items(), key=lambda kv: (kv[0].degree, kv[0].coeffs))


def degree_pattern(f: UniPoly) -> tuple:
    """Descending degrees of the irreducible factors (with multiplicity)
    of f over F_p; for squarefree f this is the Frobenius cycle type."""
    degs = []
    for fac, mult in factor_mod_p(f):
        degs.extend([fac.degree] * mult)
    return tuple(sorted(degs, reverse=True))


def is_irreducible_mod_p(f: UniPoly) -> bool:
    """Rabin's test: x^(p^n) = x mod f and gcd conditions at maximal
    proper divisors of n."""
    p, n = f.p, f.degree
    if n <= 0:
        return False
    if n == 1:
        return True
    f = f.monic()
    x = UniPoly.gen(f.var, p)
    h = _powmod(x, p**n, f)
    if h != x % f:
        return False
    for q in {n // r for r in _prime_divisors(n)}:
        g = poly_gcd(f, _powmod(x, p**q, f) - x)
        if g.degree != 0:
            return False
    return True


def _prime_divisors(n: int):
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


# ---------------------------------------------------------------------------
# Hensel lifting (two factors, then a balanced tree for many)


def _hensel_step(f, g, h, s, t, m):
    """One quadratic step: from f = g*h mod m with s*g + t*h = 1 mod m
    to the same data mod m^2 (Gathen-Gerhard alg. 15.10)."""
    mm = m * m
    fc = [c % mm for c in f]
    e = _zx_sub(fc, _zx_mul(g, h), mm)
    q, r = _zx_divmod_monic(_zx_mul(s, e), h, mm)
    g1 = _zx_trim([(a + b) % mm for a, b in _zip_pad(g, _zx_add(_zx_mul(t, e), _zx_mul(q, g), mm))])
    h1 = _zx_trim([(a + b) % mm for a, b in _zip_pad(h, r)])
    b = _zx_sub(_zx_add(_zx_mul(s, g1), _zx_mul(t, h1), mm), [1], mm)
    c, d = _zx_divmod_monic(_zx_mul(s, b), h1, mm)
    s1 = _zx_trim([(a - bb) % mm for a, bb in _zip_pad(s, d)])
    t1 = _zx_sub(t, _zx_add(_zx_mul(t, b), _zx_mul(c, g1), mm), mm)
    return g1, h1, s1, t1


def _zip_pad(a, b):
    n = max(len(a), len(b))
    return zip(a + [0] * (n - len(a)), b + [0] * (n - len(b)))


def _zx_trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _zx_add(a, b, m):
    return _zx_trim([(x + y) % m for x, y in _zip_pad(a, b)])


def _zx_sub(a, b, m):
    return _zx_trim([(x - y) % m for x, y in _zip_pad(a, b)])


def _zx_mul(a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _zx_trim(out)


def _zx_divmod_monic(a, b, m):
    """Divide by monic b with coefficients mod m."""
    a = [c % m for c in a]
    db = len(b) - 1
    if len(a) <= db:
        return [], _zx_trim(a)
    q = [0] * (len(a) - db)
    for i in range(len(a) - db - 1, -1, -1):
        c = a[i + db] % m
        if c:
            q[i] = c
            for j, bc in enumerate(b):
                a[i + j] = (a[i + j] - c * bc) % m
    return _zx_trim(q), _zx_trim(a[:db])


def hensel_lift_factors(f: UniPoly, factors_mod_p: list, p: int, target: int):
    """Lift coprime monic factors of monic f from mod p to mod p^k >= target.

    Balanced-tree lifting; returns (modulus, [lifted factor coeff lists]).
    """
    fc = [int(c) for c in f.coeffs]

    def lift_tree(fc_local, parts, m_target):
        if len(parts) == 1:
            return [[c % m_target for c in fc_local]]
        mid = len(parts) // 2
        g0 = [1]
        for part in parts[:mid]:
            g0 = _zx_mul(g0, part)
        h0 = [1]
        for part in parts[mid:]:
            h0 = _zx_mul(h0, part)
        g0 = [c % p for c in g0]
        h0 = [c % p for c in h0]
        s0, t0 = _modp_bezout(g0, h0, p)
        g, h, s, t = g0, h0, s0, t0
        m = p
        while m < m_target:
            g, h, s, t = _hensel_step(fc_local, g, h, s, t, m)
            m = m * m
        left = lift_tree(g, parts[:mid], m_target)
        right = lift_tree(h, parts[mid:], m_target)
        return left + right

    parts = [[int(c) for c in fac.coeffs] for fac in factors_mod_p]
    m = p
    while m < target:
        m = m * m
    return m, lift_tree(fc, parts, m)


def _modp_bezout(g, h, p):
    """s, t with s*g + t*h = 1 mod p for coprime g, h."""
    a = UniPoly(g, "x", p)
    b = UniPoly(h, "x", p)
    r0, r1 = a, b
    s0, s1 = UniPoly.one("x", p), UniPoly.zero("x", p)
    t0, t1 = UniPoly.zero("x", p), UniPoly.one("x", p)
    while not r1.is_zero():
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if r0.degree != 0:
        raise FactorError("factors not coprime in Bezout step")
    inv = pow(int(r0.coeffs[0]), -1, p)
    return (
        [c * inv % p for c in s0.coeffs],
        [c * inv % p for c in t0.coeffs],
    )


def _landau_mignotte(f: UniPoly) -> int:
    """Bound on coefficients of any monic factor of monic integer f."""
    norm = math.isqrt(sum(int(c) * int(c) for c in f.coeffs)) + 1
    n = f.degree
    return 2**n * norm


def factor_rational(f: UniPoly, seed: int = 0) -> list:
    """Irreducible factorization over Q: (content, [(factor, mult)]).

    Factors are primitive integer polynomials with positive leading
    coefficient; content * prod(factor^mult) = f.
    """
    if f.p is not None:
        raise FactorError("factor_rational works over Q")
    if f.is_zero():
        raise FactorError("zero polynomial")
    content, prim = f.primitive()
    out = []
    lead_unit, sqf = squarefree_split(prim)
    content *= lead_unit
    for mult, part in sqf:
        # part is monic with rational coefficients; re-primitivize
        c2, part_int = part.primitive()
        content *= c2**mult
        for fac in _factor_squarefree_int(part_int, seed):
            out.append((fac, mult))
    out.sort(key=lambda kv: (kv[0].degree, kv[0].coeffs))
    return content, out


def _factor_squarefree_int(f: UniPoly, seed: int) -> list:
    """Zassenhaus on a squarefree primitive integer polynomial."""
    if f.degree <= 1:
        return [f]
    lead = int(f.lc())
    monic_scaled = _to_monic_scaled(f, lead)
    # choose a prime keeping f squarefree with few modular factors
    best = None
    tried = 0
    for p in primes_from(101):
        if lead % p == 0:
            continue
        fp = monic_scaled.reduce_mod(p)
        if poly_gcd(fp, fp.derivative()).degree != 0:
            continue
        fac = factor_mod_p(fp, seed)
        if len(fac) == 1:
            return [f]
        if best is None or len(fac) < len(best[1]):
            best = (p, fac)
        tried += 1
        if tried >= 5 or len(fac) <= 3:
            break
    p, fac = best
    bound = 2 * _landau_mignotte(monic_scaled) + 1
    modulus, lifted = hensel_lift_factors(monic_scaled, [g for g, _ in fac], p, bound)
    return _recombine(f, lifted, modulus, lead)


def _to_monic_scaled(f: UniPoly, lead: int) -> UniPoly:
    """lead^(n-1) * f(x / lead): monic integer polynomial."""
    n = f.degree
    out = [int(c) * lead ** (n - 1 - i) for i, c in enumerate(f.coeffs[:-1])]
    out.append(1)
    return UniPoly(out, f.var)


def _from_monic_scaled(g_coeffs, lead, var) -> UniPoly:
    """Undo _to_monic_scaled on a monic factor: primitive part of
    lead^? g(lead*x)."""
    n = len(g_coeffs) - 1
    out = [int(c) * lead**i for i, c in enumerate(g_coeffs)]
    poly = UniPoly(out, var)
    _, prim = poly.primitive()
    return prim


def _balanced(c, m):
    c %= m
    return c - m if c > m // 2 else c


def _recombine(f: UniPoly, lifted, modulus, lead) -> list:
    """Try factor subsets of the lifted modular factorization."""
    from itertools import combinations

    factors = []
    remaining = list(range(len(lifted)))
    current = _to_monic_scaled(f, lead)
    r = 1
    while 2 * r <= len(remaining):
        found = False
        for combo in combinations(remaining, r):
            prod = [1]
            for i in combo:
                prod = _zx_mul(prod, lifted[i])
            cand = UniPoly([_balanced(c, modulus) for c in prod], f.var)
            quot, rem = divmod(current, cand)
            if rem.is_zero() and all(
                Fraction(c).denominator == 1 for c in quot.coeffs
            ):
                factors.append(_from_monic_scaled(cand.coeffs, lead, f.var))
                current = quot
                remaining = [i for i in remaining if i not in combo]
                found = True
                break
        if not found:
            r += 1
    if current.degree > 0:
        factors.append(_from_monic_scaled(current.coeffs, lead, f.var))
    # normalize signs and verify the reassembly
    out = []
    for g in factors:
        _, prim = g.primitive()
        out.append(prim)
    check = UniPoly.one(f.var)
    for g in out:
        check = check * g
    _, fprim = f.primitive()
    if check != fprim:
        raise FactorError("recombination failed to reproduce the input")
    return sorted(out, key=lambda g: (g.degree, g.coeffs))


def rational_roots(f: UniPoly) -> list:
    """All rational roots, via the linear factors of the factorization."""
    _, factors = factor_rational(f)
    roots = []
    for g, mult in factors:
        if g.degree == 1:
            roots.append((Fraction(-g.coeffs[0], g.coeffs[1]), mult))
    return sorted(roots)
