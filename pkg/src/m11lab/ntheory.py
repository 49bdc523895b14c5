"""Integer utilities: primality, factorization, CRT and rational
reconstruction.

Primality is deterministic below 3.3*10^24 (fixed Miller-Rabin witness
set); larger inputs fall back to 40 pseudo-random witnesses, which is
recorded in the returned certificate flag rather than silently trusted.
"""

from __future__ import annotations

import math
import random
from fractions import Fraction

# Miller-Rabin with these witnesses is a proven primality test for
# n < 3317044064679887385961981 (Sorenson-Webster)
_DETERMINISTIC_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
_DETERMINISTIC_LIMIT = 3317044064679887385961981

_SMALL_PRIMES = (
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61,
    67, 71, 73, 79, 83, 89, 97,
)


def _miller_rabin(n: int, witnesses) -> bool:
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in witnesses:
        a %= n
        if a in (0, 1, n - 1):
            continue
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def is_prime(n: int) -> bool:
    """Deterministic below 3.3e24, else strong probable-prime (40 rounds)."""
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n == p:
            return True
        if n % p == 0:
            return False
    if n < _DETERMINISTIC_LIMIT:
        return _miller_rabin(n, _DETERMINISTIC_WITNESSES)
    rng = random.Random(n)
    witnesses = [rng.randrange(2, n - 1) for _ in range(40)]
    return _miller_rabin(n, witnesses)


def is_prime_certified(n: int):
    """(is_prime, 'deterministic' | 'probabilistic<2^-80')."""
    flag = "deterministic" if n < _DETERMINISTIC_LIMIT else "probabilistic<2^-80"
    return is_prime(n), flag


def next_prime(n: int) -> int:
    n += 1
    if n <= 2:
        return 2
    if n % 2 == 0:
        n += 1
    while not is_prime(n):
        n += 2
    return n


def primes_from(start: int):
    """Endless iterator over primes >= start."""
    p = start - 1
    while True:
        p = next_prime(p)
        yield p


def _pollard_brent(n: int, rng) -> int:
    """One nontrivial factor of composite n (Brent's cycle variant)."""
    if n % 2 == 0:
        return 2
    while True:
        y = rng.randrange(1, n)
        c = rng.randrange(1, n)
        m = 128
        g = r = q = 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r <<= 1
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g


def factor_integer(n: int) -> list:
    """Prime factorization as a sorted list of (prime, exponent).

    A leading (-1, 1) records a negative sign.  Raises on 0.
    """
    if n == 0:
        raise ValueError("cannot factor 0")
    out = {}
    if n < 0:
        out[-1] = 1
        n = -n
    for p in _SMALL_PRIMES:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    # mid-size trial division pays off before rho on smooth cofactors
    p = _SMALL_PRIMES[-1] + 2
    while p * p <= n and p < 100000:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 2
    rng = random.Random(0xC0FFEE)
    stack = [n] if n > 1 else []
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if is_prime(m):
            out[m] = out.get(m, 0) + 1
            continue
        root = _perfect_power(m)
        if root is not None:
            base, k = root
            for _ in range(k):
                stack.append(base)
            continue
        d = _pollard_brent(m, rng)
        stack.append(d)
        stack.append(m // d)
    return sorted(out.items())


def _perfect_power(n: int):
    """(base, k) with base^k = n and k >= 2, or None."""
    for k in range(2, n.bit_length() + 1):
        base = round(n ** (1.0 / k)) if n.bit_length() < 50 else _iroot(n, k)
        for b in (base - 1, base, base + 1):
            if b > 1 and b**k == n:
                return b, k
    return None


def _iroot(n: int, k: int) -> int:
    if n < 2:
        return n
    x = 1 << (n.bit_length() // k + 1)
    while True:
        y = ((k - 1) * x + n // x ** (k - 1)) // k
        if y >= x:
            return x
        x = y


def factorization_to_int(factors) -> int:
    n = 1
    for p, e in factors:
        n *= p**e
    return n


def format_factorization(factors) -> str:
    parts = []
    for p, e in factors:
        if p == -1:
            parts.append("-1")
        else:
            parts.append(str(p) if e == 1 else f"{p}^{e}")
    return "*".join(parts) if parts else "1"


# ---------------------------------------------------------------------------
# CRT and rational reconstruction


class ReconstructionError(ValueError):
    pass


def crt_pair(a1: int, m1: int, a2: int, m2: int):
    """Solve x = a1 (m1), x = a2 (m2) for coprime moduli."""
    g, u, v = _xgcd(m1, m2)
    if g != 1:
        raise ValueError("moduli not coprime")
    m = m1 * m2
    return (a1 * v * m2 + a2 * u * m1) % m, m


def crt_list(residues, moduli):
    if len(residues) != len(moduli) or not residues:
        raise ValueError("need matching nonempty residue and modulus lists")
    x, m = residues[0] % moduli[0], moduli[0]
    for a, mod in zip(residues[1:], moduli[1:]):
        x, m = crt_pair(x, m, a % mod, mod)
    return x, m


def _xgcd(a, b):
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def rational_reconstruct(a: int, m: int, num_bound: int | None = None,
                         den_bound: int | None = None) -> Fraction:
    """The unique n/d = a mod m with |n| <= N, 0 < d <= D and gcd(d, m) = 1.

    Defaults N = D = floor(sqrt(m/2)); existence requires m > 2*N*D.
    Raises ReconstructionError when no candidate passes (the usual signal
    that more moduli are needed).
    """
    if num_bound is None or den_bound is None:
        bound = math.isqrt(m // 2)
        num_bound = num_bound or bound
        den_bound = den_bound or bound
    if m <= 2 * num_bound * den_bound:
        raise ReconstructionError("modulus too small for the stated bounds")
    a %= m
    r0, r1 = m, a
    t0, t1 = 0, 1
    while r1 > num_bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        t0, t1 = t1, t0 - q * t1
    n, d = r1, t1
    if d < 0:
        n, d = -n, -d
    if d == 0 or d > den_bound or math.gcd(n, d) != 1 or math.gcd(d, m) != 1:
        raise ReconstructionError(f"no rational below bounds for {a} mod {m}")
    if (n - a * d) % m != 0:
        raise ReconstructionError("reconstruction inconsistent")
    return Fraction(n, d)


def crt_rational_reconstruct(residues, moduli, num_bound=None, den_bound=None):
    """CRT-combine residues with pairwise coprime moduli, then recognize
    the bounded-height rational behind them."""
    x, m = crt_list(residues, moduli)
    return rational_reconstruct(x, m, num_bound, den_bound)


def nth_root_decimal(n: int, k: int, digits: int = 6) -> str:
    """|n|^(1/k) truncated to the given number of decimals, exactly."""
    if n <= 0:
        raise ValueError("need a positive integer")
    scaled = n * 10 ** (digits * k)
    root = _iroot(scaled, k)
    s = str(root).rjust(digits + 1, "0")
    return s[:-digits] + "." + s[-digits:]
