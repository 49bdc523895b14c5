"""Truncated power series over F_p and Newton root lifting.

Series live in F_p[[u]] as int64 numpy arrays of fixed length N (the
precision); products are plain convolutions truncated to N.  Roots of a
bivariate F(x, t) around t = t0 + u are lifted from the simple roots of
the mod-p fiber.  Newton steps double the precision per round, which is
the only affordable mode at the precisions the degree-22 resolvent
needs (a few hundred coefficients); classical one-coefficient-at-a-time
lifting is kept for cross-checks.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .polys import UniPoly


class LiftError(ValueError):
    pass


def _check_prime_size(p: int, n: int):
    if (p - 1) ** 2 * n >= 2**63:
        raise LiftError(f"prime {p} too large for int64 convolution at length {n}")


def series(coeffs, n: int, p: int):
    out = np.zeros(n, dtype=np.int64)
    m = min(len(coeffs), n)
    out[:m] = np.asarray([int(c) % p for c in coeffs[:m]], dtype=np.int64)
    return out


def smul(a, b, n: int, p: int):
    return np.convolve(a[:n], b[:n])[:n] % p


def sadd(a, b, p: int):
    return (a + b) % p


def sinv(a, n: int, p: int):
    """Multiplicative inverse of a unit series, by Newton doubling."""
    if a[0] % p == 0:
        raise LiftError("series has no inverse (constant term 0)")
    inv = np.zeros(n, dtype=np.int64)
    inv[0] = pow(int(a[0]), -1, p)
    k = 1
    while k < n:
        k = min(2 * k, n)
        t = smul(a, inv, k, p)
        t = (-t) % p
        t[0] = (t[0] + 2) % p
        inv = smul(inv, t, k, p)
    return series(inv, n, p)


def poly_to_series_coeffs(F, t0: Fraction, p: int, n: int):
    """For bivariate F, the x-coefficients a_i(t0 + u) as length-n series."""
    coeffs = []
    for i in range(F.degree(0) + 1):
        ai = F.coefficient_of_first(i)  # in t
        shifted = ai.shift(Fraction(t0))  # a_i(t0 + u)
        coeffs.append(series([_fr_mod(c, p) for c in shifted.coeffs], n, p))
    return coeffs


def _fr_mod(c, p: int) -> int:
    c = Fraction(c)
    if c.denominator % p == 0:
        raise LiftError(f"denominator divisible by {p}")
    return c.numerator * pow(c.denominator, -1, p) % p


def eval_poly_at_series(coeffs, x, n: int, p: int):
    """Horner: sum coeffs[i] * x^i with series coefficients."""
    acc = np.zeros(n, dtype=np.int64)
    for ai in reversed(coeffs):
        acc = smul(acc, x, n, p)
        acc = (acc + ai[:n]) % p
    return acc


@dataclass
class SeriesRoot:
    p: int
    center: Fraction
    coeffs: np.ndarray
    precision: int
    block: int = -1  # index of the rational factor the mod-p root reduces into

    def residual_valuation(self, F) -> int:
        """Order of vanishing of F(root, t0+u); precision if it is 0 mod u^N."""
        n = self.precision
        cs = poly_to_series_coeffs(F, self.center, self.p, n)
        val = eval_poly_at_series(cs, self.coeffs, n, self.p)
        nz = np.nonzero(val)[0]
        return int(nz[0]) if len(nz) else n


def lift_series_roots(F, t0, p: int, precision: int, mode: str = "newton"):
    """All series roots of F(x, t0+u) in F_p[[u]] from a split simple fiber.

    Requires the fiber F(x, t0) mod p to be squarefree with deg_x(F)
    roots in F_p (split completely); raises LiftError otherwise.  Each
    root is lifted to the requested precision.  mode: 'newton' doubles
    precision per step; 'linear' adds one coefficient per step (slower,
    used as an independent cross-check).
    """
    t0 = Fraction(t0)
    n = precision
    _check_prime_size(p, 2 * n)
    degx = F.degree(0)
    fiber = F.specialize_second(t0).reduce_mod(p)
    if fiber.degree != degx:
        raise LiftError("x-degree drops at the chosen center")
    roots = sorted(
        x for x in range(p) if fiber.evaluate(x) == 0
    )
    if len(roots) != degx:
        raise LiftError(
            f"fiber is not split: {len(roots)} simple roots in F_{p}, need {degx}"
        )
    dfiber = fiber.derivative()
    for x in roots:
        if dfiber.evaluate(x) == 0:
            raise LiftError("fiber has a repeated root (ramified center)")

    coeffs = poly_to_series_coeffs(F, t0, p, n)
    dcoeffs = [series((i + 1) * c, n, p) for i, c in enumerate(coeffs[1:])]
    # derivative coefficients: d/dx sum a_i x^i = sum (i+1) a_{i+1} x^i
    dcoeffs = []
    for i in range(1, degx + 1):
        dcoeffs.append((coeffs[i] * i) % p)

    out = []
    for r0 in roots:
        if mode == "newton":
            x = _newton_lift_root(coeffs, dcoeffs, r0, n, p)
        elif mode == "linear":
            x = _linear_lift_root(coeffs, dcoeffs, r0, n, p)
        else:
            raise ValueError(f"unknown mode {mode!r}")
        root = SeriesRoot(p, t0, x, n)
        if root.residual_valuation(F) < n:
            raise LiftError("lifted root fails its residual check")
        out.append(root)
    return out


def _newton_lift_root(coeffs, dcoeffs, r0: int, n: int, p: int):
    x = np.zeros(n, dtype=np.int64)
    x[0] = r0 % p
    k = 1
    while k < n:
        k = min(2 * k, n)
        fx = eval_poly_at_series([c[:k] for c in coeffs], x[:k], k, p)
        dfx = eval_poly_at_series([c[:k] for c in dcoeffs], x[:k], k, p)
        delta = smul(fx, sinv(dfx, k, p), k, p)
        x = series((x[:k] - delta) % p, n, p)
    return x


def _linear_lift_root(coeffs, dcoeffs, r0: int, n: int, p: int):
    x = np.zeros(n, dtype=np.int64)
    x[0] = r0 % p
    d0 = eval_poly_at_series([c[:1] for c in dcoeffs], x[:1], 1, p)
    inv0 = pow(int(d0[0]), -1, p)
    for k in range(1, n):
        fx = eval_poly_at_series([c[: k + 1] for c in coeffs], x[: k + 1], k + 1, p)
        correction = int(fx[k]) * inv0 % p
        x[k] = (-correction) % p
    return x


def series_pow_table(x, top: int, n: int, p: int):
    """[x^0, x^1, ..., x^top] as length-n series."""
    out = [series([1], n, p)]
    for _ in range(top):
        out.append(smul(out[-1], x, n, p))
    return out
