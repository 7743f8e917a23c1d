"""Gegenbauer polynomials, zonal spherical monogenics, Fourier-Borel kernel.

The degree-k zonal monogenic is the two-point polynomial

    Z_k(a, b) = G(m/2-1) / (2^(k+1) G(m/2+k)) *
                [ (k+m-2) (|a||b|)^k C_k^{m/2-1}(t)
                  + (m-2) (a^b) (|a||b|)^(k-1) C_{k-1}^{m/2}(t) ],

with t = <a,b>/(|a||b|) and a^b the exterior product.  After clearing
the |a||b| factors against the Gegenbauer expansions this is a genuine
polynomial of bidegree (k, k); radial factors enter through the
bilinear squares <a,a>, <b,b>, so the object extends to complex
arguments.  It is left monogenic in its FIRST argument and right
monogenic in its second; the two orientations are exchanged by swapping
arguments (Hermitian symmetry).

Materialized kernels use the shared two-block variable layout: block 1
is variables [0, m), block 2 is [m, 2m).
"""

from __future__ import annotations

import math
from functools import lru_cache

import numpy as np

from .algebra import Multivector
from .fischer import beta_coef
from .mvpoly import MVPolynomial, evaluate

__all__ = [
    "gegenbauer",
    "gegenbauer_coeffs",
    "beta_coef",
    "zonal_poly",
    "zonal",
    "zonal_ks_poly",
    "zonal_ks",
    "fourier_borel_poly",
    "fourier_borel",
]


def gegenbauer(k: int, lam: float, t):
    """Evaluate C_k^lam(t) by the three-term recurrence
    k C_k = 2(k+lam-1) t C_{k-1} - (k+2lam-2) C_{k-2}."""
    if k < 0:
        return 0.0 * t if not np.isscalar(t) else 0.0
    if lam <= 0:
        raise ValueError("Gegenbauer weight must be positive")
    prev = 1.0 + 0.0 * t if not np.isscalar(t) else 1.0
    if k == 0:
        return prev
    cur = 2.0 * lam * t
    for n in range(2, k + 1):
        prev, cur = cur, (2.0 * (n + lam - 1) * t * cur - (n + 2 * lam - 2) * prev) / n
    return cur


@lru_cache(maxsize=None)
def gegenbauer_coeffs(k: int, lam: float) -> tuple[float, ...]:
    """Monomial coefficients (c_0, .., c_k) of C_k^lam(t) = sum c_p t^p."""
    if lam <= 0:
        raise ValueError("Gegenbauer weight must be positive")
    if k < 0:
        return ()
    prev = np.array([1.0])
    if k == 0:
        return tuple(prev)
    cur = np.array([0.0, 2.0 * lam])
    for n in range(2, k + 1):
        nxt = np.zeros(n + 1)
        nxt[1:] += 2.0 * (n + lam - 1) * cur
        nxt[:n - 1] -= (n + 2 * lam - 2) * prev
        prev, cur = cur, nxt / n
    return tuple(cur)


def _scalar_poly(terms: dict, dim: int, nvars: int) -> MVPolynomial:
    nb = 1 << dim
    full = {}
    for e, val in terms.items():
        c = np.zeros(nb, dtype=np.complex128)
        c[0] = val
        full[e] = c
    return MVPolynomial(dim, nvars, full)


@lru_cache(maxsize=None)
def _pair_ip(m: int) -> MVPolynomial:
    """<a, b> as a polynomial over the two-block layout."""
    terms = {}
    for j in range(m):
        e = [0] * (2 * m)
        e[j] = 1
        e[m + j] = 1
        terms[tuple(e)] = 1.0
    return _scalar_poly(terms, m, 2 * m)


@lru_cache(maxsize=None)
def _block_sq(m: int, which: int) -> MVPolynomial:
    """<a,a> (which=0) or <b,b> (which=1) over the two-block layout."""
    terms = {}
    for j in range(m):
        e = [0] * (2 * m)
        e[which * m + j] = 2
        terms[tuple(e)] = 1.0
    return _scalar_poly(terms, m, 2 * m)


@lru_cache(maxsize=None)
def _wedge_poly(m: int) -> MVPolynomial:
    """a ^ b as a bivector-valued polynomial over the two-block layout."""
    terms: dict = {}
    nb = 1 << m
    for i in range(m):
        for j in range(i + 1, m):
            blade = (1 << i) | (1 << j)
            for (vi, vj, sgn) in ((i, m + j, 1.0), (j, m + i, -1.0)):
                e = [0] * (2 * m)
                e[vi] += 1
                e[vj] += 1
                e = tuple(e)
                c = terms.get(e)
                if c is None:
                    c = np.zeros(nb, dtype=np.complex128)
                    terms[e] = c
                c[blade] += sgn
    return MVPolynomial(m, 2 * m, terms)


def _radial_gegenbauer(k: int, lam: float, m: int) -> MVPolynomial:
    """(|a||b|)^k C_k^lam(<a,b>/(|a||b|)) expanded over the two blocks."""
    coeffs = gegenbauer_coeffs(k, lam)
    ip = _pair_ip(m)
    qq = _block_sq(m, 0) * _block_sq(m, 1)
    out = MVPolynomial.zero(m, 2 * m)
    ip_pow = MVPolynomial.constant(1.0, m, 2 * m)
    pows = []
    for p in range(k + 1):
        pows.append(ip_pow)
        ip_pow = ip_pow * ip
    for p in range(k % 2, k + 1, 2):
        c = coeffs[p]
        if c == 0.0:
            continue
        term = pows[p].scale(c)
        for _ in range((k - p) // 2):
            term = term * qq
        out = out + term
    return out


@lru_cache(maxsize=None)
def zonal_poly(k: int, m: int) -> MVPolynomial:
    """Zonal spherical monogenic Z_k as a two-block polynomial, left
    monogenic in block 1."""
    if m < 3:
        raise ValueError("zonal monogenics need dimension m >= 3")
    if k < 0:
        raise ValueError("degree must be non-negative")
    scale = math.gamma(m / 2 - 1) / (2 ** (k + 1) * math.gamma(m / 2 + k))
    main = _radial_gegenbauer(k, m / 2 - 1, m).scale(float(k + m - 2))
    out = main
    if k >= 1:
        tail = _wedge_poly(m) * _radial_gegenbauer(k - 1, m / 2, m)
        out = out + tail.scale(float(m - 2))
    return out.scale(scale)


def zonal(k: int, u, x) -> Multivector:
    """Pointwise Z_k with x as the monogenic variable: the polynomial is
    left monogenic in x (wedge orientation x^u)."""
    u = np.asarray(u, dtype=np.complex128)
    x = np.asarray(x, dtype=np.complex128)
    m = u.shape[0]
    return evaluate(zonal_poly(k, m), np.concatenate([x, u]))


def zonal_ks_poly(k: int, s: int, m: int) -> MVPolynomial:
    """Fischer component Z_{k,s} = Z_{k-s} / (beta_{s,k-s} .. beta_{1,k-s})."""
    if not 0 <= s <= k:
        raise ValueError("need 0 <= s <= k")
    denom = 1.0
    for j in range(1, s + 1):
        denom *= beta_coef(j, k - s, m)
    return zonal_poly(k - s, m).scale(1.0 / denom)


def zonal_ks(k: int, s: int, u, x) -> Multivector:
    u = np.asarray(u, dtype=np.complex128)
    x = np.asarray(x, dtype=np.complex128)
    m = u.shape[0]
    return evaluate(zonal_ks_poly(k, s, m), np.concatenate([x, u]))


def fourier_borel_poly(trunc: int, m: int) -> MVPolynomial:
    """Truncated Fourier-Borel kernel sum_{k<=trunc} Z_k over two blocks,
    left monogenic in block 1.  Pairing against polynomials of degree
    <= trunc is exact because higher zonal components are Fischer
    orthogonal to them."""
    out = MVPolynomial.zero(m, 2 * m)
    for k in range(trunc + 1):
        out = out + zonal_poly(k, m)
    return out


def fourier_borel(u, x, trunc: int) -> Multivector:
    """Pointwise truncated Fourier-Borel kernel, monogenic in x."""
    u = np.asarray(u, dtype=np.complex128)
    x = np.asarray(x, dtype=np.complex128)
    m = u.shape[0]
    return evaluate(fourier_borel_poly(trunc, m), np.concatenate([x, u]))
