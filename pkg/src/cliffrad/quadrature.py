"""Exact polynomial integration and Stiefel-manifold Monte Carlo.

Gaussian integrals use the normalized measure (2 pi)^(-m/2) e^(-|x|^2/2),
whose monomial moments are products of double factorials; sphere
integrals use the unnormalized surface measure dS on S^(m-1), whose even
moments are 2 G(b_1)..G(b_m)/G(b_1+..+b_m) with b_j = (a_j+1)/2.  Both
are exact on polynomials.

Frame sampling draws uniformly from the Stiefel manifold St(m, 2) by
orthonormalizing pairs of Gaussian vectors from a counter-based Philox
stream, so the sample list for a given (m, n, seed) is a fixed array:
consumers may evaluate it in any order without changing the result.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .algebra import Multivector, NullFrame
from .mvpoly import MVPolynomial

__all__ = [
    "QuadratureSpec",
    "gaussian_moment",
    "sphere_moment",
    "gaussian_integrate",
    "sphere_integrate",
    "gaussian_integrate_block",
    "sphere_integrate_block",
    "sphere_area",
    "sample_frames",
    "stiefel_sample",
    "stiefel_average",
]


@dataclass(frozen=True)
class QuadratureSpec:
    """Sample count, seed and error-reporting flag for Stiefel averages."""

    samples: int = 20000
    seed: int = 42
    report_stderr: bool = True

    def __post_init__(self):
        if self.samples < 1:
            raise ValueError("sample count must be positive")


def _double_factorial(n: int) -> float:
    out = 1.0
    while n > 1:
        out *= n
        n -= 2
    return out


def gaussian_moment(alpha) -> float:
    """Normalized Gaussian moment of x^alpha: 0 for odd entries, else
    the product of (alpha_j - 1)!!."""
    out = 1.0
    for a in alpha:
        if a % 2:
            return 0.0
        if a:
            out *= _double_factorial(a - 1)
    return out


def sphere_area(m: int) -> float:
    """Area of the unit sphere S^(m-1)."""
    return 2.0 * math.pi ** (m / 2) / math.gamma(m / 2)


def sphere_moment(alpha) -> float:
    """Unnormalized sphere moment of w^alpha over S^(m-1)."""
    tot = 0.0
    prod = 1.0
    for a in alpha:
        if a % 2:
            return 0.0
        b = (a + 1) / 2
        prod *= math.gamma(b)
        tot += b
    return 2.0 * prod / math.gamma(tot)


def gaussian_integrate(p: MVPolynomial) -> Multivector:
    """Exact normalized Gaussian integral over all variables."""
    acc = np.zeros(1 << p.dim, dtype=np.complex128)
    for e, c in p.terms():
        mom = gaussian_moment(e)
        if mom:
            acc += mom * c
    return Multivector(p.dim, acc, _copy=False)


def sphere_integrate(p: MVPolynomial) -> Multivector:
    """Exact integral over S^(nvars-1) with surface measure dS."""
    acc = np.zeros(1 << p.dim, dtype=np.complex128)
    for e, c in p.terms():
        mom = sphere_moment(e)
        if mom:
            acc += mom * c
    return Multivector(p.dim, acc, _copy=False)


def _integrate_block(p: MVPolynomial, block: tuple, moment) -> MVPolynomial:
    lo, hi = block
    keep = [j for j in range(p.nvars) if not lo <= j < hi]
    terms: dict = {}
    for e, c in p.terms():
        mom = moment(e[lo:hi])
        if not mom:
            continue
        ne = tuple(e[j] for j in keep)
        add = mom * c
        if ne in terms:
            terms[ne] = terms[ne] + add
        else:
            terms[ne] = add
    return MVPolynomial(p.dim, len(keep), terms)


def gaussian_integrate_block(p: MVPolynomial, block: tuple) -> MVPolynomial:
    """Integrate only the block variables against the normalized Gaussian."""
    return _integrate_block(p, block, gaussian_moment)


def sphere_integrate_block(p: MVPolynomial, block: tuple) -> MVPolynomial:
    """Integrate only the block variables over the sphere."""
    return _integrate_block(p, block, sphere_moment)


# -- Stiefel sampling ------------------------------------------------------


def sample_frames(m: int, n: int, seed: int) -> tuple[np.ndarray, np.ndarray]:
    """Uniform frames on St(m, 2): orthonormalized Gaussian pairs.

    Returns (T, S) with shape (n, m) each.  The Philox stream is keyed
    by (seed, m); near-collinear draws are rejected and redrawn."""
    if m < 3:
        raise ValueError("Stiefel sampling needs m >= 3")
    rng = np.random.Generator(np.random.Philox(key=[seed & (2**64 - 1), m]))
    t = rng.standard_normal((n, m))
    s = rng.standard_normal((n, m))
    for _ in range(64):
        tn = np.linalg.norm(t, axis=1)
        bad_t = tn < 1e-8
        t[~bad_t] = t[~bad_t] / tn[~bad_t, None]
        proj = (s * t).sum(axis=1)
        s_perp = s - proj[:, None] * t
        sn = np.linalg.norm(s_perp, axis=1)
        bad = bad_t | (sn < 1e-8)
        if not bad.any():
            s = s_perp / sn[:, None]
            t.setflags(write=False)
            s.setflags(write=False)
            return t, s
        nb = int(bad.sum())
        t[bad] = rng.standard_normal((nb, m))
        s[bad] = rng.standard_normal((nb, m))
    raise RuntimeError("frame sampling failed to produce orthonormal pairs")


def stiefel_sample(spec: QuadratureSpec, m: int):
    """Stream of validated NullFrames for the spec (deterministic)."""
    t, s = sample_frames(m, spec.samples, spec.seed)
    for i in range(spec.samples):
        yield NullFrame(t[i], s[i])


def stiefel_average(family, spec: QuadratureSpec, m: int):
    """Coefficient-wise Monte-Carlo mean of a frame-indexed polynomial
    family; generic per-sample path.

    ``family`` maps a NullFrame to an MVPolynomial of fixed dimension.
    Returns (mean, stderr) where stderr maps exponent tuples to complex
    arrays holding the standard errors of the real and imaginary parts
    (None unless spec.report_stderr)."""
    n = spec.samples
    sums: dict = {}
    re2: dict = {}
    im2: dict = {}
    dim = None
    nvars = None
    for frame in stiefel_sample(spec, m):
        p = family(frame)
        if dim is None:
            dim, nvars = p.dim, p.nvars
        elif p.dim != dim or p.nvars != nvars:
            raise ValueError("family returned inconsistent polynomial shapes")
        for e, c in p.terms():
            if e in sums:
                sums[e] = sums[e] + c
                re2[e] = re2[e] + c.real**2
                im2[e] = im2[e] + c.imag**2
            else:
                sums[e] = c.copy()
                re2[e] = c.real**2
                im2[e] = c.imag**2
    mean = MVPolynomial(dim, nvars, {e: c / n for e, c in sums.items()})
    if not spec.report_stderr:
        return mean, None
    stderr = {}
    for e, c in sums.items():
        mu = c / n
        var_re = np.maximum(re2[e] / n - mu.real**2, 0.0)
        var_im = np.maximum(im2[e] / n - mu.imag**2, 0.0)
        stderr[e] = np.sqrt(var_re / n) + 1j * np.sqrt(var_im / n)
    return mean, stderr
