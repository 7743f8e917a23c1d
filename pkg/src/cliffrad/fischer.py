"""Fischer decomposition and monogenic projection.

Every homogeneous polynomial R_k splits uniquely as

    R_k = M_k + x R_{k-1},   dirac(M_k) = 0,

where x is the vector field sum_j x_j e_j and the product is geometric.
Iterating gives R = sum_s x^s h_s with every h_s monogenic.

Two routes are implemented.  The production route exploits the ladder
constants obtained from the anticommutator identity d(x f) =
-(m + 2E)(f) - x d(f): applying the Dirac operator to x^s P (P monogenic
of degree k) gives beta(s, k) x^(s-1) P with

    beta(2i, k)   = -2i
    beta(2i+1, k) = -(2i + 2k + m),

so the components can be peeled off by differentiating and back
substituting, with no linear solves.  The reference route sets up the
defining linear system {dirac(M) = 0, M + x Q = R} per homogeneous
degree and solves it by least squares; it is quadratic-size and only
meant for cross-validation at small degree.
"""

from __future__ import annotations

import numpy as np

from .algebra import Multivector
from .mvpoly import MVPolynomial, dirac, monomials_of_degree, vector_field

__all__ = [
    "beta_coef",
    "fischer_decompose",
    "monogenic_projection",
    "vector_power_mul",
    "random_multivector",
    "random_polynomial",
    "random_spherical_monogenic",
    "random_monogenic",
]


def beta_coef(s: int, k: int, m: int) -> float:
    """Ladder constant for dirac(x^s P_k) = beta(s, k) x^(s-1) P_k."""
    if s < 1:
        raise ValueError("beta index must be >= 1")
    if s % 2 == 0:
        return -float(s)
    return -float((s - 1) + 2 * k + m)


def vector_power_mul(p: MVPolynomial, s: int,
                     block: tuple | None = None) -> MVPolynomial:
    """Left-multiply by the s-th geometric power of the vector field x.

    Even powers are the scalars (-|x|^2)^(s/2), odd powers carry one
    vector factor."""
    x = vector_field(p.dim, p.nvars, block)
    out = p
    for _ in range(s):
        out = x * out
    return out


def _fischer_homogeneous(r: MVPolynomial, k: int, block: tuple) -> list[MVPolynomial]:
    """Components [P_0, .., P_k] with r = sum_s x^s P_s, deg P_s = k - s."""
    m = r.dim
    if k == 0:
        return [r]
    d = dirac(r, block)
    lower = _fischer_homogeneous(d, k - 1, block)
    parts: list[MVPolynomial] = [None] * (k + 1)  # type: ignore[list-item]
    for s in range(1, k + 1):
        parts[s] = lower[s - 1].scale(1.0 / beta_coef(s, k - s, m))
    rest = MVPolynomial.zero(r.dim, r.nvars)
    for s in range(1, k + 1):
        rest = rest + vector_power_mul(parts[s], s, block)
    parts[0] = r - rest
    return parts


def fischer_decompose(p: MVPolynomial,
                      block: tuple | None = None) -> list[MVPolynomial]:
    """Return [h_0, h_1, ...] with p = sum_s x^s h_s and dirac(h_s) = 0.

    Works degree by degree over the block; inhomogeneous inputs simply
    stack their homogeneous components."""
    lo, hi = p._block(block)
    blk = (lo, hi)
    if hi - lo != p.dim:
        raise ValueError("block length must equal the algebra dimension")
    deg = p.degree(blk)
    if deg < 0:
        return [MVPolynomial.zero(p.dim, p.nvars)]
    out = [MVPolynomial.zero(p.dim, p.nvars) for _ in range(deg + 1)]
    for k in p.homogeneous_degrees(blk):
        parts = _fischer_homogeneous(p.homogeneous_part(k, blk), k, blk)
        for s, part in enumerate(parts):
            out[s] = out[s] + part
    return out


def monogenic_projection(p: MVPolynomial, block: tuple | None = None,
                         method: str = "recurrence") -> MVPolynomial:
    """Monogenic part of p (the h_0 component of the decomposition)."""
    if method == "recurrence":
        return fischer_decompose(p, block)[0]
    if method == "solve":
        return _projection_solve(p, block)
    raise ValueError(f"unknown method {method!r}")


# -- least-squares reference route ---------------------------------------


def _poly_to_vec(p: MVPolynomial, basis: dict) -> np.ndarray:
    v = np.zeros(len(basis) * (1 << p.dim), dtype=np.complex128)
    nb = 1 << p.dim
    for e, c in p.terms():
        i = basis[e]
        v[i * nb:(i + 1) * nb] = c
    return v


def _projection_solve(p: MVPolynomial, block: tuple | None = None) -> MVPolynomial:
    """Reference projection: solve {dirac(M) = 0, M + x Q = R} in the
    monomial-coefficient space, one homogeneous degree at a time."""
    lo, hi = p._block(block)
    blk = (lo, hi)
    if hi - lo != p.dim:
        raise ValueError("block length must equal the algebra dimension")
    dim = p.dim
    nb = 1 << dim
    out = MVPolynomial.zero(dim, p.nvars)
    for k in p.homogeneous_degrees(blk):
        r = p.homogeneous_part(k, blk)
        if k == 0:
            out = out + r
            continue
        mon_k = monomials_of_degree(p.nvars, k, (lo, hi))
        mon_k1 = monomials_of_degree(p.nvars, k - 1, (lo, hi))
        idx_k = {e: i for i, e in enumerate(mon_k)}
        idx_k1 = {e: i for i, e in enumerate(mon_k1)}
        n_m = len(mon_k) * nb
        n_q = len(mon_k1) * nb
        rows = len(mon_k1) * nb + len(mon_k) * nb
        a = np.zeros((rows, n_m + n_q), dtype=np.complex128)
        b = np.zeros(rows, dtype=np.complex128)
        x = vector_field(dim, p.nvars, blk)
        # columns for M unknowns
        for i, e in enumerate(mon_k):
            for j in range(nb):
                c = np.zeros(nb, dtype=np.complex128)
                c[j] = 1.0
                basis_poly = MVPolynomial(dim, p.nvars, {e: c})
                col = i * nb + j
                a[:len(mon_k1) * nb, col] = _poly_to_vec(dirac(basis_poly, blk), idx_k1)
                a[len(mon_k1) * nb:, col] = _poly_to_vec(basis_poly, idx_k)
        # columns for Q unknowns (through x*Q in the degree-k rows)
        for i, e in enumerate(mon_k1):
            for j in range(nb):
                c = np.zeros(nb, dtype=np.complex128)
                c[j] = 1.0
                basis_poly = MVPolynomial(dim, p.nvars, {e: c})
                col = n_m + i * nb + j
                a[len(mon_k1) * nb:, col] = _poly_to_vec(x * basis_poly, idx_k)
        b[len(mon_k1) * nb:] = _poly_to_vec(r, idx_k)
        sol, *_ = np.linalg.lstsq(a, b, rcond=None)
        terms = {}
        for i, e in enumerate(mon_k):
            c = sol[i * nb:(i + 1) * nb]
            terms[e] = c
        out = out + MVPolynomial(dim, p.nvars, terms)
    return out.prune(1e-13)


# -- random generators ----------------------------------------------------


def random_multivector(m: int, rng: np.random.Generator) -> Multivector:
    c = rng.standard_normal(1 << m) + 1j * rng.standard_normal(1 << m)
    return Multivector(m, c, _copy=False)


def random_polynomial(dim: int, degree: int, rng: np.random.Generator,
                      nvars: int | None = None, homogeneous: bool = False,
                      block: tuple | None = None, density: float = 0.6) -> MVPolynomial:
    """Random polynomial with dense multivector coefficients."""
    nvars = dim if nvars is None else nvars
    lo, hi = (0, nvars) if block is None else block
    degrees = [degree] if homogeneous else range(degree + 1)
    terms = {}
    for k in degrees:
        for e in monomials_of_degree(nvars, k, (lo, hi)):
            if rng.random() > density:
                continue
            c = rng.standard_normal(1 << dim) + 1j * rng.standard_normal(1 << dim)
            terms[e] = c
    if not terms:
        return random_polynomial(dim, degree, rng, nvars, homogeneous, block, 1.0)
    return MVPolynomial(dim, nvars, terms)


def random_spherical_monogenic(dim: int, k: int, rng: np.random.Generator,
                               nvars: int | None = None,
                               block: tuple | None = None) -> MVPolynomial:
    """Random homogeneous degree-k monogenic polynomial, scaled to unit
    max coefficient."""
    while True:
        r = random_polynomial(dim, k, rng, nvars, homogeneous=True, block=block)
        p = monogenic_projection(r, block)
        top = p.max_abs()
        if top > 1e-8:
            return p.scale(1.0 / top)


def random_monogenic(dim: int, max_degree: int, rng: np.random.Generator) -> MVPolynomial:
    """Random monogenic polynomial with components in every degree <= max."""
    out = MVPolynomial.zero(dim)
    for k in range(max_degree + 1):
        out = out + random_spherical_monogenic(dim, k, rng)
    return out
