"""Plane-wave projections, their kernels, the dual transform and inversion.

For a null frame tau = t + i s the projection of a monogenic polynomial
onto the span of the plane waves <x,tau>^l tau has two equivalent
realizations:

* closed form: R[f](u) = (tau tau^+ / 4) f(-1/2 tau^+ <u,tau>), where f
  is evaluated on the nullcone through its complex extension;
* integral form: pairing f against a reproducing kernel, with Gaussian
  weight on R^m for the Bargmann module and surface measure on S^(m-1)
  for the Szego module.

Integral forms are evaluated exactly via the moment engines in
``quadrature``; kernels are truncated at the degree of the paired
polynomial, which is exact by Fischer orthogonality.

Averaging the projection over all frames (the dual transform) rescales
every spherical monogenic of degree k by

    eps(k, m) = G(m-1) G(k+1) / (2 G(m+k-1)),

which the Theta operator undoes; Theta also turns the averaged
projection of an arbitrary holomorphic polynomial into its monogenic
part.  Two Theta variants are exposed: "derived" uses m-2 ladder
factors (the count that actually inverts eps, certified by the suite),
"printed" uses m-1 factors and overshoots by (m+k-1) on degree k.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .algebra import (Multivector, NullFrame, _mul_tables, _pair_sign,
                      dagger_raw, mul_raw)
from .backends import accumulate_products, active_backend
from .mvpoly import (MVPolynomial, dirac, gamma_op, monomials_of_degree)
from .quadrature import (QuadratureSpec, gaussian_moment, sample_frames,
                         sphere_area, sphere_moment, stiefel_average)

__all__ = [
    "PlaneWave",
    "planewave",
    "substitute_null",
    "radon_char",
    "bargmann_radon_char",
    "szego_radon_char",
    "bargmann_radon_kernel",
    "szego_radon_kernel",
    "bargmann_radon_integral",
    "szego_radon_integral",
    "szego_kernel",
    "mb_inner",
    "ml2_inner",
    "dual_transform",
    "dual_radon",
    "char_stiefel_average",
    "ThetaOperator",
    "theta_invert",
    "theta_eigen_factor",
    "dual_radon_eigenvalue",
    "zonal_average_mu",
    "zonal_average_lambda",
    "MonopartResult",
    "monogenic_part_integral",
]


def _multinomial(d: int, exp) -> int:
    out = math.factorial(d)
    for e in exp:
        out //= math.factorial(e)
    return out


def _mono_value(vec: np.ndarray, exp) -> complex:
    out = 1.0 + 0j
    for z, e in zip(vec, exp):
        if e:
            out *= z ** e
    return complex(out)


# -- plane waves -----------------------------------------------------------


@dataclass(frozen=True)
class PlaneWave:
    """Monogenic plane wave <x,tau>^k tau for a null frame."""

    frame: NullFrame
    degree: int
    realized: MVPolynomial


def planewave(frame: NullFrame, k: int) -> PlaneWave:
    m = frame.m
    if m < 3:
        raise ValueError("plane waves need m >= 3")
    tau = frame.tau_vec()
    tau_arr = frame.tau().coeffs
    terms = {}
    for beta in monomials_of_degree(m, k):
        terms[beta] = _multinomial(k, beta) * _mono_value(tau, beta) * tau_arr
    poly = MVPolynomial(m, m, terms)
    d = dirac(poly)
    if d.max_abs() > 1e-10 * max(poly.max_abs(), 1.0):
        raise AssertionError("plane wave failed the monogenicity check")
    return PlaneWave(frame, k, poly)


# -- characterization (nullcone substitution) form -------------------------


def substitute_null(f: MVPolynomial, frame: NullFrame) -> MVPolynomial:
    """Evaluate f at the vector argument -1/2 tau^+ <u,tau>.

    The first ``m`` variables of f are substituted; any further
    variables are carried through unchanged.  Expanding over monomials,
    the degree-d part contributes (-1/2)^d <u,tau>^d f_d(tau^+), so the
    output is a polynomial in u (plus passive variables) whose
    coefficients keep f's coefficients on the right."""
    m = f.dim
    if frame.m != m:
        raise ValueError("frame dimension mismatch")
    tau = frame.tau_vec()
    taud = frame.taud_vec()
    npass = f.nvars - m
    # degree -> passive exponent -> accumulated f_d(tau^+) coefficient
    groups: dict = {}
    for e, c in f.terms():
        d = sum(e[:m])
        scal = _mono_value(taud, e[:m])
        key = e[m:]
        grp = groups.setdefault(d, {})
        if key in grp:
            grp[key] = grp[key] + scal * c
        else:
            grp[key] = scal * c
    terms: dict = {}
    for d, grp in groups.items():
        for beta in monomials_of_degree(m, d):
            w = (-0.5) ** d * _multinomial(d, beta) * _mono_value(tau, beta)
            for pas, arr in grp.items():
                exp = beta + pas
                add = w * arr
                if exp in terms:
                    terms[exp] = terms[exp] + add
                else:
                    terms[exp] = add
    return MVPolynomial(m, m + npass, terms)


def radon_char(f: MVPolynomial, frame: NullFrame) -> MVPolynomial:
    """Closed form of the frame projection:
    (tau tau^+/4) f(-1/2 tau^+ <u,tau>)."""
    pref = 0.25 * frame.tau_taud()
    return substitute_null(f, frame).left_mul(pref)


# Shared code path: the closed form is identical for both modules.
bargmann_radon_char = radon_char
szego_radon_char = radon_char


# -- materialized kernels --------------------------------------------------


def bargmann_lambda(ell: int) -> float:
    """Series coefficient (-1)^l / (l! 4 2^l) of the Gaussian-module kernel."""
    return (-1.0) ** ell / (math.factorial(ell) * 4.0 * 2.0 ** ell)


def szego_series_coeff(ell: int, m: int) -> float:
    """Series coefficient of the sphere-module kernel, from the binomial
    expansion of the closed form (1 + <x,tau><y,tau^+>)^(-m/2) / A_m."""
    return ((-1.0) ** ell * math.gamma(m / 2 + ell)
            / (2.0 * math.pi ** (m / 2) * math.factorial(ell)))


def _series_kernel(frame: NullFrame, trunc: int, coeff_fn, quarter: bool) -> MVPolynomial:
    """sum_l c_l <u,tau>^l (tau tau^+ [/4]) <x,tau^+>^l over two blocks."""
    m = frame.m
    tau = frame.tau_vec()
    taud = frame.taud_vec()
    mid = frame.tau_taud().coeffs
    if quarter:
        mid = 0.25 * mid
    terms: dict = {}
    for ell in range(trunc + 1):
        c = coeff_fn(ell)
        for beta in monomials_of_degree(m, ell):
            wb = _multinomial(ell, beta) * _mono_value(tau, beta)
            for alpha in monomials_of_degree(m, ell):
                wa = _multinomial(ell, alpha) * _mono_value(taud, alpha)
                terms[beta + alpha] = (c * wb * wa) * mid
    return MVPolynomial(m, 2 * m, terms)


def bargmann_radon_kernel(frame: NullFrame, trunc: int) -> MVPolynomial:
    """Gaussian-module reproducing kernel, truncated; equals
    (tau tau^+/4) exp(-1/2 <u,tau><x,tau^+>) expanded to degree trunc."""
    return _series_kernel(frame, trunc, bargmann_lambda, quarter=False)


def szego_radon_kernel(frame: NullFrame, trunc: int) -> MVPolynomial:
    """Sphere-module reproducing kernel, truncated binomial series of
    (tau tau^+/4) (G(m/2)/(2 pi^(m/2))) (1 + <x,tau><y,tau^+>)^(-m/2)."""
    m = frame.m
    return _series_kernel(frame, trunc, lambda l: szego_series_coeff(l, m),
                          quarter=True)


# -- integral forms (exact moment evaluation) ------------------------------


def _paired_moments(f: MVPolynomial, frame: NullFrame, trunc: int, moment):
    """G_l = integral of <x,tau^+>^l f(x) for l <= trunc, as raw arrays."""
    m = f.dim
    taud = frame.taud_vec()
    out = []
    fterms = list(f.terms())
    for ell in range(trunc + 1):
        acc = np.zeros(1 << m, dtype=np.complex128)
        for alpha in monomials_of_degree(m, ell):
            w = _multinomial(ell, alpha) * _mono_value(taud, alpha)
            if w == 0:
                continue
            for gamma, c in fterms:
                mom = moment(tuple(a + g for a, g in zip(alpha, gamma)))
                if mom:
                    acc += (w * mom) * c
        out.append(acc)
    return out


def _integral_transform(f: MVPolynomial, frame: NullFrame, coeff_fn, moment,
                        quarter: bool) -> MVPolynomial:
    m = f.dim
    if frame.m != m or f.nvars != m:
        raise ValueError("integral transform expects a single-block polynomial")
    trunc = max(f.degree(), 0)
    tau = frame.tau_vec()
    mid = frame.tau_taud().coeffs
    if quarter:
        mid = 0.25 * mid
    g = _paired_moments(f, frame, trunc, moment)
    terms: dict = {}
    for ell in range(trunc + 1):
        c = coeff_fn(ell)
        block = mul_raw(mid, g[ell], m)
        for beta in monomials_of_degree(m, ell):
            w = c * _multinomial(ell, beta) * _mono_value(tau, beta)
            if w == 0:
                continue
            if beta in terms:
                terms[beta] = terms[beta] + w * block
            else:
                terms[beta] = w * block
    return MVPolynomial(m, m, terms)


def bargmann_radon_integral(f: MVPolynomial, frame: NullFrame) -> MVPolynomial:
    """Projection via the Gaussian integral of the kernel against f,
    evaluated exactly by moment integration (kernel truncated at deg f)."""
    return _integral_transform(f, frame, bargmann_lambda, gaussian_moment,
                               quarter=False)


def szego_radon_integral(f: MVPolynomial, frame: NullFrame) -> MVPolynomial:
    """Projection via the sphere integral of the kernel against f.
    Exact for monogenic f (harmonic components make the degree
    truncation exact)."""
    m = f.dim
    return _integral_transform(f, frame, lambda l: szego_series_coeff(l, m),
                               sphere_moment, quarter=True)


# -- Szego kernel (pointwise) ----------------------------------------------


def szego_kernel(x, w) -> Multivector:
    """S(x, w) = (1/A_m) (1 + x w) (1 + <x,x><w,w> - 2<x,w>)^(-m/2),
    the bilinear extension valid for complex first argument."""
    x = np.asarray(x, dtype=np.complex128)
    w = np.asarray(w, dtype=np.complex128)
    if x.shape != w.shape:
        raise ValueError("vector length mismatch")
    m = x.shape[0]
    base = 1.0 + np.dot(x, x) * np.dot(w, w) - 2.0 * np.dot(x, w)
    if abs(base) < 1e-14:
        raise ValueError("Szego kernel denominator vanishes")
    scale = complex(base) ** (-m / 2) / sphere_area(m)
    num = Multivector.scalar(1.0, m) + Multivector.from_vector(x) * Multivector.from_vector(w)
    return scale * num


# -- module inner products -------------------------------------------------


def _inner(f: MVPolynomial, g: MVPolynomial, moment) -> Multivector:
    if f.dim != g.dim or f.nvars != g.nvars:
        raise ValueError("polynomial dimension mismatch")
    m = f.dim
    nb = 1 << m
    fe = list(f.terms())
    ge = list(g.terms())
    fd = np.array([dagger_raw(c, m) for _, c in fe])
    gc = np.array([c for _, c in ge])
    mom = np.zeros((len(fe), len(ge)))
    for i, (e1, _) in enumerate(fe):
        for j, (e2, _) in enumerate(ge):
            mom[i, j] = moment(tuple(a + b for a, b in zip(e1, e2)))
    w = fd.T @ (mom @ gc)
    sign, gather = _mul_tables(m)
    out = (sign * np.take_along_axis(w, gather, axis=1)).sum(axis=0)
    return Multivector(m, out, _copy=False)


def mb_inner(f: MVPolynomial, g: MVPolynomial) -> Multivector:
    """Gaussian-module inner product (2pi)^(-m/2) int e^(-|x|^2/2) f^+ g."""
    return _inner(f, g, gaussian_moment)


def ml2_inner(f: MVPolynomial, g: MVPolynomial) -> Multivector:
    """Sphere-module inner product int_{S^(m-1)} f^+ g dS."""
    return _inner(f, g, sphere_moment)


# -- dual transform --------------------------------------------------------


def dual_transform(family, spec: QuadratureSpec, m: int):
    """Average of a frame-indexed polynomial family over St(m, 2);
    delegates to the generic Monte-Carlo reducer."""
    return stiefel_average(family, spec, m)


def char_stiefel_average(h: MVPolynomial, spec: QuadratureSpec,
                         backend: str | None = None, chunk: int = 8192):
    """Stiefel average of (tau tau^+/4) h(-1/2 tau^+ <u,tau>).

    The first m variables of h are substituted, further variables ride
    along passively.  Per sample the integrand expands into products of
    scalar monomials in the components of tau with the multivector
    (tau tau^+/4) h_d(tau^+); the reduction over samples runs through
    the compiled backend.  Returns (mean, stderr) with stderr keyed like
    the mean's terms (complex: real/imag standard errors)."""
    m = h.dim
    n = spec.samples
    npass = h.nvars - m
    backend = backend or active_backend()

    # --- static structure per substitution degree
    groups: dict = {}
    for e, c in h.terms():
        d = sum(e[:m])
        groups.setdefault(d, {}).setdefault(e[:m], {})[e[m:]] = c
    if not groups:
        zero = MVPolynomial.zero(m, h.nvars)
        return zero, {}

    nb = 1 << m
    biv_masks = [(1 << i) | (1 << j) for i in range(m) for j in range(i + 1, m)]
    biv_pairs = [(i, j) for i in range(m) for j in range(i + 1, m)]

    plan = {}
    for d, byalpha in groups.items():
        alphas = sorted(byalpha)
        chan_in = sorted({(pas, int(bl))
                          for al in alphas
                          for pas, arr in byalpha[al].items()
                          for bl in np.nonzero(arr)[0]})
        cmat = np.zeros((len(alphas), len(chan_in)), dtype=np.complex128)
        ch_idx = {ch: i for i, ch in enumerate(chan_in)}
        for ia, al in enumerate(alphas):
            for pas, arr in byalpha[al].items():
                for bl in np.nonzero(arr)[0]:
                    cmat[ia, ch_idx[(pas, int(bl))]] = arr[bl]
        chan_out = sorted({(pas, q ^ bl)
                           for (pas, bl) in chan_in
                           for q in [0] + biv_masks})
        out_idx = {ch: i for i, ch in enumerate(chan_out)}
        # Q product table: (q position: -1 scalar else bivector index,
        #                   input channel, output channel, sign)
        table = []
        for ic, (pas, bl) in enumerate(chan_in):
            table.append((-1, ic, out_idx[(pas, bl)], 1.0))
            for qi, qmask in enumerate(biv_masks):
                table.append((qi, ic, out_idx[(pas, qmask ^ bl)],
                              float(_pair_sign(qmask, bl))))
        betas = monomials_of_degree(m, d)
        bexp = np.array(betas, dtype=np.int64)
        scale = np.array([(-0.5) ** d * _multinomial(d, b) for b in betas])
        plan[d] = dict(alphas=np.array(alphas, dtype=np.int64), cmat=cmat,
                       chan_out=chan_out, table=table, betas=betas,
                       bexp=bexp, scale=scale,
                       sums=np.zeros((len(betas), len(chan_out)), dtype=np.complex128),
                       re2=np.zeros((len(betas), len(chan_out))),
                       im2=np.zeros((len(betas), len(chan_out))))

    maxdeg = max(groups)
    t_all, s_all = sample_frames(m, n, spec.seed)

    def mono_block(ptab, exps):
        out = np.ones((ptab.shape[0], exps.shape[0]), dtype=np.complex128)
        for j in range(m):
            col = exps[:, j]
            if col.any():
                out *= ptab[:, j, col]
        return out

    for start in range(0, n, chunk):
        t = t_all[start:start + chunk]
        s = s_all[start:start + chunk]
        nc = t.shape[0]
        tau = t + 1j * s
        taud = -t + 1j * s
        ptau = np.ones((nc, m, maxdeg + 1), dtype=np.complex128)
        ptaud = np.ones((nc, m, maxdeg + 1), dtype=np.complex128)
        for p in range(1, maxdeg + 1):
            ptau[:, :, p] = ptau[:, :, p - 1] * tau
            ptaud[:, :, p] = ptaud[:, :, p - 1] * taud
        qb = np.empty((nc, len(biv_pairs)), dtype=np.complex128)
        for qi, (i, j) in enumerate(biv_pairs):
            qb[:, qi] = 0.5j * (t[:, i] * s[:, j] - t[:, j] * s[:, i])
        for d, info in plan.items():
            mu = mono_block(ptau, info["bexp"]) * info["scale"][None, :]
            v0 = mono_block(ptaud, info["alphas"]) @ info["cmat"]
            qv = np.zeros((nc, len(info["chan_out"])), dtype=np.complex128)
            for qpos, ic, oc, sgn in info["table"]:
                if qpos < 0:
                    qv[:, oc] += 0.5 * sgn * v0[:, ic]
                else:
                    qv[:, oc] += sgn * qb[:, qpos] * v0[:, ic]
            sm, r2, i2 = accumulate_products(mu, qv, backend)
            info["sums"] += sm
            info["re2"] += r2
            info["im2"] += i2

    terms: dict = {}
    err: dict = {}
    for d, info in plan.items():
        mean = info["sums"] / n
        var_re = np.maximum(info["re2"] / n - mean.real**2, 0.0)
        var_im = np.maximum(info["im2"] / n - mean.imag**2, 0.0)
        se = np.sqrt(var_re / n) + 1j * np.sqrt(var_im / n)
        for ib, beta in enumerate(info["betas"]):
            for ic, (pas, bl) in enumerate(info["chan_out"]):
                exp = beta + pas
                if exp not in terms:
                    terms[exp] = np.zeros(nb, dtype=np.complex128)
                    err[exp] = np.zeros(nb, dtype=np.complex128)
                terms[exp][bl] += mean[ib, ic]
                err[exp][bl] += se[ib, ic]
    mean_poly = MVPolynomial(m, h.nvars, terms)
    stderr = {e: arr for e, arr in err.items()} if spec.report_stderr else None
    return mean_poly, stderr


def dual_radon(f: MVPolynomial, spec: QuadratureSpec,
               backend: str | None = None):
    """Monte-Carlo estimate of the dual transform applied to the frame
    projection of f: the Stiefel average of R_tau[f](u)."""
    return char_stiefel_average(f, spec, backend)


def dual_radon_eigenvalue(k: int, m: int) -> float:
    """Rescaling of a degree-k spherical monogenic under dual o projection."""
    return 0.5 * math.gamma(m - 1) * math.gamma(k + 1) / math.gamma(m + k - 1)


def zonal_average_mu(k: int, m: int) -> float:
    """Constant in  avg[tau tau^+ <u,tau>^k <x,tau^+>^k] = mu_k Z_k(u, x)."""
    return (2.0 ** (k + 1) * (-1.0) ** k * math.gamma(m - 1)
            * math.gamma(k + 1) ** 2 / math.gamma(m + k - 1))


def zonal_average_lambda(k: int, m: int) -> float:
    """Constant in front of the bracketed Gegenbauer expression for the
    same average (the zonal polynomial before its normalization)."""
    from .kernels import gegenbauer

    ck1 = gegenbauer(k, m / 2 - 1, 1.0)
    return (2.0 * math.pi * (-1.0) ** k * sphere_area(m - 2)
            * math.gamma(m / 2 - 1) * math.gamma(k + 1)
            / ((k + m - 2) * sphere_area(m) * ck1 * math.gamma(m / 2 + k)))


# -- Theta operator and inversion ------------------------------------------


class ThetaOperator:
    """Polynomial in the angular operator used for inversion.

    mode "derived": 2/(m-2)! (m-2-Gamma)..(1-Gamma)  (m-2 factors)
    mode "printed": 2/(m-2)! (m-1-Gamma)..(1-Gamma)  (m-1 factors)

    On a degree-k spherical monogenic each factor (j - Gamma) acts as
    (j + k); the derived count inverts the dual-transform rescaling
    exactly, the printed one leaves a factor (m+k-1)."""

    def __init__(self, m: int, mode: str = "derived"):
        if mode not in ("derived", "printed"):
            raise ValueError("mode must be 'derived' or 'printed'")
        if m < 3:
            raise ValueError("Theta needs m >= 3")
        self.m = m
        self.mode = mode
        self.factor_count = m - 2 if mode == "derived" else m - 1
        self.normalization = 2.0 / math.factorial(m - 2)

    def apply(self, p: MVPolynomial, block: tuple | None = None) -> MVPolynomial:
        q = p
        for j in range(1, self.factor_count + 1):
            q = q.scale(float(j)) - gamma_op(q, block)
        return q.scale(self.normalization)

    def eigen_factor(self, k: int) -> float:
        out = self.normalization
        for j in range(1, self.factor_count + 1):
            out *= (j + k)
        return out


def theta_invert(g: MVPolynomial, mode: str = "derived",
                 block: tuple | None = None) -> MVPolynomial:
    """Apply the inversion operator to g (block defaults to all vars)."""
    return ThetaOperator(g.dim, mode).apply(g, block)


def theta_eigen_factor(k: int, m: int, mode: str = "derived") -> float:
    return ThetaOperator(m, mode).eigen_factor(k)


# -- monogenic part in integral form ---------------------------------------


@dataclass(frozen=True)
class MonopartResult:
    """Monte-Carlo monogenic part: Theta applied to the averaged
    nullcone substitution, with the pre-Theta mean and its errors."""

    poly: MVPolynomial
    pre_theta: MVPolynomial
    stderr: dict | None
    mode: str
    samples: int
    seed: int

    @property
    def stderr_max(self) -> float:
        if not self.stderr:
            return 0.0
        mx = 0.0
        for arr in self.stderr.values():
            mx = max(mx, float(arr.real.max()), float(arr.imag.max()))
        return mx


def monogenic_part_integral(h: MVPolynomial, spec: QuadratureSpec,
                            mode: str = "derived",
                            backend: str | None = None) -> MonopartResult:
    """Monogenic part of h via the averaged nullcone substitution.

    The first m variables of h are treated as the holomorphic argument;
    extra variables are passive.  Theta acts on the first block of the
    averaged polynomial."""
    m = h.dim
    if m < 3:
        raise ValueError("integral monogenic part needs m >= 3")
    mean, stderr = char_stiefel_average(h, spec, backend)
    block = (0, m) if h.nvars > m else None
    out = ThetaOperator(m, mode).apply(mean, block)
    return MonopartResult(out, mean, stderr, mode, spec.samples, spec.seed)
