"""Sparse polynomials in real variables with Clifford-valued coefficients.

A polynomial is a finite map from exponent tuples to dense coefficient
vectors of the algebra C_dim.  The number of variables ``nvars`` may
exceed the algebra dimension ``dim``: two-point kernels in (u, x) are
polynomials in 2*dim variables whose first block is u and second block
is x.  Operators that care about a variable block (Dirac, Euler, Gamma,
vector-field multiplication) accept ``block=(start, stop)`` and default
to the full variable range, which must then have length dim.

Values are immutable; every operation returns a new polynomial.
"""

from __future__ import annotations

import math

import numpy as np

from .algebra import Multivector, dagger_raw, lmul_basis_raw, mul_raw

__all__ = [
    "MVPolynomial",
    "evaluate",
    "dirac",
    "euler",
    "gamma_op",
    "fischer_product",
    "vector_field",
    "monomials_of_degree",
]

MAX_DEGREE = 12


def _as_exp(exp, nvars: int) -> tuple:
    exp = tuple(int(e) for e in exp)
    if len(exp) != nvars:
        raise ValueError(f"exponent tuple must have length {nvars}")
    if any(e < 0 for e in exp):
        raise ValueError("negative exponent")
    if sum(exp) > MAX_DEGREE:
        raise ValueError(f"degree cap exceeded: |{exp}| > {MAX_DEGREE}")
    return exp


class MVPolynomial:
    """Immutable sparse polynomial with Multivector coefficients."""

    __slots__ = ("dim", "nvars", "_terms")

    def __init__(self, dim: int, nvars: int | None = None, terms: dict | None = None,
                 _copy: bool = True):
        nvars = dim if nvars is None else nvars
        tdict = {}
        if terms:
            for exp, c in terms.items():
                exp = _as_exp(exp, nvars)
                c = np.asarray(c, dtype=np.complex128)
                if c.shape != (1 << dim,):
                    raise ValueError("coefficient vector has wrong length")
                if np.any(c):
                    cc = c.copy() if _copy else c
                    cc.setflags(write=False)
                    tdict[exp] = cc
        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "nvars", nvars)
        object.__setattr__(self, "_terms", tdict)

    def __setattr__(self, *a):
        raise AttributeError("MVPolynomial is immutable")

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, dim: int, nvars: int | None = None) -> "MVPolynomial":
        return cls(dim, nvars, {})

    @classmethod
    def constant(cls, value, dim: int, nvars: int | None = None) -> "MVPolynomial":
        nvars = dim if nvars is None else nvars
        if isinstance(value, Multivector):
            if value.m != dim:
                raise ValueError("algebra dimension mismatch")
            c = value.coeffs
        else:
            c = np.zeros(1 << dim, dtype=np.complex128)
            c[0] = value
        return cls(dim, nvars, {(0,) * nvars: c})

    @classmethod
    def variable(cls, j: int, dim: int, nvars: int | None = None) -> "MVPolynomial":
        """The scalar monomial x_j (0-based variable index)."""
        nvars = dim if nvars is None else nvars
        exp = [0] * nvars
        exp[j] = 1
        c = np.zeros(1 << dim, dtype=np.complex128)
        c[0] = 1.0
        return cls(dim, nvars, {tuple(exp): c})

    # -- access -------------------------------------------------------

    def terms(self):
        return self._terms.items()

    def coeff(self, exp) -> Multivector:
        exp = _as_exp(exp, self.nvars)
        c = self._terms.get(exp)
        if c is None:
            return Multivector.zero(self.dim)
        return Multivector(self.dim, c)

    def is_zero(self) -> bool:
        return not self._terms

    def degree(self, block: tuple | None = None) -> int:
        """Maximal total degree over the block (-1 for the zero polynomial)."""
        lo, hi = self._block(block)
        if not self._terms:
            return -1
        return max(sum(e[lo:hi]) for e in self._terms)

    def max_abs(self) -> float:
        if not self._terms:
            return 0.0
        return max(float(np.abs(c).max()) for c in self._terms.values())

    def _block(self, block):
        if block is None:
            return 0, self.nvars
        lo, hi = block
        if not (0 <= lo < hi <= self.nvars):
            raise ValueError("invalid variable block")
        return lo, hi

    # -- arithmetic ---------------------------------------------------

    def _check(self, other: "MVPolynomial"):
        if self.dim != other.dim or self.nvars != other.nvars:
            raise ValueError("polynomial dimension mismatch")

    def __add__(self, other: "MVPolynomial") -> "MVPolynomial":
        self._check(other)
        terms = {e: c.copy() for e, c in self._terms.items()}
        for e, c in other._terms.items():
            if e in terms:
                terms[e] = terms[e] + c
            else:
                terms[e] = c
        return MVPolynomial(self.dim, self.nvars, terms)

    def __sub__(self, other: "MVPolynomial") -> "MVPolynomial":
        return self + (-other)

    def __neg__(self) -> "MVPolynomial":
        return MVPolynomial(self.dim, self.nvars, {e: -c for e, c in self._terms.items()})

    def scale(self, factor) -> "MVPolynomial":
        return MVPolynomial(self.dim, self.nvars,
                            {e: factor * c for e, c in self._terms.items()})

    def left_mul(self, mv: Multivector) -> "MVPolynomial":
        """Multiply every coefficient by mv from the left."""
        if mv.m != self.dim:
            raise ValueError("algebra dimension mismatch")
        a = mv.coeffs
        return MVPolynomial(self.dim, self.nvars,
                            {e: mul_raw(a, c, self.dim) for e, c in self._terms.items()})

    def right_mul(self, mv: Multivector) -> "MVPolynomial":
        """Multiply every coefficient by mv from the right."""
        if mv.m != self.dim:
            raise ValueError("algebra dimension mismatch")
        b = mv.coeffs
        return MVPolynomial(self.dim, self.nvars,
                            {e: mul_raw(c, b, self.dim) for e, c in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, MVPolynomial):
            self._check(other)
            acc: dict = {}
            for e1, c1 in self._terms.items():
                for e2, c2 in other._terms.items():
                    e = tuple(a + b for a, b in zip(e1, e2))
                    prod = mul_raw(c1, c2, self.dim)
                    if e in acc:
                        acc[e] = acc[e] + prod
                    else:
                        acc[e] = prod
            return MVPolynomial(self.dim, self.nvars, acc)
        if isinstance(other, Multivector):
            return self.right_mul(other)
        return self.scale(other)

    def __rmul__(self, other):
        if isinstance(other, Multivector):
            return self.left_mul(other)
        return self.scale(other)

    # -- structure ----------------------------------------------------

    def homogeneous_part(self, k: int, block: tuple | None = None) -> "MVPolynomial":
        lo, hi = self._block(block)
        return MVPolynomial(self.dim, self.nvars,
                            {e: c for e, c in self._terms.items() if sum(e[lo:hi]) == k})

    def homogeneous_degrees(self, block: tuple | None = None) -> list[int]:
        lo, hi = self._block(block)
        return sorted({sum(e[lo:hi]) for e in self._terms})

    def partial(self, j: int) -> "MVPolynomial":
        """Partial derivative with respect to variable j (0-based)."""
        terms = {}
        for e, c in self._terms.items():
            if e[j] == 0:
                continue
            ne = list(e)
            ne[j] -= 1
            ne = tuple(ne)
            add = e[j] * c
            if ne in terms:
                terms[ne] = terms[ne] + add
            else:
                terms[ne] = add
        return MVPolynomial(self.dim, self.nvars, terms)

    def substitute_block(self, values, block: tuple) -> "MVPolynomial":
        """Fix the block variables to complex values, keeping the rest."""
        lo, hi = self._block(block)
        values = np.asarray(values, dtype=np.complex128)
        if values.shape != (hi - lo,):
            raise ValueError("substitution values have wrong length")
        keep = [j for j in range(self.nvars) if not lo <= j < hi]
        terms: dict = {}
        for e, c in self._terms.items():
            scalar = 1.0 + 0j
            for j in range(lo, hi):
                if e[j]:
                    scalar *= values[j - lo] ** e[j]
            ne = tuple(e[j] for j in keep)
            add = scalar * c
            if ne in terms:
                terms[ne] = terms[ne] + add
            else:
                terms[ne] = add
        return MVPolynomial(self.dim, len(keep), terms)

    def swap_blocks(self) -> "MVPolynomial":
        """Exchange the two halves of the variable list (nvars must be even)."""
        if self.nvars % 2:
            raise ValueError("swap_blocks needs an even number of variables")
        h = self.nvars // 2
        return MVPolynomial(self.dim, self.nvars,
                            {e[h:] + e[:h]: c for e, c in self._terms.items()})

    def dagger(self) -> "MVPolynomial":
        """Apply Hermitian conjugation to every coefficient."""
        return MVPolynomial(self.dim, self.nvars,
                            {e: dagger_raw(c, self.dim) for e, c in self._terms.items()})

    def prune(self, tol: float) -> "MVPolynomial":
        """Drop coefficients with no entry exceeding tol in absolute value."""
        return MVPolynomial(self.dim, self.nvars,
                            {e: c for e, c in self._terms.items()
                             if float(np.abs(c).max()) > tol})

    def isclose(self, other: "MVPolynomial", tol: float = 1e-10) -> bool:
        return (self - other).max_abs() <= tol

    def __repr__(self):
        return (f"MVPolynomial(dim={self.dim}, nvars={self.nvars}, "
                f"terms={len(self._terms)}, deg={self.degree()})")

    # -- serialization ------------------------------------------------

    def to_json(self) -> dict:
        data = {"m": self.dim}
        if self.nvars != self.dim:
            data["nvars"] = self.nvars
        data["terms"] = [
            {"exp": list(e), "mv": Multivector(self.dim, c).to_json()}
            for e, c in sorted(self._terms.items())
        ]
        return data

    @classmethod
    def from_json(cls, data: dict) -> "MVPolynomial":
        dim = int(data["m"])
        nvars = int(data.get("nvars", dim))
        terms: dict = {}
        for t in data["terms"]:
            mv = Multivector.from_json(t["mv"])
            if mv.m != dim:
                raise ValueError("coefficient algebra dimension mismatch")
            e = tuple(int(v) for v in t["exp"])
            if e in terms:
                terms[e] = terms[e] + mv.coeffs
            else:
                terms[e] = mv.coeffs.copy()
        return cls(dim, nvars, terms)


# -- operators ----------------------------------------------------------


def evaluate(p: MVPolynomial, z) -> Multivector:
    """Evaluate at a complex point (length nvars); monomials are scalars,
    so they simply scale the stored coefficients."""
    z = np.asarray(z, dtype=np.complex128)
    if z.shape != (p.nvars,):
        raise ValueError(f"evaluation point must have length {p.nvars}")
    acc = np.zeros(1 << p.dim, dtype=np.complex128)
    for e, c in p.terms():
        scalar = 1.0 + 0j
        for j, ej in enumerate(e):
            if ej:
                scalar *= z[j] ** ej
        acc += scalar * c
    return Multivector(p.dim, acc, _copy=False)


def dirac(p: MVPolynomial, block: tuple | None = None) -> MVPolynomial:
    """Left Dirac operator sum_j e_j d/dx_j over the block variables."""
    lo, hi = p._block(block)
    if hi - lo != p.dim:
        raise ValueError("Dirac block length must equal the algebra dimension")
    terms: dict = {}
    for e, c in p.terms():
        for j in range(lo, hi):
            if e[j] == 0:
                continue
            ne = list(e)
            ne[j] -= 1
            ne = tuple(ne)
            add = e[j] * lmul_basis_raw(j - lo, c, p.dim)
            if ne in terms:
                terms[ne] = terms[ne] + add
            else:
                terms[ne] = add
    return MVPolynomial(p.dim, p.nvars, terms)


def dirac_right(p: MVPolynomial, block: tuple | None = None) -> MVPolynomial:
    """Right Dirac operator sum_j (d/dx_j p) e_j over the block variables."""
    lo, hi = p._block(block)
    if hi - lo != p.dim:
        raise ValueError("Dirac block length must equal the algebra dimension")
    out = MVPolynomial.zero(p.dim, p.nvars)
    for j in range(lo, hi):
        ej = Multivector.basis([j - lo + 1], p.dim)
        out = out + p.partial(j).right_mul(ej)
    return out


def euler(p: MVPolynomial, block: tuple | None = None) -> MVPolynomial:
    """Euler operator sum_j x_j d/dx_j: scales degree-k parts by k."""
    lo, hi = p._block(block)
    terms = {}
    for e, c in p.terms():
        k = sum(e[lo:hi])
        if k:
            terms[e] = k * c
    return MVPolynomial(p.dim, p.nvars, terms)


def gamma_op(p: MVPolynomial, block: tuple | None = None) -> MVPolynomial:
    """Angular operator -x^d = -sum_{i<j} e_i e_j (x_i d_j - x_j d_i),
    acting by left multiplication; spherical monogenics of degree k are
    eigenfunctions with eigenvalue -k."""
    lo, hi = p._block(block)
    if hi - lo != p.dim:
        raise ValueError("Gamma block length must equal the algebra dimension")
    terms: dict = {}

    def _acc(e, arr):
        if e in terms:
            terms[e] = terms[e] + arr
        else:
            terms[e] = arr

    for e, c in p.terms():
        for a in range(lo, hi):
            for b in range(a + 1, hi):
                eab = lmul_basis_raw(a - lo, lmul_basis_raw(b - lo, c, p.dim), p.dim)
                # x_a d_b part
                if e[b]:
                    ne = list(e)
                    ne[b] -= 1
                    ne[a] += 1
                    _acc(tuple(ne), -e[b] * eab)
                # -x_b d_a part
                if e[a]:
                    ne = list(e)
                    ne[a] -= 1
                    ne[b] += 1
                    _acc(tuple(ne), e[a] * eab)
    return MVPolynomial(p.dim, p.nvars, terms)


def fischer_product(r: MVPolynomial, s: MVPolynomial) -> Multivector:
    """Pairing [r, s] = r(d)^+ s |_0; on monomials
    [x^a A, x^b B] = delta_ab a! A^+ B."""
    if r.dim != s.dim or r.nvars != s.nvars:
        raise ValueError("polynomial dimension mismatch")
    acc = np.zeros(1 << r.dim, dtype=np.complex128)
    for e, c in r.terms():
        other = s._terms.get(e)
        if other is None:
            continue
        fact = 1.0
        for ej in e:
            fact *= math.factorial(ej)
        acc += fact * mul_raw(dagger_raw(c, r.dim), other, r.dim)
    return Multivector(r.dim, acc, _copy=False)


def monomials_of_degree(nvars: int, degree: int,
                        block: tuple | None = None) -> list[tuple]:
    """All exponent tuples of the given total degree supported on the block."""
    lo, hi = (0, nvars) if block is None else block
    out = []

    def rec(pos, left, acc):
        if pos == hi:
            if left == 0:
                out.append(tuple(acc) + (0,) * (nvars - hi))
            return
        for e in range(left + 1):
            rec(pos + 1, left - e, acc + [e])

    rec(lo, degree, [0] * lo)
    return out


def vector_field(dim: int, nvars: int | None = None,
                 block: tuple | None = None) -> MVPolynomial:
    """The 1-vector-valued polynomial sum_j x_j e_j over the block."""
    nvars = dim if nvars is None else nvars
    lo, hi = (0, nvars) if block is None else block
    if hi - lo != dim:
        raise ValueError("block length must equal the algebra dimension")
    terms = {}
    for j in range(lo, hi):
        exp = [0] * nvars
        exp[j] = 1
        c = np.zeros(1 << dim, dtype=np.complex128)
        c[1 << (j - lo)] = 1.0
        terms[tuple(exp)] = c
    return MVPolynomial(dim, nvars, terms)
