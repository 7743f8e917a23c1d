"""Complex Clifford algebra C_m with anti-Euclidean generators.

Basis blades are indexed by bitmasks over the generators e_1..e_m
(bit j-1 corresponds to e_j), so a blade product reduces to XOR of the
bitmasks plus a permutation sign.  The generators satisfy

    e_i e_j + e_j e_i = -2 delta_ij

i.e. every generator squares to -1.  Hermitian conjugation is the
antiautomorphism with (a b)^+ = b^+ a^+, e_j^+ = -e_j, and complex
conjugation of coefficients.

Multivectors store a dense complex coefficient vector of length 2^m;
for the dimensions used here (m <= 6) this is faster than a sparse map
and keeps products vectorizable.  All values are immutable after
construction and all operations are pure, so instances can be shared
freely between threads.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

__all__ = [
    "Multivector",
    "NullFrame",
    "geometric_product",
    "dagger",
    "wedge",
    "pairing",
    "make_null_frame",
    "blade_mask",
    "blade_indices",
]

MAX_DIM = 12


def blade_mask(indices) -> int:
    """Bitmask for a blade given 1-based generator indices."""
    mask = 0
    for i in indices:
        bit = 1 << (i - 1)
        if bit & mask:
            raise ValueError(f"repeated index {i} in blade")
        mask |= bit
    return mask


def blade_indices(mask: int) -> list[int]:
    """Ascending 1-based generator indices of a blade bitmask."""
    return [j + 1 for j in range(mask.bit_length()) if mask >> j & 1]


def _pair_sign(a: int, b: int) -> int:
    """Sign of e_A e_B for blade bitmasks: reorder transpositions, then
    annihilate common generators with e_j^2 = -1."""
    swaps = 0
    bb = b
    while bb:
        j = (bb & -bb).bit_length() - 1
        swaps += (a >> (j + 1)).bit_count()
        bb &= bb - 1
    swaps += (a & b).bit_count()
    return -1 if swaps & 1 else 1


@lru_cache(maxsize=None)
def _mul_tables(m: int):
    """(sign, gather) tables with sign[i,k] = sign(e_i e_{i^k}) and
    gather[i,k] = i^k, so (a*b)[k] = sum_i sign[i,k] a[i] b[i^k]."""
    n = 1 << m
    idx = np.arange(n)
    gather = idx[:, None] ^ idx[None, :]
    sign = np.empty((n, n), dtype=np.float64)
    for i in range(n):
        for k in range(n):
            sign[i, k] = _pair_sign(i, i ^ k)
    sign.setflags(write=False)
    gather.setflags(write=False)
    return sign, gather


@lru_cache(maxsize=None)
def _dagger_signs(m: int) -> np.ndarray:
    """Per-blade sign of Hermitian conjugation: (-1)^(r(r+1)/2) on grade r."""
    n = 1 << m
    r = np.array([i.bit_count() for i in range(n)])
    sgn = np.where(((r * (r + 1)) // 2) % 2 == 0, 1.0, -1.0)
    sgn.setflags(write=False)
    return sgn


@lru_cache(maxsize=None)
def _lmul_tables(m: int):
    """Per-generator left-multiplication tables: e_j * (coeff on blade i)
    lands on blade (bit_j ^ i) with sign lsign[j][i]."""
    n = 1 << m
    perm = np.empty((m, n), dtype=np.int64)
    sgn = np.empty((m, n), dtype=np.float64)
    for j in range(m):
        bit = 1 << j
        for i in range(n):
            perm[j, i] = bit ^ i
            sgn[j, i] = _pair_sign(bit, i)
    perm.setflags(write=False)
    sgn.setflags(write=False)
    return perm, sgn


def mul_raw(a: np.ndarray, b: np.ndarray, m: int) -> np.ndarray:
    """Geometric product on raw dense coefficient vectors."""
    sign, gather = _mul_tables(m)
    return (a[:, None] * sign * b[gather]).sum(axis=0)


def lmul_basis_raw(j: int, a: np.ndarray, m: int) -> np.ndarray:
    """Left-multiply raw coefficients by the generator e_{j+1} (0-based j)."""
    perm, sgn = _lmul_tables(m)
    out = np.empty_like(a)
    out[perm[j]] = sgn[j] * a
    return out


def dagger_raw(a: np.ndarray, m: int) -> np.ndarray:
    return _dagger_signs(m) * np.conj(a)


class Multivector:
    """Immutable element of C_m held as a dense complex coefficient vector."""

    __slots__ = ("m", "_c")

    def __init__(self, m: int, coeffs: np.ndarray, _copy: bool = True):
        if not 1 <= m <= MAX_DIM:
            raise ValueError(f"dimension m={m} out of supported range 1..{MAX_DIM}")
        c = np.asarray(coeffs, dtype=np.complex128)
        if c.shape != (1 << m,):
            raise ValueError(f"coefficient vector must have length 2^{m}")
        if _copy:
            c = c.copy()
        c.setflags(write=False)
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "_c", c)

    def __setattr__(self, *a):
        raise AttributeError("Multivector is immutable")

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, m: int) -> "Multivector":
        return cls(m, np.zeros(1 << m), _copy=False)

    @classmethod
    def scalar(cls, value, m: int) -> "Multivector":
        c = np.zeros(1 << m, dtype=np.complex128)
        c[0] = value
        return cls(m, c, _copy=False)

    @classmethod
    def basis(cls, indices, m: int) -> "Multivector":
        """Blade e_A from 1-based generator indices (empty -> scalar 1)."""
        c = np.zeros(1 << m, dtype=np.complex128)
        c[blade_mask(indices)] = 1.0
        return cls(m, c, _copy=False)

    @classmethod
    def from_vector(cls, components) -> "Multivector":
        """Embed (z_1,..,z_m) as the 1-vector sum_j z_j e_j."""
        z = np.asarray(components, dtype=np.complex128)
        m = z.shape[0]
        c = np.zeros(1 << m, dtype=np.complex128)
        for j in range(m):
            c[1 << j] = z[j]
        return cls(m, c, _copy=False)

    # -- access -------------------------------------------------------

    @property
    def coeffs(self) -> np.ndarray:
        return self._c

    def coeff(self, indices) -> complex:
        """Coefficient of the blade with the given 1-based indices."""
        return complex(self._c[blade_mask(indices)])

    def scalar_part(self) -> complex:
        return complex(self._c[0])

    def max_abs(self) -> float:
        return float(np.abs(self._c).max())

    def terms(self):
        """Yield (ascending index list, coefficient) for nonzero blades."""
        for mask in np.nonzero(self._c)[0]:
            yield blade_indices(int(mask)), complex(self._c[mask])

    # -- arithmetic ---------------------------------------------------

    def _check(self, other: "Multivector"):
        if self.m != other.m:
            raise ValueError(f"dimension mismatch: {self.m} vs {other.m}")

    def __add__(self, other):
        if isinstance(other, Multivector):
            self._check(other)
            return Multivector(self.m, self._c + other._c, _copy=False)
        return Multivector(self.m, self._c + Multivector.scalar(other, self.m)._c, _copy=False)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-1) * other if not isinstance(other, Multivector) else self + (-other)

    def __neg__(self):
        return Multivector(self.m, -self._c, _copy=False)

    def __mul__(self, other):
        if isinstance(other, Multivector):
            self._check(other)
            return Multivector(self.m, mul_raw(self._c, other._c, self.m), _copy=False)
        return Multivector(self.m, self._c * other, _copy=False)

    def __rmul__(self, other):
        # other is a scalar here; Multivector*Multivector hits __mul__
        return Multivector(self.m, other * self._c, _copy=False)

    def dagger(self) -> "Multivector":
        return Multivector(self.m, dagger_raw(self._c, self.m), _copy=False)

    def grade_part(self, r: int) -> "Multivector":
        c = self._c.copy()
        for mask in range(1 << self.m):
            if mask.bit_count() != r:
                c[mask] = 0.0
        return Multivector(self.m, c, _copy=False)

    def isclose(self, other: "Multivector", tol: float = 1e-12) -> bool:
        self._check(other)
        return bool(np.abs(self._c - other._c).max() <= tol)

    def __repr__(self):
        parts = []
        for idx, val in self.terms():
            name = "1" if not idx else "e" + "".join(str(i) for i in idx)
            parts.append(f"({val:.6g})*{name}")
        body = " + ".join(parts) if parts else "0"
        return f"Multivector(m={self.m}: {body})"

    # -- serialization ------------------------------------------------

    def to_json(self) -> dict:
        terms = []
        for mask in sorted(int(i) for i in np.nonzero(self._c)[0]):
            v = self._c[mask]
            terms.append({"blade": blade_indices(mask), "re": float(v.real), "im": float(v.imag)})
        return {"m": self.m, "terms": terms}

    @classmethod
    def from_json(cls, data: dict) -> "Multivector":
        m = int(data["m"])
        c = np.zeros(1 << m, dtype=np.complex128)
        for t in data["terms"]:
            c[blade_mask(t["blade"])] += t["re"] + 1j * t["im"]
        return cls(m, c, _copy=False)


# -- free functions over vectors and multivectors ----------------------


def geometric_product(a: Multivector, b: Multivector) -> Multivector:
    return a * b


def dagger(a: Multivector) -> Multivector:
    return a.dagger()


def pairing(a, b) -> complex:
    """Bilinear (not Hermitian) pairing <a,b> = sum_j a_j b_j of vectors."""
    a = np.asarray(a, dtype=np.complex128)
    b = np.asarray(b, dtype=np.complex128)
    if a.shape != b.shape:
        raise ValueError("vector length mismatch")
    return complex(np.dot(a, b))


def wedge(a, b) -> Multivector:
    """Exterior product of two 1-vectors: sum_{i<j} (a_i b_j - a_j b_i) e_ij."""
    a = np.asarray(a, dtype=np.complex128)
    b = np.asarray(b, dtype=np.complex128)
    if a.shape != b.shape:
        raise ValueError("vector length mismatch")
    m = a.shape[0]
    c = np.zeros(1 << m, dtype=np.complex128)
    for i in range(m):
        for j in range(i + 1, m):
            c[(1 << i) | (1 << j)] = a[i] * b[j] - a[j] * b[i]
    return Multivector(m, c, _copy=False)


class NullFrame:
    """Orthonormal real pair (t, s) encoding tau = t + i s on the nullcone.

    Validation enforces |t| = |s| = 1 and <t,s> = 0; the induced tau then
    satisfies tau^2 = 0, tau tau^+ tau = 4 tau and tau^+ tau + tau tau^+ = 4.
    """

    __slots__ = ("m", "t", "s")

    def __init__(self, t, s, tol: float = 1e-10):
        t = np.asarray(t, dtype=np.float64).copy()
        s = np.asarray(s, dtype=np.float64).copy()
        if t.ndim != 1 or t.shape != s.shape:
            raise ValueError("t and s must be equal-length real vectors")
        if abs(np.dot(t, t) - 1.0) > tol or abs(np.dot(s, s) - 1.0) > tol:
            raise ValueError("frame vectors must be unit length")
        if abs(np.dot(t, s)) > tol:
            raise ValueError("frame vectors must be orthogonal")
        t.setflags(write=False)
        s.setflags(write=False)
        object.__setattr__(self, "m", t.shape[0])
        object.__setattr__(self, "t", t)
        object.__setattr__(self, "s", s)

    def __setattr__(self, *a):
        raise AttributeError("NullFrame is immutable")

    def tau_vec(self) -> np.ndarray:
        return self.t + 1j * self.s

    def taud_vec(self) -> np.ndarray:
        return -self.t + 1j * self.s

    def tau(self) -> Multivector:
        return Multivector.from_vector(self.tau_vec())

    def tau_dagger(self) -> Multivector:
        return Multivector.from_vector(self.taud_vec())

    def tau_taud(self) -> Multivector:
        """The product tau tau^+ = 2 + 2i t^s used as projection prefactor."""
        return self.tau() * self.tau_dagger()

    def to_json(self) -> dict:
        return {"t": [float(v) for v in self.t], "s": [float(v) for v in self.s]}

    @classmethod
    def from_json(cls, data: dict) -> "NullFrame":
        return cls(data["t"], data["s"])

    def __repr__(self):
        return f"NullFrame(m={self.m}, t={self.t}, s={self.s})"


def make_null_frame(t, s) -> NullFrame:
    return NullFrame(t, s)
