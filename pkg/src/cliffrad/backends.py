"""Sample-reduction kernels: numba JIT with a pure-numpy fallback.

The Monte-Carlo engines reduce per-sample products M[n, i] * V[n, j]
into first and second moments over n.  That triple loop dominates the
runtime of every Stiefel average, so it is compiled with numba when
available; the numpy fallback computes the same sums as a handful of
matrix products.

Backend selection: the environment variable CLIFFRAD_BACKEND may be set
to "numba" or "numpy"; unset (or "auto") picks numba when it imports.

Both paths accumulate the same quantities; they may differ in the last
bits because summation order differs, which is why cross-backend tests
compare at 1e-10 rather than bit-exactly.
"""

from __future__ import annotations

import os

import numpy as np

__all__ = ["accumulate_products", "active_backend", "available_backends"]

try:
    import numba

    _HAS_NUMBA = True
except ImportError:  # pragma: no cover - environment without numba
    numba = None
    _HAS_NUMBA = False


def accumulate_numpy(mu: np.ndarray, v: np.ndarray):
    """Sums over samples of X = mu[:, i] * v[:, j]: returns
    (sum X, sum Re(X)^2, sum Im(X)^2), each of shape (i, j)."""
    s = mu.T @ v
    mr, mi = np.ascontiguousarray(mu.real), np.ascontiguousarray(mu.imag)
    vr, vi = np.ascontiguousarray(v.real), np.ascontiguousarray(v.imag)
    mr2 = (mr * mr).T
    mi2 = (mi * mi).T
    mri = (mr * mi).T
    vr2 = vr * vr
    vi2 = vi * vi
    vri = vr * vi
    # Re(X) = mr*vr - mi*vi, Im(X) = mr*vi + mi*vr
    re2 = mr2 @ vr2 - 2.0 * (mri @ vri) + mi2 @ vi2
    im2 = mr2 @ vi2 + 2.0 * (mri @ vri) + mi2 @ vr2
    return s, re2, im2


if _HAS_NUMBA:

    @numba.njit(cache=True)
    def _accumulate_numba_impl(mu, v):  # pragma: no cover - compiled
        n, ni = mu.shape
        nj = v.shape[1]
        s = np.zeros((ni, nj), dtype=np.complex128)
        re2 = np.zeros((ni, nj))
        im2 = np.zeros((ni, nj))
        for k in range(n):
            for i in range(ni):
                a = mu[k, i]
                for j in range(nj):
                    x = a * v[k, j]
                    s[i, j] += x
                    re2[i, j] += x.real * x.real
                    im2[i, j] += x.imag * x.imag
        return s, re2, im2

    def accumulate_numba(mu: np.ndarray, v: np.ndarray):
        return _accumulate_numba_impl(
            np.ascontiguousarray(mu), np.ascontiguousarray(v)
        )

else:  # pragma: no cover - environment without numba
    accumulate_numba = None


def available_backends() -> list[str]:
    return ["numba", "numpy"] if _HAS_NUMBA else ["numpy"]


def active_backend() -> str:
    """Backend selected by CLIFFRAD_BACKEND (auto prefers numba)."""
    choice = os.environ.get("CLIFFRAD_BACKEND", "auto").lower()
    if choice in ("", "auto"):
        return "numba" if _HAS_NUMBA else "numpy"
    if choice == "numba":
        if not _HAS_NUMBA:
            raise RuntimeError("CLIFFRAD_BACKEND=numba but numba is not importable")
        return "numba"
    if choice == "numpy":
        return "numpy"
    raise ValueError(f"unknown CLIFFRAD_BACKEND value {choice!r}")


def accumulate_products(mu: np.ndarray, v: np.ndarray, backend: str | None = None):
    """Dispatch the moment reduction to the selected backend."""
    name = backend or active_backend()
    if name == "numba":
        return accumulate_numba(mu, v)
    return accumulate_numpy(mu, v)
