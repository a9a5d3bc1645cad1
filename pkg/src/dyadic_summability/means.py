"""Summability means, each computable by spectral weighting or by convolution."""

from __future__ import annotations

from typing import Iterable

import numpy as np

from . import kernels
from .dyadic import ResolutionError
from .transform import GridFunction, Spectrum, analyze, synthesize, weighted_synthesis

#: Above this resolution ``convolve`` goes through the spectrum.
DIRECT_CONVOLUTION_MAX_N = 10

_WEIGHTS = {
    "fejer": kernels.fejer_weights,
    "log": kernels.log_weights,
    "riesz": kernels.riesz_weights,
}
_KERNELS = {
    "fejer": kernels.fejer_kernel,
    "log": kernels.log_kernel,
    "riesz": kernels.riesz_kernel,
}


def convolve_direct(f: GridFunction, g: GridFunction) -> GridFunction:
    """``(f*g)(x) = 2^-N sum_t f(x+t) g(t)`` by the double sum."""
    if f.size != g.size:
        raise ValueError(f"resolution mismatch: {f.resolution} vs {g.resolution}")
    idx = np.arange(f.size)
    fv = np.asarray(f.values, dtype=np.float64)
    shifted = fv[idx[:, None] ^ idx[None, :]]
    return GridFunction(shifted @ np.asarray(g.values, dtype=np.float64) / f.size)


def convolve_spectral(f: GridFunction, g: GridFunction) -> GridFunction:
    if f.size != g.size:
        raise ValueError(f"resolution mismatch: {f.resolution} vs {g.resolution}")
    return synthesize(analyze(f).coeffs * analyze(g).coeffs)


def convolve(f: GridFunction, g: GridFunction) -> GridFunction:
    if f.resolution <= DIRECT_CONVOLUTION_MAX_N:
        return convolve_direct(f, g)
    return convolve_spectral(f, g)


def _spectrum(f: GridFunction | Spectrum) -> Spectrum:
    return f if isinstance(f, Spectrum) else analyze(f)


def _check_n(n: int, size: int, lo: int):
    if n < lo:
        raise ValueError(f"n must be at least {lo}, got {n}")
    if n > size:
        raise ResolutionError(f"n={n} exceeds 2^N={size}")


def summability_mean(
    f: GridFunction | Spectrum, n: int, kind: str, method: str = "spectral", dtype=np.float64
) -> GridFunction:
    """Apply the ``kind`` mean (``fejer``, ``log`` or ``riesz``) of order ``n``.

    ``method="spectral"`` weights the Walsh coefficients of ``f``;
    ``method="kernel"`` convolves ``f`` with the kernel built from its
    defining Dirichlet sum. ``dtype`` sets the working precision of the
    spectral route.
    """
    if kind not in _WEIGHTS:
        raise ValueError(f"unknown mean {kind!r}")
    lo = 2 if kind == "log" else 1
    _check_n(n, f.size, lo)
    if method == "spectral":
        return weighted_synthesis(_spectrum(f), _WEIGHTS[kind](n, dtype))
    if method == "kernel":
        if isinstance(f, Spectrum):
            f = synthesize(f)
        kernel = _KERNELS[kind](n, f.resolution, direct=None)
        return convolve(f, kernel)
    raise ValueError(f"unknown method {method!r}")


def fejer_mean(f, n: int, method: str = "spectral") -> GridFunction:
    return summability_mean(f, n, "fejer", method)


def log_mean(f, n: int, method: str = "spectral", dtype=np.float64) -> GridFunction:
    """``L_n f = (1/l_n) sum_{k=0}^{n-1} S_k f / (n-k)``."""
    return summability_mean(f, n, "log", method, dtype)


def riesz_mean(f, n: int, method: str = "spectral") -> GridFunction:
    return summability_mean(f, n, "riesz", method)


def mean_sweep(
    f: GridFunction | Spectrum, ns: Iterable[int], kind: str
) -> dict[int, GridFunction]:
    """Means for many orders against one analysis of ``f``; keys in input order."""
    s = _spectrum(f)
    return {n: summability_mean(s, n, kind) for n in ns}


def dyadic_partial(f: GridFunction, n: int) -> GridFunction:
    """``S_{2^n} f``: replace ``f`` by its averages over depth-``n`` cells."""
    N = f.resolution
    if not 0 <= n <= N:
        raise ResolutionError(f"depth {n} outside [0, {N}]")
    blocks = np.asarray(f.values, dtype=np.float64).reshape(1 << n, -1)
    return GridFunction(np.repeat(blocks.mean(axis=1), 1 << (N - n)))
