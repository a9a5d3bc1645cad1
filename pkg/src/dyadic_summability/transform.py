"""Walsh-Fourier analysis and synthesis on the finite dyadic grid."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .dyadic import ResolutionError, bit_reversal, check_resolution


def _as_readonly(values, dtype=None) -> np.ndarray:
    arr = np.array(values, dtype=dtype, copy=True)
    arr.setflags(write=False)
    return arr


def _resolution_of(length: int) -> int:
    N = length.bit_length() - 1
    if length < 1 or 1 << N != length:
        raise ValueError(f"length {length} is not a power of two")
    return N


@dataclass(frozen=True, eq=False)
class GridFunction:
    """A function constant on every depth-N cell, stored in cell order."""

    values: np.ndarray

    def __post_init__(self):
        vals = np.asarray(self.values)
        if vals.ndim != 1:
            raise ValueError("GridFunction values must be one-dimensional")
        _resolution_of(vals.size)
        if vals.dtype.kind not in "iu":
            vals = vals.astype(np.float64, copy=False)
            if not np.all(np.isfinite(vals)):
                raise ValueError("GridFunction values must be finite")
        object.__setattr__(self, "values", _as_readonly(vals))

    @property
    def resolution(self) -> int:
        return _resolution_of(self.values.size)

    @property
    def size(self) -> int:
        return self.values.size

    @classmethod
    def constant(cls, c: float, N: int) -> "GridFunction":
        return cls(np.full(1 << N, float(c)))

    @classmethod
    def zeros(cls, N: int) -> "GridFunction":
        return cls(np.zeros(1 << N))

    def integral(self) -> float:
        return float(self.values.mean())

    def __call__(self, x) -> float:
        return self.values[x.cell].item()

    def _check(self, other: "GridFunction"):
        if other.size != self.size:
            raise ValueError(
                f"resolution mismatch: {self.resolution} vs {other.resolution}"
            )

    def __add__(self, other):
        if isinstance(other, GridFunction):
            self._check(other)
            return GridFunction(self.values + other.values)
        return GridFunction(self.values + other)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, GridFunction):
            self._check(other)
            return GridFunction(self.values - other.values)
        return GridFunction(self.values - other)

    def __mul__(self, other):
        if isinstance(other, GridFunction):
            self._check(other)
            return GridFunction(self.values * other.values)
        return GridFunction(self.values * other)

    __rmul__ = __mul__

    def __truediv__(self, c):
        return GridFunction(self.values / c)

    def __neg__(self):
        return GridFunction(-self.values)

    def __abs__(self):
        return GridFunction(np.abs(self.values))

    def __repr__(self):
        return f"GridFunction(N={self.resolution})"


@dataclass(frozen=True, eq=False)
class Spectrum:
    """Walsh-Fourier coefficients in Paley order."""

    coeffs: np.ndarray

    def __post_init__(self):
        c = np.asarray(self.coeffs)
        if c.ndim != 1:
            raise ValueError("Spectrum must be one-dimensional")
        _resolution_of(c.size)
        object.__setattr__(self, "coeffs", _as_readonly(c))

    @property
    def resolution(self) -> int:
        return _resolution_of(self.coeffs.size)

    @property
    def size(self) -> int:
        return self.coeffs.size

    def __getitem__(self, k):
        return self.coeffs[k]

    def __repr__(self):
        return f"Spectrum(N={self.resolution})"


def fwht(values: np.ndarray) -> np.ndarray:
    """Unnormalised Walsh-Hadamard transform in natural (Hadamard) order.

    Returns a new array; dtype is preserved so integer input stays exact.
    """
    x = np.array(values, copy=True)
    n = x.size
    _resolution_of(n)
    h = 1
    while h < n:
        v = x.reshape(-1, 2, h)
        lo = v[:, 0, :].copy()
        v[:, 0, :] += v[:, 1, :]
        v[:, 1, :] = lo - v[:, 1, :]
        h *= 2
    return x


def analyze(f: GridFunction) -> Spectrum:
    """``coeffs[k] = 2^-N sum_x f(x) w_k(x)``."""
    N = f.resolution
    raw = fwht(np.asarray(f.values, dtype=np.float64)[bit_reversal(N)])
    return Spectrum(raw / float(1 << N))


def synthesize(s: Spectrum | np.ndarray) -> GridFunction:
    """``f(x) = sum_k coeffs[k] w_k(x)``; integer spectra synthesise exactly."""
    coeffs = s.coeffs if isinstance(s, Spectrum) else np.asarray(s)
    N = _resolution_of(coeffs.size)
    return GridFunction(fwht(coeffs)[bit_reversal(N)])


def partial_sum(s: Spectrum, n: int) -> GridFunction:
    """``S_n f``: synthesis of the first ``n`` coefficients."""
    if n < 0:
        raise ValueError("partial sum index must be nonnegative")
    if n > s.size:
        raise ResolutionError(f"S_{n} needs more than {s.size} coefficients")
    c = np.zeros(s.size)
    c[:n] = s.coeffs[:n]
    return synthesize(c)


def weighted_synthesis(s: Spectrum, weights: np.ndarray) -> GridFunction:
    """Synthesis of ``weights[k] * coeffs[k]``; ``weights`` may be shorter than ``s``.

    Runs in the dtype of ``weights`` (e.g. ``longdouble``); the result is
    rounded to float64 once at the end.
    """
    w = np.zeros(s.size, dtype=weights.dtype)
    w[: len(weights)] = weights
    return synthesize(w * s.coeffs.astype(weights.dtype))


def grid(values, N: int | None = None) -> GridFunction:
    """Convenience constructor with an optional resolution check."""
    f = GridFunction(np.asarray(values))
    if N is not None and f.resolution != check_resolution(N, None):
        raise ValueError(f"expected resolution {N}, got {f.resolution}")
    return f
