"""Dirichlet, Fejer, Norlund-logarithmic and Riesz kernels on the grid.

Each summation kernel can be built two ways: ``direct=True`` accumulates
the defining weighted sum of Dirichlet kernels cell by cell, the default
synthesises its Walsh coefficients. Tests pit the two against each other.

Index conventions: ``D_0 = 0`` and ``S_0 f = 0``. The logarithmic kernel
``P_n = (1/l_n) sum_{k=1}^{n-1} D_k / (n-k)`` drops the vanishing ``k = 0``
term; ``Y_n = (1/l_n) sum_{k=1}^n D_k / k``; ``K_n = (1/n) sum_{k=1}^n D_k``.
"""

from __future__ import annotations

import math
import threading
from functools import lru_cache

import numpy as np

from .dyadic import ResolutionError, walsh_vector
from .transform import GridFunction, synthesize

EULER_GAMMA = 0.57721566490153286061
_HARMONIC_TABLE_LIMIT = 1 << 25
_DIRECT_BUDGET = 1 << 26  # cell-updates allowed for direct accumulation


class HarmonicPrefix:
    """Table of ``l_n = sum_{k=1}^n 1/k`` accumulated from ``k = 1`` upward.

    ``l_0 = 0``. Indices past the table fall back to the asymptotic
    expansion, which is accurate to double precision there.
    """

    def __init__(self, size: int = 1 << 12, dtype=np.float64):
        self.dtype = np.dtype(dtype)
        self._lock = threading.Lock()
        self._table = self._build(size)

    def _build(self, size: int) -> np.ndarray:
        inv = np.empty(size + 1, dtype=self.dtype)
        inv[0] = 0
        inv[1:] = 1 / np.arange(1, size + 1, dtype=self.dtype)
        table = np.cumsum(inv)
        table.setflags(write=False)
        return table

    def _ensure(self, n: int):
        if n < self._table.size:
            return
        with self._lock:
            if n >= self._table.size:
                size = 1 << max(n, 1).bit_length()
                self._table = self._build(min(size, _HARMONIC_TABLE_LIMIT))

    def __len__(self):
        return self._table.size - 1

    def __getitem__(self, n: int) -> float:
        n = int(n)
        if n < 0:
            raise ValueError("harmonic index must be nonnegative")
        if n > _HARMONIC_TABLE_LIMIT:
            return asymptotic_harmonic(n)
        self._ensure(n)
        return float(self._table[n])

    def upto(self, n: int) -> np.ndarray:
        """Read-only view of ``l_0 .. l_n``."""
        if n > _HARMONIC_TABLE_LIMIT:
            raise ValueError(f"harmonic table capped at {_HARMONIC_TABLE_LIMIT}")
        self._ensure(n)
        return self._table[: n + 1]


def asymptotic_harmonic(n: int) -> float:
    n = float(n)
    return math.log(n) + EULER_GAMMA + 1 / (2 * n) - 1 / (12 * n * n) + 1 / (120 * n**4)


harmonic = HarmonicPrefix()
#: Same table in extended precision, for cancellation-heavy reassemblies.
harmonic_ext = HarmonicPrefix(dtype=np.longdouble)


def harmonic_table(dtype=np.float64) -> HarmonicPrefix:
    return harmonic_ext if np.dtype(dtype) == np.dtype(np.longdouble) else harmonic


# Spectral weights: kernel = sum_m weight[m] w_m.


def log_weights(n: int, dtype=np.float64) -> np.ndarray:
    """``l_{n-1-m} / l_n`` for ``m < n`` (the last one is ``l_0 = 0``)."""
    if n < 2:
        raise ValueError(f"logarithmic mean needs n >= 2, got {n}")
    table = harmonic_table(dtype).upto(n)
    return table[n - 1 :: -1][:n] / table[n]


def riesz_weights(n: int, dtype=np.float64) -> np.ndarray:
    """``(l_n - l_m) / l_n`` for ``m < n``."""
    if n < 1:
        raise ValueError(f"Riesz mean needs n >= 1, got {n}")
    table = harmonic_table(dtype).upto(n)
    return (table[n] - table[:n]) / table[n]


def fejer_weights(n: int, dtype=np.float64) -> np.ndarray:
    """``(n - m) / n`` for ``m < n``."""
    if n < 1:
        raise ValueError(f"Fejer mean needs n >= 1, got {n}")
    return (n - np.arange(n, dtype=dtype)) / n


def _check_count(n: int, N: int):
    if n > 1 << N:
        raise ResolutionError(f"n={n} exceeds 2^N={1 << N}")


def _from_weights(weights: np.ndarray, N: int) -> GridFunction:
    c = np.zeros(1 << N)
    c[: weights.size] = weights
    return synthesize(c)


# Dirichlet kernels.


@lru_cache(maxsize=256)
def dirichlet(n: int, N: int) -> GridFunction:
    """``D_n = sum_{k<n} w_k`` in exact integer arithmetic."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    _check_count(n, N)
    c = np.zeros(1 << N, dtype=np.int64)
    c[:n] = 1
    return synthesize(c)


@lru_cache(maxsize=256)
def dirichlet_closed_dyadic(n: int, N: int) -> GridFunction:
    """``D_{2^n}``: ``2^n`` on ``I_n``, zero off it."""
    if not 0 <= n <= N:
        raise ResolutionError(f"D_(2^{n}) needs 0 <= n <= N={N}")
    v = np.zeros(1 << N, dtype=np.int64)
    v[: 1 << (N - n)] = 1 << n
    return GridFunction(v)


def dirichlet_paley_formula(n: int, N: int) -> GridFunction:
    """``D_n = w_n sum_k n_k (D_{2^{k+1}} - D_{2^k})`` over the binary digits of ``n``."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n >= 1 << N:
        raise ResolutionError(f"w_{n} is not constant on cells of depth {N}")
    acc = np.zeros(1 << N, dtype=np.int64)
    for k in range(n.bit_length()):
        if (n >> k) & 1:
            acc += dirichlet_closed_dyadic(k + 1, N).values
            acc -= dirichlet_closed_dyadic(k, N).values
    return GridFunction(walsh_vector(n, N).astype(np.int64) * acc)


def _direct_sum(coef, k_values, N: int) -> GridFunction:
    """``sum_k coef(k) D_k`` by running accumulation ``D_{k+1} = D_k + w_k``."""
    d = np.zeros(1 << N, dtype=np.int64)
    out = np.zeros(1 << N)
    k_next = 0
    for k in k_values:
        while k_next < k:
            d += walsh_vector(k_next, N)
            k_next += 1
        out += coef(k) * d
    return GridFunction(out)


def _use_direct(direct, n: int, N: int) -> bool:
    if direct is None:
        return n * (1 << N) <= _DIRECT_BUDGET
    return bool(direct)


@lru_cache(maxsize=512)
def log_kernel(n: int, N: int, direct: bool | None = False) -> GridFunction:
    """Norlund logarithmic kernel ``P_n``."""
    if n < 2:
        raise ValueError(f"P_n needs n >= 2 (empty mean), got {n}")
    _check_count(n, N)
    if _use_direct(direct, n, N):
        ln = harmonic[n]
        return _direct_sum(lambda k: 1.0 / ((n - k) * ln), range(1, n), N)
    return _from_weights(log_weights(n), N)


@lru_cache(maxsize=512)
def riesz_kernel(n: int, N: int, direct: bool | None = False) -> GridFunction:
    """Riesz logarithmic kernel ``Y_n``."""
    if n < 1:
        raise ValueError(f"Y_n needs n >= 1, got {n}")
    _check_count(n, N)
    if _use_direct(direct, n, N):
        ln = harmonic[n]
        return _direct_sum(lambda k: 1.0 / (k * ln), range(1, n + 1), N)
    return _from_weights(riesz_weights(n), N)


@lru_cache(maxsize=512)
def fejer_kernel(n: int, N: int, direct: bool | None = False) -> GridFunction:
    """Fejer kernel ``K_n``."""
    if n < 1:
        raise ValueError(f"K_n needs n >= 1, got {n}")
    _check_count(n, N)
    if _use_direct(direct, n, N):
        return _direct_sum(lambda k: 1.0 / n, range(1, n + 1), N)
    return _from_weights(fejer_weights(n), N)


def check_kernel_identity(n: int, N: int, direct: bool | None = None) -> float:
    """Sup-norm residual of ``P_{2^n} - (D_{2^n} - w_{2^n-1} Y_{2^n})``."""
    if not 1 <= n <= N:
        raise ResolutionError(f"identity needs 1 <= n <= N={N}, got n={n}")
    m = 1 << n
    lhs = log_kernel(m, N, direct=direct).values
    rhs = (
        dirichlet_closed_dyadic(n, N).values
        - walsh_vector(m - 1, N) * riesz_kernel(m, N, direct=direct).values
    )
    return float(np.max(np.abs(lhs - rhs)))


def l1_norm(g: GridFunction) -> float:
    return float(np.mean(np.abs(g.values)))
