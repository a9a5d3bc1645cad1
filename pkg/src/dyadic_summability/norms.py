"""Lebesgue, weak and Hardy (quasi-)norms, maximal function, atoms."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .dyadic import Cell, DyadicPoint, ResolutionError
from .transform import GridFunction

ATOM_INTEGRAL_TOL = 1e-12


def _check_p(p: float):
    if not p > 0:
        raise ValueError(f"p must be positive, got {p}")


def lp_norm(f: GridFunction, p: float) -> float:
    """``(int |f|^p dmu)^(1/p)``; only a quasi-norm when ``p < 1``."""
    _check_p(p)
    a = np.abs(np.asarray(f.values, dtype=np.float64))
    if np.isinf(p):
        return float(a.max())
    return float(np.mean(a**p) ** (1.0 / p))


def weak_lp_norm(f: GridFunction, p: float) -> float:
    """``sup_lambda lambda mu(|f| > lambda)^(1/p)``, evaluated exactly.

    The supremum is approached as ``lambda`` rises to one of the values of
    ``|f|``, so it is the max over those levels of
    ``lambda_i * mu(|f| >= lambda_i)^(1/p)``.
    """
    _check_p(p)
    a = np.sort(np.abs(np.asarray(f.values, dtype=np.float64)))[::-1]
    if a.size == 0 or a[0] == 0:
        return 0.0
    # for tied values the largest count (last occurrence in descending order) applies
    last = np.r_[a[1:] != a[:-1], True]
    counts = np.arange(1, a.size + 1)[last]
    levels = a[last]
    return float(np.max(levels * (counts / a.size) ** (1.0 / p)))


def cell_averages(f: GridFunction, n: int) -> np.ndarray:
    """Depth-``n`` cell averages, broadcast back onto the full grid."""
    N = f.resolution
    blocks = np.asarray(f.values, dtype=np.float64).reshape(1 << n, -1)
    return np.repeat(blocks.mean(axis=1), 1 << (N - n))


def maximal_function(f: GridFunction) -> GridFunction:
    """``M f(x) = max_{0<=n<=N} |2^n int_{I_n(x)} f|``.

    Depth averages are built bottom-up by pairwise merging, so the whole
    sweep costs O(2^N N).
    """
    N = f.resolution
    level = np.asarray(f.values, dtype=np.float64)
    out = np.abs(level)
    for n in range(N - 1, -1, -1):
        level = 0.5 * (level[0::2] + level[1::2])
        np.maximum(out, np.repeat(np.abs(level), 1 << (N - n)), out=out)
    return GridFunction(out)


def hardy_norm(f: GridFunction, p: float) -> float:
    """``||M f||_p``: the martingale ``(S_{2^n} f)`` truncated at depth N."""
    _check_p(p)
    return lp_norm(maximal_function(f), p)


@dataclass(frozen=True)
class AtomCheck:
    passed: bool
    depth: int | None  # witness interval I has this depth ...
    cell: int | None  # ... and starts at this cell index
    integral: float
    sup: float
    bound: float  # mu(I)^(-1/p)
    exact: bool  # sup comparison done in rational arithmetic
    sup_equals_bound: bool

    def __bool__(self):
        return self.passed


def _smallest_enclosing(support: np.ndarray, N: int) -> tuple[int, int]:
    """Deepest dyadic interval containing every nonzero cell: (depth, first cell)."""
    lo, hi = int(support[0]), int(support[-1])
    diff = lo ^ hi
    depth = N - diff.bit_length()
    size = 1 << (N - depth)
    return depth, (lo // size) * size


def _exact_sup_compare(sup: float, depth: int, p: float) -> tuple[bool, bool] | None:
    """Compare ``sup`` with ``2^(depth/p)`` exactly; None when not representable."""
    if not float(sup).is_integer():
        return None
    inv_p = 1 / Fraction(p)
    if inv_p.denominator > 64:
        return None
    a, b = inv_p.numerator, inv_p.denominator
    lhs = Fraction(int(sup)) ** b
    rhs = Fraction(2) ** (depth * a)
    return lhs <= rhs, lhs == rhs


def is_p_atom(a: GridFunction, p: float) -> AtomCheck:
    """Search for a dyadic interval witnessing that ``a`` is a ``p``-atom.

    Any valid witness contains the support, and the integral over it is the
    full integral either way, so the deepest enclosing interval (which has
    the loosest sup bound) is the only one that needs checking.
    """
    if not 0 < p <= 1:
        raise ValueError(f"p-atoms need 0 < p <= 1, got {p}")
    N = a.resolution
    vals = np.asarray(a.values, dtype=np.float64)
    support = np.flatnonzero(vals)
    integral = float(vals.mean())
    if support.size == 0:
        return AtomCheck(True, N, 0, 0.0, 0.0, 2.0 ** (N / p), True, False)
    depth, start = _smallest_enclosing(support, N)
    sup = float(np.abs(vals).max())
    bound = 2.0 ** (depth / p)
    exact = _exact_sup_compare(sup, depth, p) if np.all(np.mod(vals, 1) == 0) else None
    if exact is None:
        sup_ok = sup <= bound * (1 + 1e-12)
        sup_eq = abs(sup - bound) <= 1e-12 * bound
    else:
        sup_ok, sup_eq = exact
    passed = abs(integral) <= ATOM_INTEGRAL_TOL and sup_ok
    return AtomCheck(passed, depth, start, integral, sup, bound, exact is not None, sup_eq)


def witness_cell(check: AtomCheck, N: int) -> Cell | None:
    if check.depth is None:
        return None
    x = DyadicPoint.from_cell(check.cell, N)
    return Cell(check.depth, x.bits & ((1 << check.depth) - 1), N)


def lebesgue_residual(f: GridFunction, x: DyadicPoint, n: int) -> float:
    """``2^n int_{I_n(x)} f dmu - f(x)``; zero once ``n = N``."""
    N = f.resolution
    if x.resolution != N:
        raise ValueError("point and function resolutions differ")
    if not 0 <= n <= N:
        raise ResolutionError(f"depth {n} outside [0, {N}]")
    size = 1 << (N - n)
    c = x.cell
    start = (c // size) * size
    vals = np.asarray(f.values, dtype=np.float64)
    return float(vals[start : start + size].mean() - vals[c])


def shift(f: GridFunction, a: DyadicPoint) -> GridFunction:
    """``x -> f(x + a)``."""
    if a.resolution != f.resolution:
        raise ValueError("shift resolution mismatch")
    idx = np.arange(f.size) ^ a.cell
    return GridFunction(np.asarray(f.values)[idx])

