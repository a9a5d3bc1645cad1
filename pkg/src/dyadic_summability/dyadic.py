"""Points, cells and characters of the dyadic group at a finite resolution.

A point keeps its first ``N`` coordinates ``x_0..x_{N-1}`` packed into an
integer with bit ``j`` holding ``x_j``; XOR is then the group operation.
Grid arrays are laid out in *cell order*: cell index
``c = sum_j x_j 2^(N-1-j)`` (``x_0`` most significant), so a depth-``n``
interval ``I_n(x)`` is a contiguous block of ``2^(N-n)`` cells.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

#: Grids above this resolution are refused unless explicitly allowed.
DEFAULT_MAX_RESOLUTION = 24


class ResolutionError(ValueError):
    """An object cannot be represented exactly at the requested resolution."""


def check_resolution(N: int, max_resolution: int | None = DEFAULT_MAX_RESOLUTION) -> int:
    N = int(N)
    if N < 0:
        raise ValueError(f"resolution must be nonnegative, got {N}")
    if max_resolution is not None and N > max_resolution:
        raise ResolutionError(
            f"resolution N={N} exceeds the memory gate ({max_resolution}); "
            "raise max_resolution to override"
        )
    return N


def _reverse_bits(value: int, width: int) -> int:
    out = 0
    for _ in range(width):
        out = (out << 1) | (value & 1)
        value >>= 1
    return out


@dataclass(frozen=True)
class DyadicPoint:
    """A point of G truncated to ``resolution`` coordinates."""

    bits: int
    resolution: int

    def __post_init__(self):
        if self.resolution < 1:
            raise ValueError("resolution must be positive")
        if not 0 <= self.bits < (1 << self.resolution):
            raise ValueError(f"bits {self.bits} out of range for N={self.resolution}")

    @classmethod
    def from_coords(cls, coords: Sequence[int], resolution: int | None = None) -> "DyadicPoint":
        """Build from ``(x_0, x_1, ...)``, zero-padded to ``resolution``."""
        N = len(coords) if resolution is None else resolution
        if len(coords) > N:
            raise ValueError("more coordinates than the resolution allows")
        bits = 0
        for j, b in enumerate(coords):
            if b not in (0, 1):
                raise ValueError(f"coordinate {j} is {b!r}, expected 0 or 1")
            bits |= int(b) << j
        return cls(bits, N)

    @classmethod
    def from_cell(cls, cell: int, resolution: int) -> "DyadicPoint":
        if not 0 <= cell < (1 << resolution):
            raise ValueError(f"cell {cell} out of range for N={resolution}")
        return cls(_reverse_bits(cell, resolution), resolution)

    @classmethod
    def zero(cls, resolution: int) -> "DyadicPoint":
        return cls(0, resolution)

    @classmethod
    def basis(cls, n: int, resolution: int) -> "DyadicPoint":
        """``e_n``: the point whose only nonzero coordinate is ``x_n``."""
        if not 0 <= n < resolution:
            raise ValueError(f"e_{n} does not exist at N={resolution}")
        return cls(1 << n, resolution)

    @property
    def coords(self) -> tuple[int, ...]:
        return tuple((self.bits >> j) & 1 for j in range(self.resolution))

    @property
    def cell(self) -> int:
        return _reverse_bits(self.bits, self.resolution)

    def __getitem__(self, k: int) -> int:
        if not 0 <= k < self.resolution:
            raise IndexError(k)
        return (self.bits >> k) & 1

    def __add__(self, other: "DyadicPoint") -> "DyadicPoint":
        return add_points(self, other)

    def __repr__(self):
        return "DyadicPoint(" + "".join(map(str, self.coords)) + ")"


def add_points(x: DyadicPoint, y: DyadicPoint) -> DyadicPoint:
    if x.resolution != y.resolution:
        raise ValueError(f"resolution mismatch: {x.resolution} vs {y.resolution}")
    return DyadicPoint(x.bits ^ y.bits, x.resolution)


def rademacher(k: int, x: DyadicPoint) -> int:
    if not 0 <= k < x.resolution:
        raise ValueError(f"r_{k} needs resolution > {k}, point has {x.resolution}")
    return -1 if (x.bits >> k) & 1 else 1


def walsh(n: int, x: DyadicPoint) -> int:
    """Paley-ordered Walsh function ``w_n(x)``."""
    if n < 0:
        raise ValueError("Walsh index must be nonnegative")
    if n >= 1 << x.resolution:
        raise ResolutionError(f"w_{n} is not constant on cells of depth {x.resolution}")
    return -1 if (n & x.bits).bit_count() & 1 else 1


def top_bit(n: int) -> int:
    """``|n|``, the position of the highest set bit."""
    if n <= 0:
        raise ValueError("|n| is undefined for n = 0")
    return n.bit_length() - 1


def paley_bits(n: int) -> list[int]:
    return [(n >> j) & 1 for j in range(max(n.bit_length(), 1))]


@dataclass(frozen=True)
class Cell:
    """The dyadic interval ``I_depth(x)``; ``prefix`` holds ``x_0..x_{depth-1}``."""

    depth: int
    prefix: int  # bit j holds x_j
    resolution: int

    @property
    def measure(self) -> float:
        return 2.0 ** -self.depth

    @property
    def block(self) -> slice:
        """Cell-order slice covering the interval."""
        size = 1 << (self.resolution - self.depth)
        start = _reverse_bits(self.prefix, self.depth) * size
        return slice(start, start + size)

    def __contains__(self, y: DyadicPoint) -> bool:
        if y.resolution != self.resolution:
            return False
        mask = (1 << self.depth) - 1
        return (y.bits & mask) == self.prefix


def cell_of(x: DyadicPoint, n: int) -> Cell:
    if not 0 <= n <= x.resolution:
        raise ValueError(f"depth {n} outside [0, {x.resolution}]")
    return Cell(n, x.bits & ((1 << n) - 1), x.resolution)


def cells_at_depth(n: int, N: int) -> Iterable[Cell]:
    for prefix in range(1 << n):
        yield Cell(n, prefix, N)


# Vectorised helpers over whole grids.


@lru_cache(maxsize=32)
def bit_reversal(N: int) -> np.ndarray:
    """Permutation mapping cell index to packed point bits (an involution)."""
    idx = np.arange(1 << N, dtype=np.int64)
    rev = np.zeros_like(idx)
    for j in range(N):
        rev |= ((idx >> j) & 1) << (N - 1 - j)
    rev.setflags(write=False)
    return rev


def walsh_vector(n: int, N: int) -> np.ndarray:
    """``w_n`` on every cell, as an int8 array of +-1."""
    if n >= 1 << N:
        raise ResolutionError(f"w_{n} is not constant on cells of depth {N}")
    parity = np.bitwise_count(bit_reversal(N) & n) & 1
    return (1 - 2 * parity).astype(np.int8)


def cell_indicator(cell: Cell) -> np.ndarray:
    out = np.zeros(1 << cell.resolution)
    out[cell.block] = 1.0
    return out
