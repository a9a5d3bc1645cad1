"""A martingale in H_p whose dyadic logarithmic means blow up in weak-L_p.

The martingale is ``f = sum_k a_k / sqrt(alpha_k)`` with atoms
``a_k = 2^{2 alpha_k (1/p - 1)} (D_{2^{2 alpha_k + 1}} - D_{2^{2 alpha_k}})``.
At ``M = 2^{2 alpha_k + 1}`` the mean ``L_M f`` splits into a head ``I``
(partial sums below ``2^{2 alpha_k}``) and a tail ``II = II_1 + II_2``; on
the quarter cell ``I_2(e_0 + e_1)`` the term ``II_1`` vanishes and ``II_2``
is bounded below, which forces ``|L_M f|`` up there.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .dyadic import DEFAULT_MAX_RESOLUTION, ResolutionError, check_resolution
from .kernels import dirichlet_closed_dyadic, harmonic, harmonic_ext, walsh_vector
from .means import log_mean
from .norms import is_p_atom, weak_lp_norm
from .transform import GridFunction, Spectrum, analyze, synthesize

#: Block-sum forms switch from direct Dirichlet accumulation to spectral synthesis
#: beyond this many cell updates.
_LEMMA2_DIRECT_BUDGET = 1 << 24
ASSERT_TOL = 1e-9


@dataclass(frozen=True)
class AlphaSequence:
    alphas: tuple[int, ...]
    p: float

    def __post_init__(self):
        alphas = tuple(int(a) for a in self.alphas)
        object.__setattr__(self, "alphas", alphas)
        if not alphas:
            raise ValueError("alpha sequence is empty")
        if alphas[0] < 1:
            raise ValueError("alpha_0 must be at least 1")
        if any(b <= a for a, b in zip(alphas, alphas[1:])):
            raise ValueError(f"alpha sequence must be strictly increasing: {alphas}")
        if not 0 < self.p < 1:
            raise ValueError(f"p must lie in (0, 1), got {self.p}")

    def __len__(self):
        return len(self.alphas)

    @property
    def min_resolution(self) -> int:
        return 2 * max(self.alphas) + 1

    def weight(self, k: int) -> float:
        """``lambda_k = 1/sqrt(alpha_k)``."""
        return 1.0 / math.sqrt(self.alphas[k])

    def amplitude(self, k: int) -> float:
        """``2^{2 alpha_k (1/p - 1)}``, the atom's scale factor."""
        return 2.0 ** (2 * self.alphas[k] * (1 / self.p - 1))

    def coefficient(self, k: int) -> float:
        """Walsh coefficient of ``f`` on block ``k`` (amplitude over ``sqrt(alpha_k)``)."""
        return self.amplitude(k) * self.weight(k)


def _require(seq: AlphaSequence, N: int, max_resolution):
    check_resolution(N, max_resolution)
    if N < seq.min_resolution:
        raise ResolutionError(
            f"resolution N={N} too small for alphas {seq.alphas}; "
            f"need N >= {seq.min_resolution}"
        )


# Conditions on the sequence.


@dataclass(frozen=True)
class ConditionRow:
    k: int
    alpha: int
    cond3_partial_sum: float
    cond4_margin: float | None  # rhs - lhs; None for k = 0
    cond5_margin: float | None


def _block_mass(alpha: int, p: float) -> float:
    return 2.0 ** (2 * alpha / p) / math.sqrt(alpha)


def validate_alpha(seq: AlphaSequence) -> list[ConditionRow]:
    """Evaluate the three growth conditions along the sequence.

    The summability condition is a tail statement, so only its partial sums
    are reported; finite data cannot certify convergence.
    """
    p = seq.p
    rows = []
    partial = 0.0
    prior_mass = 0.0
    for k, a in enumerate(seq.alphas):
        partial += a ** (-p / 2)
        mass = _block_mass(a, p)
        if k == 0:
            m4 = m5 = None
        else:
            m4 = mass - prior_mass
            rhs5 = 2.0 ** (2 * a - 8) / (math.sqrt(a) * harmonic[1 << (2 * a + 1)])
            m5 = rhs5 - _block_mass(seq.alphas[k - 1], p)
        rows.append(ConditionRow(k, a, partial, m4, m5))
        prior_mass += mass
    return rows


# Atoms and the martingale.


def build_atom(alpha: int, p: float, N: int, max_resolution=DEFAULT_MAX_RESOLUTION) -> GridFunction:
    check_resolution(N, max_resolution)
    if 2 * alpha + 1 > N:
        raise ResolutionError(f"atom alpha={alpha} needs N >= {2 * alpha + 1}, got {N}")
    amp = 2.0 ** (2 * alpha * (1 / p - 1))
    diff = (
        dirichlet_closed_dyadic(2 * alpha + 1, N).values
        - dirichlet_closed_dyadic(2 * alpha, N).values
    )
    return GridFunction(amp * diff)


def build_martingale(
    seq: AlphaSequence, N: int, upto: int | None = None, max_resolution=DEFAULT_MAX_RESOLUTION
) -> GridFunction:
    """``sum_{k < upto} lambda_k a_k`` (all blocks by default)."""
    _require(seq, N, max_resolution)
    K = len(seq) if upto is None else upto
    out = np.zeros(1 << N)
    for k in range(K):
        out += seq.weight(k) * build_atom(seq.alphas[k], seq.p, N, None).values
    return GridFunction(out)


def martingale_spectrum(seq: AlphaSequence, N: int) -> Spectrum:
    """Closed-form coefficients: block-constant on ``[2^{2a}, 2^{2a+1})``, zero elsewhere."""
    _require(seq, N, None)
    c = np.zeros(1 << N)
    for k, a in enumerate(seq.alphas):
        c[1 << (2 * a) : 1 << (2 * a + 1)] = seq.coefficient(k)
    return Spectrum(c)


# Block sums: the lower bound on the quarter cell I_2(e_0 + e_1).


def quarter_cell(N: int) -> slice:
    """Cell-order block of ``I_2(e_0 + e_1)`` (``x_0 = x_1 = 1``)."""
    if N < 2:
        raise ResolutionError("the quarter cell needs N >= 2")
    q = 1 << (N - 2)
    return slice(3 * q, 4 * q)


@dataclass(frozen=True)
class Lemma2Result:
    alpha: int
    full: np.ndarray  # sum_{j=2^{2a}}^{2^{2a+1}-1} D_j / (2^{2a+1} - j) on the cell
    odd_form: np.ndarray  # sum_i w_{2i+1} / (2^{2a+1} - 2i - 1)
    even_form: np.ndarray  # same with w_{2i}; differs from odd_form by the factor w_1
    method: str

    @property
    def min_abs(self) -> float:
        return float(np.abs(self.full).min())

    @property
    def form_gap(self) -> float:
        a = np.abs(self.full)
        return float(
            max(np.abs(a - np.abs(self.odd_form)).max(), np.abs(a - np.abs(self.even_form)).max())
        )

    @property
    def passed(self) -> bool:
        return self.min_abs >= 1 / 3 and self.form_gap <= 1e-12


def _lemma2_full_direct(alpha: int, R: int) -> np.ndarray:
    M = 1 << (2 * alpha + 1)
    d = np.zeros(1 << R, dtype=np.int64)
    out = np.zeros(1 << R)
    for j in range(M):
        if j >= M // 2:
            out += d / (M - j)
        d += walsh_vector(j, R)
    return out


def _lemma2_full_spectral(alpha: int, R: int) -> np.ndarray:
    M = 1 << (2 * alpha + 1)
    J = M // 2
    table = harmonic.upto(M)
    c = np.zeros(1 << R)
    c[:J] = table[M - J]
    c[J:M] = table[M - 1 - np.arange(J, M)]
    return np.asarray(synthesize(c).values)


def lemma2_sum(alpha: int, N: int, method: str = "auto") -> Lemma2Result:
    """Evaluate the three block-sum forms on ``I_2(e_0 + e_1)``.

    Everything involved is constant on depth ``2 alpha + 1`` cells, so the
    sums are formed at that resolution and broadcast up to ``N``.
    """
    if alpha < 1:
        raise ValueError("alpha must be positive")
    R = 2 * alpha + 1
    if R > N:
        raise ResolutionError(f"block sums need N >= {R}, got {N}")
    M = 1 << R
    if method == "auto":
        method = "direct" if M * (1 << R) <= _LEMMA2_DIRECT_BUDGET else "spectral"
    if method == "direct":
        full = _lemma2_full_direct(alpha, R)
    elif method == "spectral":
        full = _lemma2_full_spectral(alpha, R)
    else:
        raise ValueError(f"unknown method {method!r}")

    i = np.arange(1 << (2 * alpha - 1), 1 << (2 * alpha))
    odd = np.zeros(M)
    odd[2 * i + 1] = 1.0 / (M - 2 * i - 1)
    even = np.zeros(M)
    even[2 * i] = 1.0 / (M - 2 * i - 1)
    cell = quarter_cell(R)
    rep = 1 << (N - R)
    return Lemma2Result(
        alpha,
        np.repeat(full[cell], rep),
        np.repeat(np.asarray(synthesize(odd).values)[cell], rep),
        np.repeat(np.asarray(synthesize(even).values)[cell], rep),
        method,
    )


# The head/tail decomposition of L_M f.


@dataclass(frozen=True)
class Decomposition:
    k: int
    alpha: int
    head: GridFunction  # I
    tail_prior: GridFunction  # II_1
    tail_block: GridFunction  # II_2
    mean: GridFunction  # L_M f computed independently
    head_bound: float
    tail_block_bound: float
    pointwise_bound: float

    @property
    def order(self) -> int:
        return 1 << (2 * self.alpha + 1)

    def on_cell(self, g: GridFunction) -> np.ndarray:
        return np.asarray(g.values)[quarter_cell(g.resolution)]

    @property
    def head_sup(self) -> float:
        return float(np.abs(self.on_cell(self.head)).max())

    @property
    def tail_prior_sup(self) -> float:
        return float(np.abs(self.on_cell(self.tail_prior)).max())

    @property
    def tail_block_min(self) -> float:
        return float(np.abs(self.on_cell(self.tail_block)).min())

    @property
    def mean_min(self) -> float:
        return float(np.abs(self.on_cell(self.mean)).min())

    @property
    def reassembly_residual(self) -> float:
        parts = self.head.values + self.tail_prior.values + self.tail_block.values
        return float(np.abs(self.on_cell(GridFunction(parts - self.mean.values))).max())

    def checks(self) -> dict[str, bool]:
        return {
            "head_bound": self.head_sup <= self.head_bound + ASSERT_TOL,
            "tail_prior_zero": self.tail_prior_sup == 0.0,
            "tail_block_bound": self.tail_block_min >= self.tail_block_bound,
            "pointwise_bound": self.mean_min >= self.pointwise_bound,
            "reassembly": self.reassembly_residual <= ASSERT_TOL,
        }


def pointwise_lower_bound(alpha: int, p: float) -> float:
    """``2^{2 alpha (1/p - 1) - 6} / alpha^{3/2}``."""
    return 2.0 ** (2 * alpha * (1 / p - 1) - 6) / alpha**1.5


def decompose_I_II(
    seq: AlphaSequence,
    k: int,
    N: int,
    f: GridFunction | None = None,
    spectrum: Spectrum | None = None,
    max_resolution=DEFAULT_MAX_RESOLUTION,
) -> Decomposition:
    """Split ``L_{2^{2 alpha_k + 1}} f`` into ``I + II_1 + II_2``.

    ``I`` and ``II_2`` are synthesised from their own coefficient weights,
    ``II_1`` from the earlier atoms, and ``mean`` through ``log_mean``; the
    reassembly residual ties them together.
    """
    _require(seq, N, max_resolution)
    if not 0 <= k < len(seq):
        raise IndexError(f"k={k} out of range for {len(seq)} blocks")
    if f is None:
        f = build_martingale(seq, N, max_resolution=None)
    if spectrum is None:
        spectrum = analyze(f)
    a = seq.alphas[k]
    J = 1 << (2 * a)
    M = 2 * J
    # values near 1e4 are assembled from ~2^(2a) terms of size ~2^(2a); the
    # pieces and the reference mean are therefore formed in extended precision
    ext = np.longdouble
    table = harmonic_ext.upto(M)
    lM = table[M]
    coeffs = spectrum.coeffs.astype(ext)

    # I = (1/l_M) sum_{j=1}^{J-1} S_j f / (M - j): coefficient m collects j > m
    w_head = np.zeros(spectrum.size, dtype=ext)
    m = np.arange(J - 1)
    w_head[: J - 1] = (table[M - m - 1] - table[M - J]) / lM
    head = synthesize(w_head * coeffs)

    # II_1 = (1/l_M) sum_{j=J}^{M-1} (sum_{eta<k} lambda_eta a_eta) / (M - j)
    prior = build_martingale(seq, N, upto=k, max_resolution=None)
    tail_prior = GridFunction(prior.values.astype(ext) * (table[J] / lM))

    # II_2 = (c_k/l_M) sum_{j=J}^{M-1} (D_j - D_J) / (M - j): coefficient m in [J, M-1)
    c = np.zeros(spectrum.size, dtype=ext)
    m = np.arange(J, M)
    c[J:M] = table[M - 1 - m] * (ext(seq.coefficient(k)) / lM)
    tail_block = synthesize(c)

    mean = log_mean(spectrum, M, dtype=ext)
    head_bound = 0.0 if k == 0 else _block_mass(seq.alphas[k - 1], seq.p)
    return Decomposition(
        k,
        a,
        head,
        tail_prior,
        tail_block,
        mean,
        head_bound,
        seq.coefficient(k) / (3 * float(lM)),
        pointwise_lower_bound(a, seq.p),
    )


# The divergence table.


def weak_lp_lower_bound(alpha: int, p: float) -> float:
    """The pointwise bound times ``mu(I_2(e_0+e_1))^{1/p} = (1/4)^{1/p}``."""
    return pointwise_lower_bound(alpha, p) * 0.25 ** (1 / p)


@dataclass
class ConstructionRow:
    k: int
    alpha: int
    cond3_partial_sum: float
    cond4_margin: float | None
    cond5_margin: float | None
    head_sup: float
    head_bound: float
    tail_prior_sup: float
    tail_block_min: float
    tail_block_bound: float
    mean_min_on_cell: float
    pointwise_bound: float
    reassembly_residual: float
    atom_ok: bool
    weak_lp: float
    growth_bound: float
    checks: dict[str, bool] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(self.checks.values())


@dataclass
class ConstructionReport:
    seq: AlphaSequence
    resolution: int
    rows: list[ConstructionRow]
    monotone_weak_lp: bool
    monotone_bound: bool
    notes: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.monotone_weak_lp and self.monotone_bound and all(r.passed for r in self.rows)


def _strictly_increasing(values) -> bool:
    return all(b > a for a, b in zip(values, values[1:]))


def divergence_table(
    seq: AlphaSequence, N: int, max_resolution=DEFAULT_MAX_RESOLUTION
) -> ConstructionReport:
    _require(seq, N, max_resolution)
    f = build_martingale(seq, N, max_resolution=None)
    spectrum = analyze(f)
    conditions = validate_alpha(seq)
    rows = []
    for k, cond in enumerate(conditions):
        dec = decompose_I_II(seq, k, N, f=f, spectrum=spectrum, max_resolution=None)
        atom_ok = bool(is_p_atom(build_atom(seq.alphas[k], seq.p, N, None), seq.p))
        checks = dec.checks()
        if k > 0:
            checks["cond4"] = cond.cond4_margin > 0
            checks["cond5"] = cond.cond5_margin > 0
        checks["atom"] = atom_ok
        weak = weak_lp_norm(dec.mean, seq.p)
        bound = weak_lp_lower_bound(seq.alphas[k], seq.p)
        checks["weak_lp_bound"] = weak >= bound
        rows.append(
            ConstructionRow(
                k=k,
                alpha=seq.alphas[k],
                cond3_partial_sum=cond.cond3_partial_sum,
                cond4_margin=cond.cond4_margin,
                cond5_margin=cond.cond5_margin,
                head_sup=dec.head_sup,
                head_bound=dec.head_bound,
                tail_prior_sup=dec.tail_prior_sup,
                tail_block_min=dec.tail_block_min,
                tail_block_bound=dec.tail_block_bound,
                mean_min_on_cell=dec.mean_min,
                pointwise_bound=dec.pointwise_bound,
                reassembly_residual=dec.reassembly_residual,
                atom_ok=atom_ok,
                weak_lp=weak,
                growth_bound=bound,
                checks=checks,
            )
        )
    return ConstructionReport(
        seq,
        N,
        rows,
        _strictly_increasing([r.weak_lp for r in rows]),
        _strictly_increasing([r.growth_bound for r in rows]),
        notes=["summability of alpha_k^(-p/2) is a tail condition: not falsifiable at finite K"],
    )
