"""The reproducible experiments behind the CLI, plus test-function families."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import kernels
from .counterexample import AlphaSequence, build_atom, divergence_table, lemma2_sum
from .dyadic import DEFAULT_MAX_RESOLUTION, DyadicPoint, ResolutionError, check_resolution, walsh_vector
from .means import log_mean
from .norms import hardy_norm, lp_norm
from .reports import ExperimentReport
from .transform import GridFunction, analyze, partial_sum

FAMILIES = ("indicator", "step", "sawtooth", "random", "constant", "atom", "zero")


class UsageError(ValueError):
    """Bad flags or infeasible parameters (exit status 2)."""


# Test functions.


def make_family(name: str, N: int, seed: int = 0, p: float = 0.5) -> GridFunction:
    """Builtin test functions.

    ``indicator`` is the indicator of ``I_3(e_1)``, ``step`` an 8-level
    staircase in cell order, ``sawtooth`` the map ``x -> sum_j x_j 2^-(j+1)``,
    ``atom`` the smallest p-atom ``a`` with ``alpha = 1``.
    """
    size = 1 << N
    if name == "indicator":
        if N < 3:
            raise UsageError("indicator family needs N >= 3")
        cell = DyadicPoint.from_coords((0, 1, 0), N).cell
        v = np.zeros(size)
        block = 1 << (N - 3)
        v[cell : cell + block] = 1.0
        return GridFunction(v)
    if name == "step":
        if N < 3:
            raise UsageError("step family needs N >= 3")
        return GridFunction((np.arange(size) >> (N - 3)).astype(np.float64))
    if name == "sawtooth":
        return GridFunction(np.arange(size) / size)
    if name == "random":
        return GridFunction(np.random.default_rng(seed).standard_normal(size))
    if name == "constant":
        return GridFunction.constant(1.0, N)
    if name == "atom":
        if N < 3:
            raise UsageError("atom family needs N >= 3")
        return build_atom(1, p if 0 < p < 1 else 0.5, N)
    if name == "zero":
        return GridFunction.zeros(N)
    raise UsageError(f"unknown family {name!r}; choose from {', '.join(FAMILIES)}")


def read_sample(path: str | Path) -> GridFunction:
    """Sample file: first line ``N``, then ``2^N`` values in cell order."""
    lines = [ln.strip() for ln in Path(path).read_text().splitlines() if ln.strip()]
    if not lines:
        raise UsageError(f"{path}: empty sample file")
    try:
        N = int(lines[0])
        values = [float(s) for s in lines[1:]]
    except ValueError as exc:
        raise UsageError(f"{path}: {exc}") from None
    if N < 0 or len(values) != 1 << N:
        raise UsageError(f"{path}: expected {1 << max(N, 0)} values for N={N}, got {len(values)}")
    try:
        return GridFunction(np.array(values))
    except ValueError as exc:
        raise UsageError(f"{path}: {exc}") from None


def write_sample(f: GridFunction, path: str | Path):
    body = "\n".join(repr(float(v)) for v in f.values)
    Path(path).write_text(f"{f.resolution}\n{body}\n")


def sample_points(N: int, count: int, seed: int) -> list[DyadicPoint]:
    rng = np.random.default_rng(seed)
    cells = rng.choice(1 << N, size=min(count, 1 << N), replace=False)
    return [DyadicPoint.from_cell(int(c), N) for c in sorted(cells)]


# Experiment configurations.


@dataclass
class KernelsConfig:
    resolution: int = 12
    n_max: int = 10


@dataclass
class ConvergenceConfig:
    resolution: int = 14
    p: float = 1.0
    family: str = "indicator"
    input: str | None = None
    samples: int = 8
    seed: int = 0


@dataclass
class DivergenceConfig:
    p: float = 0.5
    alphas: tuple[int, ...] = (1, 10)
    resolution: int = 21
    max_resolution: int = DEFAULT_MAX_RESOLUTION


@dataclass
class Lemma2Config:
    alphas: tuple[int, ...] = (1, 2, 3, 4, 5)
    resolution: int = 11


@dataclass
class DiagnosticsConfig:
    resolution: int = 10
    p: float = 0.5
    family: str = "atom"
    input: str | None = None
    seed: int = 0
    checkpoints: list[int] = field(default_factory=list)


def _source(family: str, input_path: str | None, N: int, seed: int, p: float) -> GridFunction:
    if input_path:
        f = read_sample(input_path)
        if f.resolution != N:
            raise UsageError(f"sample file has N={f.resolution}, --resolution is {N}")
        return f
    return make_family(family, N, seed, p)


# Experiments.


def run_kernels(cfg: KernelsConfig) -> ExperimentReport:
    N = cfg.resolution
    if not 1 <= cfg.n_max <= N:
        raise UsageError(f"--n-max must lie in [1, N={N}], got {cfg.n_max}")
    report = ExperimentReport(
        "kernels", ["n", "log_kernel_l1", "riesz_kernel_l1", "identity_residual", "dirichlet_match"]
    )
    report.notes.append("n=0 omitted: P_1 is an empty mean")
    for n in range(1, cfg.n_max + 1):
        m = 1 << n
        closed = kernels.dirichlet_closed_dyadic(n, N).values
        match = bool(
            np.array_equal(kernels.dirichlet(m, N).values, closed)
            and np.array_equal(
                kernels.dirichlet(m - 1, N).values, kernels.dirichlet_paley_formula(m - 1, N).values
            )
        )
        residual = kernels.check_kernel_identity(n, N)
        report.add(
            n=n,
            log_kernel_l1=kernels.l1_norm(kernels.log_kernel(m, N)),
            riesz_kernel_l1=kernels.l1_norm(kernels.riesz_kernel(m, N)),
            identity_residual=residual,
            dirichlet_match=match,
        )
        report.check(match, f"n={n}: Dirichlet closed forms disagree")
        report.check(residual <= 1e-9, f"n={n}: kernel identity residual {residual:.3g}")
    return report


def riemann_lebesgue_term(f: GridFunction, n: int, x: DyadicPoint) -> float:
    """``int f(t) Y_{2^n}(x + t) w_{2^n - 1}(t) dmu(t)``."""
    N = f.resolution
    m = 1 << n
    y = kernels.riesz_kernel(m, N).values
    idx = np.arange(f.size) ^ x.cell
    return float(np.mean(f.values * y[idx] * walsh_vector(m - 1, N)))


def run_convergence(cfg: ConvergenceConfig) -> ExperimentReport:
    if cfg.p < 1:
        raise UsageError(f"convergence experiment needs p >= 1, got {cfg.p}")
    N = check_resolution(cfg.resolution)
    f = _source(cfg.family, cfg.input, N, cfg.seed, cfg.p)
    points = sample_points(N, cfg.samples, cfg.seed)
    s = analyze(f)
    report = ExperimentReport(
        "converge", ["n", "lp_error", "max_pointwise_error", "max_riemann_lebesgue_term"]
    )
    for n in range(1, N + 1):
        m = 1 << n
        L = log_mean(s, m)
        S = partial_sum(s, m)
        errs = [abs(L(x) - f(x)) for x in points]
        terms = [riemann_lebesgue_term(f, n, x) for x in points]
        # |II| must reproduce |S_{2^n} f - L_{2^n} f| pointwise
        gap = max(abs(abs(t) - abs(S(x) - L(x))) for t, x in zip(terms, points))
        report.check(gap <= 1e-9, f"n={n}: decomposition gap {gap:.3g}")
        report.add(
            n=n,
            lp_error=lp_norm(L - f, cfg.p),
            max_pointwise_error=max(errs),
            max_riemann_lebesgue_term=max(abs(t) for t in terms),
        )
    return report


def run_divergence(cfg: DivergenceConfig) -> ExperimentReport:
    try:
        seq = AlphaSequence(tuple(cfg.alphas), cfg.p)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if cfg.resolution < seq.min_resolution:
        raise UsageError(
            f"resolution N={cfg.resolution} infeasible for alphas {seq.alphas}: "
            f"N_min = {seq.min_resolution}"
        )
    try:
        table = divergence_table(seq, cfg.resolution, max_resolution=cfg.max_resolution)
    except ResolutionError as exc:
        raise UsageError(str(exc)) from None
    fields = [
        "k", "alpha", "cond3_partial_sum", "cond4_margin", "cond5_margin",
        "head_sup", "head_bound", "tail_prior_sup", "tail_block_min", "tail_block_bound",
        "mean_min_on_cell", "pointwise_bound", "reassembly_residual", "atom_ok",
        "weak_lp", "growth_bound", "passed",
    ]  # fmt: skip
    report = ExperimentReport("diverge", fields, notes=list(table.notes))
    for row in table.rows:
        report.add(**{k: getattr(row, k) for k in fields})
        for name, ok in row.checks.items():
            report.check(bool(ok), f"k={row.k}: {name} failed")
    report.check(table.monotone_weak_lp, "weak-Lp column not strictly increasing")
    report.check(table.monotone_bound, "growth bound column not strictly increasing")
    return report


def run_lemma2(cfg: Lemma2Config) -> ExperimentReport:
    report = ExperimentReport("lemma2", ["alpha", "min_abs", "form_gap", "bound", "passed"])
    for a in cfg.alphas:
        if 2 * a + 1 > cfg.resolution:
            raise UsageError(f"alpha={a} needs N >= {2 * a + 1}")
        res = lemma2_sum(a, cfg.resolution)
        report.add(alpha=a, min_abs=res.min_abs, form_gap=res.form_gap, bound=1 / 3, passed=res.passed)
        report.check(res.passed, f"alpha={a}: min |sum| {res.min_abs:.6g}, gap {res.form_gap:.3g}")
    return report


def run_diagnostics(cfg: DiagnosticsConfig) -> ExperimentReport:
    """Partial sums of the weighted-norm series, normalised by ``||f||_{H_p}^p``.

    Nothing is asserted: the constants are unknown, the values are for
    inspection only.
    """
    if not 0 < cfg.p < 1:
        raise UsageError(f"diagnostics need 0 < p < 1, got {cfg.p}")
    N = check_resolution(cfg.resolution)
    p = cfg.p
    f = _source(cfg.family, cfg.input, N, cfg.seed, p)
    s = analyze(f)
    hp = hardy_norm(f, p) ** p
    checkpoints = set(cfg.checkpoints or [1 << m for m in range(N + 1)])
    report = ExperimentReport(
        "diagnostics", ["k", "partial_sum_series", "log_mean_series", "log_weighted_series", "hardy_p"]
    )
    if hp == 0:
        report.notes.append("f = 0: ratios undefined")
    plain = logsum = weighted = 0.0
    for k in range(1, (1 << N) + 1):
        scale = k ** (2 - p)
        plain += lp_norm(partial_sum(s, k), p) ** p / scale
        if k >= 2:  # L_1 f = S_0 f = 0
            lk = lp_norm(log_mean(s, k), p) ** p
            logsum += lk / scale
            weighted += math.log(k) ** p * lk / scale
        if k in checkpoints:
            ratios = [v / hp if hp > 0 else None for v in (plain, logsum, weighted)]
            report.add(
                k=k,
                partial_sum_series=ratios[0],
                log_mean_series=ratios[1],
                log_weighted_series=ratios[2],
                hardy_p=hp,
            )
    return report

