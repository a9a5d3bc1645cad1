import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from dyadic_summability.dyadic import ResolutionError, walsh_vector
from dyadic_summability.kernels import dirichlet, dirichlet_closed_dyadic, harmonic
from dyadic_summability.means import (
    convolve,
    convolve_direct,
    convolve_spectral,
    dyadic_partial,
    fejer_mean,
    log_mean,
    mean_sweep,
    riesz_mean,
    summability_mean,
)
from dyadic_summability.norms import lp_norm
from dyadic_summability.transform import GridFunction, analyze, partial_sum

from conftest import random_grid

MEANS = {"fejer": fejer_mean, "log": log_mean, "riesz": riesz_mean}


def _as_float(g):
    return GridFunction(np.asarray(g.values, dtype=np.float64))


def test_convolution_routes_agree_and_commute(rng):
    f, g = random_grid(rng, 7), random_grid(rng, 7)
    fg = convolve_direct(f, g).values
    np.testing.assert_allclose(convolve_spectral(f, g).values, fg, atol=1e-12)
    np.testing.assert_allclose(convolve_direct(g, f).values, fg, atol=1e-12)
    with pytest.raises(ValueError):
        convolve(f, random_grid(rng, 6))


def test_convolution_with_dirichlet(rng):
    N = 7
    f = random_grid(rng, N)
    np.testing.assert_allclose(convolve(f, _as_float(dirichlet(1 << N, N))).values, f.values, atol=1e-12)
    s = analyze(f)
    for n in range(N + 1):
        d = _as_float(dirichlet_closed_dyadic(n, N))
        np.testing.assert_allclose(convolve(f, d).values, partial_sum(s, 1 << n).values, atol=1e-12)


def test_young_bound(rng):
    for _ in range(10):
        f, g = random_grid(rng, 8), random_grid(rng, 8)
        assert lp_norm(convolve(f, g), 1) <= lp_norm(f, 1) * lp_norm(g, 1) * (1 + 1e-12)


def test_constants():
    c = GridFunction.constant(3.5, 6)
    for n in [1, 5, 64]:
        np.testing.assert_allclose(fejer_mean(c, n).values, 3.5, atol=1e-13)
        np.testing.assert_allclose(riesz_mean(c, n).values, 3.5, atol=1e-13)
    np.testing.assert_allclose(log_mean(c, 4).values, 3.5 * 22 / 25, atol=1e-13)
    for n in [2, 9, 64]:
        np.testing.assert_allclose(log_mean(c, n).values, 3.5 * harmonic[n - 1] / harmonic[n], atol=1e-13)


def test_order_one_means(rng):
    f = random_grid(rng, 5)
    mean = f.values.mean()
    np.testing.assert_allclose(fejer_mean(f, 1).values, mean, atol=1e-13)
    np.testing.assert_allclose(riesz_mean(f, 1).values, mean, atol=1e-13)


def test_log_mean_of_walsh_function():
    N = 6
    for n in range(1, N + 1):
        M = 1 << n
        for m in range(M):
            w = GridFunction(walsh_vector(m, N).astype(float))
            expected = harmonic[M - m - 1] / harmonic[M] * w.values
            np.testing.assert_allclose(log_mean(w, M).values, expected, atol=1e-13)


def test_log_mean_definition(rng):
    f = random_grid(rng, 5)
    s = analyze(f)
    for n in [2, 7, 32]:
        expected = sum(partial_sum(s, k).values / (n - k) for k in range(n)) / harmonic[n]
        np.testing.assert_allclose(log_mean(f, n).values, expected, atol=1e-12)


@pytest.mark.parametrize("kind", sorted(MEANS))
def test_dual_route(rng, kind):
    lo = 2 if kind == "log" else 1
    for _ in range(3):
        f = random_grid(rng, 8)
        for n in range(lo, 65):
            a = summability_mean(f, n, kind, "spectral").values
            b = summability_mean(f, n, kind, "kernel").values
            assert np.abs(a - b).max() <= 1e-10, (kind, n)


@settings(max_examples=25, deadline=None)
@given(
    st.integers(0, 2**32 - 1),
    st.floats(-3, 3, allow_nan=False),
    st.floats(-3, 3, allow_nan=False),
    st.sampled_from(sorted(MEANS)),
    st.integers(2, 64),
)
def test_linearity(seed, a, b, kind, n):
    rng = np.random.default_rng(seed)
    f, g = random_grid(rng, 6), random_grid(rng, 6)
    mean = MEANS[kind]
    lhs = mean(a * f + b * g, n).values
    rhs = a * mean(f, n).values + b * mean(g, n).values
    assert np.abs(lhs - rhs).max() <= 1e-10


def test_range_errors(rng):
    f = random_grid(rng, 4)
    with pytest.raises(ValueError):
        log_mean(f, 1)
    with pytest.raises(ValueError):
        fejer_mean(f, 0)
    with pytest.raises(ResolutionError):
        riesz_mean(f, 17)
    with pytest.raises(ValueError):
        summability_mean(f, 4, "cesaro")
    with pytest.raises(ValueError):
        summability_mean(f, 4, "log", method="magic")


def test_mean_sweep_matches_single_calls(rng):
    f = random_grid(rng, 6)
    ns = [40, 2, 17]
    out = mean_sweep(f, ns, "log")
    assert list(out) == ns
    for n in ns:
        np.testing.assert_array_equal(out[n].values, log_mean(f, n).values)


def test_dyadic_partial(rng):
    N = 7
    f = random_grid(rng, N)
    np.testing.assert_allclose(dyadic_partial(f, N).values, f.values)
    np.testing.assert_allclose(dyadic_partial(f, 0).values, f.values.mean())
    s = analyze(f)
    for n in range(N + 1):
        np.testing.assert_allclose(dyadic_partial(f, n).values, partial_sum(s, 1 << n).values, atol=1e-12)
    with pytest.raises(ResolutionError):
        dyadic_partial(f, N + 1)


def test_extended_precision_route(rng):
    f = random_grid(rng, 8)
    a = log_mean(f, 200).values
    b = log_mean(f, 200, dtype=np.longdouble).values
    np.testing.assert_allclose(a, b, atol=1e-13)


def test_log_means_l1_ratio_bounded(rng):
    ratios = []
    for _ in range(5):
        f = random_grid(rng, 10)
        s = analyze(f)
        ratios += [lp_norm(log_mean(s, 1 << n), 1) / lp_norm(f, 1) for n in range(1, 11)]
    assert max(ratios) <= 3.0
