import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from dyadic_summability.dyadic import DyadicPoint, ResolutionError
from dyadic_summability.kernels import dirichlet
from dyadic_summability.means import convolve, dyadic_partial
from dyadic_summability.transform import (
    GridFunction,
    Spectrum,
    analyze,
    fwht,
    partial_sum,
    synthesize,
)

from conftest import random_grid, walsh_matrix_oracle


def naive_analyze(values, W):
    n = len(values)
    return np.array([sum(values[c] * W[k, c] for c in range(n)) / n for k in range(n)])


def test_constant_has_only_dc():
    s = analyze(GridFunction.constant(1.0, 5))
    assert s.coeffs[0] == 1.0
    assert np.all(s.coeffs[1:] == 0)


def test_dirichlet_four_spectrum():
    s = analyze(GridFunction(dirichlet(4, 4).values.astype(float)))
    expected = np.zeros(16)
    expected[:4] = 1
    np.testing.assert_array_equal(s.coeffs, expected)


def test_analyze_matches_naive_oracle(rng):
    N = 6
    W = walsh_matrix_oracle(N)
    for _ in range(5):
        f = random_grid(rng, N)
        np.testing.assert_allclose(analyze(f).coeffs, naive_analyze(f.values, W), atol=1e-12, rtol=0)


def test_synthesize_unit_coefficient_is_walsh_function():
    N = 3
    c = np.zeros(8)
    c[5] = 1
    # w_5 = r_0 r_2 tabulated directly on cells (x_0 x_1 x_2)
    expected = []
    for cell in range(8):
        x = DyadicPoint.from_cell(cell, N)
        expected.append((-1) ** (x[0] + x[2]))
    np.testing.assert_array_equal(synthesize(c).values, expected)


def test_synthesize_dc():
    c = np.zeros(16)
    c[0] = 1
    np.testing.assert_array_equal(synthesize(Spectrum(c)).values, np.ones(16))


def test_round_trip(rng):
    f = random_grid(rng, 10)
    np.testing.assert_allclose(synthesize(analyze(f)).values, f.values, atol=1e-12, rtol=0)


def test_integer_fwht_is_exact():
    v = np.arange(64, dtype=np.int64)
    assert fwht(fwht(v)).dtype == np.int64
    np.testing.assert_array_equal(fwht(fwht(v)), 64 * v)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 12).flatmap(lambda N: arrays(np.float64, 1 << N, elements=st.floats(-1e3, 1e3))))
def test_parseval(values):
    f = GridFunction(values)
    s = analyze(f)
    scale = max(1.0, float(np.mean(values**2)))
    assert abs(np.mean(values**2) - np.sum(s.coeffs**2)) <= 1e-10 * scale


@settings(max_examples=30, deadline=None)
@given(
    st.integers(1, 8).flatmap(
        lambda N: st.tuples(
            arrays(np.float64, 1 << N, elements=st.floats(-10, 10)),
            arrays(np.float64, 1 << N, elements=st.floats(-10, 10)),
        )
    ),
    st.floats(-3, 3),
    st.floats(-3, 3),
    st.integers(0, 256),
)
def test_linearity(pair, a, b, n):
    x, y = pair
    f, g = GridFunction(x), GridFunction(y)
    n = min(n, f.size)
    lhs = analyze(a * f + b * g).coeffs
    rhs = a * analyze(f).coeffs + b * analyze(g).coeffs
    np.testing.assert_allclose(lhs, rhs, atol=1e-10)
    np.testing.assert_allclose(
        synthesize(Spectrum(a * x + b * y)).values,
        a * synthesize(Spectrum(x)).values + b * synthesize(Spectrum(y)).values,
        atol=1e-9,
    )
    sf, sg = analyze(f), analyze(g)
    combo = Spectrum(a * sf.coeffs + b * sg.coeffs)
    np.testing.assert_allclose(
        partial_sum(combo, n).values,
        a * partial_sum(sf, n).values + b * partial_sum(sg, n).values,
        atol=1e-9,
    )


def test_partial_sum_examples(rng):
    f = random_grid(rng, 5)
    s = analyze(f)
    np.testing.assert_array_equal(partial_sum(s, 0).values, np.zeros(32))
    np.testing.assert_allclose(partial_sum(s, 32).values, f.values, atol=1e-12)
    with pytest.raises(ResolutionError):
        partial_sum(s, 33)


def test_partial_sum_truncates():
    c = np.zeros(8)
    c[0], c[5] = 1.0, 2.0
    np.testing.assert_array_equal(partial_sum(Spectrum(c), 3).values, np.ones(8))


@pytest.mark.parametrize("n", range(7))
def test_dyadic_partial_sum_is_cell_average(rng, n):
    N = 6
    f = random_grid(rng, N)
    s2n = partial_sum(analyze(f), 1 << n)
    np.testing.assert_allclose(s2n.values, dyadic_partial(f, n).values, atol=1e-12)
    d = GridFunction(dirichlet(1 << n, N).values.astype(float))
    np.testing.assert_allclose(s2n.values, convolve(f, d).values, atol=1e-12)


def test_grid_function_invariants():
    with pytest.raises(ValueError):
        GridFunction(np.ones(6))
    with pytest.raises(ValueError):
        GridFunction(np.array([1.0, np.nan]))
    f = GridFunction(np.arange(4.0))
    assert f.resolution == 2 and f.integral() == 1.5
    with pytest.raises(ValueError):
        f.values[0] = 3.0
