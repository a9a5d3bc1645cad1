import numpy as np
import pytest

from dyadic_summability.dyadic import DyadicPoint, walsh
from dyadic_summability.transform import GridFunction


@pytest.fixture
def rng():
    return np.random.default_rng(20240917)


def random_grid(rng, N):
    return GridFunction(rng.standard_normal(1 << N))


def walsh_matrix_oracle(N):
    """``W[k, c] = w_k`` at cell ``c``, built from the scalar definition."""
    pts = [DyadicPoint.from_cell(c, N) for c in range(1 << N)]
    return np.array([[walsh(k, x) for x in pts] for k in range(1 << N)], dtype=np.int64)
