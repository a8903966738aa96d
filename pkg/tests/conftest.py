import numpy as np
import pytest

from entropy_extremes import _pykernels

try:
    from entropy_extremes import _ckernels
except ImportError:  # compiled core not built
    _ckernels = None

BACKENDS = [pytest.param(_pykernels, id="numpy")]
if _ckernels is not None:
    BACKENDS.append(pytest.param(_ckernels, id="cython"))


@pytest.fixture(params=BACKENDS)
def backend(request):
    return request.param


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


def simplex_grid_3(step=1e-3):
    """Every point of the 3-simplex on a lattice of the given step."""
    m = int(round(1.0 / step))
    i, j = np.meshgrid(np.arange(m + 1), np.arange(m + 1), indexing="ij")
    keep = i + j <= m
    a, b = i[keep] / m, j[keep] / m
    return np.stack([a, b, np.maximum(1.0 - a - b, 0.0)], axis=1)
