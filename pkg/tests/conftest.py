import numpy as np
import pytest

from focklab.hermite import gauss_hermite


@pytest.fixture(scope="session")
def grid1():
    """Scale-1 rule (paper-h products, Gaussian measure axes)."""
    return gauss_hermite(48, 1.0, 1)


@pytest.fixture(scope="session")
def grid2():
    """Scale-2 rule (bargmann-h products, symbol integrals)."""
    return gauss_hermite(48, 2.0, 1)


@pytest.fixture(scope="session")
def grid_c():
    """Scale-1 rule over C = R^2 for the Gaussian measure."""
    return gauss_hermite(40, 1.0, 2)


def complex_close(a, b, tol):
    return np.abs(np.asarray(a) - np.asarray(b)).max() <= tol
