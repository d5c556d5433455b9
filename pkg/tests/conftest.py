import functools

import pytest

from freud_sobolev.freud import freud_table
from freud_sobolev.sobolev import SobolevParams, build_table

PREC = 256


@functools.lru_cache(maxsize=None)
def freud(N=1100, prec=PREC):
    return freud_table(N, prec)


@functools.lru_cache(maxsize=None)
def gs(lambdas: tuple, N: int, prec=PREC):
    """Gram-Schmidt table with connection coefficients, cached per session."""
    return build_table(N, SobolevParams(lambdas), freud(max(N + 8, 64), prec), prec)


@pytest.fixture(scope="session")
def F():
    return freud()


@pytest.fixture(scope="session")
def gs_table():
    return gs
