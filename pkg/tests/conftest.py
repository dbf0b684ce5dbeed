import numpy as np
import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from rieszlab.fourier import TrigPoly

settings.register_profile(
    "numeric",
    deadline=None,
    max_examples=50,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("numeric")


def coefficient_values():
    parts = st.floats(-4.0, 4.0, allow_nan=False, allow_infinity=False, width=32)
    return st.builds(complex, parts, parts)


def multi_indices(dim: int, max_degree: int):
    return st.tuples(*[st.integers(-max_degree, max_degree)] * dim)


def trig_polys(dim: int, max_degree: int = 4, max_terms: int = 6):
    return st.dictionaries(
        multi_indices(dim, max_degree),
        coefficient_values(),
        min_size=1,
        max_size=max_terms,
    ).map(lambda d: TrigPoly(dim, d))


def nonzero_polys(dim: int, max_degree: int = 4, max_terms: int = 6):
    return trig_polys(dim, max_degree, max_terms).filter(lambda f: bool(f.coeffs))


@pytest.fixture
def rng():
    return np.random.default_rng(20240814)
