import cmath
import math

import numpy as np
import pytest
from hypothesis import strategies as st

from circlenorm.poly_core import Polynomial, random_polynomial


def poly(*coeffs) -> Polynomial:
    """Polynomial from coefficients c_0, c_1, ... (lowest degree first)."""
    return Polynomial(tuple(complex(c) for c in coeffs))


def witness(n: int, N: int) -> Polynomial:
    return Polynomial((1 + 0j,) + (0j,) * (n - 1) + (cmath.exp(1j * math.pi * n / N),))


def seeded(seed: int, degree: int) -> Polynomial:
    return random_polynomial(np.random.default_rng(seed), degree)


finite = st.floats(min_value=-10, max_value=10, allow_nan=False, allow_infinity=False)
complex_coeff = st.builds(complex, finite, finite)


@st.composite
def polynomials(draw, min_degree=1, max_degree=6, nonzero_constant=False):
    n = draw(st.integers(min_degree, max_degree))
    cs = draw(st.lists(complex_coeff, min_size=n + 1, max_size=n + 1))
    if abs(cs[-1]) < 1e-3:
        cs[-1] = 1 + 0j
    if nonzero_constant and abs(cs[0]) < 1e-3:
        cs[0] = 1 + 0j
    return Polynomial(tuple(cs))


@st.composite
def seeded_polynomials(draw, min_degree=1, max_degree=6):
    """Gaussian polynomials indexed by a drawn seed; shrink-friendly and well conditioned."""
    seed = draw(st.integers(0, 2**32 - 1))
    n = draw(st.integers(min_degree, max_degree))
    return seeded(seed, n)


@pytest.fixture
def rng():
    return np.random.default_rng(20240917)


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    if mod is None or not getattr(mod, "RESULTS", None):
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.RESULTS:
        terminalreporter.write_line(line)
