import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from circlenorm.errors import (
    ConstantModulusError,
    DegreeZeroError,
    NotInEError,
    OnSlitError,
    OutsideDomainError,
    PoleAtZeroError,
    ZeroConstantTermError,
)
from circlenorm.schwarz import (
    build_context,
    check_eq4,
    check_eq5,
    f_interior,
    f_prime_on_E,
    f_prime_radial,
    f_value,
    leading_coeff_check,
    phi,
    phi_inverse,
)

from conftest import poly, seeded, seeded_polynomials, witness


@pytest.fixture
def ctx2():
    return build_context(poly(1, 0, 2))


def test_context_slits():
    assert build_context(poly(1, 0, 2)).slit == pytest.approx((1, 9), abs=1e-12)
    m2, M2 = build_context(poly(1, 1)).slit
    assert m2 == pytest.approx(0, abs=1e-13) and M2 == pytest.approx(4, abs=1e-13)


def test_context_preconditions():
    with pytest.raises(ZeroConstantTermError):
        build_context(poly(0, 0, 1))
    with pytest.raises(DegreeZeroError):
        build_context(poly(3))
    # a degenerate slit: |P| constant to within 1e-14 relative
    with pytest.raises(ConstantModulusError):
        build_context(poly(1, 1e-20))


def test_phi_inverse_examples(ctx2):
    assert phi_inverse(ctx2, -1) == pytest.approx(1)
    assert phi_inverse(ctx2, 1) == pytest.approx(9)
    assert phi_inverse(ctx2, 1j) == pytest.approx(5)
    with pytest.raises(PoleAtZeroError):
        phi_inverse(ctx2, 0)


def test_phi_examples(ctx2):
    assert phi(ctx2, 1.0) == pytest.approx(-1, abs=1e-15)
    assert phi(ctx2, 9.0) == pytest.approx(1, abs=1e-15)
    assert abs(phi(ctx2, 1e12)) <= 1e-11
    z = 0.3 + 0.4j
    assert abs(phi(ctx2, phi_inverse(ctx2, z)) - z) <= 1e-12


def test_phi_slit_needs_side(ctx2):
    with pytest.raises(OnSlitError):
        phi(ctx2, 5.0)
    up, down = phi(ctx2, 5.0, side=1), phi(ctx2, 5.0, side=-1)
    assert abs(up) == pytest.approx(1) and up == pytest.approx(np.conj(down))
    # limit from above matches the side=+1 value
    assert phi(ctx2, 5.0 + 1e-10j) == pytest.approx(up, abs=1e-4)


@given(st.floats(0.05, 0.999), st.floats(0, 2 * math.pi))
def test_phi_roundtrip_property(r, t):
    ctx = build_context(poly(1, 0, 2))
    z = r * cmath.exp(1j * t)
    assert abs(phi(ctx, phi_inverse(ctx, z)) - z) <= 1e-12


def test_f_closed_forms():
    ctx = build_context(poly(1, 1))
    rng = np.random.default_rng(0)
    z = np.sqrt(rng.uniform(0, 0.98, 64)) * np.exp(2j * np.pi * rng.uniform(size=64))
    np.testing.assert_allclose(f_interior(ctx, z), z, atol=1e-10)
    for n, N in [(1, 2), (2, 4), (3, 9)]:
        ctx = build_context(witness(n, N))
        want = np.exp(-1j * n * math.pi / N) * z**n
        np.testing.assert_allclose(f_interior(ctx, z), want, atol=1e-10)


def test_f_value_edges():
    ctx = build_context(poly(1, 1))
    assert f_value(ctx, 0) == 0
    assert f_value(ctx, cmath.exp(0.9j)) == pytest.approx(cmath.exp(0.9j), abs=1e-10)
    with pytest.raises(OutsideDomainError):
        f_value(ctx, 1.5)
    with pytest.raises(NotInEError):
        f_value(ctx, -1)  # |P(-1)| = 0 = m


def test_f_prime_examples(ctx2):
    assert f_prime_on_E(ctx2, math.pi / 4) == pytest.approx(2.0, abs=1e-12)
    ctx = build_context(poly(1, 1))
    for t in (0.3, 1.0, 2.5):
        assert f_prime_on_E(ctx, t) == pytest.approx(1.0, abs=1e-12)
    ctx = build_context(witness(3, 6))
    assert f_prime_on_E(ctx, 0.4) == pytest.approx(3.0, abs=1e-10)
    with pytest.raises(NotInEError):
        f_prime_on_E(ctx2, 0.0)  # u = 9 is the slit end


@settings(max_examples=30, deadline=None)
@given(seeded_polynomials(max_degree=5), st.floats(0, 2 * math.pi))
def test_f_prime_identity_matches_radial_difference(p, t):
    ctx = build_context(p)
    u = float(ctx.profile.value(-t))
    span = ctx.M2 - ctx.m2
    # stay away from the slit ends where the radial difference is singular
    if not (0.05 * span < u - ctx.m2 < 0.95 * span):
        return
    exact = f_prime_on_E(ctx, t)
    assert f_prime_radial(ctx, t) == pytest.approx(exact, rel=2e-3, abs=1e-4)


def test_eq5_examples(ctx2):
    assert check_eq5(build_context(poly(1, 1))).min_margin >= -1e-12
    rep = check_eq5(ctx2, 1000)
    assert rep.min_margin >= -1e-10 and rep.samples_used >= 900
    with pytest.raises(ValueError):
        check_eq5(ctx2, 10)


def test_eq4_examples(ctx2):
    assert check_eq4(build_context(poly(1, 1))).max_fprime == pytest.approx(1, abs=1e-10)
    rep = check_eq4(ctx2)
    assert rep.passed and rep.max_fprime == pytest.approx(2, abs=1e-6)
    assert check_eq4(build_context(seeded(8, 3))).max_fprime <= 3 + 1e-8


def test_leading_coeff_examples(ctx2):
    rep = leading_coeff_check(ctx2)
    assert rep.expected == pytest.approx(1) and rep.passed
    rep = leading_coeff_check(build_context(poly(1, 1)))
    assert rep.expected == pytest.approx(1) and rep.measured == pytest.approx(1, abs=1e-9)
    n, N = 2, 5
    rep = leading_coeff_check(build_context(witness(n, N)))
    assert rep.expected == pytest.approx(cmath.exp(-1j * n * math.pi / N), abs=1e-12) and rep.passed


@settings(max_examples=40, deadline=None)
@given(seeded_polynomials(max_degree=6))
def test_schwarz_inequalities_random(p):
    ctx = build_context(p)
    assert check_eq4(ctx, 256).max_fprime <= ctx.n + 1e-8
    assert check_eq5(ctx, 200).min_margin >= -1e-10
    assert leading_coeff_check(ctx).passed
