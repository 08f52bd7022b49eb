import math

import numpy as np
import pytest
from hypothesis import given, settings

from circlenorm.circle_norms import (
    NormMethod,
    discrete_norm,
    discrete_norms,
    grid_oracle_extrema,
    norm_ratio,
    uniform_extrema,
    uniform_norms,
)
from circlenorm.errors import GridAnnihilationError, InvalidGridError, ZeroPolynomialError
from circlenorm.poly_core import evaluate, random_polynomial

from conftest import poly, seeded, seeded_polynomials, witness


def test_z_plus_one():
    rep = uniform_extrema(poly(1, 1))
    assert rep.M == pytest.approx(2, abs=1e-14)
    assert rep.m == pytest.approx(0, abs=1e-7)
    assert rep.argmax_angles == pytest.approx([0.0], abs=1e-12)
    assert rep.argmin_angles == pytest.approx([math.pi], abs=1e-7)


def test_witness_max_is_two():
    assert uniform_extrema(witness(2, 4)).M == pytest.approx(2, abs=1e-13)


def test_z2_z_1_critical_values():
    # u = 3 + 4 cos phi + 2 cos 2phi at {0, 2pi/3, pi, 4pi/3} gives 9, 0, 1, 0
    rep = uniform_extrema(poly(1, 1, 1))
    assert rep.M == pytest.approx(3, abs=1e-13)
    assert rep.m == pytest.approx(0, abs=1e-7)
    assert rep.argmax_angles == pytest.approx([0.0], abs=1e-12)
    assert rep.argmin_angles == pytest.approx([2 * math.pi / 3, 4 * math.pi / 3], abs=1e-7)


def test_constant_modulus_report():
    rep = uniform_extrema(poly(0, 0, 0, 1))
    assert rep.M == rep.m == 1
    assert rep.method is NormMethod.CONSTANT_MODULUS
    assert rep.argmax_angles == [] and rep.argmin_angles == []


def test_zero_polynomial_rejected():
    with pytest.raises(ZeroPolynomialError):
        uniform_extrema(poly(0))
    with pytest.raises(ZeroPolynomialError):
        grid_oracle_extrema(poly(0))


def test_grid_oracle_examples():
    assert grid_oracle_extrema(poly(1, 1)).M == pytest.approx(2, abs=1e-9)
    rep = grid_oracle_extrema(poly(0, 0, 1))
    assert rep.M == 1 and rep.m == 1
    rep = grid_oracle_extrema(poly(1, 0, 2))
    assert rep.M == pytest.approx(3, abs=1e-12) and rep.m == pytest.approx(1, abs=1e-12)


def test_grid_oracle_sample_floor():
    with pytest.raises(ValueError):
        grid_oracle_extrema(poly(1, 1, 1), samples=10)


def test_discrete_norm_examples():
    assert discrete_norm(poly(0, 0, 1), 5).value == pytest.approx(1, abs=1e-15)
    assert discrete_norm(witness(2, 4), 4).value == pytest.approx(math.sqrt(2), abs=1e-14)
    # nodes 1, i, -1, -i give |P| = 3, 1, 1, 1
    rep = discrete_norm(poly(1, 1, 1), 4)
    assert rep.value == pytest.approx(3, abs=1e-15) and rep.argmax_index == 0


def test_discrete_norm_ties_smallest_index():
    # |1 + z^2| at 4th roots: 2, 0, 2, 0
    assert discrete_norm(poly(1, 0, 1), 4).argmax_index == 0


def test_invalid_grid():
    with pytest.raises(InvalidGridError):
        discrete_norm(poly(1, 1), 0)
    with pytest.raises(InvalidGridError):
        discrete_norms(np.ones((1, 2)), 0)


def test_ratio_examples():
    assert norm_ratio(poly(0, 0, 1), 4) == pytest.approx(1)
    assert norm_ratio(witness(2, 4), 4) == pytest.approx(math.sqrt(2), abs=1e-13)
    assert norm_ratio(poly(1, 1, 1), 4) == pytest.approx(1, abs=1e-14)


def test_ratio_annihilated_grid():
    # z - 1 vanishes at the only first root of unity
    with pytest.raises(GridAnnihilationError):
        norm_ratio(poly(-1, 1), 1)


@settings(max_examples=60, deadline=None)
@given(seeded_polynomials(max_degree=8))
def test_critical_points_match_grid_oracle(p):
    a = uniform_extrema(p)
    b = grid_oracle_extrema(p, samples=20_000)
    assert a.M == pytest.approx(b.M, rel=1e-10)
    assert a.m == pytest.approx(b.m, rel=1e-8, abs=1e-8 * a.M)


@settings(max_examples=60, deadline=None)
@given(seeded_polynomials(max_degree=8))
def test_extrema_bracket_every_sample(p):
    rep = uniform_extrema(p)
    vals = np.abs(evaluate(p, np.exp(1j * np.linspace(0, 2 * math.pi, 2001))))
    assert vals.max() <= rep.M * (1 + 1e-12)
    assert vals.min() >= rep.m - 1e-12 * rep.M
    # reported argmax angles attain M
    for a in rep.argmax_angles:
        assert abs(evaluate(p, np.exp(1j * a))) == pytest.approx(rep.M, rel=1e-10)


@settings(max_examples=40, deadline=None)
@given(seeded_polynomials(max_degree=6))
def test_grid_never_exceeds_uniform(p):
    M = uniform_extrema(p).M
    for N in (1, 2, 3, 7, 16):
        assert discrete_norm(p, N).value <= M * (1 + 1e-12)


@settings(max_examples=40, deadline=None)
@given(seeded_polynomials(max_degree=6))
def test_rotation_and_scaling_invariance(p):
    # |P(e^{i t} z)| has the same extrema; |a P| scales them by |a|
    t, a = 0.7, 2.5 - 1j
    rot = type(p)(tuple(c * np.exp(1j * t * k) for k, c in enumerate(p.coeffs)))
    ref = uniform_extrema(p)
    assert uniform_extrema(rot).M == pytest.approx(ref.M, rel=1e-11)
    assert uniform_extrema(p.scaled(a)).M == pytest.approx(abs(a) * ref.M, rel=1e-11)


def test_batched_norms_match_scalar():
    rng = np.random.default_rng(3)
    for n in (1, 2, 5):
        c = rng.standard_normal((50, n + 1)) + 1j * rng.standard_normal((50, n + 1))
        c[0, 0] = 0  # exercises the scalar fallback row
        M, m = uniform_norms(c)
        for i in range(c.shape[0]):
            rep = uniform_extrema(type(witness(1, 2))(tuple(c[i])))
            assert M[i] == pytest.approx(rep.M, rel=1e-12)
            assert m[i] == pytest.approx(rep.m, rel=1e-7, abs=1e-9 * rep.M)
        for N in (n + 1, 3 * n):
            grid = discrete_norms(c, N)
            ref = [discrete_norm(type(witness(1, 2))(tuple(r)), N).value for r in c]
            np.testing.assert_allclose(grid, ref, rtol=1e-14)


def test_seeded_reproducible():
    a = random_polynomial(np.random.default_rng(7), 4)
    assert a == seeded(7, 4)
