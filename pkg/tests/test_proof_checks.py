import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from circlenorm.errors import DegreeZeroError, OutOfRangeError, ZeroPolynomialError
from circlenorm.proof_checks import (
    _nearest_node,
    arcsin_chain_check,
    check_ineq6,
    corpus_csv,
    corpus_rows,
    nearest_node_bound,
    node_ratio_implies_bound,
)

from conftest import poly, seeded, seeded_polynomials, witness


def test_ineq6_z_plus_one_is_identity():
    # u~ = (1 + cos phi)/2: both sides equal |sin phi|/2
    rep = check_ineq6(poly(1, 1))
    assert rep.max_violation <= 1e-12
    assert rep.equality_attained
    assert rep.max_abs_slack <= 1e-12


def test_ineq6_monomial():
    rep = check_ineq6(poly(0, 0, 0, 2))
    assert rep.max_violation == 0 and rep.max_abs_slack == 0
    assert rep.scale == pytest.approx(3 * 4)


def test_ineq6_seeded_cubic():
    assert check_ineq6(seeded(3, 3)).max_violation <= 1e-9


def test_ineq6_preconditions():
    with pytest.raises(ZeroPolynomialError):
        check_ineq6(poly(0))
    with pytest.raises(DegreeZeroError):
        check_ineq6(poly(2))
    with pytest.raises(ValueError):
        check_ineq6(poly(1, 1), samples=10)


@pytest.mark.parametrize("n", [1, 2, 5])
@pytest.mark.parametrize("b", [1, 1j, -0.6 + 0.8j])
def test_ineq6_equality_family(n, b):
    a = 2 * np.exp(0.3j)
    p = poly(2 * b, *([0] * (n - 1)), a)
    rep = check_ineq6(p)
    assert rep.max_abs_slack <= 1e-10 * n
    assert rep.equality_attained


@settings(max_examples=80, deadline=None)
@given(seeded_polynomials(max_degree=7))
def test_ineq6_random(p):
    rep = check_ineq6(p, samples=1024)
    assert rep.max_violation <= 1e-8 * p.degree
    # a non-extremal polynomial leaves strict slack somewhere
    assert rep.max_abs_slack > 0


def test_ineq6_scale_invariant():
    p = seeded(4, 4)
    a, b = check_ineq6(p), check_ineq6(p.scaled(7 - 2j))
    assert a.max_violation == pytest.approx(b.max_violation, abs=1e-13)
    assert b.M2 == pytest.approx(a.M2 * abs(7 - 2j) ** 2)


# --- nearest node --------------------------------------------------------


@pytest.mark.parametrize(
    "phi0,N,k",
    [(0.0, 4, 0), (0.1, 4, 0), (math.pi / 4, 4, 0), (math.pi / 4 + 1e-9, 4, 1), (6.2, 4, 0), (math.pi, 3, 1)],
)
def test_nearest_node(phi0, N, k):
    kk, theta = _nearest_node(phi0, N)
    assert kk == k
    assert abs(theta - phi0) <= math.pi / N + 1e-12
    assert math.isclose(math.cos(theta), math.cos(2 * math.pi * k / N), abs_tol=1e-12)


@given(st.floats(-20, 20), st.integers(2, 50))
def test_nearest_node_within_half_spacing(phi0, N):
    _, theta = _nearest_node(phi0, N)
    assert abs(theta - phi0) <= math.pi / N + 1e-9


def test_node_bound_equalities():
    rep = nearest_node_bound(poly(1, 1j), 2)
    assert rep.node_ratio == pytest.approx(math.sqrt(2) / 2, abs=1e-12)
    assert rep.lhs_arcsin == pytest.approx(math.pi / 2, abs=1e-10)
    assert rep.rhs == pytest.approx(math.pi / 2) and rep.holds

    rep = nearest_node_bound(witness(2, 4), 4)
    assert rep.lhs_arcsin == pytest.approx(math.pi / 2, abs=1e-7) and rep.holds

    rep = nearest_node_bound(poly(0, 0, 1), 5)
    assert rep.lhs_arcsin == pytest.approx(math.pi) and rep.holds


def test_node_bound_range():
    with pytest.raises(OutOfRangeError):
        nearest_node_bound(poly(1, 1, 1), 2)


@settings(max_examples=60, deadline=None)
@given(seeded_polynomials(max_degree=5), st.integers(1, 20))
def test_node_bound_random(p, extra):
    N = p.degree + extra
    rep = nearest_node_bound(p, N)
    assert rep.holds
    assert node_ratio_implies_bound(rep, p.degree, N)


# --- arcsin chain ---------------------------------------------------------


def test_chain_witness_n1():
    rep = arcsin_chain_check(poly(1, 1j), 2)
    assert rep.angle_gap == pytest.approx(math.pi / 2, abs=1e-10)
    assert rep.closed_form == pytest.approx(math.pi / 2, abs=1e-10)
    assert rep.integral == pytest.approx(math.pi / 2, abs=1e-6)
    assert rep.integral_bound == pytest.approx(math.pi / 2, abs=1e-10)
    assert rep.consistent and not rep.degenerate


def test_chain_monomial_degenerate():
    rep = arcsin_chain_check(poly(0, 0, 1), 3)
    assert rep.degenerate and rep.consistent


def test_chain_seeded_quadratic():
    assert arcsin_chain_check(seeded(2, 2), 6).consistent


@settings(max_examples=40, deadline=None)
@given(seeded_polynomials(max_degree=5), st.integers(1, 12))
def test_chain_random(p, extra):
    rep = arcsin_chain_check(p, p.degree + extra)
    assert rep.consistent
    assert abs(rep.integral - rep.closed_form) <= 1e-6


# --- corpus -----------------------------------------------------------------


def test_corpus_rows_and_csv():
    rows = list(corpus_rows(6, degrees=[1, 2]))
    # degrees alternate 1, 2; N runs over (n, 4n]
    assert len(rows) == 3 * 3 + 3 * 6
    assert all(r["node_holds"] for r in rows)
    assert rows == list(corpus_rows(6, degrees=[1, 2]))
    text = corpus_csv(rows)
    assert text.splitlines()[0] == "seed,n,N,max_violation,node_holds"
    assert len(text.splitlines()) == len(rows) + 1
