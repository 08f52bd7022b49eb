"""Checks for the differential inequality on |P|^2 and the arcsin integration step.

With P normalized so that M(P) = 1 and u = |P(e^{i phi})|^2:

    |u'(phi)| <= n sqrt(u (1 - u))                      (pointwise)
    int_{phi0}^{theta_k} -u'/sqrt(u(1-u)) = pi - 2 arcsin sqrt(u(theta_k))

where phi0 is a maximizer of |P| and theta_k the angle of the nearest N-th root
of unity. Together they give |P(w_k)| >= cos(pi n / 2N).
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad

from .bounds import cosine_bound
from .circle_norms import NormMethod, uniform_extrema
from .errors import DegreeZeroError, OutOfRangeError, ZeroPolynomialError
from .poly_core import TWO_PI, Polynomial, evaluate, random_polynomial, split_critical_candidates, trig_profile

INEQ6_TOL = 1e-8
NODE_TOL = 1e-9
CHAIN_TOL = 1e-6
ENDPOINT_EPS = 1e-8


class _Normalized:
    """P scaled to M = 1, with an accurate ``1 - u`` near the maxima.

    ``1 - u`` computed directly loses everything near a peak, and the square
    root in the inequality amplifies that to ~1e-8. Instead the deficit is
    measured against the nearest maximizer, where the difference of
    exponentials is a product of small sines.
    """

    def __init__(self, p: Polynomial):
        rep = uniform_extrema(p)
        self.M = rep.M
        self.report = rep
        self.q = p.scaled(1.0 / rep.M)
        self.profile = trig_profile(self.q)
        self.n = p.degree
        self.peaks = np.asarray(rep.argmax_angles, dtype=float)
        self.constant = rep.method is NormMethod.CONSTANT_MODULUS

    def u(self, phi):
        return np.abs(evaluate(self.q, np.exp(1j * np.asarray(phi, dtype=float)))) ** 2

    def du(self, phi):
        return self.profile.derivative(phi)

    def deficit(self, phi, peak=None):
        phi = np.asarray(phi, dtype=float)
        if self.constant:
            return np.zeros_like(phi)
        if peak is None:
            gap = np.angle(np.exp(1j * np.subtract.outer(phi, self.peaks)))
            ref = self.peaks[np.argmin(np.abs(gap), axis=-1)]
        else:
            ref = np.full_like(phi, peak)
        k = np.arange(1, self.n + 1)
        half = 0.5 * np.multiply.outer(phi - ref, k)
        mid = 0.5 * np.multiply.outer(phi + ref, k)
        # e^{ik phi} - e^{ik ref} = 2i sin(k (phi - ref)/2) e^{ik (phi + ref)/2}
        diff = 2j * np.sin(half) * np.exp(1j * mid)
        return -2.0 * (diff @ self.profile.positive).real


@dataclass(frozen=True)
class Ineq6Report:
    max_violation: float
    min_slack_angle: float
    samples: int
    equality_attained: bool
    max_abs_slack: float
    n: int
    M2: float

    @property
    def scale(self) -> float:
        """``n M(P)^2``, the size of either side before normalization."""
        return self.n * self.M2

    @property
    def passed(self) -> bool:
        return self.max_violation <= INEQ6_TOL * self.n

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "samples": self.samples,
            "max_violation": self.max_violation,
            "min_slack_angle": self.min_slack_angle,
            "max_abs_slack": self.max_abs_slack,
            "equality_attained": self.equality_attained,
            "scale": self.scale,
            "pass": self.passed,
        }


def check_ineq6(p: Polynomial, samples: int = 4096) -> Ineq6Report:
    """Sweep ``|u'| - n sqrt(u(1-u))`` over uniform angles plus all critical angles.

    Violations and slacks are in normalized units (M = 1); ``equality_attained``
    only counts angles where the right side exceeds 1e-6 n, since at maxima
    both sides vanish for every polynomial.
    """
    if p.is_zero:
        raise ZeroPolynomialError("inequality is vacuous for the zero polynomial")
    if p.degree < 1:
        raise DegreeZeroError("need degree >= 1")
    if samples < 256:
        raise ValueError("samples must be >= 256")
    nz = _Normalized(p)
    n = nz.n
    phi = TWO_PI * np.arange(samples) / samples
    if not nz.constant:
        on, _ = split_critical_candidates(nz.profile)
        phi = np.concatenate([phi, np.asarray(on, dtype=float)])
    u = nz.u(phi)
    d = nz.deficit(phi)
    lhs = np.abs(nz.du(phi))
    rhs = n * np.sqrt(np.clip(u * d, 0.0, None))
    slack = rhs - lhs
    i = int(np.argmin(slack))
    eq = (np.abs(slack) <= 1e-10 * n) & (rhs > 1e-6 * n)
    return Ineq6Report(
        max_violation=float(-slack[i]),
        min_slack_angle=float(phi[i]),
        samples=int(phi.size),
        equality_attained=bool(eq.any()),
        max_abs_slack=float(np.max(np.abs(slack))),
        n=n,
        M2=nz.M**2,
    )


def _nearest_node(phi0: float, N: int):
    """Node index whose closed arc of half-width pi/N contains phi0 (ties to the smaller index)."""
    x = (phi0 % TWO_PI) * N / TWO_PI
    lo = math.floor(x)
    frac = x - lo
    if frac < 0.5:
        k = lo
    elif frac > 0.5:
        k = lo + 1
    else:
        k = min(lo % N, (lo + 1) % N)
    k %= N
    theta = TWO_PI * k / N
    # representative of the node angle closest to phi0
    theta += TWO_PI * round((phi0 - theta) / TWO_PI)
    return k, theta


def _check_node_range(p: Polynomial, N: int) -> None:
    if p.degree < 1:
        raise OutOfRangeError("need degree >= 1")
    if N <= p.degree:
        raise OutOfRangeError(f"need N > n, got n={p.degree}, N={N}")


@dataclass(frozen=True)
class NodeBoundReport:
    node_index: int
    node_ratio: float
    lhs_arcsin: float
    rhs: float
    holds: bool
    phi0: float

    def to_json(self) -> dict:
        return {
            "node_index": self.node_index,
            "node_ratio": self.node_ratio,
            "lhs_arcsin": self.lhs_arcsin,
            "rhs": self.rhs,
            "phi0": self.phi0,
            "holds": self.holds,
        }


def nearest_node_bound(p: Polynomial, N: int) -> NodeBoundReport:
    """``2 arcsin(|P(w_k)|/M) >= pi - n pi/N`` at the node nearest a maximizer."""
    _check_node_range(p, N)
    rep = uniform_extrema(p)
    phi0 = rep.argmax_angles[0] if rep.argmax_angles else 0.0
    k, _ = _nearest_node(phi0, N)
    ratio = float(abs(evaluate(p, np.exp(1j * TWO_PI * k / N))) / rep.M)
    lhs = 2.0 * math.asin(min(ratio, 1.0))
    rhs = math.pi - p.degree * math.pi / N
    return NodeBoundReport(
        node_index=k, node_ratio=ratio, lhs_arcsin=lhs, rhs=rhs, holds=lhs >= rhs - NODE_TOL, phi0=phi0
    )


@dataclass(frozen=True)
class ChainReport:
    integral: float
    closed_form: float
    integral_bound: float
    angle_gap: float
    consistent: bool
    degenerate: bool = False

    def to_json(self) -> dict:
        return {
            "integral": self.integral,
            "closed_form": self.closed_form,
            "integral_bound": self.integral_bound,
            "angle_gap": self.angle_gap,
            "degenerate": self.degenerate,
            "consistent": self.consistent,
        }


def arcsin_chain_check(p: Polynomial, N: int) -> ChainReport:
    """Integrate ``-u'/sqrt(u(1-u))`` from a maximizer to its nearest node.

    The result must match ``pi - 2 arcsin sqrt(u_k)`` and stay below
    ``n |theta_k - phi0|``. Constant-modulus input gives a degenerate report
    (u = 1 everywhere, nothing to integrate) rather than an error.
    """
    _check_node_range(p, N)
    nz = _Normalized(p)
    n = nz.n
    if nz.constant:
        return ChainReport(0.0, 0.0, 0.0, 0.0, consistent=True, degenerate=True)
    phi0 = float(nz.peaks[0])
    k, theta = _nearest_node(phi0, N)
    gap = theta - phi0
    u_k = min(float(nz.u(theta)), 1.0)
    closed = math.pi - 2.0 * math.asin(math.sqrt(u_k))
    bound = n * abs(gap)

    def integrand(t):
        u = float(nz.u(t))
        d = float(nz.deficit(np.array([t]), peak=phi0)[0])
        denom = u * d
        if denom <= 0.0:
            return 0.0
        return -float(nz.du(t)) / math.sqrt(denom)

    if abs(gap) <= 2 * ENDPOINT_EPS:
        integral = 0.0
    else:
        step = math.copysign(ENDPOINT_EPS, gap)
        a, b = phi0 + step, theta - step
        val, _ = quad(integrand, min(a, b), max(a, b), limit=200, epsabs=1e-12, epsrel=1e-10)
        integral = val if b > a else -val
    consistent = abs(integral - closed) <= CHAIN_TOL and integral <= bound + CHAIN_TOL
    return ChainReport(integral, closed, bound, abs(gap), consistent=consistent)


def corpus_rows(count: int, degrees=range(1, 7), seed: int = 0):
    """One row per polynomial and N in (n, 4n]: seed, n, N, max_violation, node_holds.

    Polynomial i is drawn from ``default_rng([seed, i])`` so rows do not depend
    on iteration order.
    """
    degrees = list(degrees)
    for i in range(count):
        n = degrees[i % len(degrees)]
        p = random_polynomial(np.random.default_rng([seed, i]), n)
        viol = check_ineq6(p).max_violation
        for N in range(n + 1, 4 * n + 1):
            yield {
                "seed": f"{seed}:{i}",
                "n": n,
                "N": N,
                "max_violation": viol,
                "node_holds": nearest_node_bound(p, N).holds,
            }


def corpus_csv(rows) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=["seed", "n", "N", "max_violation", "node_holds"], lineterminator="\n")
    w.writeheader()
    for r in rows:
        w.writerow(r)
    return buf.getvalue()


def node_ratio_implies_bound(report: NodeBoundReport, n: int, N: int) -> bool:
    """``sin((pi - n pi/N)/2) = cos(n pi/2N)``: the node ratio must clear the main constant."""
    return report.node_ratio >= cosine_bound(n, N) - NODE_TOL
