"""Uniform norm, minimum modulus and discrete (roots-of-unity) norm on |z| = 1."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import golden

from .errors import (
    GridAnnihilationError,
    InvalidGridError,
    ZeroPolynomialError,
)
from .poly_core import (
    TWO_PI,
    Polynomial,
    _autocorrelation,
    aberth_batch,
    derivative_polynomial_coeffs,
    evaluate,
    split_critical_candidates,
    trig_profile,
)

ARGMAX_TOL = 1e-10


class NormMethod(enum.Enum):
    CRITICAL_POINTS = "critical_points"
    GRID_ORACLE = "grid_oracle"
    CONSTANT_MODULUS = "constant_modulus"


@dataclass(frozen=True)
class CircleNormReport:
    M: float
    m: float
    argmax_angles: list = field(default_factory=list)
    argmin_angles: list = field(default_factory=list)
    method: NormMethod = NormMethod.CRITICAL_POINTS

    def to_json(self) -> dict:
        return {
            "M": self.M,
            "m": self.m,
            "argmax": list(self.argmax_angles),
            "argmin": list(self.argmin_angles),
            "method": self.method.value,
        }


@dataclass(frozen=True)
class GridNormReport:
    N: int
    value: float
    argmax_index: int

    def to_json(self) -> dict:
        return {"N": self.N, "value": self.value, "argmax_index": self.argmax_index}


def uniform_extrema(p: Polynomial) -> CircleNormReport:
    """M(P) and m(P) from the critical points of |P(e^{i phi})|^2.

    Constant-modulus polynomials (including constants) report no
    distinguished angles. Raises NoConvergenceError from the root finder;
    :func:`grid_oracle_extrema` is the fallback.
    """
    if p.is_zero:
        raise ZeroPolynomialError("the zero polynomial has no norm report")
    profile = trig_profile(p)
    if profile.is_constant:
        r = math.sqrt(profile.fourier[profile.n].real)
        return CircleNormReport(M=r, m=r, method=NormMethod.CONSTANT_MODULUS)

    on, off = split_critical_candidates(profile)
    angles = np.asarray(on + off, dtype=float)
    mod = np.abs(evaluate(p, np.exp(1j * angles)))
    M = float(mod.max())
    m = float(mod.min())

    def near(target):
        hits = [float(a) for a, v in zip(angles, mod) if abs(v - target) <= ARGMAX_TOL * M]
        return sorted(set(hits))

    argmax, argmin = near(M), near(m)
    return CircleNormReport(M=M, m=m, argmax_angles=argmax, argmin_angles=argmin)


def uniform_norms(coeffs: np.ndarray):
    """Vectorized ``(M, m)`` for a batch of same-degree polynomials.

    ``coeffs`` has shape (B, n+1), lowest degree first. Rows with a zero
    constant term, or where the batched root finder misses tolerance, are
    routed through :func:`uniform_extrema` one by one.
    """
    c = np.asarray(coeffs, dtype=complex)
    B, n1 = c.shape
    n = n1 - 1
    M = np.empty(B)
    m = np.empty(B)
    if n == 0:
        M[:] = m[:] = np.abs(c[:, 0])
        return M, m

    pos = _autocorrelation(c)
    fourier = np.concatenate([np.conj(pos[:, :0:-1]), pos], axis=1)
    t = derivative_polynomial_coeffs(fourier)
    fast = (c[:, 0] != 0) & (c[:, -1] != 0)

    if fast.any():
        roots, ok = aberth_batch(t[fast])
        phi = np.angle(roots)
        w = np.exp(1j * phi)
        vals = np.abs(_horner(c[fast], w))
        Mf, mf = vals.max(axis=1), vals.min(axis=1)
        idx = np.flatnonzero(fast)
        M[idx], m[idx] = Mf, mf
        fast[idx[~ok]] = False

    for i in np.flatnonzero(~fast):
        rep = uniform_extrema(Polynomial(tuple(c[i])))
        M[i], m[i] = rep.M, rep.m
    return M, m


def _horner(c: np.ndarray, z: np.ndarray) -> np.ndarray:
    acc = np.broadcast_to(c[:, -1:], z.shape).astype(complex)
    for k in range(c.shape[1] - 2, -1, -1):
        acc = acc * z + c[:, k : k + 1]
    return acc


def grid_oracle_extrema(p: Polynomial, samples: int = 100_000) -> CircleNormReport:
    """Brute-force M(P), m(P): dense sampling, then golden-section refinement.

    Works on ``|P|^2`` computed by direct evaluation, so it shares nothing
    with the critical-point path beyond :func:`evaluate`. Every discrete local
    extremum of the sample sequence is refined, not just the best sample.
    """
    if p.is_zero:
        raise ZeroPolynomialError("the zero polynomial has no norm report")
    if samples < 8 * (p.degree + 1):
        raise ValueError(f"need at least {8 * (p.degree + 1)} samples, got {samples}")

    def sq(phi):
        return abs(evaluate(p, complex(math.cos(phi), math.sin(phi)))) ** 2

    phi = TWO_PI * np.arange(samples) / samples
    u = np.abs(evaluate(p, np.exp(1j * phi))) ** 2
    if np.ptp(u) <= 1e-13 * u.max():
        # constant modulus: by Parseval the level is exactly sum |c_k|^2
        r = math.sqrt(sum(abs(c) ** 2 for c in p.coeffs))
        return CircleNormReport(M=r, m=r, method=NormMethod.GRID_ORACLE)
    h = TWO_PI / samples
    prev, nxt = np.roll(u, 1), np.roll(u, -1)

    def refine(indices, sign):
        best_val, best_phi = None, None
        for i in indices:
            a, b, c = phi[i] - h, phi[i], phi[i] + h
            try:
                x = golden(lambda t: -sign * sq(t), brack=(a, b, c), tol=1e-12)
            except ValueError:
                # plateau between samples: the sample itself is the answer
                x = b
            val = max(sign * sq(x), sign * u[i])
            if best_val is None or val > best_val:
                best_val = val
                best_phi = x if sign * sq(x) >= sign * u[i] else phi[i]
        return sign * best_val, best_phi % TWO_PI

    maxima = np.flatnonzero((u >= prev) & (u >= nxt))
    minima = np.flatnonzero((u <= prev) & (u <= nxt))
    u_max, phi_max = refine(maxima, +1.0)
    u_min, phi_min = refine(minima, -1.0)
    return CircleNormReport(
        M=math.sqrt(u_max),
        m=math.sqrt(max(u_min, 0.0)),
        argmax_angles=[float(phi_max)],
        argmin_angles=[float(phi_min)],
        method=NormMethod.GRID_ORACLE,
    )


def grid_nodes(N: int) -> np.ndarray:
    return np.exp(1j * TWO_PI * np.arange(N) / N)


def discrete_norm(p: Polynomial, N: int) -> GridNormReport:
    """Max of |P| over all N-th roots of unity; ties go to the smallest index."""
    if N < 1:
        raise InvalidGridError(f"grid size must be >= 1, got {N}")
    vals = np.abs(evaluate(p, grid_nodes(N)))
    k = int(np.argmax(vals))
    return GridNormReport(N=N, value=float(vals[k]), argmax_index=k)


def discrete_norms(coeffs: np.ndarray, N: int) -> np.ndarray:
    """Batched discrete norm for coefficient rows of shape (B, n+1)."""
    if N < 1:
        raise InvalidGridError(f"grid size must be >= 1, got {N}")
    c = np.asarray(coeffs, dtype=complex)
    nodes = np.broadcast_to(grid_nodes(N), (c.shape[0], N))
    return np.abs(_horner(c, nodes)).max(axis=1)


def norm_ratio(p: Polynomial, N: int) -> float:
    """``M(P) / max_{w^N = 1} |P(w)|``."""
    grid = discrete_norm(p, N)
    if p.is_zero:
        raise ZeroPolynomialError("ratio undefined for the zero polynomial")
    if grid.value == 0:
        raise GridAnnihilationError(f"P vanishes at every {N}-th root of unity")
    return uniform_extrema(p).M / grid.value
