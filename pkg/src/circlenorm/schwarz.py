"""Slit-map Schwarz-lemma machinery.

``phi`` maps the exterior of the slit ``[m^2, M^2]`` onto the unit disk with
``phi(inf) = 0`` and ``phi(m^2) = -1``; its inverse is an affine Joukowski map.
Composing it with ``w(z) = conj(P(conj z)) P(1/z)`` gives a function ``f``
on the disk whose zero at the origin has order n, and the checks here probe
``|f(z)| >= |z|^n`` inside, ``|f'| <= n`` on the circle, and the leading
Taylor coefficient at 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .circle_norms import uniform_extrema
from .errors import (
    ConstantModulusError,
    DegreeZeroError,
    NotInEError,
    OnSlitError,
    OutsideDomainError,
    PoleAtZeroError,
    ZeroConstantTermError,
)
from .poly_core import TWO_PI, Polynomial, TrigProfile, evaluate, trig_profile

E_TOL = 1e-9
SLIT_TOL = 1e-12
EQ4_TOL = 1e-8
EQ5_TOL = 1e-10


@dataclass(frozen=True)
class SchwarzContext:
    p: Polynomial
    m2: float
    M2: float
    n: int
    profile: TrigProfile

    @property
    def conj_p(self) -> Polynomial:
        return Polynomial(tuple(c.conjugate() for c in self.p.coeffs))

    @property
    def slit(self) -> tuple:
        return (self.m2, self.M2)


def build_context(p: Polynomial) -> SchwarzContext:
    if p.degree < 1:
        raise DegreeZeroError("need a polynomial of degree >= 1")
    if p.coeffs[0] == 0:
        raise ZeroConstantTermError("P(0) = 0")
    rep = uniform_extrema(p)
    m2, M2 = rep.m**2, rep.M**2
    if abs(M2 - m2) <= 1e-14 * M2:
        raise ConstantModulusError("|P| is constant on the circle")
    return SchwarzContext(p=p, m2=m2, M2=M2, n=p.degree, profile=trig_profile(p))


def phi_inverse(ctx: SchwarzContext, zeta):
    zeta = np.asarray(zeta, dtype=complex)
    if np.any(zeta == 0):
        raise PoleAtZeroError("phi_inverse has a pole at 0")
    half_width = 0.25 * (ctx.M2 - ctx.m2)
    out = half_width * (zeta + 1.0 / zeta) + 0.5 * (ctx.M2 + ctx.m2)
    return out[()] if out.ndim == 0 else out


def _normalized(ctx: SchwarzContext, w):
    return (2.0 * w - (ctx.M2 + ctx.m2)) / (ctx.M2 - ctx.m2)


def _phi_off_slit(s: np.ndarray) -> np.ndarray:
    # pick the root of zeta^2 - 2 s zeta + 1 inside the disk; the two candidates
    # are reciprocal, so take the large one and invert it
    r = np.sqrt(s * s - 1.0)
    flip = (s.real * r.real + s.imag * r.imag) < 0
    r = np.where(flip, -r, r)
    return 1.0 / (s + r)


def _on_slit(ctx: SchwarzContext, w: np.ndarray) -> np.ndarray:
    tol = SLIT_TOL * ctx.M2
    return (np.abs(w.imag) <= tol) & (w.real >= ctx.m2 - tol) & (w.real <= ctx.M2 + tol)


def phi(ctx: SchwarzContext, w, side: int | None = None):
    """Slit map; ``side`` = +1 / -1 gives boundary values approached from Im w > 0 / < 0."""
    w_arr = np.asarray(w, dtype=complex)
    s = _normalized(ctx, w_arr)
    # the endpoints map to -1 and +1 from either side, no indicator needed
    on = _on_slit(ctx, w_arr) & (np.abs(s.real) < 1.0)
    if np.any(on) and side is None:
        raise OnSlitError("w lies on the slit; pass side=+1 or side=-1")
    with np.errstate(invalid="ignore", divide="ignore"):
        out = _phi_off_slit(s)
    if np.any(on):
        x = np.clip(s.real, -1.0, 1.0)
        boundary = x - 1j * side * np.sqrt(1.0 - x * x)
        out = np.where(on, boundary, out)
    return out[()] if out.ndim == 0 else out


def _w_of_z(ctx: SchwarzContext, z):
    return evaluate(ctx.conj_p, z) * evaluate(ctx.p, 1.0 / z)


def _f_boundary(ctx: SchwarzContext, theta):
    """Boundary values of f at z = e^{i theta}, taken from inside the disk.

    On the circle w equals u(-theta), real and inside the slit. Approaching
    along rho -> 1-, Im w has the sign of -u'(-theta), so that fixes the side.
    """
    psi = -np.asarray(theta, dtype=float)
    u = ctx.profile.value(psi)
    du = ctx.profile.derivative(psi)
    x = np.clip(_normalized(ctx, u), -1.0, 1.0)
    sign = np.where(du >= 0, 1.0, -1.0)
    return x + 1j * sign * np.sqrt(1.0 - x * x), u


def in_E(ctx: SchwarzContext, theta) -> np.ndarray:
    """|P(e^{-i theta})| differs from both m(P) and M(P) by more than E_TOL * M."""
    mod = np.abs(evaluate(ctx.p, np.exp(-1j * np.asarray(theta, dtype=float))))
    M, m = math.sqrt(ctx.M2), math.sqrt(ctx.m2)
    return (np.abs(mod - m) > E_TOL * M) & (np.abs(mod - M) > E_TOL * M)


def f_interior(ctx: SchwarzContext, z) -> np.ndarray:
    """Vectorized f on |z| < 1; NaN where w(z) lands on the slit (z not in G)."""
    z = np.asarray(z, dtype=complex)
    out = np.zeros(z.shape, dtype=complex)
    nz = z != 0
    w = _w_of_z(ctx, z[nz])
    good = ~_on_slit(ctx, w)
    vals = np.full(w.shape, np.nan, dtype=complex)
    with np.errstate(invalid="ignore", divide="ignore"):
        vals[good] = _phi_off_slit(_normalized(ctx, w[good]))
    out[nz] = vals
    return out


def f_value(ctx: SchwarzContext, z: complex) -> complex:
    z = complex(z)
    r = abs(z)
    if z == 0:
        return 0j
    if abs(r - 1.0) <= 1e-13:
        theta = math.atan2(z.imag, z.real)
        if not in_E(ctx, theta):
            raise NotInEError(f"|P(conj z)| equals m or M at theta={theta}")
        return complex(_f_boundary(ctx, theta)[0])
    if r > 1.0:
        raise OutsideDomainError("f is only defined on the closed unit disk")
    val = f_interior(ctx, np.array([z]))[0]
    if np.isnan(val):
        raise OutsideDomainError(f"w({z}) lies on the slit; z is not in G")
    return complex(val)


# --------------------------------------------------------------------------
# checks


@dataclass(frozen=True)
class Eq5Report:
    min_margin: float
    worst_z: complex
    samples_used: int
    empty: bool = False

    def to_json(self) -> dict:
        return {
            "min_margin": self.min_margin,
            "worst_z": [self.worst_z.real, self.worst_z.imag],
            "samples_used": self.samples_used,
            "empty": self.empty,
            "pass": bool(self.min_margin >= -EQ5_TOL),
        }


def check_eq5(ctx: SchwarzContext, sample_count: int = 1000) -> Eq5Report:
    """Minimum of ``|f(z)| - |z|^n`` over circles of radius 0.1 .. 0.9 plus the origin."""
    if sample_count < 100:
        raise ValueError("sample_count must be >= 100")
    radii = np.arange(1, 10) / 10.0
    per = max(1, (sample_count - 1) // radii.size)
    ang = TWO_PI * np.arange(per) / per
    z = np.concatenate([[0j], np.multiply.outer(radii, np.exp(1j * ang)).ravel()])
    f = f_interior(ctx, z)
    keep = ~np.isnan(f)
    if not keep.any():
        return Eq5Report(min_margin=math.nan, worst_z=0j, samples_used=0, empty=True)
    margin = np.abs(f[keep]) - np.abs(z[keep]) ** ctx.n
    i = int(np.argmin(margin))
    return Eq5Report(min_margin=float(margin[i]), worst_z=complex(z[keep][i]), samples_used=int(keep.sum()))


def _f_prime_on_E(ctx: SchwarzContext, theta: np.ndarray) -> np.ndarray:
    psi = -theta
    u = ctx.profile.value(psi)
    du = ctx.profile.derivative(psi)
    denom = np.sqrt(np.maximum((u - ctx.m2) * (ctx.M2 - u), 0.0))
    with np.errstate(divide="ignore", invalid="ignore"):
        return np.abs(du) / denom


def _admissible(ctx: SchwarzContext, theta: np.ndarray) -> np.ndarray:
    u = ctx.profile.value(-theta)
    tol = E_TOL * ctx.M2
    return (u - ctx.m2 > tol) & (ctx.M2 - u > tol)


def f_prime_on_E(ctx: SchwarzContext, phi_angle: float) -> float:
    """|f'(e^{i phi_angle})| through the identity |u'| / sqrt((u - m^2)(M^2 - u))."""
    theta = np.array([float(phi_angle)])
    if not _admissible(ctx, theta)[0]:
        raise NotInEError(f"u(-{phi_angle}) is within {E_TOL} M^2 of a slit endpoint")
    return float(_f_prime_on_E(ctx, theta)[0])


def f_prime_radial(ctx: SchwarzContext, phi_angle: float, h: float = 1e-4) -> float:
    """Independent |f'| estimate: radial derivative of |f| at the circle.

    Uses (1 - |f((1-h)z)|)/h with one Richardson step. Valid because |f| = 1
    on E, so |f'| equals the outward normal derivative of |f| there.
    """
    z = complex(math.cos(phi_angle), math.sin(phi_angle))
    inner = f_interior(ctx, np.array([(1 - h) * z, (1 - h / 2) * z]))
    d1 = (1.0 - abs(inner[0])) / h
    d2 = (1.0 - abs(inner[1])) / (h / 2)
    return 2.0 * d2 - d1


@dataclass(frozen=True)
class Eq4Report:
    max_fprime: float
    worst_angle: float
    n: int
    samples_used: int

    @property
    def passed(self) -> bool:
        return self.max_fprime <= self.n + EQ4_TOL

    def to_json(self) -> dict:
        return {
            "max_fprime": self.max_fprime,
            "worst_angle": self.worst_angle,
            "n": self.n,
            "samples_used": self.samples_used,
            "pass": self.passed,
        }


def check_eq4(ctx: SchwarzContext, sample_count: int = 1024) -> Eq4Report:
    if sample_count < 64:
        raise ValueError("sample_count must be >= 64")
    theta = TWO_PI * np.arange(sample_count) / sample_count
    keep = _admissible(ctx, theta)
    theta = theta[keep]
    fp = _f_prime_on_E(ctx, theta)
    i = int(np.argmax(fp))
    return Eq4Report(max_fprime=float(fp[i]), worst_angle=float(theta[i]), n=ctx.n, samples_used=int(keep.sum()))


@dataclass(frozen=True)
class LeadingCoeffReport:
    expected: complex
    measured: complex
    abs_error: float

    @property
    def passed(self) -> bool:
        return self.abs_error <= 1e-6 * abs(self.expected)

    def to_json(self) -> dict:
        return {
            "expected": [self.expected.real, self.expected.imag],
            "measured": [self.measured.real, self.measured.imag],
            "abs_error": self.abs_error,
            "pass": self.passed,
        }


def leading_coeff_check(ctx: SchwarzContext, radius: float = 1e-3, angles: int = 16) -> LeadingCoeffReport:
    """Compare ``f(z)/z^n`` near 0 with ``(M^2 - m^2) / (4 conj(c_0) c_n)``."""
    c0, cn = ctx.p.coeffs[0], ctx.p.leading
    expected = (ctx.M2 - ctx.m2) / (4.0 * c0.conjugate() * cn)
    z = radius * np.exp(1j * TWO_PI * np.arange(angles) / angles)
    measured = complex(np.mean(f_interior(ctx, z) / z**ctx.n))
    return LeadingCoeffReport(expected=complex(expected), measured=measured, abs_error=abs(measured - expected))
