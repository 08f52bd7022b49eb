"""Complex polynomials, their squared-modulus profile on the circle, and roots.

Coefficients are stored lowest degree first, ``c_0 .. c_n``.
"""

from __future__ import annotations

import enum
import json
import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from .errors import DegreeZeroError, NoConvergenceError, PolynomialFormatError

TWO_PI = 2.0 * math.pi

# ||w| - 1| tolerance for accepting a root of the derivative polynomial as a
# point of the unit circle.
UNIT_CIRCLE_TOL = 1e-8
ROOT_RESIDUAL_TOL = 1e-10
MAX_SWEEPS = 200
# convergence is cubic, so a step this small leaves the root at rounding level
STEP_TOL = 1e-14


@dataclass(frozen=True)
class Polynomial:
    """Polynomial ``sum(c_k z**k)`` with complex coefficients.

    Trailing zero coefficients are trimmed on construction (exact comparison
    with 0). The zero polynomial is kept as ``(0,)`` with degree 0.
    """

    coeffs: tuple

    def __post_init__(self):
        cs = [complex(c) for c in self.coeffs]
        if not cs:
            raise ValueError("a polynomial needs at least one coefficient")
        while len(cs) > 1 and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return self.degree == 0 and self.coeffs[0] == 0

    @property
    def leading(self) -> complex:
        return self.coeffs[-1]

    def as_array(self) -> np.ndarray:
        return np.asarray(self.coeffs, dtype=complex)

    def scaled(self, factor: complex) -> "Polynomial":
        return Polynomial(tuple(factor * c for c in self.coeffs))

    def __call__(self, z):
        return evaluate(self, z)

    def to_json(self) -> dict:
        return {"coeffs": [[c.real, c.imag] for c in self.coeffs]}

    @classmethod
    def from_json(cls, obj) -> "Polynomial":
        """Parse ``{"coeffs": [[re, im], ...]}`` (a JSON string or decoded dict)."""
        if isinstance(obj, (str, bytes)):
            try:
                obj = json.loads(obj)
            except json.JSONDecodeError as exc:
                raise PolynomialFormatError(f"invalid JSON: {exc}") from None
        if not isinstance(obj, dict) or "coeffs" not in obj:
            raise PolynomialFormatError('expected an object with a "coeffs" key')
        raw = obj["coeffs"]
        if not isinstance(raw, list) or not raw:
            raise PolynomialFormatError('"coeffs" must be a non-empty list')
        coeffs = []
        for i, pair in enumerate(raw):
            if (
                not isinstance(pair, (list, tuple))
                or len(pair) != 2
                or not all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in pair)
            ):
                raise PolynomialFormatError(f"coefficient {i} must be a [re, im] pair of numbers")
            re, im = float(pair[0]), float(pair[1])
            if not (math.isfinite(re) and math.isfinite(im)):
                raise PolynomialFormatError(f"coefficient {i} is not finite")
            coeffs.append(complex(re, im))
        return cls(tuple(coeffs))


def evaluate(p: Polynomial, z):
    """Horner evaluation; ``z`` may be a scalar or a numpy array."""
    cs = p.coeffs
    acc = cs[-1] + 0 * z
    for c in reversed(cs[:-1]):
        acc = acc * z + c
    return acc


def derivative(p: Polynomial) -> Polynomial:
    if p.degree == 0:
        return Polynomial((0j,))
    return Polynomial(tuple(k * c for k, c in enumerate(p.coeffs) if k > 0))


def random_polynomial(rng: np.random.Generator, degree: int) -> Polynomial:
    """Complex Gaussian coefficients with a nonzero leading term."""
    c = rng.standard_normal(degree + 1) + 1j * rng.standard_normal(degree + 1)
    return Polynomial(tuple(c))


# --------------------------------------------------------------------------
# Squared-modulus profile u(phi) = |P(e^{i phi})|^2


class Flag(enum.Enum):
    CONSTANT_PROFILE = "constant_profile"


CONSTANT_PROFILE = Flag.CONSTANT_PROFILE


@dataclass(frozen=True)
class TrigProfile:
    """Fourier coefficients ``a_k`` (k = -n..n) of ``u(phi) = sum a_k e^{ik phi}``.

    ``fourier[k + n]`` holds ``a_k``.
    """

    n: int
    fourier: np.ndarray

    def coefficient(self, k: int) -> complex:
        if abs(k) > self.n:
            return 0j
        return complex(self.fourier[k + self.n])

    @property
    def positive(self) -> np.ndarray:
        """``a_1 .. a_n``."""
        return self.fourier[self.n + 1:]

    @property
    def is_constant(self) -> bool:
        return not np.any(self.positive)

    def value(self, phi):
        phi = np.asarray(phi, dtype=float)
        a0 = self.fourier[self.n].real
        if self.n == 0:
            return a0 + 0.0 * phi
        k = np.arange(1, self.n + 1)
        e = np.exp(1j * np.multiply.outer(phi, k))
        return a0 + 2.0 * (e @ self.positive).real

    def derivative(self, phi):
        """``u'(phi) = -2 sum_{k>=1} k Im(a_k e^{ik phi})``."""
        phi = np.asarray(phi, dtype=float)
        if self.n == 0:
            return 0.0 * phi
        k = np.arange(1, self.n + 1)
        e = np.exp(1j * np.multiply.outer(phi, k))
        return -2.0 * (e @ (k * self.positive)).imag

    def derivative_scale(self) -> float:
        """``sum |k a_k|`` over all k, the natural size of ``u'``."""
        k = np.arange(1, self.n + 1)
        return float(2.0 * np.sum(k * np.abs(self.positive)))


def _autocorrelation(c: np.ndarray) -> np.ndarray:
    """``a_k = sum_j c_{j+k} conj(c_j)`` for k = 0..n along the last axis."""
    n = c.shape[-1] - 1
    out = np.empty(c.shape[:-1] + (n + 1,), dtype=complex)
    out[..., 0] = np.sum(c.real**2 + c.imag**2, axis=-1)
    for k in range(1, n + 1):
        out[..., k] = np.sum(c[..., k:] * np.conj(c[..., : n + 1 - k]), axis=-1)
    return out


def trig_profile(p: Polynomial) -> TrigProfile:
    n = p.degree
    pos = _autocorrelation(p.as_array())
    fourier = np.empty(2 * n + 1, dtype=complex)
    fourier[n:] = pos
    fourier[:n] = np.conj(pos[1:])[::-1]
    return TrigProfile(n=n, fourier=fourier)


# --------------------------------------------------------------------------
# Roots


def _initial_guesses(c: np.ndarray) -> np.ndarray:
    """Points around the circle of radius |c_0/c_d|^(1/d), rotated off the axes.

    Radii alternate by +-15%: for the self-reciprocal derivative polynomials
    used here the roots sit on or pair across the unit circle, and starting
    exactly on it roughly quadruples the sweep count.
    """
    d = c.shape[-1] - 1
    ratio = np.abs(c[:, 0] / c[:, -1])
    radius = np.where(ratio > 0, ratio ** (1.0 / d), 1.0)
    k = np.arange(d)
    wobble = np.where(k % 2 == 0, 1.15, 0.85)
    angles = TWO_PI * k / d + 0.4
    return radius[:, None] * (wobble * np.exp(1j * angles))[None, :]


def _horner_with_derivative(c: np.ndarray, z: np.ndarray):
    d = c.shape[-1] - 1
    p = np.broadcast_to(c[:, -1:], z.shape).astype(complex)
    dp = np.zeros_like(p)
    for k in range(d - 1, -1, -1):
        dp = dp * z + p
        p = p * z + c[:, k : k + 1]
    return p, dp


def _scaled_residual(c: np.ndarray, z: np.ndarray) -> np.ndarray:
    """``|p(z)| / (max|c| * max(1,|z|)^d)`` per root; reduces to ``|p| / max|c|`` inside the disk."""
    d = c.shape[-1] - 1
    p, _ = _horner_with_derivative(c, z)
    scale = np.max(np.abs(c), axis=-1, keepdims=True) * np.maximum(1.0, np.abs(z)) ** d
    return np.abs(p) / scale


def aberth_batch(coeffs: np.ndarray, max_sweeps: int = MAX_SWEEPS):
    """Simultaneous Aberth-Ehrlich iteration over a batch of polynomials.

    ``coeffs`` has shape (B, d+1), lowest degree first, with nonzero leading
    coefficients. Returns ``(roots, ok)`` where ``roots`` has shape (B, d) and
    ``ok`` marks rows meeting the residual tolerance.
    """
    c = np.asarray(coeffs, dtype=complex)
    B, d1 = c.shape
    d = d1 - 1
    if d == 1:
        roots = (-c[:, 0] / c[:, 1])[:, None]
        return roots, _scaled_residual(c, roots).max(axis=1) <= ROOT_RESIDUAL_TOL

    z = _initial_guesses(c)
    active = np.ones(B, dtype=bool)
    eye = np.eye(d, dtype=bool)
    for _ in range(max_sweeps):
        idx = np.flatnonzero(active)
        if idx.size == 0:
            break
        za, ca = z[idx], c[idx]
        p, dp = _horner_with_derivative(ca, za)
        diff = za[:, :, None] - za[:, None, :]
        diff[:, eye] = 1.0
        inv = 1.0 / diff
        inv[:, eye] = 0.0
        s = inv.sum(axis=-1)
        with np.errstate(divide="ignore", invalid="ignore"):
            newton = p / dp
            step = newton / (1.0 - newton * s)
        bad = ~np.isfinite(step)
        if bad.any():
            # p'(z) = 0 or a collision: nudge instead of dividing by zero
            step = np.where(bad, 1e-3 * (1.0 + np.abs(za)) * np.exp(0.7j), step)
        za = za - step
        z[idx] = za
        done = np.all(np.abs(step) <= STEP_TOL * np.maximum(1.0, np.abs(za)), axis=1)
        active[idx[done]] = False

    ok = _scaled_residual(c, z).max(axis=1) <= ROOT_RESIDUAL_TOL
    return z, ok


def _newton_polish(c: np.ndarray, z: np.ndarray, steps: int = 3) -> np.ndarray:
    for _ in range(steps):
        p, dp = _horner_with_derivative(c, z)
        with np.errstate(divide="ignore", invalid="ignore"):
            step = np.where(dp != 0, p / dp, 0)
        z = z - np.where(np.isfinite(step), step, 0)
    return z


def find_roots(p: Polynomial, max_sweeps: int = MAX_SWEEPS) -> list:
    """All ``degree`` roots of ``p`` with multiplicity.

    Aberth-Ehrlich first; rows that miss the residual tolerance are retried
    from companion-matrix eigenvalues followed by Newton polishing.
    """
    if p.degree == 0:
        raise DegreeZeroError("a constant polynomial has no roots")
    c = p.as_array()
    zeros_at_origin = 0
    while c[zeros_at_origin] == 0:
        zeros_at_origin += 1
    c = c[zeros_at_origin:]
    roots = [0j] * zeros_at_origin
    if c.size == 1:
        return roots

    row = c[None, :]
    z, ok = aberth_batch(row, max_sweeps)
    if not ok[0]:
        z = _newton_polish(row, np.roots(c[::-1])[None, :])
        if _scaled_residual(row, z).max() > ROOT_RESIDUAL_TOL:
            raise NoConvergenceError(
                f"root residual {_scaled_residual(row, z).max():.3g} above {ROOT_RESIDUAL_TOL}"
            )
    return roots + [complex(w) for w in z[0]]


# --------------------------------------------------------------------------
# Critical angles of u


def derivative_polynomial_coeffs(fourier: np.ndarray) -> np.ndarray:
    """Coefficients of ``T(w) = sum_k (i k a_k) w^{k+n}`` (lowest first), batched on leading axes."""
    n = (fourier.shape[-1] - 1) // 2
    k = np.arange(-n, n + 1)
    return 1j * k * fourier


def _wrap_angle(phi: float) -> float:
    phi = math.fmod(phi, TWO_PI)
    if phi < 0:
        phi += TWO_PI
    if phi >= TWO_PI - 1e-12:
        phi = 0.0
    return phi


def _profile_roots(profile: TrigProfile):
    t = derivative_polynomial_coeffs(profile.fourier)
    return find_roots(Polynomial(tuple(t)))


def _polish(profile: TrigProfile, phi: float, h: float = 1e-6) -> float:
    lo, hi = phi - h, phi + h
    flo, fhi = profile.derivative(lo), profile.derivative(hi)
    if flo == 0:
        return lo
    if fhi == 0:
        return hi
    if flo * fhi < 0:
        return brentq(profile.derivative, lo, hi, xtol=1e-16, rtol=4 * np.finfo(float).eps)
    return phi


def _dedupe_sorted(angles: list, tol: float = 1e-10) -> list:
    out = []
    for a in sorted(angles):
        if out and a - out[-1] <= tol:
            continue
        out.append(a)
    if len(out) > 1 and (out[0] + TWO_PI) - out[-1] <= tol:
        out.pop()
    return out


def split_critical_candidates(profile: TrigProfile):
    """Return ``(on_circle_angles, off_circle_angles)`` from the roots of T.

    The on-circle angles are polished, wrapped into [0, 2pi), sorted and
    deduplicated. Off-circle arguments are returned raw; callers evaluating
    extrema may include them at no risk, since extra candidates never change
    a max or a min over a superset of the true critical set.
    """
    roots = _profile_roots(profile)
    on, off = [], []
    for w in roots:
        if w == 0:
            continue
        phi = math.atan2(w.imag, w.real)
        if abs(abs(w) - 1.0) <= UNIT_CIRCLE_TOL:
            on.append(_wrap_angle(_polish(profile, phi)))
        else:
            off.append(_wrap_angle(phi))
    return _dedupe_sorted(on), off


def critical_angles(profile: TrigProfile):
    """Zeros of ``u'`` on [0, 2pi), or ``CONSTANT_PROFILE`` when u is constant."""
    if profile.is_constant:
        return CONSTANT_PROFILE
    return split_critical_candidates(profile)[0]
