"""Extremal search for ``M(P) / max_{w^N=1} |P(w)|`` and the equality witness."""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field, replace

import numpy as np

from .bounds import cosine_bound, rakhmanov_bound, sheil_small_bound, sup_ratio
from .circle_norms import discrete_norm, discrete_norms, uniform_extrema, uniform_norms
from .errors import AllRestartsFailedError, NoConvergenceError, OutOfRangeError, TheoremViolationError
from .poly_core import Polynomial

PENALTY = 1e3
COLLAPSE_TOL = 1e-6
SAFETY_TOL = 1e-9
SHARPNESS_TOL = 1e-10


def make_witness(n: int, N: int) -> Polynomial:
    """``(z e^{i pi/N})^n + 1``."""
    if n < 1 or N < 1:
        raise OutOfRangeError(f"need n >= 1 and N >= 1, got n={n}, N={N}")
    coeffs = [0j] * (n + 1)
    coeffs[0] = 1 + 0j
    coeffs[n] = complex(math.cos(n * math.pi / N), math.sin(n * math.pi / N))
    return Polynomial(tuple(coeffs))


@dataclass(frozen=True)
class SharpnessReport:
    n: int
    l: int
    M: float
    grid_value: float
    ratio: float
    expected_grid: float
    expected_ratio: float
    passed: bool

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "l": self.l,
            "N": self.n * self.l,
            "M": self.M,
            "grid_value": self.grid_value,
            "expected_grid": self.expected_grid,
            "ratio": self.ratio,
            "expected_ratio": self.expected_ratio,
            "pass": self.passed,
        }


def verify_sharpness(n: int, l: int) -> SharpnessReport:
    """Witness for N = n l: M = 2, grid max = 2 cos(pi/2l), ratio = 1/cos(pi n/2N)."""
    if n < 1 or l < 2:
        raise OutOfRangeError(f"need n >= 1 and l >= 2, got n={n}, l={l}")
    N = n * l
    p = make_witness(n, N)
    M = uniform_extrema(p).M
    grid = discrete_norm(p, N).value
    ratio = M / grid
    exp_grid = 2.0 * math.cos(math.pi / (2 * l))
    exp_ratio = 1.0 / cosine_bound(n, N)
    ok = (
        abs(M - 2.0) <= SHARPNESS_TOL
        and abs(grid - exp_grid) <= SHARPNESS_TOL
        and abs(ratio - exp_ratio) <= SHARPNESS_TOL
    )
    return SharpnessReport(n, l, M, grid, ratio, exp_grid, exp_ratio, ok)


# --------------------------------------------------------------------------
# search


@dataclass(frozen=True)
class SearchConfig:
    n: int
    N: int
    restarts: int = 64
    max_iters: int = 2000
    seed: int = 0
    simplex_tolerance: float = 1e-10

    def validate(self) -> None:
        if self.n < 1 or self.N <= self.n:
            raise OutOfRangeError(f"need n >= 1 and N > n, got n={self.n}, N={self.N}")
        if self.restarts < 1 or self.max_iters < 1:
            raise OutOfRangeError("restarts and max_iters must be >= 1")


@dataclass
class SearchResult:
    best_poly: Polynomial
    best_ratio: float
    theoretical_sup: float | None
    gap: float | None
    restarts_used: int
    evaluations: int
    trace: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "best_poly": self.best_poly.to_json(),
            "best_ratio": self.best_ratio,
            "theoretical_sup": self.theoretical_sup,
            "gap": self.gap,
            "restarts_used": self.restarts_used,
            "evaluations": self.evaluations,
            "restart_best": list(self.trace),
        }


def _theoretical_sup(n: int, N: int) -> float | None:
    if N % n == 0 and N >= 2 * n:
        return sup_ratio(n, N)
    return None


class _Objective:
    """Batched ``-ratio`` with a penalty on degree collapse.

    Evaluates rows of real vectors ``[Re c_0..c_n, Im c_0..c_n]`` and enforces
    the proven bound on every candidate.
    """

    def __init__(self, n: int, N: int):
        self.n, self.N = n, N
        self.limit = 1.0 / cosine_bound(n, N) + SAFETY_TOL if N >= 2 * n else None
        self.evaluations = 0

    def ratios(self, X: np.ndarray) -> np.ndarray:
        """Ratio per row; NaN marks a collapsed or degenerate candidate."""
        X = np.atleast_2d(X)
        c = X[:, : self.n + 1] + 1j * X[:, self.n + 1 :]
        scale = np.max(np.abs(c), axis=1)
        # the ratio is scale invariant, so collapse is judged relative to the largest coefficient
        valid = (scale > 0) & (np.abs(c[:, -1]) >= COLLAPSE_TOL * scale)
        out = np.full(X.shape[0], np.nan)
        if not valid.any():
            return out
        rows = c[valid] / scale[valid, None]
        try:
            M, _ = uniform_norms(rows)
        except NoConvergenceError:
            M = np.array([self._single_M(r) for r in rows])
        grid = discrete_norms(rows, self.N)
        with np.errstate(divide="ignore", invalid="ignore"):
            r = np.where((M > 0) & (grid > 0), M / grid, np.nan)
        if self.limit is not None and np.any(r > self.limit):
            j = int(np.nanargmax(r))
            raise TheoremViolationError(
                f"ratio {r[j]!r} exceeds 1/cos(pi n/2N) for n={self.n}, N={self.N}: "
                f"coeffs={rows[j].tolist()}"
            )
        out[valid] = r
        return out

    @staticmethod
    def _single_M(row: np.ndarray) -> float:
        try:
            return uniform_extrema(Polynomial(tuple(row))).M
        except NoConvergenceError:
            return math.nan

    def __call__(self, X: np.ndarray) -> np.ndarray:
        X = np.atleast_2d(X)
        self.evaluations += X.shape[0]
        r = self.ratios(X)
        return np.where(np.isnan(r), PENALTY, -r)


def nelder_mead_batch(fun, x0s: np.ndarray, max_iters: int, xatol: float, fatol: float):
    """Independent adaptive Nelder-Mead runs advanced in lockstep.

    ``fun`` maps an (m, d) array to m values. Every run follows exactly the
    moves it would make alone (coefficients and initial simplex as in
    scipy's ``adaptive=True`` variant); batching only amortizes ``fun``.
    Returns ``(x_best, f_best, iterations)`` per run.
    """
    x0s = np.asarray(x0s, dtype=float)
    R, d = x0s.shape
    rho, chi, psi, sigma = 1.0, 1.0 + 2.0 / d, 0.75 - 1.0 / (2.0 * d), 1.0 - 1.0 / d

    sim = np.repeat(x0s[:, None, :], d + 1, axis=1)
    for j in range(d):
        col = sim[:, j + 1, j]
        sim[:, j + 1, j] = np.where(col != 0, 1.05 * col, 0.00025)
    fs = fun(sim.reshape(-1, d)).reshape(R, d + 1)

    def sort(idx):
        order = np.argsort(fs[idx], axis=1, kind="stable")
        sim[idx] = np.take_along_axis(sim[idx], order[:, :, None], axis=1)
        fs[idx] = np.take_along_axis(fs[idx], order, axis=1)

    all_idx = np.arange(R)
    sort(all_idx)
    iters = np.zeros(R, dtype=int)
    active = np.ones(R, dtype=bool)

    while True:
        spread_x = np.max(np.abs(sim[:, 1:] - sim[:, :1]), axis=(1, 2))
        spread_f = np.max(np.abs(fs[:, 1:] - fs[:, :1]), axis=1)
        active &= ~((spread_x <= xatol) & (spread_f <= fatol)) & (iters < max_iters)
        a = np.flatnonzero(active)
        if a.size == 0:
            break
        iters[a] += 1

        xbar = sim[a, :-1].mean(axis=1)
        worst = sim[a, -1]
        xr = (1 + rho) * xbar - rho * worst
        fr = fun(xr)
        f0, f_second, f_worst = fs[a, 0], fs[a, -2], fs[a, -1]

        expand = fr < f0
        accept_r = ~expand & (fr < f_second)
        outside = ~expand & ~accept_r & (fr < f_worst)
        inside = ~expand & ~accept_r & ~outside

        trial = np.empty_like(xr)
        trial[expand] = ((1 + rho * chi) * xbar - rho * chi * worst)[expand]
        trial[outside] = ((1 + psi * rho) * xbar - psi * rho * worst)[outside]
        trial[inside] = ((1 - psi) * xbar + psi * worst)[inside]
        need = expand | outside | inside
        ft = np.full(a.size, np.nan)
        if need.any():
            ft[need] = fun(trial[need])

        new_x = xr.copy()
        new_f = fr.copy()
        take_e = expand & (ft < fr)
        new_x[take_e], new_f[take_e] = trial[take_e], ft[take_e]
        ok_out = outside & (ft <= fr)
        ok_in = inside & (ft < f_worst)
        new_x[ok_out | ok_in], new_f[ok_out | ok_in] = trial[ok_out | ok_in], ft[ok_out | ok_in]
        shrink = (outside & ~ok_out) | (inside & ~ok_in)

        keep = ~shrink
        sim[a[keep], -1] = new_x[keep]
        fs[a[keep], -1] = new_f[keep]
        if shrink.any():
            s_idx = a[shrink]
            best = sim[s_idx, :1]
            sim[s_idx, 1:] = best + sigma * (sim[s_idx, 1:] - best)
            fs[s_idx, 1:] = fun(sim[s_idx, 1:].reshape(-1, d)).reshape(s_idx.size, d)
        sort(a)

    return sim[:, 0].copy(), fs[:, 0].copy(), iters


def _to_vector(p: Polynomial) -> np.ndarray:
    c = p.as_array()
    return np.concatenate([c.real, c.imag])


def _start_point(cfg: SearchConfig, restart: int) -> np.ndarray:
    rng = np.random.default_rng([cfg.seed, restart])
    dim = 2 * (cfg.n + 1)
    if restart == 0:
        return _to_vector(make_witness(cfg.n, cfg.N)) + 1e-3 * rng.standard_normal(dim)
    return rng.standard_normal(dim)


def search_extremal(cfg: SearchConfig) -> SearchResult:
    """Multi-start Nelder-Mead on the 2(n+1) real coefficient parts.

    Restart 0 starts next to the witness; the others from unit Gaussians.
    Each restart draws from its own ``default_rng([seed, restart])`` stream,
    and the best restart wins, ties going to the lowest index.
    """
    cfg.validate()
    obj = _Objective(cfg.n, cfg.N)
    x0s = np.stack([_start_point(cfg, i) for i in range(cfg.restarts)])
    xs, _, _ = nelder_mead_batch(obj, x0s, cfg.max_iters, cfg.simplex_tolerance, cfg.simplex_tolerance)
    ratios = obj.ratios(xs)
    if np.all(np.isnan(ratios)):
        raise AllRestartsFailedError("every restart collapsed the leading coefficient")
    best_i = int(np.nanargmax(ratios))
    best_r = float(ratios[best_i])

    c = xs[best_i, : cfg.n + 1] + 1j * xs[best_i, cfg.n + 1 :]
    sup = _theoretical_sup(cfg.n, cfg.N)
    return SearchResult(
        best_poly=Polynomial(tuple(c / np.max(np.abs(c)))),
        best_ratio=best_r,
        theoretical_sup=sup,
        gap=None if sup is None else sup - best_r,
        restarts_used=cfg.restarts,
        evaluations=obj.evaluations,
        trace=[float(r) for r in ratios],
    )


# --------------------------------------------------------------------------
# tables

TABLE_FIELDS = (
    "n",
    "N",
    "best_ratio",
    "theoretical_sup",
    "cosine_inv",
    "cosine_mode",
    "sheil_small_inv",
    "rakhmanov_inv",
)


def sweep_table(n_range, N_range, cfg_base: SearchConfig) -> list:
    """Search every valid (n, N) pair and list it beside the inverted bound constants.

    Pairs with N <= n are skipped. ``cosine_mode`` is "strict" when N >= 2n and
    "extended" otherwise; ``theoretical_sup`` is None unless n divides N.
    """
    rows = []
    for n in n_range:
        for N in N_range:
            if N <= n:
                continue
            res = search_extremal(replace(cfg_base, n=n, N=N))
            rows.append(
                {
                    "n": n,
                    "N": N,
                    "best_ratio": res.best_ratio,
                    "theoretical_sup": res.theoretical_sup,
                    "cosine_inv": 1.0 / cosine_bound(n, N),
                    "cosine_mode": "strict" if N >= 2 * n else "extended",
                    "sheil_small_inv": 1.0 / sheil_small_bound(n, N),
                    "rakhmanov_inv": 1.0 / rakhmanov_bound(n, N),
                }
            )
    if not rows:
        raise OutOfRangeError("no (n, N) pair with N > n in the given ranges")
    return rows


def table_csv(rows, fmt=lambda v: v) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(TABLE_FIELDS)
    for r in rows:
        w.writerow(["" if r[k] is None else fmt(r[k]) for k in TABLE_FIELDS])
    return buf.getvalue()
