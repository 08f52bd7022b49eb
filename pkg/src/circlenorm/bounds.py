"""Lower-bound constants for the discrete norm and the theorem verifier.

All three constants bound ``max_{w^N=1} |P(w)| / max_{|z|=1} |P(z)|`` from
below for polynomials of degree n sampled on N > n roots of unity:

* ``cos(pi n / 2N)``                 -- main bound, proven for N >= 2n
* ``sqrt((N - n) / N)``              -- Sheil-Small (see ``SheilSmallForm``)
* ``1 / (1 + C log(N / (N - n)))``   -- Rakhmanov-Shekhtman, C about 16
"""

from __future__ import annotations

import csv
import enum
import io
import math
from dataclasses import dataclass

import numpy as np

from .circle_norms import discrete_norm, discrete_norms, uniform_extrema, uniform_norms
from .errors import DegreeZeroError, NotMultipleError, OutOfRangeError
from .poly_core import Polynomial

RAKHMANOV_C = 16.0
SLACK_TOL = 1e-9


class SheilSmallForm(enum.Enum):
    # sqrt((N-n)/N); matches the claimed coincidence with cos(pi n/2N) at N = 2n
    CONSISTENT = "consistent"
    # sqrt((N-n)/n) as typeset; equals 1 at N = 2n and exceeds 1 beyond it
    AS_PRINTED = "as_printed"


class BoundName(enum.Enum):
    COSINE = "cosine"
    SHEIL_SMALL = "sheil_small"
    RAKHMANOV = "rakhmanov"


def _check_range(n: int, N: int) -> None:
    if n < 1:
        raise OutOfRangeError(f"degree must be >= 1, got n={n}")
    if N <= n:
        raise OutOfRangeError(f"need N > n, got n={n}, N={N}")


def cosine_bound(n: int, N: int) -> float:
    _check_range(n, N)
    return math.cos(math.pi * n / (2 * N))


def sheil_small_bound(n: int, N: int, form: SheilSmallForm = SheilSmallForm.CONSISTENT) -> float:
    _check_range(n, N)
    if form is SheilSmallForm.CONSISTENT:
        return math.sqrt((N - n) / N)
    return math.sqrt((N - n) / n)


def rakhmanov_bound(n: int, N: int, C: float = RAKHMANOV_C, log_base: float | None = None) -> float:
    """``(1 + C log(N/(N-n)))^-1``; natural log unless ``log_base`` is given."""
    _check_range(n, N)
    if C < 0:
        raise OutOfRangeError(f"C must be >= 0, got {C}")
    # log1p keeps accuracy when n << N
    ln = math.log1p(n / (N - n))
    if log_base is not None:
        ln /= math.log(log_base)
    return 1.0 / (1.0 + C * ln)


@dataclass(frozen=True)
class BoundsComparison:
    n: int
    N: int
    cosine: float
    sheil_small: float
    sheil_small_printed: float
    rakhmanov: float
    C: float
    applicable_cosine_strict: bool
    applicable_cosine_extended: bool
    best: BoundName

    CSV_FIELDS = ("n", "N", "cosine", "sheil_small", "sheil_small_printed", "rakhmanov", "best")

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "N": self.N,
            "cosine": self.cosine,
            "sheil_small": self.sheil_small,
            "sheil_small_printed": self.sheil_small_printed,
            "rakhmanov": self.rakhmanov,
            "C": self.C,
            "applicable_cosine_strict": self.applicable_cosine_strict,
            "applicable_cosine_extended": self.applicable_cosine_extended,
            "best": self.best.value,
        }

    def csv_row(self) -> list:
        d = self.to_json()
        return [d[k] for k in self.CSV_FIELDS]


def compare_bounds(n: int, N: int, C: float = RAKHMANOV_C, strict: bool = True) -> BoundsComparison:
    """Evaluate all three constants.

    In strict mode the main bound only competes for ``best`` when N >= 2n.
    Ties go to cosine, then sheil_small, then rakhmanov.
    """
    cos_b = cosine_bound(n, N)
    ss = sheil_small_bound(n, N)
    rk = rakhmanov_bound(n, N, C)
    is_strict = N >= 2 * n
    candidates = []
    if is_strict or not strict:
        candidates.append((cos_b, BoundName.COSINE))
    candidates += [(ss, BoundName.SHEIL_SMALL), (rk, BoundName.RAKHMANOV)]
    best = candidates[0]
    for cand in candidates[1:]:
        if cand[0] > best[0]:
            best = cand
    return BoundsComparison(
        n=n,
        N=N,
        cosine=cos_b,
        sheil_small=ss,
        sheil_small_printed=sheil_small_bound(n, N, SheilSmallForm.AS_PRINTED),
        rakhmanov=rk,
        C=C,
        applicable_cosine_strict=is_strict,
        applicable_cosine_extended=True,
        best=best[1],
    )


def comparisons_csv(rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(BoundsComparison.CSV_FIELDS)
    for r in rows:
        w.writerow(r.csv_row())
    return buf.getvalue()


@dataclass(frozen=True)
class TheoremCheck:
    lhs: float
    rhs: float
    slack: float
    holds: bool
    M: float
    n: int
    N: int
    strict: bool

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "N": self.N,
            "strict": self.strict,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "slack": self.slack,
            "M": self.M,
            "holds": self.holds,
        }


def _check_mode(n: int, N: int, strict: bool) -> None:
    if n < 1:
        raise DegreeZeroError("the bound needs a polynomial of degree >= 1")
    if strict and N < 2 * n:
        raise OutOfRangeError(f"strict mode needs N >= 2n, got n={n}, N={N}")
    _check_range(n, N)


def verify_theorem(p: Polynomial, N: int, strict: bool = True) -> TheoremCheck:
    """Check ``max_{w^N=1}|P(w)| >= cos(pi n/2N) M(P)`` numerically."""
    n = p.degree
    _check_mode(n, N, strict)
    M = uniform_extrema(p).M
    lhs = discrete_norm(p, N).value
    rhs = cosine_bound(n, N) * M
    slack = lhs - rhs
    return TheoremCheck(
        lhs=lhs, rhs=rhs, slack=slack, holds=slack >= -SLACK_TOL * M, M=M, n=n, N=N, strict=strict
    )


def verify_theorem_many(coeffs: np.ndarray, N: int, strict: bool = True):
    """Batched :func:`verify_theorem` over same-degree rows.

    Returns a dict of arrays keyed lhs, rhs, slack, M, holds.
    """
    c = np.asarray(coeffs, dtype=complex)
    n = c.shape[1] - 1
    _check_mode(n, N, strict)
    M, _ = uniform_norms(c)
    lhs = discrete_norms(c, N)
    rhs = cosine_bound(n, N) * M
    slack = lhs - rhs
    return {"lhs": lhs, "rhs": rhs, "slack": slack, "M": M, "holds": slack >= -SLACK_TOL * M}


def sup_ratio(n: int, N: int) -> float:
    """Exact ``sup_P M(P) / max_{w^N=1}|P(w)|`` when n divides N and N >= 2n."""
    _check_range(n, N)
    if N % n:
        raise NotMultipleError(f"N={N} is not a multiple of n={n}; no sup value is known")
    if N < 2 * n:
        raise OutOfRangeError(f"need N >= 2n, got n={n}, N={N}")
    return 1.0 / math.cos(math.pi * n / (2 * N))
