"""Explicit counting bounds and exponent comparison with Schmidt's H^((n+2)/4).

Every field of degree n with |d_K| <= H has a model whose coefficients are
at most B(H), so there are at most (2 floor(B) + 1)^(r C) models, and each
model carries at most d^r isolated points (Bezout; r^r when d = r).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import mpmath

from .exact import Radical
from .model_builder import ModelParams, choose_parameters, height_bound

LOG_DPS = 30
_AUTO_PADDED_MAX = 14  # the d = r choice gives d >= 5 only from n = 15 on


def params_for(n: int, policy: str = "auto") -> ModelParams:
    """paper / padded as in choose_parameters; auto = paper once it yields d >= 5."""
    if policy == "auto":
        policy = "paper" if n > _AUTO_PADDED_MAX else "padded"
    return choose_parameters(n, policy)


def _log10_coeff_bound(params: ModelParams, log10H: mpmath.mpf, dps: int) -> mpmath.mpf:
    n, r, d, C, ell = params.n, params.r, params.d, params.C, params.ell
    X = n * n * d * (r + 1)
    with mpmath.workdps(dps):
        return (mpmath.mpf(ell) / (2 * n) * mpmath.log10(ell)
                + mpmath.log10(C) / 2 + d * mpmath.log10(X)
                + mpmath.mpf(2 * d) / n * log10H)


def log10_box_size(log10B: mpmath.mpf, dps: int = LOG_DPS) -> mpmath.mpf:
    """log10(2 floor(B) + 1) from log10 B."""
    with mpmath.workdps(dps + 20):
        if log10B < 2 * dps:
            B = mpmath.power(10, log10B)
            return mpmath.log10(2 * mpmath.floor(B) + 1)
        # floor and the +1 only move the result by about 10^(-log10 B)
        return mpmath.log10(2) + log10B


@dataclass(frozen=True)
class CountBound:
    n: int
    log10H: mpmath.mpf
    params: ModelParams
    log10B: mpmath.mpf
    log10_models: mpmath.mpf
    log10_fields: mpmath.mpf
    multiplicity: int
    B: Optional[Radical]  # exact when H = 10^log10H is a manageable integer

    @property
    def schmidt_exponent(self) -> Fraction:
        return Fraction(self.n + 2, 4)

    @property
    def paper_H_exponent(self) -> Fraction:
        p = self.params
        return Fraction(2 * p.d, p.n) * p.r * p.C

    def to_json(self) -> dict:
        p = self.params
        fmt = lambda x: mpmath.nstr(x, LOG_DPS)  # noqa: E731
        return {
            "n": self.n, "log10H": mpmath.nstr(self.log10H, LOG_DPS), "r": p.r, "d": p.d, "C": p.C,
            "ell": p.ell, "policy": p.policy,
            "log10_B": fmt(self.log10B),
            "B": None if self.B is None else self.B.to_json(),
            "log10_models": fmt(self.log10_models),
            "multiplicity": self.multiplicity,
            "log10_fields": fmt(self.log10_fields),
            "paper_H_exponent": str(self.paper_H_exponent),
            "schmidt_exponent": str(self.schmidt_exponent),
        }


def count_bound(n: int, log10H=None, policy: str = "auto", H: Optional[int] = None) -> CountBound:
    """Explicit bound on the number of degree-n fields with |d_K| <= H.

    Give either log10H (any rational) or the integer H itself.
    """
    if (log10H is None) == (H is None):
        raise ValueError("give exactly one of log10H and H")
    if n < 2:
        raise ValueError("n must be at least 2")
    dps = LOG_DPS + 20
    if H is not None:
        if H < 1:
            raise ValueError("H must be at least 1")
        with mpmath.workdps(dps):
            lh = mpmath.log10(H)
    else:
        log10H = Fraction(log10H)
        if log10H < 0:
            raise ValueError("H must be at least 1")
        with mpmath.workdps(dps):
            lh = mpmath.mpf(log10H.numerator) / log10H.denominator
        if log10H.denominator == 1 and log10H <= 64:
            H = 10 ** int(log10H)
    params = params_for(n, policy)
    r, d, C = params.r, params.d, params.C
    log10B = _log10_coeff_bound(params, lh, dps)
    with mpmath.workdps(dps):
        models = r * C * log10_box_size(log10B)
        mult = d ** r
        fields = models + mpmath.log10(mult)
    B = height_bound(params, H).B if H is not None else None
    return CountBound(n, lh, params, log10B, models, fields, mult, B)


@dataclass(frozen=True)
class ExponentRow:
    n: int
    r: int
    d: int
    C: int
    paper_H_exponent: Fraction
    schmidt_exponent: Fraction

    @property
    def winner(self) -> str:
        return "paper" if self.paper_H_exponent < self.schmidt_exponent else "schmidt"

    def to_json(self) -> dict:
        return {"n": self.n, "r": self.r, "d": self.d, "C": self.C,
                "paper_H_exponent": str(self.paper_H_exponent),
                "paper_H_exponent_approx": float(self.paper_H_exponent),
                "schmidt_exponent": str(self.schmidt_exponent), "winner": self.winner}


def exponent_summary(n: int, policy: str = "auto") -> ExponentRow:
    p = params_for(n, policy)
    return ExponentRow(n, p.r, p.d, p.C, Fraction(2 * p.d, n) * p.r * p.C, Fraction(n + 2, 4))


def _segment_end(n: int, policy: str) -> int:
    """Largest n' >= n giving the same (r, d) as n."""
    p = params_for(n, policy)
    if policy == "auto" and n <= _AUTO_PADDED_MAX:
        hi = n
        while hi < _AUTO_PADDED_MAX and params_for(hi + 1, policy) == p:
            hi += 1
        return hi
    return p.C // (p.r + 1)


def crossover(n_from: int = 2, n_to: int = 10 ** 9, policy: str = "auto") -> Optional[int]:
    """Smallest n in [n_from, n_to] where the explicit exponent beats (n+2)/4.

    Within a run of n sharing (r, d) the explicit exponent decreases and
    Schmidt's increases, so each run is bisected.
    """
    n = n_from
    while n <= n_to:
        end = min(_segment_end(n, policy), n_to)
        if exponent_summary(end, policy).winner == "paper":
            lo, hi = n, end
            while lo < hi:
                mid = (lo + hi) // 2
                if exponent_summary(mid, policy).winner == "paper":
                    hi = mid
                else:
                    lo = mid + 1
            return lo
        n = end + 1
    return None


def scan(n_from: int, n_to: int, points: int = 8, policy: str = "auto") -> list[ExponentRow]:
    """Exponent rows at roughly log-spaced n between n_from and n_to."""
    if points < 2 or n_from == n_to:
        ns = [n_from]
    else:
        ratio = (n_to / n_from) ** (1 / (points - 1))
        ns = sorted({min(n_to, max(n_from, round(n_from * ratio ** k))) for k in range(points)})
    return [exponent_summary(n, policy) for n in ns]


def log_cube_constant(n_from: int = 10 ** 2, n_to: int = 10 ** 9, points: int = 50) -> float:
    """max over a scan of paper_H_exponent / ln(n)^3 under the d = r policy."""
    rows = scan(n_from, n_to, points, "paper")
    return max(float(row.paper_H_exponent) / math.log(row.n) ** 3 for row in rows)
