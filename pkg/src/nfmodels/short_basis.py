"""n independent algebraic integers of small sup-norm.

The ring of integers is LLL-reduced for the canonical metric. If some
reduced vector is longer than |d_K|^(2/n), the pairwise products of the
m = ceil((n+1)/2) shortest vectors are pooled with the reduced basis and n
independent elements are picked greedily by certified norm. Those
products always have full rank because O is an integral domain.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .embeddings import (
    DEFAULT_PRECISION,
    RootEnclosures,
    canonical_gram,
    embed,
    roots_for_field,
)
from .lattice import IntLattice, NotPositiveDefinite, exact_rank, lll_reduce
from .nf_core import FieldElement, NumberField, element_mul


class InputIntegrityError(RuntimeError):
    """The input cannot be the ring of integers of a field."""


@dataclass(frozen=True)
class BalancedSet:
    elems: tuple[FieldElement, ...]
    norm_bounds: tuple[tuple[Fraction, Fraction], ...]  # certified [lower, upper]
    dK_abs: int
    product_step: bool
    slack_used: Fraction  # max(1, largest upper bound / target) rounded up

    @property
    def n(self) -> int:
        return len(self.elems)

    @property
    def target(self) -> float:
        return self.dK_abs ** (2 / self.n)

    @property
    def max_norm_upper(self) -> Fraction:
        return max(u for _, u in self.norm_bounds)


def _normalise_sign(v: tuple[int, ...]) -> tuple[int, ...]:
    for x in v:
        if x:
            return v if x > 0 else tuple(-y for y in v)
    return v


def within_power_bound(norm: Fraction, dK_abs: int, n: int, slack_sq_pow: int = 0) -> bool:
    """Exact test of norm <= 2^(slack_sq_pow/2) * |d_K|^(2/n).

    Raised to the power 2n: norm^(2n) <= 2^(n*slack_sq_pow) * |d_K|^4.
    """
    return Fraction(norm) ** (2 * n) <= Fraction(2) ** (n * slack_sq_pow) * Fraction(dK_abs) ** 4


def _ratio_upper(norm: Fraction, dK_abs: int, n: int) -> Fraction:
    """A rational upper bound for norm / |d_K|^(2/n) (float-assisted, then padded)."""
    approx = float(norm) / dK_abs ** (2 / n)
    return Fraction(approx) * Fraction(1000001, 1000000)


def balanced_independent_set(K: NumberField, roots: RootEnclosures | None = None,
                             p: int = DEFAULT_PRECISION) -> BalancedSet:
    n = K.degree
    if roots is None:
        roots = roots_for_field(K, p)
    while True:
        gram = canonical_gram(K, roots)
        try:
            red = lll_reduce(IntLattice(gram_matrix=[list(r) for r in gram.entries]))
            break
        except NotPositiveDefinite:
            roots = roots_for_field(K, 2 * roots.precision)
    reduced = [_normalise_sign(tuple(row)) for row in red.transform]

    def entry(coords):
        el = FieldElement(coords)
        lo, hi = embed(el, roots, K)[1]
        return (hi, coords), el, (lo, hi)

    scored = sorted((entry(c) for c in reduced), key=lambda t: t[0])
    product_step = not all(within_power_bound(s[2][1], K.abs_discriminant, n)
                           for s in scored)
    pool = list(scored)
    if product_step:
        m = (n + 2) // 2
        short = [s[1] for s in scored[:m]]
        seen = {s[0][1] for s in scored}
        for i in range(m):
            for j in range(i, m):
                c = _normalise_sign(element_mul(short[i], short[j], K).coords)
                if c not in seen and any(c):
                    seen.add(c)
                    pool.append(entry(c))
        pool.sort(key=lambda t: t[0])
    chosen, bounds, rows = [], [], []
    for _, el, b in pool:
        if exact_rank(rows + [list(el.coords)]) > len(rows):
            rows.append(list(el.coords))
            chosen.append(el)
            bounds.append(b)
            if len(chosen) == n:
                break
    if len(chosen) < n:
        raise InputIntegrityError("products of short elements do not reach rank n")
    top = max(u for _, u in bounds)
    slack = max(Fraction(1), _ratio_upper(top, K.abs_discriminant, n))
    return BalancedSet(tuple(chosen), tuple(bounds), K.abs_discriminant, product_step, slack)


@dataclass(frozen=True)
class Prop1Report:
    ratios: tuple[float, ...]
    passed: bool  # every norm <= 2^((n-1)/2) |d_K|^(2/n)
    unslacked_held: bool  # every norm <= |d_K|^(2/n)

    def to_json(self) -> dict:
        return {"ratios": list(self.ratios), "status": "PASS" if self.passed else "FAIL",
                "unslacked_bound_held": self.unslacked_held}


def prop1_report(bset: BalancedSet, K: NumberField) -> Prop1Report:
    n, dK = K.degree, K.abs_discriminant
    ups = [u for _, u in bset.norm_bounds]
    ratios = tuple(float(u) / dK ** (2 / n) for u in ups)
    passed = all(within_power_bound(u, dK, n, n - 1) for u in ups)
    held = all(within_power_bound(u, dK, n) for u in ups)
    return Prop1Report(ratios, passed, held)
