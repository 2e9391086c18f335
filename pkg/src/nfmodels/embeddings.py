"""Certified archimedean data: root enclosures, embeddings, sup-norms and
the canonical (T2) Gram matrix.

Numbers are complex balls with exact dyadic centres and rational radii.
Approximate roots come from mpmath; their enclosures are certified with a
Gershgorin argument on the Weierstrass correction (each disc of radius
n*|f(z_i) / prod_{j != i}(z_i - z_j)| around z_i holds exactly one root
once the discs are pairwise disjoint).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import mpmath

from .exact import round_dyadic, sqrt_lower, sqrt_upper
from .lattice import determinant
from .nf_core import FieldElement, NumberField

DEFAULT_PRECISION = 128
MAX_PRECISION = 1 << 14


class PrecisionExhausted(ArithmeticError):
    """Enclosures could not be separated; retry with a larger precision."""

    def __init__(self, msg: str, precision: int):
        super().__init__(msg)
        self.precision = precision


@dataclass(frozen=True)
class Ball:
    """Closed complex disc {z : |z - (re + i im)| <= rad}."""

    re: Fraction
    im: Fraction
    rad: Fraction

    @staticmethod
    def exact(x, y=0) -> "Ball":
        return Ball(Fraction(x), Fraction(y), Fraction(0))

    def abs_upper(self, bits: int = 128) -> Fraction:
        return sqrt_upper(self.re ** 2 + self.im ** 2, bits) + self.rad

    def abs_lower(self, bits: int = 128) -> Fraction:
        return max(Fraction(0), sqrt_lower(self.re ** 2 + self.im ** 2, bits) - self.rad)

    def __add__(self, o: "Ball") -> "Ball":
        return Ball(self.re + o.re, self.im + o.im, self.rad + o.rad)

    def __sub__(self, o: "Ball") -> "Ball":
        return Ball(self.re - o.re, self.im - o.im, self.rad + o.rad)

    def mul(self, o: "Ball", bits: int) -> "Ball":
        re = self.re * o.re - self.im * o.im
        im = self.re * o.im + self.im * o.re
        rad = (sqrt_upper(self.re ** 2 + self.im ** 2, bits) * o.rad
               + sqrt_upper(o.re ** 2 + o.im ** 2, bits) * self.rad
               + self.rad * o.rad)
        return Ball(re, im, rad).rounded(bits)

    def scale(self, c: Fraction) -> "Ball":
        c = Fraction(c)
        return Ball(self.re * c, self.im * c, self.rad * abs(c))

    def conj(self) -> "Ball":
        return Ball(self.re, -self.im, self.rad)

    def rounded(self, bits: int) -> "Ball":
        re, im = round_dyadic(self.re, bits), round_dyadic(self.im, bits)
        err = abs(re - self.re) + abs(im - self.im)
        rad = self.rad + err
        if rad.denominator.bit_length() > bits + 2:
            num = -((-rad.numerator << (bits + 1)) // rad.denominator)
            rad = Fraction(num, 1 << (bits + 1))
        return Ball(re, im, rad)

    def contains(self, x, y=0) -> bool:
        return (Fraction(x) - self.re) ** 2 + (Fraction(y) - self.im) ** 2 <= self.rad ** 2

    def overlaps(self, o: "Ball") -> bool:
        return (self.re - o.re) ** 2 + (self.im - o.im) ** 2 <= (self.rad + o.rad) ** 2

    def to_json(self) -> dict:
        digits = 40
        with mpmath.workdps(digits):
            return {
                "re": mpmath.nstr(mpmath.mpf(self.re.numerator) / self.re.denominator, digits),
                "im": mpmath.nstr(mpmath.mpf(self.im.numerator) / self.im.denominator, digits),
                "radius": mpmath.nstr(mpmath.mpf(self.rad.numerator) / self.rad.denominator, 5),
            }


@dataclass(frozen=True)
class RootEnclosures:
    precision: int
    reals: tuple[Ball, ...]
    complex_pairs: tuple[Ball, ...]  # representatives with positive imaginary part

    @property
    def radius(self) -> Fraction:
        return max((b.rad for b in self.reals + self.complex_pairs), default=Fraction(0))

    @property
    def all_roots(self) -> list[Ball]:
        """One ball per embedding tau_k: reals, then each pair and its conjugate."""
        out = list(self.reals)
        for b in self.complex_pairs:
            out += [b, b.conj()]
        return out


# ---------------------------------------------------------------------------
# root isolation
# ---------------------------------------------------------------------------

def _eval_exact(f: Sequence[int], re: Fraction, im: Fraction) -> tuple[Fraction, Fraction]:
    ar, ai = Fraction(0), Fraction(0)
    for c in reversed(f):
        ar, ai = ar * re - ai * im + c, ar * im + ai * re
    return ar, ai


def _to_fraction(x: mpmath.mpf, bits: int) -> Fraction:
    sign, man, exp, _ = x._mpf_
    if not man:
        return Fraction(0)
    v = Fraction(int(man)) * Fraction(2) ** int(exp)
    return round_dyadic(-v if sign else v, bits)


def _certify(f: Sequence[int], centres: list[tuple[Fraction, Fraction]], bits: int):
    """Radii n*|W_i| for the given approximations, or None if not separated."""
    n = len(centres)
    radii = []
    for i, (zr, zi) in enumerate(centres):
        fr, fi = _eval_exact(f, zr, zi)
        num = fr * fr + fi * fi
        den = Fraction(1)
        for j, (wr, wi) in enumerate(centres):
            if j != i:
                den *= (zr - wr) ** 2 + (zi - wi) ** 2
        if den == 0:
            return None
        radii.append(n * sqrt_upper(num / den, bits + 8))
    for i in range(n):
        for j in range(i + 1, n):
            d2 = (centres[i][0] - centres[j][0]) ** 2 + (centres[i][1] - centres[j][1]) ** 2
            if d2 <= (radii[i] + radii[j]) ** 2:
                return None
    return radii


def complex_roots(f: Sequence[int], p: int = DEFAULT_PRECISION) -> RootEnclosures:
    """Certified enclosures of all roots of a monic squarefree integer polynomial.

    Each enclosure has radius <= 2^-p. Reals come first in ascending order,
    then one representative per conjugate pair sorted by (re, im).
    """
    f = [int(c) for c in f]
    n = len(f) - 1
    target = Fraction(1, 1 << p)
    work = p + 32
    while work <= MAX_PRECISION:
        result = _try_isolate(f, n, p, work, target)
        if result is not None:
            return result
        work *= 2
    raise PrecisionExhausted(f"could not isolate roots at {work // 2} bits", p)


def _try_isolate(f, n, p, work, target):
    with mpmath.workprec(work + 16):
        try:
            approx = mpmath.polyroots(list(reversed(f)), maxsteps=200 + 10 * work,
                                      extraprec=work)
        except mpmath.libmp.libhyper.NoConvergence:
            return None
        approx = [mpmath.mpc(z) for z in approx]
    small = Fraction(1, 1 << (work // 2))
    reals, uppers = [], []
    for z in approx:
        zr, zi = _to_fraction(z.real, work), _to_fraction(z.imag, work)
        if abs(zi) < small:
            reals.append(zr)
        elif zi > 0:
            uppers.append((zr, zi))
    if len(reals) + 2 * len(uppers) != n:
        return None
    centres = [(x, Fraction(0)) for x in reals]
    for zr, zi in uppers:
        centres += [(zr, zi), (zr, -zi)]
    radii = _certify(f, centres, work)
    if radii is None or max(radii, default=Fraction(0)) > target:
        return None
    real_balls, pair_balls = [], []
    for i, (c, rad) in enumerate(zip(centres, radii)):
        if i < len(reals):
            real_balls.append(Ball(c[0], Fraction(0), rad))
        elif (i - len(reals)) % 2 == 0:
            if c[1] <= rad:
                return None  # disc touches the real axis: realness undecided
            pair_balls.append(Ball(c[0], c[1], rad))
    real_balls.sort(key=lambda b: b.re)
    pair_balls.sort(key=lambda b: (b.re, b.im))
    return RootEnclosures(p, tuple(real_balls), tuple(pair_balls))


def roots_for_field(K: NumberField, p: int = DEFAULT_PRECISION) -> RootEnclosures:
    roots = complex_roots(K.defining_polynomial, p)
    if (len(roots.reals), len(roots.complex_pairs)) != tuple(K.signature):
        raise PrecisionExhausted("root count does not match the field signature", p)
    return roots


# ---------------------------------------------------------------------------
# embeddings and the canonical metric
# ---------------------------------------------------------------------------

def _work_bits(roots: RootEnclosures) -> int:
    return roots.precision + 32


def _horner(coeffs: Sequence[Fraction], z: Ball, bits: int) -> Ball:
    acc = Ball.exact(0)
    for c in reversed(coeffs):
        acc = acc.mul(z, bits) + Ball.exact(c)
    return acc.rounded(bits)


def embed_components(a: FieldElement, roots: RootEnclosures, K: NumberField) -> list[Ball]:
    """Enclosures of rho(a) for real rho, then sigma(a) for each pair representative."""
    coeffs = K.to_power_basis(a)
    bits = _work_bits(roots)
    return [_horner(coeffs, z, bits) for z in roots.reals + roots.complex_pairs]


def embed(a: FieldElement, roots: RootEnclosures, K: NumberField):
    """(components, (lower, upper)) where [lower, upper] encloses the sup-norm of a."""
    comps = embed_components(a, roots, K)
    bits = _work_bits(roots)
    lo = max(c.abs_lower(bits) for c in comps)
    hi = max(c.abs_upper(bits) for c in comps)
    return comps, (lo, hi)


def sup_norm_upper(a: FieldElement, roots: RootEnclosures, K: NumberField) -> Fraction:
    return embed(a, roots, K)[1][1]


@dataclass(frozen=True)
class CanonicalGram:
    entries: tuple[tuple[Fraction, ...], ...]
    error_bound: Fraction
    det_enclosure: tuple[Fraction, Fraction]

    @property
    def det_width(self) -> Fraction:
        return self.det_enclosure[1] - self.det_enclosure[0]


def _real_product(x: Ball, y: Ball, bits: int, weight: int) -> tuple[Fraction, Fraction]:
    """weight * Re(x * conj(y)) as (midpoint, radius)."""
    mid = x.re * y.re + x.im * y.im
    rad = (sqrt_upper(x.re ** 2 + x.im ** 2, bits) * y.rad
           + sqrt_upper(y.re ** 2 + y.im ** 2, bits) * x.rad + x.rad * y.rad)
    return weight * mid, weight * rad


def canonical_gram(K: NumberField, roots: RootEnclosures) -> CanonicalGram:
    """<b_i, b_j> = sum_rho rho(b_i)rho(b_j) + 2 sum_sigma Re(sigma(b_i) conj sigma(b_j))."""
    n = K.degree
    bits = _work_bits(roots)
    r1 = len(roots.reals)
    emb = [embed_components(K.basis_element(i), roots, K) for i in range(n)]
    mids = [[Fraction(0)] * n for _ in range(n)]
    eps = Fraction(0)
    for i in range(n):
        for j in range(i, n):
            m, rad = Fraction(0), Fraction(0)
            for k in range(len(emb[i])):
                dm, dr = _real_product(emb[i][k], emb[j][k], bits, 1 if k < r1 else 2)
                m += dm
                rad += dr
            mr = round_dyadic(m, bits)
            rad += abs(mr - m)
            mids[i][j] = mids[j][i] = mr
            eps = max(eps, rad)
    return CanonicalGram(tuple(tuple(r) for r in mids), eps, _det_enclosure(mids, eps, bits))


def _det_enclosure(A: list[list[Fraction]], eps: Fraction, bits: int):
    """Interval holding det(A + E) for every E with |E_ij| <= eps.

    By multilinearity det(A+E) - det(A) expands over the nonempty row sets
    taken from E; Hadamard bounds every term, giving
    prod(|a_i| + eps*sqrt(n)) - prod(|a_i|).
    """
    n = len(A)
    d = Fraction(determinant(A))
    if eps == 0:
        return d, d
    e = eps * sqrt_upper(Fraction(n), bits)
    full, base = Fraction(1), Fraction(1)
    for row in A:
        norm = sqrt_upper(sum(x * x for x in row), bits)
        full *= norm + e
        base *= norm
    delta = full - base
    return d - delta, d + delta
