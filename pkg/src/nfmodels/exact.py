"""Small exact-arithmetic helpers: integer roots, rational square-root
bounds and real radicals ``radicand ** (1/index)``."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import mpmath


def iroot(a: int, k: int) -> int:
    """floor(a ** (1/k)) for a >= 0."""
    if a < 0:
        raise ValueError("negative radicand")
    if a < 2 or k == 1:
        return a
    if k == 2:
        return math.isqrt(a)
    x = 1 << ((a.bit_length() + k - 1) // k)
    while True:
        y = ((k - 1) * x + a // x ** (k - 1)) // k
        if y >= x:
            break
        x = y
    while x ** k > a:
        x -= 1
    while (x + 1) ** k <= a:
        x += 1
    return x


def sqrt_upper(x: Fraction, bits: int = 128) -> Fraction:
    """A dyadic rational >= sqrt(x)."""
    x = Fraction(x)
    if x < 0:
        raise ValueError("negative argument")
    scale = 1 << (2 * bits)
    num = -((-x.numerator * scale) // x.denominator)  # ceil(x * 4^bits)
    s = math.isqrt(num)
    if s * s < num:
        s += 1
    return Fraction(s, 1 << bits)


def sqrt_lower(x: Fraction, bits: int = 128) -> Fraction:
    """A dyadic rational <= sqrt(x)."""
    x = Fraction(x)
    if x < 0:
        raise ValueError("negative argument")
    num = (x.numerator << (2 * bits)) // x.denominator
    return Fraction(math.isqrt(num), 1 << bits)


def round_dyadic(x: Fraction, bits: int) -> Fraction:
    """Nearest multiple of 2^-bits; error at most 2^-(bits+1)."""
    x = Fraction(x)
    if x.denominator == 1:
        return x
    n = (x.numerator * (1 << (bits + 1)) // x.denominator + 1) >> 1
    return Fraction(n, 1 << bits)


def _perfect_root(x: Fraction, k: int):
    if x < 0:
        return None
    a, b = iroot(x.numerator, k), iroot(x.denominator, k)
    if a ** k == x.numerator and b ** k == x.denominator:
        return Fraction(a, b)
    return None


def _prime_factors(n: int) -> list[int]:
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


@dataclass(frozen=True)
class Radical:
    """The nonnegative real number ``radicand ** (1/index)``, held exactly.

    The index is reduced as far as the radicand allows, so a radical that
    is secretly rational ends up with index 1.
    """

    radicand: Fraction
    index: int = 1

    def __post_init__(self):
        r = Fraction(self.radicand)
        if r < 0 or self.index < 1:
            raise ValueError("radical needs radicand >= 0 and index >= 1")
        k = self.index
        changed = True
        while changed and k > 1:
            changed = False
            for p in _prime_factors(k):
                root = _perfect_root(r, p)
                if root is not None:
                    r, k = root, k // p
                    changed = True
                    break
        object.__setattr__(self, "radicand", r)
        object.__setattr__(self, "index", k)

    @property
    def is_rational(self) -> bool:
        return self.index == 1

    def exact(self) -> Fraction:
        if self.index != 1:
            raise ValueError("radical is irrational")
        return self.radicand

    def power(self, k: int) -> "Radical":
        """self ** k."""
        g = math.gcd(k, self.index)
        return Radical(self.radicand ** (k // g), self.index // g)

    def __mul__(self, other: "Radical") -> "Radical":
        if not isinstance(other, Radical):
            other = Radical(Fraction(other))
        m = self.index * other.index // math.gcd(self.index, other.index)
        return Radical(self.radicand ** (m // self.index) * other.radicand ** (m // other.index), m)

    def cmp_rational(self, x) -> int:
        """Sign of self - x, exactly."""
        x = Fraction(x)
        if x < 0:
            return 1
        xp = x ** self.index
        return (self.radicand > xp) - (self.radicand < xp)

    def upper(self, bits: int = 64) -> Fraction:
        """Rational upper bound within relative error about 2^-bits."""
        return self._bound(bits, up=True)

    def lower(self, bits: int = 64) -> Fraction:
        return self._bound(bits, up=False)

    def _bound(self, bits: int, up: bool) -> Fraction:
        k = self.index
        if k == 1:
            return self.radicand
        if self.radicand == 0:
            return Fraction(0)
        # scale so the integer root carries about `bits` significant bits
        mag = self.radicand.numerator.bit_length() - self.radicand.denominator.bit_length()
        shift = max(0, bits - mag // k + 2)
        scaled = self.radicand * (1 << (k * shift))
        fl = scaled.numerator // scaled.denominator
        r = iroot(fl, k)
        if up:
            if Fraction(r) ** k < scaled:
                r += 1
        return Fraction(r, 1 << shift)

    def log10(self, dps: int = 40) -> mpmath.mpf:
        with mpmath.workdps(dps + 10):
            if self.radicand == 0:
                return mpmath.mpf("-inf")
            v = (mpmath.log10(self.radicand.numerator)
                 - mpmath.log10(self.radicand.denominator)) / self.index
        return v

    def decimal(self, digits: int = 12) -> str:
        with mpmath.workdps(digits + 10):
            v = mpmath.power(10, self.log10(digits + 10))
            return mpmath.nstr(v, digits)

    def to_json(self) -> dict:
        return {
            "radicand": str(self.radicand),
            "index": self.index,
            "approx": self.decimal(15),
        }
