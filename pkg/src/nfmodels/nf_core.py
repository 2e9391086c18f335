"""Number fields presented by a monic integer polynomial and an integral basis.

Elements are coordinate vectors in the integral basis. Multiplication goes
through an integer structure-constant tensor built once at parse time.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Sequence, Union

from .lattice import determinant, exact_rank, inverse_rational, solve_rational


class FieldInputError(ValueError):
    """Malformed or inconsistent field description."""


# ---------------------------------------------------------------------------
# dense univariate polynomials, coefficients ascending
# ---------------------------------------------------------------------------

def _trim(p: list) -> list:
    while p and p[-1] == 0:
        p.pop()
    return p


def poly_mul(a: Sequence, b: Sequence) -> list:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(out)


def poly_divmod(a: Sequence, b: Sequence) -> tuple[list, list]:
    a = [Fraction(x) for x in a]
    b = _trim([Fraction(x) for x in b])
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = _trim(a)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    lc = b[-1]
    while len(a) >= len(b):
        c = a[-1] / lc
        s = len(a) - len(b)
        q[s] = c
        for i, y in enumerate(b):
            a[s + i] -= c * y
        a.pop()
        _trim(a)
    return q, a


def poly_gcd(a: Sequence, b: Sequence) -> list:
    a, b = _trim([Fraction(x) for x in a]), _trim([Fraction(x) for x in b])
    while b:
        a, b = b, poly_divmod(a, b)[1]
    if a:
        a = [x / a[-1] for x in a]
    return a


def poly_derivative(p: Sequence) -> list:
    return [i * p[i] for i in range(1, len(p))]


def poly_eval(p: Sequence, x):
    acc = 0
    for c in reversed(p):
        acc = acc * x + c
    return acc


def count_real_roots(f: Sequence[int]) -> int:
    """Number of distinct real roots of a squarefree polynomial (Sturm)."""
    seq = [[Fraction(x) for x in f], [Fraction(x) for x in poly_derivative(f)]]
    while True:
        r = poly_divmod(seq[-2], seq[-1])[1]
        if not r:
            break
        seq.append([-x for x in r])

    def changes(signs: list[int]) -> int:
        s = [x for x in signs if x != 0]
        return sum(1 for u, v in zip(s, s[1:]) if u != v)

    def sign(x):
        return (x > 0) - (x < 0)

    at_pos = [sign(p[-1]) for p in seq]
    at_neg = [sign(p[-1]) * (-1) ** (len(p) - 1) for p in seq]
    return changes(at_neg) - changes(at_pos)


# ---------------------------------------------------------------------------
# fields and elements
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FieldElement:
    """Exact coordinates in the integral basis."""

    coords: tuple

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(
            int(x) if Fraction(x).denominator == 1 else Fraction(x) for x in self.coords))

    @property
    def is_zero(self) -> bool:
        return not any(self.coords)

    @property
    def is_integral(self) -> bool:
        return all(isinstance(x, int) for x in self.coords)

    def __add__(self, other: "FieldElement") -> "FieldElement":
        return FieldElement(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "FieldElement") -> "FieldElement":
        return FieldElement(tuple(a - b for a, b in zip(self.coords, other.coords)))

    def scale(self, c) -> "FieldElement":
        return FieldElement(tuple(c * a for a in self.coords))


@dataclass(frozen=True, eq=False)
class NumberField:
    defining_polynomial: tuple[int, ...]
    integral_basis: tuple[tuple[Fraction, ...], ...]
    mul_table: tuple  # mul_table[i][j][k]: beta_i beta_j = sum_k c_ijk beta_k
    signature: tuple[int, int]
    discriminant: int

    @property
    def degree(self) -> int:
        return len(self.defining_polynomial) - 1

    @property
    def abs_discriminant(self) -> int:
        return abs(self.discriminant)

    def zero(self) -> FieldElement:
        return FieldElement((0,) * self.degree)

    def one(self) -> FieldElement:
        return FieldElement((1,) + (0,) * (self.degree - 1))

    def basis_element(self, i: int) -> FieldElement:
        return FieldElement(tuple(int(j == i) for j in range(self.degree)))

    def from_int(self, c: int) -> FieldElement:
        return FieldElement((c,) + (0,) * (self.degree - 1))

    def to_power_basis(self, a: FieldElement) -> list[Fraction]:
        """Coordinates of a in 1, theta, ..., theta^(n-1)."""
        n = self.degree
        return [sum(a.coords[i] * self.integral_basis[i][k] for i in range(n))
                for k in range(n)]

    def from_power_basis(self, p: Sequence) -> FieldElement:
        n = self.degree
        inv = inverse_rational([list(r) for r in self.integral_basis])
        return FieldElement(tuple(sum(Fraction(p[k]) * inv[k][i] for k in range(n))
                                  for i in range(n)))

    def theta(self) -> FieldElement:
        return self.from_power_basis([0, 1] + [0] * (self.degree - 2))

    def to_json(self) -> dict:
        return {
            "defining_polynomial": list(self.defining_polynomial),
            "integral_basis": [[str(x) for x in row] for row in self.integral_basis],
            "assume_power_basis_maximal": False,
        }


def _reduced_powers(f: Sequence[int], top: int) -> list[list[int]]:
    """theta^k mod f as power-basis coordinates for k < top."""
    n = len(f) - 1
    pows = []
    cur = [0] * n
    cur[0] = 1
    for _ in range(top):
        pows.append(cur[:])
        # multiply by theta and reduce with theta^n = -sum f_i theta^i
        lead = cur[-1]
        cur = [0] + cur[:-1]
        if lead:
            for i in range(n):
                cur[i] -= lead * f[i]
    return pows


def build_field(f: Sequence[int], basis: Sequence[Sequence] | None = None) -> NumberField:
    """Validate a defining polynomial and integral basis and derive everything else."""
    f = [int(c) for c in f]
    n = len(f) - 1
    if n < 2:
        raise FieldInputError("degree must be at least 2")
    if f[-1] != 1:
        raise FieldInputError("defining polynomial must be monic")
    if len(poly_gcd(f, poly_derivative(f))) > 1:
        raise FieldInputError("defining polynomial is not squarefree")
    if basis is None:
        B = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    else:
        B = [[Fraction(x) for x in row] for row in basis]
        if len(B) != n or any(len(row) != n for row in B):
            raise FieldInputError(f"integral basis must be {n}x{n}")
    if B[0] != [Fraction(1)] + [Fraction(0)] * (n - 1):
        raise FieldInputError("first integral basis element must be 1")
    if determinant(B) == 0:
        raise FieldInputError("integral basis matrix is singular")
    Binv = inverse_rational(B)
    pows = _reduced_powers(f, 2 * n - 1)
    table = []
    for i in range(n):
        plane = []
        for j in range(n):
            prod = poly_mul(B[i], B[j])
            power = [Fraction(0)] * n
            for e, c in enumerate(prod):
                if c:
                    for k in range(n):
                        power[k] += c * pows[e][k]
            coords = [sum(power[k] * Binv[k][t] for k in range(n)) for t in range(n)]
            if any(c.denominator != 1 for c in coords):
                raise FieldInputError(
                    f"basis is not closed under multiplication (beta_{i}*beta_{j})")
            plane.append(tuple(int(c) for c in coords))
        table.append(tuple(plane))
    r1 = count_real_roots(f)
    s = (n - r1) // 2
    K = NumberField(tuple(f), tuple(tuple(r) for r in B), tuple(table), (r1, s), 0)
    _, det = discriminant(K)
    if det == 0:
        raise FieldInputError("trace form is degenerate")
    if (det > 0) != (s % 2 == 0):
        raise FieldInputError("discriminant sign does not match signature")
    object.__setattr__(K, "discriminant", int(det))
    return K


def parse_field(doc: Union[dict, str, Path]) -> NumberField:
    """Build a field from a field.json document (dict, JSON text or path)."""
    if isinstance(doc, Path) or (isinstance(doc, str) and not doc.lstrip().startswith("{")):
        doc = json.loads(Path(doc).read_text())
    elif isinstance(doc, str):
        doc = json.loads(doc)
    if "defining_polynomial" not in doc:
        raise FieldInputError("missing defining_polynomial")
    f = doc["defining_polynomial"]
    if any(isinstance(c, bool) or Fraction(c).denominator != 1 for c in f):
        raise FieldInputError("defining polynomial must have integer coefficients")
    basis = doc.get("integral_basis")
    if doc.get("assume_power_basis_maximal"):
        basis = None
    elif basis is None:
        raise FieldInputError(
            "integral_basis missing; set assume_power_basis_maximal to use the power basis")
    return build_field([int(c) for c in f], basis)


# ---------------------------------------------------------------------------
# arithmetic
# ---------------------------------------------------------------------------

def element_mul(a: FieldElement, b: FieldElement, K: NumberField) -> FieldElement:
    n = K.degree
    out = [0] * n
    T = K.mul_table
    for i, x in enumerate(a.coords):
        if not x:
            continue
        Ti = T[i]
        for j, y in enumerate(b.coords):
            if not y:
                continue
            xy = x * y
            for k, c in enumerate(Ti[j]):
                if c:
                    out[k] += xy * c
    return FieldElement(tuple(out))


def mul_coords(a: Sequence[int], b: Sequence[int], T) -> list[int]:
    """element_mul on raw integer coordinate lists (hot path)."""
    n = len(a)
    out = [0] * n
    for i in range(n):
        x = a[i]
        if not x:
            continue
        Ti = T[i]
        for j in range(n):
            y = b[j]
            if not y:
                continue
            xy = x * y
            for k, c in enumerate(Ti[j]):
                if c:
                    out[k] += xy * c
    return out


def multiplication_matrix(a: FieldElement, K: NumberField) -> list[list]:
    """Matrix whose column i holds the coordinates of a * beta_i."""
    cols = [element_mul(a, K.basis_element(i), K).coords for i in range(K.degree)]
    return [list(row) for row in zip(*cols)]


def element_inverse(a: FieldElement, K: NumberField) -> FieldElement:
    if a.is_zero:
        raise ZeroDivisionError("inverse of zero")
    x = solve_rational(multiplication_matrix(a, K), K.one().coords)
    return FieldElement(tuple(x))


def _basis_traces(K: NumberField) -> list[int]:
    n = K.degree
    return [sum(K.mul_table[k][i][i] for i in range(n)) for k in range(n)]


def trace(a: FieldElement, K: NumberField):
    t = _basis_traces(K)
    val = sum(c * tk for c, tk in zip(a.coords, t))
    return val if isinstance(val, int) or Fraction(val).denominator != 1 else int(val)


def discriminant(K: NumberField) -> tuple[list[list[int]], int]:
    """Trace form Tr(beta_i beta_j) and its determinant (the signed discriminant)."""
    n = K.degree
    t = _basis_traces(K)
    gram = [[sum(K.mul_table[i][j][k] * t[k] for k in range(n)) for j in range(n)]
            for i in range(n)]
    return gram, int(determinant(gram))


def rank_of_span(elems: Sequence[FieldElement], K: NumberField | None = None) -> int:
    if not elems:
        return 0
    return exact_rank([list(e.coords) for e in elems])


def element_pow(a: FieldElement, e: int, K: NumberField) -> FieldElement:
    out = K.one()
    base = a
    while e:
        if e & 1:
            out = element_mul(out, base, K)
        base = element_mul(base, base, K)
        e >>= 1
    return out


def generated_algebra_rank(gens: Sequence[FieldElement], K: NumberField) -> int:
    """Dimension over Q of the subalgebra Q[gens] of K."""
    n = K.degree
    span: list[list] = [list(K.one().coords)]
    frontier = [K.one()]
    while frontier:
        new = []
        for x in frontier:
            for g in gens:
                y = element_mul(x, g, K)
                if exact_rank(span + [list(y.coords)]) > len(span):
                    span.append(list(y.coords))
                    new.append(y)
                    if len(span) == n:
                        return n
        frontier = new
    return len(span)
