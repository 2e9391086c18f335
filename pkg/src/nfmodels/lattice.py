"""Exact integer lattices: LLL, kernels, complements, volumes, minima.

Everything here works on Python integers and ``Fraction`` so results are
exact. A lattice is given either by a basis (rows in Z^N with the standard
dot product) or by a rational positive definite Gram matrix.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

DEFAULT_DELTA = Fraction(99, 100)

Matrix = list[list[int]]


class NotPositiveDefinite(ArithmeticError):
    """Raised when a Gram matrix is not positive definite.

    For Gram matrices coming from a numerical embedding this means the
    working precision was too low and the caller should retry.
    """


class NotSaturated(ValueError):
    pass


# ---------------------------------------------------------------------------
# exact linear algebra
# ---------------------------------------------------------------------------

def _integer_rows(M: Sequence[Sequence]) -> Matrix:
    """Scale each row by the lcm of its denominators (rank preserving)."""
    out = []
    for row in M:
        den = 1
        for x in row:
            if isinstance(x, Fraction):
                den = den * x.denominator // math.gcd(den, x.denominator)
        out.append([int(x * den) for x in row])
    return out


def exact_rank(M: Sequence[Sequence]) -> int:
    """Rank over Q via fraction-free (Bareiss) elimination."""
    A = _integer_rows(M)
    if not A or not A[0]:
        return 0
    nrows, ncols = len(A), len(A[0])
    rank = 0
    prev = 1
    for c in range(ncols):
        if rank == nrows:
            break
        piv = next((i for i in range(rank, nrows) if A[i][c] != 0), None)
        if piv is None:
            continue
        A[rank], A[piv] = A[piv], A[rank]
        p = A[rank][c]
        prow = A[rank]
        for i in range(rank + 1, nrows):
            row = A[i]
            a = row[c]
            for j in range(c + 1, ncols):
                row[j] = (p * row[j] - a * prow[j]) // prev
            row[c] = 0
        prev = p
        rank += 1
    return rank


def rank_mod_p(M: Sequence[Sequence[int]], p: int = (1 << 61) - 1) -> int:
    """Rank of an integer matrix modulo a prime; a lower bound for the rank over Q."""
    A = [[x % p for x in row] for row in M]
    if not A:
        return 0
    nrows, ncols = len(A), len(A[0])
    rank = 0
    for c in range(ncols):
        if rank == nrows:
            break
        piv = next((i for i in range(rank, nrows) if A[i][c]), None)
        if piv is None:
            continue
        A[rank], A[piv] = A[piv], A[rank]
        prow = A[rank]
        inv = pow(prow[c], p - 2, p)
        for i in range(rank + 1, nrows):
            row = A[i]
            a = row[c]
            if a:
                f = a * inv % p
                for j in range(c, ncols):
                    row[j] = (row[j] - f * prow[j]) % p
        rank += 1
    return rank


def determinant(M: Sequence[Sequence]) -> Fraction | int:
    """Exact determinant of a square rational matrix (Bareiss)."""
    n = len(M)
    if n == 0:
        return 1
    den = 1
    for row in M:
        for x in row:
            if isinstance(x, Fraction):
                den = den * x.denominator // math.gcd(den, x.denominator)
    A = [[int(x * den) for x in row] for row in M]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if A[k][k] == 0:
            piv = next((i for i in range(k + 1, n) if A[i][k] != 0), None)
            if piv is None:
                return 0
            A[k], A[piv] = A[piv], A[k]
            sign = -sign
        p = A[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (p * A[i][j] - A[i][k] * A[k][j]) // prev
        prev = p
    det = sign * A[n - 1][n - 1]
    if den == 1:
        return det
    return Fraction(det, den ** n)


def solve_rational(A: Sequence[Sequence], b: Sequence) -> list[Fraction]:
    """Solve A x = b for square invertible A over Q."""
    n = len(A)
    M = [[Fraction(x) for x in row] + [Fraction(b[i])] for i, row in enumerate(A)]
    for c in range(n):
        piv = next((i for i in range(c, n) if M[i][c] != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular system")
        M[c], M[piv] = M[piv], M[c]
        inv = 1 / M[c][c]
        M[c] = [x * inv for x in M[c]]
        for i in range(n):
            if i != c and M[i][c] != 0:
                f = M[i][c]
                M[i] = [x - f * y for x, y in zip(M[i], M[c])]
    return [M[i][n] for i in range(n)]


def inverse_rational(A: Sequence[Sequence]) -> list[list[Fraction]]:
    n = len(A)
    M = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(A)]
    for c in range(n):
        piv = next((i for i in range(c, n) if M[i][c] != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        M[c], M[piv] = M[piv], M[c]
        inv = 1 / M[c][c]
        M[c] = [x * inv for x in M[c]]
        for i in range(n):
            if i != c and M[i][c] != 0:
                f = M[i][c]
                M[i] = [x - f * y for x, y in zip(M[i], M[c])]
    return [row[n:] for row in M]


def mat_mul(A: Sequence[Sequence], B: Sequence[Sequence]) -> list[list]:
    Bt = list(zip(*B))
    return [[sum(a * b for a, b in zip(row, col)) for col in Bt] for row in A]


def dot(u: Sequence, v: Sequence):
    return sum(a * b for a, b in zip(u, v))


# ---------------------------------------------------------------------------
# lattices
# ---------------------------------------------------------------------------

@dataclass
class IntLattice:
    """A lattice given by integer basis rows or by a Gram matrix (not both)."""

    basis: Optional[list[tuple[int, ...]]] = None
    gram_matrix: Optional[list[list[Fraction]]] = None
    ambient_dim: Optional[int] = None

    def __post_init__(self):
        if (self.basis is None) == (self.gram_matrix is None):
            raise ValueError("exactly one of basis / gram_matrix must be given")
        if self.basis is not None:
            self.basis = [tuple(int(x) for x in v) for v in self.basis]
            if self.basis:
                N = len(self.basis[0])
                if any(len(v) != N for v in self.basis):
                    raise ValueError("ragged basis")
                if self.ambient_dim is None:
                    self.ambient_dim = N
            elif self.ambient_dim is None:
                raise ValueError("empty basis needs ambient_dim")
        else:
            G = [[Fraction(x) for x in row] for row in self.gram_matrix]
            if any(G[i][j] != G[j][i] for i in range(len(G)) for j in range(i)):
                raise ValueError("Gram matrix is not symmetric")
            self.gram_matrix = G

    @property
    def rank(self) -> int:
        return len(self.basis) if self.basis is not None else len(self.gram_matrix)

    def gram(self) -> list[list]:
        if self.gram_matrix is not None:
            return [row[:] for row in self.gram_matrix]
        B = self.basis
        return [[dot(u, v) for v in B] for u in B]


@dataclass
class ReductionResult:
    reduced_basis: Optional[list[tuple[int, ...]]]
    transform: Matrix
    norms: list  # squared norms of the reduced vectors, in basis order
    reduced_gram: list[list] = field(repr=False, default_factory=list)


def _round_div(a: int, b: int) -> int:
    """Nearest integer to a/b for b > 0, halves rounded up."""
    return (2 * a + b) // (2 * b)


def lll_reduce(L: IntLattice, delta: Fraction = DEFAULT_DELTA) -> ReductionResult:
    """Integral LLL (all-integer Gram-Schmidt data), tracking the transform.

    Works on the Gram matrix so it serves both representations. Rational
    Grams are scaled to integers first; LLL is scale invariant.
    """
    delta = Fraction(delta)
    if not Fraction(1, 4) < delta < 1:
        raise ValueError("delta must lie in (1/4, 1)")
    G0 = L.gram()
    k_dim = len(G0)
    den = 1
    for row in G0:
        for x in row:
            if isinstance(x, Fraction):
                den = den * x.denominator // math.gcd(den, x.denominator)
    G = [[int(x * den) for x in row] for row in G0]
    H = [[int(i == j) for j in range(k_dim)] for i in range(k_dim)]
    if k_dim == 0:
        return ReductionResult([] if L.basis is not None else None, H, [], [])
    if k_dim == 1:
        if G[0][0] <= 0:
            raise NotPositiveDefinite("Gram matrix is not positive definite")
        return _finish(L, G0, H)

    p_d, q_d = delta.numerator, delta.denominator
    # 1-based bookkeeping: d[0] = 1, lam[i][j] for j < i
    d = [1] + [0] * k_dim
    lam = [[0] * (k_dim + 1) for _ in range(k_dim + 1)]

    def inner(a: int, b: int) -> int:
        # <b_a, b_b> for 1-based indices; b_a still original when a > kmax
        ha, hb = H[a - 1], H[b - 1]
        return sum(hb[t] * sum(ha[s] * G[s][t] for s in range(k_dim) if ha[s])
                   for t in range(k_dim) if hb[t])

    def red(k: int, l: int) -> None:
        if 2 * abs(lam[k][l]) > d[l]:
            q = _round_div(lam[k][l], d[l])
            hk, hl = H[k - 1], H[l - 1]
            for t in range(k_dim):
                hk[t] -= q * hl[t]
            lam[k][l] -= q * d[l]
            for i in range(1, l):
                lam[k][i] -= q * lam[l][i]

    def swap(k: int, kmax: int) -> None:
        H[k - 1], H[k - 2] = H[k - 2], H[k - 1]
        for j in range(1, k - 1):
            lam[k][j], lam[k - 1][j] = lam[k - 1][j], lam[k][j]
        lm = lam[k][k - 1]
        B = (d[k - 2] * d[k] + lm * lm) // d[k - 1]
        for i in range(k + 1, kmax + 1):
            t = lam[i][k]
            lam[i][k] = (d[k] * lam[i][k - 1] - lm * t) // d[k - 1]
            lam[i][k - 1] = (B * t + lm * lam[i][k]) // d[k]
        d[k - 1] = B

    d[1] = G[0][0]
    if d[1] <= 0:
        raise NotPositiveDefinite("Gram matrix is not positive definite")
    k, kmax = 2, 1
    while k <= k_dim:
        if k > kmax:
            kmax = k
            for j in range(1, k + 1):
                u = inner(k, j)
                for i in range(1, j):
                    u = (d[i] * u - lam[k][i] * lam[j][i]) // d[i - 1]
                if j < k:
                    lam[k][j] = u
                else:
                    if u <= 0:
                        raise NotPositiveDefinite("Gram matrix is not positive definite")
                    d[k] = u
        red(k, k - 1)
        lhs = q_d * d[k] * d[k - 2]
        rhs = p_d * d[k - 1] * d[k - 1] - q_d * lam[k][k - 1] ** 2
        if lhs < rhs:
            swap(k, kmax)
            k = max(2, k - 1)
        else:
            for l in range(k - 2, 0, -1):
                red(k, l)
            k += 1
    return _finish(L, G0, H)


def _finish(L: IntLattice, G0, H: Matrix) -> ReductionResult:
    HG = mat_mul(H, G0)
    Gred = [[dot(HG[i], H[j]) for j in range(len(H))] for i in range(len(H))]
    norms = [Gred[i][i] for i in range(len(H))]
    reduced = None
    if L.basis is not None:
        reduced = [tuple(x) for x in mat_mul(H, L.basis)] if H else []
    return ReductionResult(reduced, H, norms, Gred)


def is_lll_reduced(gram: Sequence[Sequence], delta: Fraction = DEFAULT_DELTA) -> bool:
    """Check size reduction and the Lovasz condition using exact Gram-Schmidt."""
    k = len(gram)
    mu = [[Fraction(0)] * k for _ in range(k)]
    Bn = [Fraction(0)] * k
    for i in range(k):
        for j in range(i):
            s = Fraction(gram[i][j]) - sum(mu[j][t] * mu[i][t] * Bn[t] for t in range(j))
            mu[i][j] = s / Bn[j]
        Bn[i] = Fraction(gram[i][i]) - sum(mu[i][t] ** 2 * Bn[t] for t in range(i))
        if Bn[i] <= 0:
            return False
    for i in range(k):
        for j in range(i):
            if abs(mu[i][j]) > Fraction(1, 2):
                return False
    for i in range(1, k):
        if Bn[i] < (delta - mu[i][i - 1] ** 2) * Bn[i - 1]:
            return False
    return True


def integer_kernel(M: Sequence[Sequence[int]]) -> IntLattice:
    """Saturated basis of {v in Z^N : M v = 0} for an integer n x N matrix.

    Row-reduces the transposed matrix with unimodular operations; the
    transform rows that end up zero on the left block span the kernel.
    """
    M = [[int(x) for x in row] for row in M]
    if not M:
        raise ValueError("empty matrix; pass the ambient dimension via a zero row")
    n, N = len(M), len(M[0])
    rows = [[M[i][k] for i in range(n)] + [int(k == j) for j in range(N)]
            for k in range(N)]
    piv = 0
    for c in range(n):
        while True:
            nz = [i for i in range(piv, N) if rows[i][c] != 0]
            if not nz:
                break
            best = min(nz, key=lambda i: (abs(rows[i][c]), i))
            rows[piv], rows[best] = rows[best], rows[piv]
            prow = rows[piv]
            p = prow[c]
            done = True
            for i in range(piv + 1, N):
                a = rows[i][c]
                if a:
                    q = _round_div(a * (1 if p > 0 else -1), abs(p))
                    row = rows[i]
                    for j in range(len(row)):
                        row[j] -= q * prow[j]
                    if row[c]:
                        done = False
            if done:
                piv += 1
                break
        if piv == N:
            break
    kernel = [tuple(rows[i][n:]) for i in range(piv, N)]
    for v in kernel:
        assert all(dot(row, v) == 0 for row in M)
    return IntLattice(basis=kernel, ambient_dim=N)


def gram_det(L: IntLattice):
    """det of the Gram matrix, i.e. the squared covolume."""
    return determinant(L.gram())


def orthogonal_complement(L: IntLattice, check_saturated: bool = True) -> IntLattice:
    """{v in Z^N : <v, l> = 0 for all l in L}; L must be saturated."""
    if L.basis is None:
        raise ValueError("orthogonal complement needs a basis representation")
    N = L.ambient_dim
    if not L.basis:
        return IntLattice(basis=[tuple(int(i == j) for j in range(N)) for i in range(N)],
                          ambient_dim=N)
    comp = integer_kernel(L.basis)
    if check_saturated:
        if not comp.basis:
            return comp
        back = integer_kernel(comp.basis)
        # L sits inside the saturated lattice `back` with the same rank
        if gram_det(back) != gram_det(L):
            raise NotSaturated("lattice is not saturated in Z^N")
    return comp


def same_lattice(A: Sequence[Sequence[int]], B: Sequence[Sequence[int]]) -> bool:
    """True when the row spans of A and B over Z coincide."""
    if len(A) != len(B):
        return False
    if not A:
        return True
    return _contains(A, B) and _contains(B, A)


def _contains(A, B) -> bool:
    """Every row of B is an integer combination of the rows of A."""
    k = len(A)
    cols = _independent_columns(A)
    sub = [[row[c] for c in cols] for row in A]
    subT = [list(x) for x in zip(*sub)]
    for v in B:
        x = solve_rational(subT, [v[c] for c in cols])
        if any(xi.denominator != 1 for xi in x):
            return False
        if any(sum(x[i] * A[i][j] for i in range(k)) != v[j] for j in range(len(v))):
            return False
    return True


def _independent_columns(A) -> list[int]:
    cols: list[int] = []
    for c in range(len(A[0])):
        trial = cols + [c]
        if exact_rank([[row[j] for j in trial] for row in A]) == len(trial):
            cols = trial
            if len(cols) == len(A):
                break
    return cols


# ---------------------------------------------------------------------------
# brute-force successive minima
# ---------------------------------------------------------------------------

MAX_ORACLE_DIM = 5


def short_vectors(gram: Sequence[Sequence], bound) -> list[tuple[int, ...]]:
    """All nonzero integer x with x^T G x <= bound (Fincke-Pohst, exact)."""
    k = len(gram)
    G = [[Fraction(x) for x in row] for row in gram]
    # G = sum_i q_ii (x_i + sum_{j>i} q_ij x_j)^2
    q = [[Fraction(0)] * k for _ in range(k)]
    A = [row[:] for row in G]
    for i in range(k):
        q[i][i] = A[i][i]
        if q[i][i] <= 0:
            raise NotPositiveDefinite("Gram matrix is not positive definite")
        for j in range(i + 1, k):
            q[i][j] = A[i][j] / A[i][i]
        for a in range(i + 1, k):
            for b in range(i + 1, k):
                A[a][b] -= A[i][a] * A[i][b] / A[i][i]
    bound = Fraction(bound)
    out: list[tuple[int, ...]] = []
    x = [0] * k

    def rec(i: int, remaining: Fraction) -> None:
        c = -sum(q[i][j] * x[j] for j in range(i + 1, k))
        rad2 = remaining / q[i][i]
        # floor/ceil of c -/+ sqrt(rad2), padded by one for safety
        r = math.isqrt(int(rad2) + 1) + 1
        lo, hi = math.floor(c) - r, math.ceil(c) + r
        for xi in range(lo, hi + 1):
            t = q[i][i] * (xi - c) ** 2
            if t > remaining:
                continue
            x[i] = xi
            if i == 0:
                if any(x):
                    out.append(tuple(x))
            else:
                rec(i - 1, remaining - t)
        x[i] = 0

    rec(k - 1, bound)
    return out


def minima_oracle(L: IntLattice, max_dim: int = MAX_ORACLE_DIM) -> list:
    """Exact squared successive minima by exhaustive enumeration."""
    k = L.rank
    if k > max_dim:
        raise ValueError(f"dimension {k} exceeds oracle limit {max_dim}")
    if k == 0:
        return []
    red = lll_reduce(IntLattice(gram_matrix=L.gram()))
    G = red.reduced_gram
    radius = max(G[i][i] for i in range(k))
    vecs = short_vectors(G, radius)

    def qf(v):
        return sum(v[i] * G[i][j] * v[j] for i in range(k) for j in range(k))

    vecs.sort(key=lambda v: (qf(v), v))
    minima: list = []
    chosen: list = []
    for v in vecs:
        if exact_rank(chosen + [list(v)]) > len(chosen):
            chosen.append(list(v))
            minima.append(qf(v))
            if len(chosen) == k:
                break
    return minima
