"""Small models: r integer equations of degree <= d in r variables having
Spec K as a smooth isolated component.

Pipeline: choose (r, d); pick integer combinations kappa_j of a balanced
set so that the double points at the conjugates of (kappa_1..kappa_r) are
well poised; compute the lattice of integer relations of degree <= d
between the kappa_j; LLL-shorten it; keep the first ell + 1 - n relations
and pick r of them whose Jacobian at kappa is invertible over K.
"""

from __future__ import annotations

import functools
import itertools
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Optional, Sequence

from .embeddings import DEFAULT_PRECISION, roots_for_field, sup_norm_upper
from .exact import Radical
from .lattice import (
    IntLattice,
    exact_rank,
    gram_det,
    integer_kernel,
    lll_reduce,
    mat_mul,
    orthogonal_complement,
    determinant,
    rank_mod_p,
)
from .nf_core import (
    FieldElement,
    NumberField,
    element_inverse,
    element_mul,
    generated_algebra_rank,
    mul_coords,
)
from .short_basis import BalancedSet, balanced_independent_set

POLICIES = ("paper", "padded", "explicit")


class ParameterError(ValueError):
    pass


class ModelFailure(RuntimeError):
    """The pipeline could not produce a model (rank failure, exhausted search)."""


class SearchExhausted(ModelFailure):
    def __init__(self, tries: int):
        super().__init__(f"no well-poised u found after {tries} tries")
        self.tries = tries


# ---------------------------------------------------------------------------
# parameters
# ---------------------------------------------------------------------------

def _compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    """All exponent vectors with the given sum, lex descending."""
    if parts == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def monomials(r: int, d: int) -> list[tuple[int, ...]]:
    """Exponent vectors of total degree <= d: by degree, then lex descending."""
    out: list[tuple[int, ...]] = []
    for deg in range(d + 1):
        out.extend(_compositions(deg, r))
    return out


@dataclass(frozen=True)
class ModelParams:
    n: int
    r: int
    d: int
    policy: str = "explicit"

    @functools.cached_property
    def monomials(self) -> tuple[tuple[int, ...], ...]:
        return tuple(monomials(self.r, self.d))

    @property
    def C(self) -> int:
        return math.comb(self.d + self.r, self.r)

    @property
    def ell(self) -> int:
        return self.C - self.n

    @property
    def keep(self) -> int:
        return self.ell + 1 - self.n

    @property
    def u_box(self) -> int:
        """Upper end of the coefficient range [0, d n (r+1)]."""
        return self.d * self.n * (self.r + 1)

    @property
    def paper_inequalities_hold(self) -> bool:
        """n(r+1) <= binom(2r, r) <= 4n(r+1) and r <= 3 ln n (the d = r regime)."""
        c = math.comb(2 * self.r, self.r)
        return (self.n * (self.r + 1) <= c <= 4 * self.n * (self.r + 1)
                and self.r <= 3 * math.log(self.n))

    def to_json(self) -> dict:
        return {"n": self.n, "r": self.r, "d": self.d, "policy": self.policy,
                "C": self.C, "ell": self.ell, "keep": self.keep}


def choose_parameters(n: int, policy: str = "padded", r: int | None = None,
                      d: int | None = None, allow_small_d: bool = False) -> ModelParams:
    if n < 2:
        raise ParameterError("degree must be at least 2")
    if policy == "paper":
        r = 1
        while n * (r + 1) > math.comb(2 * r, r):
            r += 1
        params = ModelParams(n, r, r, "paper")
        assert math.comb(2 * r, r) <= 4 * n * (r + 1)
        return params
    if policy == "padded":
        r = 1
        while n * (r + 1) > math.comb(max(r, 5) + r, r):
            r += 1
        params = ModelParams(n, r, max(r, 5), "padded")
    elif policy == "explicit":
        if r is None or d is None:
            raise ParameterError("explicit policy needs r and d")
        params = ModelParams(n, r, d, "explicit")
        if r < 1:
            raise ParameterError("r must be positive")
        if n * (r + 1) > params.C:
            raise ParameterError(f"n(r+1) = {n * (r + 1)} exceeds binom(d+r, r) = {params.C}")
        if d < 5 and not allow_small_d:
            raise ParameterError("d < 5 needs allow_small_d")
    else:
        raise ParameterError(f"unknown policy {policy!r}")
    if params.keep < params.r:
        raise ParameterError(f"keep = {params.keep} < r = {params.r}")
    return params


# ---------------------------------------------------------------------------
# evaluation at kappa
# ---------------------------------------------------------------------------

def kappas_from_u(u: Sequence[Sequence[int]], alphas: Sequence[FieldElement],
                  K: NumberField) -> list[FieldElement]:
    n, r = len(u), len(u[0])
    out = []
    for j in range(r):
        coords = [0] * K.degree
        for i in range(n):
            if u[i][j]:
                for k, a in enumerate(alphas[i].coords):
                    coords[k] += u[i][j] * a
        out.append(FieldElement(tuple(coords)))
    return out


def monomial_values(K: NumberField, kappas: Sequence[FieldElement],
                    mons: Sequence[tuple[int, ...]]) -> dict[tuple, list[int]]:
    """Coordinates of m(kappa) for each monomial m (integers: O is a ring)."""
    T = K.mul_table
    kc = [list(k.coords) for k in kappas]
    vals: dict[tuple, list[int]] = {}
    for m in mons:
        if not any(m):
            vals[m] = list(K.one().coords)
            continue
        j = next(i for i, e in enumerate(m) if e)
        prev = m[:j] + (m[j] - 1,) + m[j + 1:]
        vals[m] = mul_coords(vals[prev], kc[j], T)
    return vals


def evaluation_matrix(K: NumberField, kappas: Sequence[FieldElement],
                      params: ModelParams) -> list[list[int]]:
    vals = monomial_values(K, kappas, params.monomials)
    cols = [vals[m] for m in params.monomials]
    return [list(row) for row in zip(*cols)]


def _double_point_matrix(K: NumberField, vals: dict, params: ModelParams) -> list[list[int]]:
    """Value block plus one derivative block per variable, in basis coordinates."""
    n, r = K.degree, params.r
    mons = params.monomials
    rows = [[vals[m][i] for m in mons] for i in range(n)]
    zero = [0] * n
    for j in range(r):
        cols = []
        for m in mons:
            if m[j] == 0:
                cols.append(zero)
            else:
                lower = m[:j] + (m[j] - 1,) + m[j + 1:]
                cols.append([m[j] * x for x in vals[lower]])
        rows.extend([c[i] for c in cols] for i in range(n))
    return rows


def well_poised_check(K: NumberField, kappas: Sequence[FieldElement],
                      params: ModelParams) -> tuple[bool, int]:
    """Exact rank test of the double-point interpolation matrix.

    Rows are basis coordinates of m(kappa) and d m / d x_j (kappa); they
    differ from the complex matrix of values at the conjugate points by an
    invertible block-diagonal change of basis, so the ranks agree.
    """
    full = K.degree * (params.r + 1)
    vals = monomial_values(K, kappas, params.monomials)
    M = _double_point_matrix(K, vals, params)
    # a full rank mod p certifies full rank over Q
    if rank_mod_p(M) == full:
        return True, full
    rank = exact_rank(M)
    return rank == full, rank


# ---------------------------------------------------------------------------
# search for u
# ---------------------------------------------------------------------------

def _u_matrix(flat: Sequence[int], n: int, r: int) -> list[list[int]]:
    return [list(flat[i * r:(i + 1) * r]) for i in range(n)]


def u_candidates(params: ModelParams, strategy: str = "lex",
                 seed: int = 0) -> Iterator[list[list[int]]]:
    """Deterministic stream of u matrices with entries in [0, d n (r+1)].

    lex: shells of increasing max entry; inside a shell the first flat
    coordinate varies fastest (flat index i*r + j holds u[i][j]).
    random: uniform draws from the box with a seeded generator.
    """
    n, r, top = params.n, params.r, params.u_box
    N = n * r
    if strategy == "lex":
        for s in range(top + 1):
            for t in itertools.product(range(s + 1), repeat=N):
                if max(t, default=0) == s:
                    yield _u_matrix(t[::-1], n, r)
    elif strategy == "random":
        rng = random.Random(seed)
        while True:
            yield _u_matrix([rng.randint(0, top) for _ in range(N)], n, r)
    else:
        raise ValueError(f"unknown strategy {strategy!r}")


def iter_well_poised(K: NumberField, alphas: Sequence[FieldElement], params: ModelParams,
                     strategy: str = "lex", seed: int = 0,
                     max_tries: Optional[int] = None) -> Iterator[tuple[list, int]]:
    """Yield (u, tries_so_far) for every well-poised candidate, in order."""
    tries = 0
    for u in u_candidates(params, strategy, seed):
        if max_tries is not None and tries >= max_tries:
            break
        tries += 1
        kappas = kappas_from_u(u, alphas, K)
        if well_poised_check(K, kappas, params)[0]:
            yield u, tries
    raise SearchExhausted(tries)


def search_u(K: NumberField, alphas: Sequence[FieldElement], params: ModelParams,
             strategy: str = "lex", seed: int = 0, max_tries: Optional[int] = None):
    """First well-poised u in the candidate order."""
    return next(iter_well_poised(K, alphas, params, strategy, seed, max_tries))[0]


# ---------------------------------------------------------------------------
# relations and equations
# ---------------------------------------------------------------------------

def _normalise_relation(v: Sequence[int]) -> tuple[int, ...]:
    """Sign so that the last nonzero coefficient is positive."""
    for x in reversed(v):
        if x:
            return tuple(v) if x > 0 else tuple(-y for y in v)
    return tuple(v)


def relation_basis(evalM: Sequence[Sequence[int]],
                   params: ModelParams) -> tuple[IntLattice, list[tuple[int, ...]]]:
    L = integer_kernel(evalM)
    if L.rank != params.ell:
        raise ModelFailure(f"relation lattice has rank {L.rank}, expected {params.ell}")
    red = lll_reduce(L)
    vecs = [_normalise_relation(v) for v in red.reduced_basis]
    vecs.sort(key=lambda v: (sum(x * x for x in v), v))
    for v in vecs:
        if any(sum(a * b for a, b in zip(row, v)) for row in evalM):
            raise ModelFailure("reduced relation does not vanish")
    return L, vecs


Equation = dict  # exponent tuple -> nonzero integer coefficient


def relation_to_equation(v: Sequence[int], params: ModelParams) -> Equation:
    return {m: c for m, c in zip(params.monomials, v) if c}


def jacobian_rows(equations: Sequence[Equation], kappas: Sequence[FieldElement],
                  K: NumberField) -> list[list[FieldElement]]:
    """Entries d E_i / d x_j evaluated at kappa, as field elements."""
    r = len(kappas)
    mons = {m for E in equations for m in E}
    lowers = set()
    for m in mons:
        for j in range(r):
            if m[j]:
                lowers.add(m[:j] + (m[j] - 1,) + m[j + 1:])
    vals = monomial_values(K, kappas, sorted(_downward_closure(lowers), key=lambda e: (sum(e), e)))
    n = K.degree
    rows = []
    for E in equations:
        row = []
        for j in range(r):
            acc = [0] * n
            for m, c in E.items():
                if m[j]:
                    low = m[:j] + (m[j] - 1,) + m[j + 1:]
                    f = c * m[j]
                    for k, x in enumerate(vals[low]):
                        acc[k] += f * x
            row.append(FieldElement(tuple(acc)))
        rows.append(row)
    return rows


def _downward_closure(exps) -> set:
    out = set()
    stack = list(exps)
    while stack:
        e = stack.pop()
        if e in out:
            continue
        out.add(e)
        for j, x in enumerate(e):
            if x:
                stack.append(e[:j] + (x - 1,) + e[j + 1:])
    return out


def select_equations(shortened: Sequence[Sequence[int]], kappas: Sequence[FieldElement],
                     params: ModelParams, K: NumberField) -> tuple[list[Equation], list[int]]:
    """Pick r of the first `keep` relations whose Jacobian minor is invertible over K.

    Rows are scanned in order and reduced fraction-free against the rows
    already chosen; a row that stays nonzero becomes the next pivot.
    """
    r, keep = params.r, params.keep
    if keep < r:
        raise ParameterError(f"keep = {keep} < r = {r}")
    candidates = [relation_to_equation(v, params) for v in shortened[:keep]]
    rows = jacobian_rows(candidates, kappas, K)
    pivots: list[tuple[int, list[FieldElement]]] = []
    chosen: list[int] = []
    for idx, row in enumerate(rows):
        cur = list(row)
        for col, prow in pivots:
            if not cur[col].is_zero:
                a, b = prow[col], cur[col]
                cur = [element_mul(a, x, K) - element_mul(b, y, K) for x, y in zip(cur, prow)]
        lead = next((c for c, x in enumerate(cur) if not x.is_zero), None)
        if lead is not None:
            pivots.append((lead, cur))
            chosen.append(idx)
            if len(chosen) == r:
                return [candidates[i] for i in chosen], chosen
    raise ModelFailure(f"Jacobian of the first {keep} relations has rank {len(chosen)} < {r}")


def determinant_over_field(M: Sequence[Sequence[FieldElement]], K: NumberField) -> FieldElement:
    """Gaussian elimination over K."""
    A = [list(row) for row in M]
    n = len(A)
    det = K.one()
    for c in range(n):
        piv = next((i for i in range(c, n) if not A[i][c].is_zero), None)
        if piv is None:
            return K.zero()
        if piv != c:
            A[c], A[piv] = A[piv], A[c]
            det = det.scale(-1)
        p = A[c][c]
        det = element_mul(det, p, K)
        inv = element_inverse(p, K)
        for i in range(c + 1, n):
            if not A[i][c].is_zero:
                f = element_mul(A[i][c], inv, K)
                A[i] = [x - element_mul(f, y, K) for x, y in zip(A[i], A[c])]
    return det


# ---------------------------------------------------------------------------
# bounds
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class HeightBound:
    frakD: Radical  # bound on the entries of M0 M0*
    B: Radical  # bound on the coefficients of the selected equations
    frakD_actual: Optional[Radical] = None
    B_actual: Optional[Radical] = None

    def to_json(self) -> dict:
        out = {"frakD": self.frakD.to_json(), "B": self.B.to_json()}
        if self.frakD_actual is not None:
            out["frakD_actual"] = self.frakD_actual.to_json()
            out["B_actual"] = self.B_actual.to_json()
        return out


def height_bound(params: ModelParams, dK_abs: int,
                 actual_alpha_norm: Optional[Fraction] = None) -> HeightBound:
    """D = C X^(2d) |d_K|^(4d/n) and B = ell^(ell/2n) C^(1/2) X^d |d_K|^(2d/n),
    X = n^2 d (r+1). Both are kept exact as radicals: D^n and B^(2n) are
    rationals. With an achieved norm a, |d_K|^(2/n) is replaced by a."""
    n, r, d, C, ell = params.n, params.r, params.d, params.C, params.ell
    X = n * n * d * (r + 1)
    common = Fraction(C) ** n * Fraction(X) ** (2 * d * n)
    D = Radical(common * Fraction(dK_abs) ** (4 * d), n)
    B = Radical(Fraction(ell) ** ell * common * Fraction(dK_abs) ** (4 * d), 2 * n)
    if actual_alpha_norm is None:
        return HeightBound(D, B)
    a = Fraction(actual_alpha_norm)
    Da = Radical(C * Fraction(X) ** (2 * d) * a ** (2 * d), 1)
    Ba = Radical(Fraction(ell) ** ell * common * a ** (2 * d * n), 2 * n)
    return HeightBound(D, B, Da, Ba)


# ---------------------------------------------------------------------------
# models
# ---------------------------------------------------------------------------

@dataclass
class VerificationReport:
    well_poised: bool = False
    eval_rank: int = 0
    vanishing: bool = False
    jacobian_nonzero: bool = False
    residue_rank: int = 0
    vol_relation_sq: Optional[int] = None
    vol_complement_sq: Optional[int] = None
    volume_identity: bool = False
    volume_bound_eval: bool = False  # vol^2 <= det(E E^T)
    volume_bound_frakD: bool = False  # vol^2 <= D_actual^n
    frakD: Optional[Radical] = None
    frakD_actual: Optional[Radical] = None
    prop2_bound: Optional[Radical] = None
    prop2_bound_actual: Optional[Radical] = None
    max_abs_coeff: int = 0
    ratio: Optional[float] = None
    paper_bound_held: bool = False  # max coeff <= B (not guaranteed, recorded)
    slacked_bound_held: bool = False  # max coeff <= 2^(ell/2) B_actual
    jacobian_det: Optional[tuple] = None
    problems: list = field(default_factory=list)
    n: int = 0

    @property
    def accepted(self) -> bool:
        return (self.well_poised and self.vanishing and self.jacobian_nonzero
                and self.eval_rank == self.n and self.residue_rank == self.n
                and not self.problems)

    @property
    def status(self) -> str:
        return "ACCEPTED" if self.accepted else "REJECTED"

    def to_json(self) -> dict:
        def rad(x):
            return None if x is None else x.to_json()

        return {
            "status": self.status,
            "well_poised": self.well_poised,
            "eval_rank": self.eval_rank,
            "vanishing": self.vanishing,
            "jacobian_nonzero": self.jacobian_nonzero,
            "jacobian_det": None if self.jacobian_det is None else [str(x) for x in self.jacobian_det],
            "residue_rank": self.residue_rank,
            "vol_relation_sq": None if self.vol_relation_sq is None else str(self.vol_relation_sq),
            "vol_complement_sq": None if self.vol_complement_sq is None else str(self.vol_complement_sq),
            "volume_identity": self.volume_identity,
            "volume_bound_eval": self.volume_bound_eval,
            "volume_bound_frakD": self.volume_bound_frakD,
            "frakD": rad(self.frakD),
            "frakD_actual": rad(self.frakD_actual),
            "prop2_bound": rad(self.prop2_bound),
            "prop2_bound_actual": rad(self.prop2_bound_actual),
            "max_abs_coeff": str(self.max_abs_coeff),
            "ratio": None if self.ratio is None else f"{self.ratio:.6e}",
            "paper_bound_held": self.paper_bound_held,
            "slacked_bound_held": self.slacked_bound_held,
            "problems": list(self.problems),
        }


@dataclass
class SmallModel:
    params: ModelParams
    alphas: list[FieldElement]
    u: list[list[int]]
    kappas: list[FieldElement]
    equations: list[Equation]
    provenance: list[int]
    report: Optional[VerificationReport] = None
    alpha_norm_bounds: Optional[list[Fraction]] = None
    strategy: str = "lex"
    seed: int = 0
    tries: int = 0

    def to_json(self) -> dict:
        return {
            "params": self.params.to_json(),
            "strategy": self.strategy,
            "seed": self.seed,
            "tries": self.tries,
            "u": self.u,
            "alphas": [[str(x) for x in a.coords] for a in self.alphas],
            "alpha_norm_upper": (None if self.alpha_norm_bounds is None
                                 else [str(x) for x in self.alpha_norm_bounds]),
            "kappas": [[str(x) for x in k.coords] for k in self.kappas],
            "equations": [
                [{"exponents": list(m), "coeff": str(c)} for m, c in
                 sorted(E.items(), key=lambda t: self.params.monomials.index(t[0]))]
                for E in self.equations
            ],
            "provenance": self.provenance,
            "report": None if self.report is None else self.report.to_json(),
        }


class ModelFormatError(ValueError):
    pass


def model_from_json(doc: dict) -> SmallModel:
    try:
        p = doc["params"]
        params = ModelParams(int(p["n"]), int(p["r"]), int(p["d"]), p.get("policy", "explicit"))
        alphas = [FieldElement(tuple(Fraction(x) for x in a)) for a in doc["alphas"]]
        kappas = [FieldElement(tuple(Fraction(x) for x in k)) for k in doc["kappas"]]
        u = [[int(x) for x in row] for row in doc["u"]]
        equations = []
        for E in doc["equations"]:
            eq: Equation = {}
            for term in E:
                m = tuple(int(x) for x in term["exponents"])
                c = Fraction(term["coeff"])
                eq[m] = eq.get(m, 0) + c
            equations.append({m: c for m, c in eq.items() if c})
        return SmallModel(params, alphas, u, kappas, equations,
                          list(doc.get("provenance", [])),
                          strategy=doc.get("strategy", "lex"), seed=int(doc.get("seed", 0)),
                          tries=int(doc.get("tries", 0)))
    except (KeyError, TypeError, ValueError) as exc:
        raise ModelFormatError(f"malformed model: {exc}") from exc


def build_model(K: NumberField, params: ModelParams, strategy: str = "lex", seed: int = 0,
                max_tries: Optional[int] = None, precision: int = DEFAULT_PRECISION,
                u: Optional[Sequence[Sequence[int]]] = None,
                alphas: Optional[BalancedSet] = None, verify: bool = True) -> SmallModel:
    if params.n != K.degree:
        raise ParameterError("parameters were chosen for a different degree")
    roots = roots_for_field(K, precision)
    bset = alphas or balanced_independent_set(K, roots, precision)
    elems = list(bset.elems)
    if u is not None:
        trials = iter([([list(row) for row in u], 1)])
    else:
        trials = iter_well_poised(K, elems, params, strategy, seed, max_tries)
    last_error: Exception | None = None
    while True:
        try:
            uu, tries = next(trials)
        except StopIteration:
            raise ModelFailure(str(last_error or "explicit u rejected"))
        except SearchExhausted:
            if last_error is not None:
                raise ModelFailure(f"search exhausted; last failure: {last_error}")
            raise
        kappas = kappas_from_u(uu, elems, K)
        if u is not None and not well_poised_check(K, kappas, params)[0]:
            raise ModelFailure("explicit u does not give a well-poised double-point scheme")
        try:
            evalM = evaluation_matrix(K, kappas, params)
            _, shortened = relation_basis(evalM, params)
            equations, chosen = select_equations(shortened, kappas, params, K)
        except ModelFailure as exc:
            last_error = exc
            if u is not None:
                raise
            continue
        model = SmallModel(params, elems, uu, kappas, equations, chosen,
                           alpha_norm_bounds=[hi for _, hi in bset.norm_bounds],
                           strategy=strategy, seed=seed, tries=tries)
        if verify:
            model.report = verify_model(model, K, precision)
        return model


def verify_model(model: SmallModel, K: NumberField,
                 precision: int = DEFAULT_PRECISION) -> VerificationReport:
    """Recompute every certificate of a model from scratch; never raises on bad models."""
    rep = VerificationReport(n=K.degree)
    try:
        _verify(model, K, precision, rep)
    except Exception as exc:  # a malformed model must yield a report, not a crash
        rep.problems.append(f"verification aborted: {type(exc).__name__}: {exc}")
    return rep


def _verify(model: SmallModel, K: NumberField, precision: int, rep: VerificationReport) -> None:
    params = model.params
    n, r, d = K.degree, params.r, params.d
    if params.n != n:
        rep.problems.append("model degree differs from field degree")
        return
    if len(model.equations) != r:
        rep.problems.append(f"expected {r} equations, got {len(model.equations)}")
    for E in model.equations:
        for m, c in E.items():
            if len(m) != r or any(e < 0 for e in m) or sum(m) > d:
                rep.problems.append(f"monomial {m} outside degree <= {d} in {r} variables")
            if Fraction(c).denominator != 1:
                rep.problems.append(f"non-integer coefficient {c}")
    if rep.problems:
        return
    equations = [{m: int(c) for m, c in E.items()} for E in model.equations]
    alphas = model.alphas
    if len(alphas) != n or not all(a.is_integral for a in alphas):
        rep.problems.append("alphas must be n algebraic integers")
        return
    if exact_rank([list(a.coords) for a in alphas]) != n:
        rep.problems.append("alphas are not independent")
    if len(model.u) != n or any(len(row) != r for row in model.u):
        rep.problems.append("u has the wrong shape")
        return
    if any(not 0 <= x <= params.u_box for row in model.u for x in row):
        rep.problems.append("u outside [0, d n (r+1)]")
    kappas = kappas_from_u(model.u, alphas, K)
    if [k.coords for k in kappas] != [k.coords for k in model.kappas]:
        rep.problems.append("stored kappas differ from u * alphas")

    rep.well_poised = well_poised_check(K, kappas, params)[0]
    vals = monomial_values(K, kappas, params.monomials)
    evalM = [[vals[m][i] for m in params.monomials] for i in range(n)]
    rep.eval_rank = exact_rank(evalM)
    rep.vanishing = all(
        not any(sum(c * vals[m][i] for m, c in E.items()) for i in range(n))
        for E in equations)
    J = jacobian_rows(equations, kappas, K)
    det = determinant_over_field(J, K)
    rep.jacobian_det = det.coords
    rep.jacobian_nonzero = not det.is_zero
    rep.residue_rank = generated_algebra_rank(kappas, K)

    # volumes of the relation lattice and its orthogonal complement
    if rep.eval_rank == n:
        L = integer_kernel(evalM)
        red = lll_reduce(L).reduced_basis
        Lred = IntLattice(basis=red, ambient_dim=params.C)
        rep.vol_relation_sq = int(gram_det(Lred))
        comp = orthogonal_complement(Lred, check_saturated=False)
        rep.vol_complement_sq = int(gram_det(comp))
        rep.volume_identity = rep.vol_relation_sq == rep.vol_complement_sq
        EEt = mat_mul(evalM, [list(c) for c in zip(*evalM)])
        rep.volume_bound_eval = rep.vol_relation_sq <= determinant(EEt)

    roots = roots_for_field(K, precision)
    a = max(sup_norm_upper(al, roots, K) for al in alphas)
    hb = height_bound(params, K.abs_discriminant, a)
    rep.frakD, rep.frakD_actual = hb.frakD, hb.frakD_actual
    rep.prop2_bound, rep.prop2_bound_actual = hb.B, hb.B_actual
    if rep.vol_relation_sq is not None:
        rep.volume_bound_frakD = rep.vol_relation_sq <= hb.frakD_actual.exact() ** n
    coeffs = [abs(c) for E in equations for c in E.values()]
    rep.max_abs_coeff = max(coeffs, default=0)
    rep.ratio = rep.max_abs_coeff / float(hb.B.lower(64)) if hb.B.radicand else None
    rep.paper_bound_held = hb.B.cmp_rational(rep.max_abs_coeff) >= 0
    # coeff <= 2^(ell/2) B_actual  <=>  coeff^(2n) <= 2^(ell n) B_actual^(2n)
    Ba_pow = hb.B_actual.power(2 * n).exact()
    rep.slacked_bound_held = (Fraction(rep.max_abs_coeff) ** (2 * n)
                              <= Fraction(2) ** (params.ell * n) * Ba_pow)
