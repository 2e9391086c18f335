from fractions import Fraction

import pytest
from hypothesis import assume, given, settings, strategies as st

from oracles import brute_minima, gram_of
from nfmodels.lattice import (
    IntLattice,
    NotPositiveDefinite,
    NotSaturated,
    determinant,
    exact_rank,
    gram_det,
    integer_kernel,
    is_lll_reduced,
    lll_reduce,
    minima_oracle,
    orthogonal_complement,
    rank_mod_p,
    same_lattice,
)


def test_identity_unchanged():
    for k in range(1, 5):
        I = [[int(i == j) for j in range(k)] for i in range(k)]
        res = lll_reduce(IntLattice(gram_matrix=I))
        assert res.transform == I


def test_small_example():
    res = lll_reduce(IntLattice(basis=[[1, 0], [4, 1]]))
    assert min(res.norms) == 1
    assert abs(determinant(res.transform)) == 1
    assert same_lattice(res.reduced_basis, [[1, 0], [4, 1]])


def test_reduced_gram_is_left_alone():
    res = lll_reduce(IntLattice(gram_matrix=[[2, 0], [0, 4]]))
    assert res.norms == [2, 4]
    assert res.transform == [[1, 0], [0, 1]]


def test_not_positive_definite():
    with pytest.raises(NotPositiveDefinite):
        lll_reduce(IntLattice(gram_matrix=[[1, 2], [2, 1]]))


def test_kernel_examples():
    assert [tuple(map(abs, v)) for v in integer_kernel([[2, 4]]).basis] == [(2, 1)]
    assert integer_kernel([[1, 0, 0], [0, 1, 0], [0, 0, 1]]).rank == 0


def test_kernel_of_sqrt2_evaluation():
    # columns: 1, x, ..., x^5 at sqrt 2 in the basis 1, sqrt 2
    M = [[1, 0, 2, 0, 4, 0], [0, 1, 0, 2, 0, 4]]
    L = integer_kernel(M)
    assert L.rank == 4
    v = (-2, 0, 1, 0, 0, 0)
    assert exact_rank(L.basis + [list(v)]) == 4  # v lies in the span
    assert min(lll_reduce(L).norms) == 5
    comp = orthogonal_complement(L)
    assert comp.rank == 2 and gram_det(comp) == gram_det(L)


def test_rank_examples():
    assert exact_rank([[0, 0], [0, 0]]) == 0
    assert exact_rank([[1, 1, 1], [1, 2, 4], [1, 3, 9]]) == 3
    assert exact_rank([[Fraction(1, 2), 1], [1, 2]]) == 1


def test_gram_det_examples():
    assert gram_det(IntLattice(basis=[[1, 0], [0, 1]])) == 1
    assert gram_det(IntLattice(basis=[[2, -1]])) == 5
    assert gram_det(IntLattice(basis=[[1, 1]])) == 2


def test_complement_examples():
    comp = orthogonal_complement(IntLattice(basis=[[1, 1]]))
    assert same_lattice(comp.basis, [[1, -1]])
    full = orthogonal_complement(IntLattice(basis=[], ambient_dim=3))
    assert full.rank == 3 and gram_det(full) == 1


def test_non_saturated_rejected():
    with pytest.raises(NotSaturated):
        orthogonal_complement(IntLattice(basis=[[2, 2]]))


def test_minima_examples():
    assert minima_oracle(IntLattice(gram_matrix=[[2, 0], [0, 4]])) == [2, 4]
    assert minima_oracle(IntLattice(basis=[[1, 0, 0], [0, 1, 0], [0, 0, 1]])) == [1, 1, 1]
    # (1,0) and (4,1) - 4 (1,0) = (0,1) are both of length 1
    assert minima_oracle(IntLattice(basis=[[1, 0], [4, 1]])) == [1, 1]
    with pytest.raises(ValueError):
        minima_oracle(IntLattice(gram_matrix=[[int(i == j) for j in range(6)] for i in range(6)]))


# ---------------------------------------------------------------------------
# properties
# ---------------------------------------------------------------------------

@st.composite
def int_basis(draw, max_k=4, max_N=5, lo=-12, hi=12):
    k = draw(st.integers(1, max_k))
    N = draw(st.integers(k, max_N))
    B = draw(st.lists(st.lists(st.integers(lo, hi), min_size=N, max_size=N),
                      min_size=k, max_size=k))
    assume(exact_rank(B) == k)
    return B


@settings(max_examples=80, deadline=None)
@given(int_basis())
def test_lll_transform_unimodular_and_reduced(B):
    res = lll_reduce(IntLattice(basis=B))
    assert abs(determinant(res.transform)) == 1
    assert [tuple(sum(t * b for t, b in zip(row, col)) for col in zip(*B))
            for row in res.transform] == res.reduced_basis
    assert is_lll_reduced(gram_of(res.reduced_basis))
    assert same_lattice(res.reduced_basis, B)


@settings(max_examples=40, deadline=None)
@given(int_basis(max_k=3, max_N=4, lo=-6, hi=6))
def test_lll_first_vector_bound(B):
    k = len(B)
    res = lll_reduce(IntLattice(basis=B))
    lam1 = brute_minima(gram_of(B))[0]
    b1 = sum(x * x for x in res.reduced_basis[0])
    assert b1 <= 2 ** (k - 1) * lam1


@settings(max_examples=30, deadline=None)
@given(int_basis(max_k=3, max_N=3, lo=-5, hi=5))
def test_minima_oracle_matches_box_enumeration(B):
    assert minima_oracle(IntLattice(basis=B)) == brute_minima(gram_of(B))


@st.composite
def int_matrix(draw):
    m, N = draw(st.integers(1, 4)), draw(st.integers(1, 6))
    return draw(st.lists(st.lists(st.integers(-6, 6), min_size=N, max_size=N),
                         min_size=m, max_size=m))


@settings(max_examples=80, deadline=None)
@given(int_matrix())
def test_rank_nullity(M):
    L = integer_kernel(M)
    assert exact_rank(M) + L.rank == len(M[0])
    for v in L.basis:
        assert all(sum(a * b for a, b in zip(row, v)) == 0 for row in M)
    assert rank_mod_p(M) <= exact_rank(M)


@settings(max_examples=60, deadline=None)
@given(int_matrix())
def test_kernel_saturated_and_dual_volumes(M):
    L = integer_kernel(M)
    assume(L.rank > 0)
    comp = orthogonal_complement(L)
    assert gram_det(L) == gram_det(comp)
    back = orthogonal_complement(comp) if comp.rank else IntLattice(
        basis=[[int(i == j) for j in range(len(M[0]))] for i in range(len(M[0]))])
    assert same_lattice(back.basis, L.basis)
