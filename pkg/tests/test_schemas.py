import math

import pytest
from hypothesis import given, strategies as st

from monovar.identities import apply, canonical_form, dual
from monovar.schemas import (
    AkConstruction, CkConstruction, SchemaError, all_perms, default_rho_a, default_rho_c,
    enum_S, is_nm_permutation, omega, perm, phi, presentation, psi1, psi2, psi3, psi1_hat,
    sigma, subst_psi_a, subst_psi_c, word_a, word_a_pq, word_a_prime, word_ak, word_ck,
)
from monovar.words import Word, is_square_free, letter, reverse, word


def _canon(ids):
    return {canonical_form(i.lhs, i.rhs)[:2] for i in ids}


def _expected_count(n, m):
    # alternating blocks: the larger side must start when n != m
    if n == m:
        return 2 * math.factorial(n) ** 2
    if abs(n - m) == 1:
        return math.factorial(n) * math.factorial(m)
    return 0


@pytest.mark.parametrize("n,m,count", [(1, 1, 2), (2, 1, 2), (1, 2, 2), (2, 2, 8), (2, 0, 0)])
def test_perm_counts(n, m, count):
    assert len(enum_S(n, m)) == count


@given(st.integers(0, 3), st.integers(0, 3))
def test_perm_counts_formula(n, m):
    if n + m == 0:
        return
    assert len(enum_S(n, m)) == _expected_count(n, m)


def test_perm_validation():
    with pytest.raises(SchemaError):
        perm([1, 1])
    with pytest.raises(SchemaError):
        is_nm_permutation(perm([1, 2]), 2, 2)
    assert perm([2, 1])(1) == 2


def test_small_families():
    assert [str(i) for i in phi(2)] == ["x x = x x x", "x x y = y x x"]
    assert str(omega(2)) == "x t_1 x t_2 x = x x x t_1 t_2"
    assert str(sigma(3)) == "x z x y t y = x z y x t y"
    assert [str(i) for i in psi1_hat()] == ["x y x t y = y x x t y", "y t x y x = y t y x x"]


def test_a_words_n1_m1():
    r = perm([1, 2])
    assert word_a(1, 1, r) == word("z_1 t_1 x z_1 z_2 x t_2 z_2")
    assert word_a_prime(1, 1, r) == word("z_1 t_1 z_1 z_2 x x t_2 z_2")
    assert word_a_pq(1, 1, r, 1, 1) == word("z_1 t_1 z_1 x x z_2 t_2 z_2")


@pytest.mark.parametrize("B", [2, 3, 4])
def test_psi1_psi2_reversal(B):
    assert _canon(dual(i) for i in psi1(B)) == _canon(psi2(B))


@pytest.mark.parametrize("B", [3, 4])
def test_psi3_closed_under_reversal(B):
    assert _canon(dual(i) for i in psi3(B)) == _canon(psi3(B))


def test_psi3_nonempty_and_bounded():
    # three positive parameters are needed, so B = 2 gives nothing
    assert psi3(2) == []
    assert 0 < len(psi3(3)) < len(psi3(4))
    with pytest.raises(SchemaError):
        psi1(0)


def test_presentations():
    P = presentation("P", 2, B=3)
    ids = P.expand()
    assert all(i in ids for i in phi(2))
    R = presentation("R", 2, B=2)
    assert omega(2) in R.expand()
    N_d = presentation("N^d")
    assert dual(sigma(3)) in N_d.expand()
    with pytest.raises(SchemaError):
        presentation("Z")


def test_ak_substitution_shifts_index():
    A = AkConstruction(2, 2, default_rho_a(2, 2))
    for k in (3, 4):
        got = Word(tuple(apply(A.psi(k), A.word(k))) + tuple(A.q(k + 1)))
        assert got == A.word(k + 1)


def test_ak_is_square_free():
    assert is_square_free(word_ak(k=3))
    with pytest.raises(SchemaError):
        word_ak(k=2)
    with pytest.raises(SchemaError):
        AkConstruction(1, 2, perm([1, 2, 3]))


@pytest.mark.parametrize("k", [0, 1])
def test_ck_case_ii_substitution(k):
    assert apply(subst_psi_c("ii", k=k), word_ck("ii", k=k)) == word_ck("ii", k=k + 1)


def test_ck_words_square_free():
    for case in ("ii", "iii"):
        for k in (0, 1):
            assert is_square_free(word_ck(case, k=k))
