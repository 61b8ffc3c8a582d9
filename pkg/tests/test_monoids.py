import json

import numpy as np
import pytest
from hypothesis import given, strategies as st

from monovar.identities import Identity, parse_identity
from monovar.monoids import (
    FiniteMonoid, MemberWithinBound, NonMember, ResourceLimitExceeded, aperiodicity_index,
    direct_product, dual_monoid, in_Acen_class, is_aperiodic, rees_quotient, satisfies,
    satisfies_bruteforce, satisfies_presentation, satisfies_rees,
)
from monovar.schemas import presentation
from monovar.words import Word, word

from strategies import identities, words


def test_rees_xyx_elements():
    M = rees_quotient(["x y x"])
    # 1, x, y, xy, yx, xyx and the zero
    assert M.size == 7
    assert M.check_axioms()
    assert M.element("x y x") != M.zero
    assert M.element("x x") == M.zero


def test_rees_rejects_empty_word():
    with pytest.raises(ValueError):
        rees_quotient([""])


def test_table_matches_mul():
    M = rees_quotient(["x y x", "y y"])
    T = M.table
    for a in range(M.size):
        for b in range(M.size):
            assert T[a, b] == M.mul(a, b)


def test_table_cache_roundtrip(tmp_path):
    M = rees_quotient(["x y t x"], cache_dir=tmp_path)
    T = M.table.copy()
    files = list(tmp_path.glob("rees-*.json"))
    assert len(files) == 1
    data = json.loads(files[0].read_text())
    assert data["table"] == T.tolist()
    again = rees_quotient(["x y t x"], cache_dir=tmp_path)
    assert np.array_equal(again.table, T)


def test_jackson_style_facts():
    M = rees_quotient(["x y x"])
    assert satisfies_rees(M, parse_identity("x x = x x x")).holds
    res = satisfies_rees(M, parse_identity("x y x = x x y"))
    assert not res.holds
    lhs, rhs = res.values
    assert lhs != rhs


def test_witness_is_a_real_counterexample():
    M = rees_quotient(["x y"])
    res = satisfies(M, parse_identity("x y = y x"))
    assert not res.holds
    asg = res.witness
    assert M.evaluate(word("x y"), asg) != M.evaluate(word("y x"), asg)


def test_bruteforce_budget():
    M = rees_quotient(["x y z x"])
    with pytest.raises(ResourceLimitExceeded):
        satisfies_bruteforce(M, parse_identity("x y z t_1 = t_1 z y x"), budget=100)


def test_aperiodic_and_index():
    M = rees_quotient(["x x y"])
    assert is_aperiodic(M)
    assert aperiodicity_index(M) == 3
    z2 = FiniteMonoid([[0, 1], [1, 0]], one=0)
    assert not is_aperiodic(z2)
    assert aperiodicity_index(z2) is None
    assert not in_Acen_class(z2)


def test_product_and_dual():
    A, B = rees_quotient(["x y"]), rees_quotient(["x"])
    P = direct_product(A, B)
    assert P.size == A.size * B.size
    assert P.check_axioms()
    D = dual_monoid(A)
    assert D.check_axioms()
    # A is not commutative, and neither is its dual
    assert not satisfies_bruteforce(D, parse_identity("x y = y x")).holds


def test_presentation_membership():
    M = rees_quotient(["x y x"])
    assert isinstance(satisfies_presentation(M, presentation("P", 2, B=3)), MemberWithinBound)
    out = satisfies_presentation(rees_quotient(["x x"]), [parse_identity("x x = x x x")])
    assert isinstance(out, NonMember)


@given(st.lists(words(2, 1, 3), min_size=1, max_size=2), identities(2, 3))
def test_rees_search_agrees_with_bruteforce(W, id_):
    M = rees_quotient(W)
    assert satisfies_rees(M, id_).holds == satisfies_bruteforce(M, id_).holds


@given(st.lists(words(3, 1, 4), min_size=1, max_size=2))
def test_rees_quotients_are_acen(W):
    M = rees_quotient(W)
    assert M.check_axioms()
    assert in_Acen_class(M)


@given(st.lists(words(2, 1, 3), min_size=1, max_size=2), identities(2, 3))
def test_identity_passes_to_products(W, id_):
    M = rees_quotient(W)
    P = direct_product(M, M)
    assert satisfies_bruteforce(P, id_).holds == satisfies_bruteforce(M, id_).holds
