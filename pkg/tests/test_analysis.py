from collections import deque

import pytest
from hypothesis import assume, given, strategies as st

from monovar.analysis import (
    IsotermWithinBounds, MemberWithinBounds, NonMember, NotIsoterm, equivalent_words,
    factor_image, invertibility_degree, is_formA, is_formB, is_isoterm, join_membership,
    member_MW, normalize_modulo_O, roundtrip_check,
)
from monovar.identities import Identity, SearchLimitExceeded, parse_identity
from monovar.monoids import rees_quotient, satisfies_bruteforce
from monovar.words import Word, word

from strategies import LETTERS, words


def swap_distance(a, b):
    """BFS over adjacent swaps of distinct letters; the oracle for the inversion count."""
    a, b = tuple(a), tuple(b)
    seen, queue = {a: 0}, deque([a])
    while queue:
        cur = queue.popleft()
        if cur == b:
            return seen[cur]
        for i in range(len(cur) - 1):
            if cur[i] != cur[i + 1]:
                nxt = cur[:i] + (cur[i + 1], cur[i]) + cur[i + 2:]
                if nxt not in seen:
                    seen[nxt] = seen[cur] + 1
                    queue.append(nxt)
    raise AssertionError("unreachable")


def test_xyx_is_isoterm_for_itself():
    M = rees_quotient(["x y x"])
    assert isinstance(is_isoterm(word("x y x"), [M]), IsotermWithinBounds)


def test_square_not_isoterm_for_xyx():
    out = is_isoterm(word("x x"), [rees_quotient(["x y x"])])
    assert isinstance(out, NotIsoterm)
    assert out.witness == word("x x x")


def test_factor_image_shortcut():
    M = rees_quotient(["x y x t y"])
    assert factor_image(word("a b a"), M)
    assert not factor_image(word("a a"), M)


def test_equivalent_words_of_a_factor():
    res = equivalent_words(word("x y"), [rees_quotient(["x y"])])
    assert res.words == [word("x y")]


def test_equivalent_words_budget():
    with pytest.raises(SearchLimitExceeded):
        equivalent_words(word("x y x y"), [rees_quotient(["x x"])], budget=5)


def test_join_membership_first_claim():
    Ms = [rees_quotient(["y x x t y"]), rees_quotient(["x x y t y"])]
    out = join_membership(word("x y x t y"), Ms, max_len=6, occ_cap=3)
    assert isinstance(out, MemberWithinBounds)


def test_join_membership_needs_monoids():
    with pytest.raises(ValueError):
        join_membership(word("x y"), [])


def test_member_MW_reports_offending_word():
    out = member_MW([word("x x")], [rees_quotient(["x y x"])])
    assert isinstance(out, NonMember)
    assert out.word == word("x x")


def test_invertibility_spec_example():
    assert invertibility_degree(word("t_1 x y t_2"), word("t_1 y x t_2")) == 1
    assert invertibility_degree(word("x y x"), word("x y x")) == 0
    with pytest.raises(ValueError):
        invertibility_degree(word("x y"), word("x x"))


@given(st.permutations(list(word("x x y y z t_1"))))
def test_invertibility_matches_bfs(p):
    base = word("x x y y z t_1")
    assert invertibility_degree(base, Word(p)) == swap_distance(base, p)


@given(st.permutations(list(word("x y y z x"))), st.permutations(list(word("x y y z x"))))
def test_invertibility_symmetric_and_triangle(p, q):
    a, b, c = word("x y y z x"), Word(p), Word(q)
    assert invertibility_degree(b, c) == invertibility_degree(c, b)
    assert invertibility_degree(a, c) <= invertibility_degree(a, b) + invertibility_degree(b, c)


@given(words(2, 1, 4))
def test_not_isoterm_witness_is_sound(w):
    M = rees_quotient(["x y x"])
    out = is_isoterm(w, [M])
    if isinstance(out, NotIsoterm):
        assert out.witness != w
        assert satisfies_bruteforce(M, Identity(w, out.witness)).holds


def test_normalizer_shapes_pass_through():
    nf = normalize_modulo_O(parse_identity("x = x x"))
    assert nf.formA and not nf.formB
    nf = normalize_modulo_O(parse_identity("t_1 x y t_2 = t_1 y x t_2"))
    assert nf.formB and not nf.formA
    assert is_formB(nf.formB[0]) and is_formA(parse_identity("x y x = x x y"))


def test_normalizer_trivial_identity():
    nf = normalize_modulo_O(parse_identity("x y = x y"))
    assert nf.formA == [] and nf.formB == []


def test_normalizer_rejects_skeleton_mismatch():
    with pytest.raises(ValueError):
        normalize_modulo_O(parse_identity("x t_1 x t_2 = x t_2 x t_1"))


@pytest.mark.parametrize("text", [
    "x t_1 x y t_2 y x = x x t_1 y y t_2 x",
    "x y x y t_1 x = y y x x t_1 x",
    "x y t_1 x y = y x t_1 y x",
])
def test_normalizer_roundtrip(text):
    nf = normalize_modulo_O(parse_identity(text))
    assert all(is_formA(i) for i in nf.formA)
    assert all(is_formB(i) for i in nf.formB)
    assert roundtrip_check(nf, max_states=20_000).status == "PASS"
