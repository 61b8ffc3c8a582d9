import pytest
from hypothesis import given, strategies as st

from monovar.identities import (
    Identity, SearchLimitExceeded, apply, chain_is_valid, check_chain, directly_deducible,
    dual, erasure_closure, match_pattern, parse_identity, prove,
)
from monovar.words import Word, WordParseError, letter, reverse, word

from strategies import LETTERS, identities, words

x, y = letter("x"), letter("y")


def test_parse_identity():
    i = parse_identity("x y = y x")
    assert i.lhs == word("x y") and i.rhs == word("y x")
    with pytest.raises(WordParseError):
        parse_identity("x y y x")


def test_dual_reverses_both_sides():
    i = parse_identity("x y t_1 = t_1 x")
    assert dual(i) == Identity(reverse(i.lhs), reverse(i.rhs))
    assert dual(dual(i)) == i


def test_apply_substitution():
    assert apply({x: word("y y"), y: Word()}, word("x y x")) == word("y y y y")


def test_match_pattern_enumerates_factorisations():
    ms = list(match_pattern(word("x y"), word("a b c")))
    assert len(ms) == 4
    for m in ms:
        assert apply(m, word("x y")) == word("a b c")


def test_directly_deducible_with_context():
    wit = directly_deducible(parse_identity("t x x = t x x x"), parse_identity("x x = x x x"))
    assert wit is not None
    assert directly_deducible(parse_identity("x y = y x"), parse_identity("x x = x x x")) is None


def test_prove_x3_x4_from_x2_x3():
    proof = prove(parse_identity("x x x = x x x x"), [parse_identity("x x = x x x")])
    assert proof is not None
    assert proof.chain[0] == word("x x x") and proof.chain[-1] == word("x x x x")
    assert chain_is_valid(proof.chain, [parse_identity("x x = x x x")])


def test_prove_none_when_not_derivable():
    # commutativity cannot produce a longer word
    assert prove(parse_identity("x = x x"), [parse_identity("x y = y x")], max_depth=4) is None


def test_prove_state_budget():
    rules = [parse_identity("x y = y x"), parse_identity("x x = x x x")]
    with pytest.raises(SearchLimitExceeded):
        prove(parse_identity("x y z t_1 = t_1 t_1 z y x"), rules, max_depth=20, max_states=5)


def test_check_chain_flags_bad_step():
    verdicts = check_chain([word("x y"), word("x x y")], [parse_identity("x y = y x")])
    assert [v.ok for v in verdicts] == [False]


def test_erasure_closure_includes_deletions():
    closed = erasure_closure([parse_identity("x y = y x x")])
    erased = {frozenset(str(l) for l in r.erased) for r in closed}
    # deleting y leaves x = x x; deleting x leaves the trivial y = y
    assert erased == {frozenset(), frozenset({"y"})}


def test_erasure_closure_skips_trivial_rule():
    assert erasure_closure([parse_identity("x y x = x y x")]) == []


@given(identities())
def test_identity_derives_itself(i):
    proof = prove(i, [i], max_depth=2)
    assert proof is not None
    assert chain_is_valid(proof.chain, [i])


@given(identities())
def test_dual_is_involution(i):
    assert dual(dual(i)) == i


@given(words(3, 1, 4), st.dictionaries(st.sampled_from(LETTERS[:3]), words(2, 0, 3)))
def test_apply_is_homomorphism(w, phi):
    parts = [apply(phi, Word([a])) for a in w]
    assert apply(phi, w) == Word([a for p in parts for a in p])


@given(identities(max_size=3), words(2, 0, 2), words(2, 0, 2))
def test_context_instances_are_deducible(i, a, b):
    lhs = Word(tuple(a) + tuple(i.lhs) + tuple(b))
    rhs = Word(tuple(a) + tuple(i.rhs) + tuple(b))
    if lhs != rhs:
        assert directly_deducible(Identity(lhs, rhs), i) is not None
