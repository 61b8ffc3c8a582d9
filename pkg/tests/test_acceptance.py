"""Acceptance run: one line per criterion, PASS or FAIL with a short reason.

Run with ``pytest tests/test_acceptance.py -s`` to see the lines as they are
produced; they are also repeated in the terminal summary.
"""
import collections
import time

import pytest

from monovar.analysis import (
    MemberWithinBounds, is_formA, is_formB, join_membership, normalize_modulo_O, roundtrip_check,
)
from monovar.harness import JOINS, Config, run_claim
from monovar.monoids import (
    MemberWithinBound, in_Acen_class, rees_quotient, satisfies_bruteforce, satisfies_presentation,
    satisfies_rees,
)
from monovar.schemas import presentation, word_ck
from monovar.words import word

from conftest import ACCEPTANCE_LINES
from corpus import normalizer_corpus, sampled_identities, short_identities, w_sets_up_to_renaming


def report(n, ok, detail=""):
    line = f"criterion {n}: {'PASS' if ok else 'FAIL'}" + (f"  {detail}" if detail else "")
    ACCEPTANCE_LINES.append(line)
    print(line)
    return ok


def claims(*ids):
    return [run_claim(i) for i in ids]


@pytest.fixture(scope="module")
def rees_corpus():
    return w_sets_up_to_renaming(3, 6)


def test_criterion_1_substitutions():
    rs = claims("P4.1.subst.a3", "P4.1.subst.a4", "P4.1.subst.c_ii.0", "P4.1.subst.c_ii.1",
                "P4.1.subst.c_iii.0", "P4.1.subst.c_iii.1")
    bad = [r.id for r in rs if r.status != "PASS"]
    slow = [r.id for r in rs if r.elapsed_ms >= 1000]
    assert report(1, not bad and not slow, f"failing={bad} slow={slow}" if bad or slow else
                  f"{len(rs)} exact word equalities")


def test_criterion_2_structure():
    ids = [f"P4.1.struct.{fam}.{kind}" for fam in ("a3", "a4", "c_ii0", "c_ii1", "c_iii0", "c_iii1")
           for kind in ("squarefree", "pairs")]
    rs = claims(*ids)
    bad = [r for r in rs if r.status != "PASS"]
    detail = "; ".join(f"{r.id} repeats {r.witness['factor']!r}" for r in bad) or f"{len(rs)} checks"
    assert report(2, not bad, detail)


def test_criterion_3_joins():
    results = []
    for w, W in JOINS:
        t0 = time.perf_counter()
        out = join_membership(word(w), [rees_quotient([x]) for x in W],
                              max_len=len(word(w)) + 1, occ_cap=3)
        results.append((w, out, time.perf_counter() - t0))
    bad = [(w, out) for w, out, _ in results if not isinstance(out, MemberWithinBounds)]
    slow = [w for w, _, dt in results if dt >= 60]
    detail = "; ".join(f"{w}: {type(out).__name__}" for w, out in bad) or "4 MemberWithinBounds"
    assert report(3, not bad and not slow, detail)


def test_criterion_4_strict_c():
    t0 = time.perf_counter()
    r = run_claim("P4.1.strict.c_ii", Config())
    dt = time.perf_counter() - t0
    assert report(4, r.status == "PASS" and dt < 300, f"{r.status} in {dt:.1f}s")


def test_criterion_5_strict_a():
    t0 = time.perf_counter()
    r = run_claim("P4.1.strict.a3", Config())
    dt = time.perf_counter() - t0
    ok = r.status in ("PASS", "INCONCLUSIVE") and dt < 600
    assert report(5, ok, f"{r.status} in {dt:.1f}s")


def test_criterion_6_chains():
    t0 = time.perf_counter()
    rs = claims("S5.chain.xyx", "P4.3.chain.a11", "S5.prove.omega2", "S5.prove.x3x4")
    dt = time.perf_counter() - t0
    bad = [r.id for r in rs if r.status != "PASS"]
    assert report(6, not bad and dt < 10, f"failing={bad}" if bad else f"4 chains in {dt:.1f}s")


def test_criterion_7_oracle_equivalence(rees_corpus):
    t0 = time.perf_counter()
    ids = short_identities(3, 3)
    checked, disagree = 0, []
    for W in rees_corpus:
        M = rees_quotient(W)
        for i in ids:
            checked += 1
            if satisfies_rees(M, i).holds != satisfies_bruteforce(M, i).holds:
                disagree.append((W, i))
    sample = sampled_identities(20_000)
    for n, i in enumerate(sample):
        M = rees_quotient(rees_corpus[(n * 7919) % len(rees_corpus)])
        checked += 1
        if satisfies_rees(M, i).holds != satisfies_bruteforce(M, i).holds:
            disagree.append((M.W, i))
    dt = time.perf_counter() - t0
    assert report(7, not disagree and dt < 300,
                  f"{checked} pairs, {len(disagree)} disagreements, {dt:.0f}s")


def test_criterion_8_schema_invariants():
    rs = claims("P4.3.endpoints", "P4.2.reversal.psi12", "P4.2.reversal.psi3", "P2.perm.counts")
    bad = [r.id for r in rs if r.status != "PASS"]
    assert report(8, not bad, f"failing={bad}" if bad else "endpoints, reversal, counts")


def test_criterion_9_class_membership(rees_corpus):
    extra = [["y x x t y"], ["x x y t y"], ["y t x x y"], ["y t y x x"], ["x y x t y"],
             [word_ck("ii", k=0)]]
    Ms = [rees_quotient(W) for W in rees_corpus + extra]
    outside = [M.W for M in Ms if not in_Acen_class(M)]
    pres = satisfies_presentation(rees_quotient(["x y x"]), presentation("P", 2, B=3))
    ok = not outside and isinstance(pres, MemberWithinBound)
    assert report(9, ok, f"{len(Ms)} monoids, outside={len(outside)}, M(xyx): {pres.status}")


def test_criterion_10_normalizer_roundtrip():
    counts = collections.Counter()
    shape_errors = 0
    for i in normalizer_corpus(100, seed=7):
        nf = normalize_modulo_O(i)
        shape_errors += sum(not is_formA(o) for o in nf.formA)
        shape_errors += sum(not is_formB(o) for o in nf.formB)
        rt = roundtrip_check(nf, B=4, depth=12, max_states=20_000)
        counts[rt.status] += 1
    ok = counts["FAIL"] == 0 and counts["INCONCLUSIVE"] <= 10 and shape_errors == 0
    detail = ", ".join(f"{k}={v}" for k, v in sorted(counts.items()))
    assert report(10, ok, f"{detail}, shape errors={shape_errors}")
