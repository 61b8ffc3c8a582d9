"""Registered claims: each one a named, replayable check built from the
other modules, with PASS / FAIL / INCONCLUSIVE reports.

Claim ids are stable strings.  A FAIL always carries a witness that
:func:`replay_witness` can re-verify from scratch.
"""
from __future__ import annotations

import fnmatch
import itertools
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Optional

from .analysis import IsotermWithinBounds, NotIsoterm, is_isoterm, join_membership
from .identities import (
    Identity,
    SearchLimitExceeded,
    canonical_form,
    check_chain,
    parse_identity,
    prove,
)
from .monoids import (
    ReesMonoid,
    ResourceLimitExceeded,
    rees_quotient,
    satisfies,
    satisfies_bruteforce,
    satisfies_rees,
)
from .schemas import (
    AkConstruction,
    CkConstruction,
    all_perms,
    default_rho_a,
    default_rho_c,
    enum_S,
    perm,
    phi,
    omega,
    psi1,
    psi1_hat,
    psi2,
    psi3,
    sigma,
    strictness_rhs,
    word_a,
    word_a_dprime,
    word_a_pq,
    word_a_prime,
)
from .words import Letter, Word, is_square_free, parse_word, render, reverse, word

__all__ = [
    "Config",
    "Claim",
    "Report",
    "CLAIMS",
    "CLAIM_SOURCES",
    "UnknownClaim",
    "verify_paper",
    "run_claim",
    "replay_witness",
    "enumerate_Rn_basis_candidates",
]


@dataclass
class Config:
    bound: int = 4
    max_len: Optional[int] = None
    depth: int = 12
    budget: Optional[int] = None
    cache_dir: Optional[str] = None
    workers: int = 1

    def __post_init__(self):
        for name in ("bound", "depth", "workers"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be positive")
        if self.max_len is not None and self.max_len < 1:
            raise ValueError("max_len must be positive")
        if self.budget is not None and self.budget < 1:
            raise ValueError("budget must be positive")

    def to_json(self) -> dict:
        return {"bound": self.bound, "max_len": self.max_len, "depth": self.depth,
                "budget": self.budget, "cache_dir": self.cache_dir}


class UnknownClaim(KeyError):
    pass


@dataclass
class Report:
    id: str
    status: str
    witness: Optional[dict] = None
    params: dict = field(default_factory=dict)
    elapsed_ms: int = 0

    def to_json(self) -> dict:
        out = {"id": self.id, "status": self.status}
        if self.witness is not None:
            out["witness"] = self.witness
        out["params"] = self.params
        out["elapsed_ms"] = self.elapsed_ms
        return out


# outcome of a claim body: (status, witness, params)
Outcome = tuple


@dataclass(frozen=True)
class Claim:
    id: str
    description: str
    location: str
    run: Callable[[Config], Outcome]


# anchors for where each claim comes from
CLAIM_SOURCES = {
    "a-subst": "a-family substitution step: ψ(a_k)q_{k+1} = a_{k+1}",
    "c-subst": "c-family substitution step: ψ(c_k) = c_{k+1}",
    "a-struct": "a_k is square-free with unique length-2 factors",
    "c-struct": "c_k is square-free with unique length-2 factors",
    "a-strict": "M(a_k) satisfies a_{k+1} ≈ x_1^2 (a_{k+1})_{x_1}",
    "c-strict": "M(c_k) satisfies c_{k+1} ≈ c'_{k+1} while c_k stays an isoterm",
    "joins": "the four routinely checked join claims",
    "endpoints": "a^{0,n+m} = a, a^{n+m,n+m} = a', a^{0,0} = a''",
    "a11-chain": "a_{n,m}[ρ] ≈ ... ≈ a'_{n,m}[ρ] via σ_3 and the hat-Ψ_1 identities",
    "xyx-chain": "xyx ≈ x^s y x^t ≈ ... ≈ x^2 y under Φ_2",
    "small-proofs": "consequences of Φ_n and ω_n",
    "jackson": "M(W) lies in V iff every word of W is an isoterm for V",
    "Rn-enum": "finitely many candidate identities for subvarieties of R_n",
    "reversal": "duality of the Ψ schemas under word reversal",
    "perm-count": "sizes of the sets S_{n,m}",
}


def _budget(cfg: Config, default: int) -> int:
    return cfg.budget if cfg.budget is not None else default


def _first_diff(a: Word, b: Word) -> int:
    for i, (x, y) in enumerate(zip(a, b)):
        if x != y:
            return i
    return min(len(a), len(b))


def _word_eq(got: Word, expected: Word, params: dict) -> Outcome:
    if got == expected:
        return "PASS", None, params
    i = _first_diff(got, expected)
    return "FAIL", {
        "kind": "word_diff",
        "position": i,
        "got": render(got),
        "expected": render(expected),
        "got_at": render(got[i:i + 6]),
        "expected_at": render(expected[i:i + 6]),
    }, params


# --------------------------------------------------------------------------
# claim bodies

def _subst_a(k: int):
    def run(cfg: Config) -> Outcome:
        A = AkConstruction(2, 2, default_rho_a(2, 2))
        got = A.psi(k)(A.word(k)) + A.q(k + 1)
        return _word_eq(got, A.word(k + 1), {"n": 2, "m": 2, "k": k, "rho": str(A.rho)})
    return run


def _subst_c(case: str, k: int, literal: bool = False):
    def run(cfg: Config) -> Outcome:
        n = 2 if case == "ii" else 1
        C = CkConstruction(case, n, n, default_rho_c(case, n, n))
        phi_ = C.psi_literal(k) if literal else C.psi(k)
        got = phi_(C.word(k)) + C.trailer(k)
        params = {"case": case, "n": n, "m": n, "k": k, "rho": str(C.rho)}
        if literal:
            params["literal"] = True
        return _word_eq(got, C.word(k + 1), params)
    return run


def _repeated_pair(w: Word) -> Optional[tuple]:
    seen = {}
    for i in range(len(w) - 1):
        p = (w[i], w[i + 1])
        if p in seen:
            return p, seen[p], i
        seen[p] = i
    return None


def _square(w: Word) -> Optional[tuple]:
    n = len(w)
    for i in range(n):
        for h in range(1, (n - i) // 2 + 1):
            if w[i:i + h] == w[i + h:i + 2 * h]:
                return i, h
    return None


def _family_word(fam: str, k: int) -> tuple[Word, dict]:
    if fam == "a":
        return AkConstruction(2, 2, default_rho_a(2, 2)).word(k), {"family": "a", "n": 2, "m": 2, "k": k}
    case = fam.split("_")[1]
    n = 2 if case == "ii" else 1
    C = CkConstruction(case, n, n, default_rho_c(case, n, n))
    return C.word(k), {"family": "c", "case": case, "n": n, "m": n, "k": k}


def _squarefree(fam: str, k: int):
    def run(cfg: Config) -> Outcome:
        w, params = _family_word(fam, k)
        sq = _square(w)
        if sq is None:
            return "PASS", None, params
        i, h = sq
        return "FAIL", {"kind": "square", "word": render(w), "position": i,
                        "factor": render(w[i:i + h])}, params
    return run


def _pairs(fam: str, k: int):
    def run(cfg: Config) -> Outcome:
        w, params = _family_word(fam, k)
        rep = _repeated_pair(w)
        if rep is None:
            return "PASS", None, params
        pair, i, j = rep
        return "FAIL", {"kind": "repeated_factor", "word": render(w), "factor": render(pair),
                        "positions": [i, j]}, params
    return run


def _sat_witness(M: ReesMonoid, W: list, id_: Identity, res) -> dict:
    return {"kind": "assignment", "W": [render(x) for x in W], "identity": str(id_),
            "assignment": dict(sorted((str(k), v) for k, v in res.labels.items()))}


def _strict_c(cfg: Config) -> Outcome:
    C = CkConstruction("ii", 2, 2, default_rho_c("ii", 2, 2))
    c0, c1 = C.word(0), C.word(1)
    rhs = strictness_rhs("c", c1)
    params = {"case": "ii", "n": 2, "m": 2, "k": 0}
    M = rees_quotient([c0], cfg.cache_dir)
    budget = _budget(cfg, 5_000_000)
    params["budget"] = budget
    try:
        res = satisfies_rees(M, Identity(c1, rhs), budget=budget)
    except ResourceLimitExceeded:
        return "INCONCLUSIVE", None, params
    if not res.holds:
        return "FAIL", _sat_witness(M, [c0], Identity(c1, rhs), res), params
    try:
        iso = is_isoterm(c0, [M], max_len=len(c0) + 1, occ_cap=2)
    except SearchLimitExceeded:
        return "INCONCLUSIVE", None, params
    params["isoterm_bounds"] = iso.bounds.to_json()
    if isinstance(iso, NotIsoterm):
        return "FAIL", {"kind": "not_isoterm", "W": [render(c0)], "word": render(c0),
                        "witness": render(iso.witness)}, params
    return "PASS", None, params


def _strict_a(cfg: Config) -> Outcome:
    A = AkConstruction(2, 2, default_rho_a(2, 2))
    a3, a4 = A.word(3), A.word(4)
    id_ = Identity(a4, strictness_rhs("a", a4))
    budget = _budget(cfg, 5_000_000)
    params = {"n": 2, "m": 2, "k": 3, "budget": budget}
    M = rees_quotient([a3], cfg.cache_dir)
    try:
        res = satisfies_rees(M, id_, budget=budget)
    except ResourceLimitExceeded:
        return "INCONCLUSIVE", None, params
    if not res.holds:
        return "FAIL", _sat_witness(M, [a3], id_, res), params
    return "PASS", None, params


JOINS = [
    ("x y x t y", ["y x x t y", "x x y t y"]),
    ("z_1 t_1 x z_2 z_1 x t_2 z_2", ["y x x t y", "y t x x y"]),
    ("z_1 t_1 x z_1 z_2 x t_2 z_2", ["y t y x x", "x x y t y"]),
    ("y t x y x", ["y t y x x", "y t x x y"]),
]


def _join(i: int):
    def run(cfg: Config) -> Outcome:
        w, Ws = JOINS[i - 1]
        w = parse_word(w)
        Ms = [rees_quotient([x], cfg.cache_dir) for x in Ws]
        max_len = cfg.max_len if cfg.max_len is not None else len(w) + 1
        params = {"word": render(w), "monoids": Ws, "max_len": max_len, "occ_cap": 3}
        try:
            v = join_membership(w, Ms, max_len=max_len, occ_cap=3, budget=cfg.budget)
        except SearchLimitExceeded:
            return "INCONCLUSIVE", None, params
        if v.status == "NonMember":
            return "FAIL", {"kind": "identity_in_all", "W": [[x] for x in Ws],
                            "identity": f"{render(w)} = {render(v.witness)}"}, params
        return "PASS", None, params
    return run


def _endpoints(cfg: Config) -> Outcome:
    checked = 0
    for s in range(0, 6):
        for n in range(0, s + 1):
            m = s - n
            for rho in all_perms(s):
                a = word_a(n, m, rho)
                pairs = [(word_a_pq(n, m, rho, 0, s), a),
                         (word_a_pq(n, m, rho, s, s), word_a_prime(n, m, rho)),
                         (word_a_pq(n, m, rho, 0, 0), word_a_dprime(n, m, rho))]
                for got, exp in pairs:
                    checked += 1
                    if got != exp:
                        return "FAIL", {"kind": "word_diff", "got": render(got), "expected": render(exp),
                                        "position": _first_diff(got, exp), "n": n, "m": m,
                                        "rho": str(rho)}, {"max_sum": 5}
    return "PASS", None, {"max_sum": 5, "checked": checked}


A11_CHAIN = ["z_1 t_1 x z_1 z_2 x t_2 z_2", "z_1 t_1 z_1 x z_2 x t_2 z_2", "z_1 t_1 z_1 z_2 x x t_2 z_2"]
XYX_CHAIN = ["x x x y", "x x y", "y x x", "y x x", "x x y"]


def _chain(chain: list, rules: list, ends: Optional[tuple] = None):
    def run(cfg: Config) -> Outcome:
        words = [parse_word(x) for x in chain]
        params = {"chain": chain, "rules": [str(r) for r in rules]}
        if ends is not None and (words[0] != ends[0] or words[-1] != ends[-1]):
            return "FAIL", {"kind": "chain_ends", "chain": chain,
                            "expected": [render(ends[0]), render(ends[1])]}, params
        for v in check_chain(words, rules):
            if not v.ok:
                return "FAIL", {"kind": "chain_step", "chain": chain, "step": v.index,
                                "rules": [str(r) for r in rules]}, params
        return "PASS", None, params
    return run


def _a11_chain(cfg: Config) -> Outcome:
    rho = perm([1, 2])
    ends = (word_a(1, 1, rho), word_a_prime(1, 1, rho))
    return _chain(A11_CHAIN, [sigma(3)] + psi1_hat(), ends)(cfg)


def _xyx_chain(cfg: Config) -> Outcome:
    # s = 3, t = 0: the first link x y x = x^3 y is the hypothesis
    status, wit, params = _chain(["x y x", "x x x y"], [parse_identity("x y x = x x x y")])(cfg)
    if status != "PASS":
        return status, wit, params
    return _chain(XYX_CHAIN, phi(2))(cfg)


def _prove_claim(goal: str, rules: list, depth: int):
    def run(cfg: Config) -> Outcome:
        id_ = parse_identity(goal)
        params = {"goal": goal, "depth": depth}
        try:
            p = prove(id_, rules, max_depth=depth)
        except SearchLimitExceeded:
            return "INCONCLUSIVE", None, params
        if p is None:
            return "FAIL", {"kind": "no_proof", "goal": goal, "rules": [str(r) for r in rules],
                            "depth": depth}, params
        params["steps"] = len(p.steps)
        return "PASS", None, params
    return run


def _jackson(cfg: Config) -> Outcome:
    M = rees_quotient(["x y x"], cfg.cache_dir)
    params = {"W": ["x y x"]}
    v = is_isoterm("x y x", [M])
    params["bounds"] = v.bounds.to_json()
    if isinstance(v, NotIsoterm):
        return "FAIL", {"kind": "identity_in_all", "W": [["x y x"]],
                        "identity": f"x y x = {render(v.witness)}"}, params
    return "PASS", None, params


def _same_up_to_renaming(a: Identity, b: Identity) -> bool:
    return canonical_form(a.lhs, a.rhs)[:2] == canonical_form(b.lhs, b.rhs)[:2]


def _canon(ids) -> set:
    return {canonical_form(i.lhs, i.rhs)[:2] for i in ids}


def _reversal_12(cfg: Config) -> Outcome:
    p1, p2 = _canon(psi1(4)), _canon(psi2(4))
    rev = _canon(Identity(reverse(i.lhs), reverse(i.rhs)) for i in psi1(4))
    if rev != p2:
        extra = sorted(rev - p2)[:1] or sorted(p2 - rev)[:1]
        S, T = extra[0]
        return "FAIL", {"kind": "identity_mismatch", "identity": f"{render(S)} = {render(T)}"}, {"B": 4}
    return "PASS", None, {"B": 4, "size": len(p1)}


def _reversal_3(cfg: Config) -> Outcome:
    p3 = _canon(psi3(4))
    rev = _canon(Identity(reverse(i.lhs), reverse(i.rhs)) for i in psi3(4))
    if rev != p3:
        S, T = sorted(rev ^ p3)[0]
        return "FAIL", {"kind": "identity_mismatch", "identity": f"{render(S)} = {render(T)}"}, {"B": 4}
    return "PASS", None, {"B": 4, "size": len(p3)}


def _perm_counts(cfg: Config) -> Outcome:
    want = {(1, 1): 2, (2, 1): 2, (1, 2): 2, (2, 2): 8, (2, 0): 0}
    got = {k: len(enum_S(*k)) for k in want}
    if got != want:
        bad = next(k for k in want if got[k] != want[k])
        return "FAIL", {"kind": "count", "n": bad[0], "m": bad[1], "got": got[bad],
                        "expected": want[bad]}, {}
    return "PASS", None, {"counts": {f"{n},{m}": c for (n, m), c in sorted(got.items())}}


def _rn_enum(n: int, expected: int):
    def run(cfg: Config) -> Outcome:
        ids = enumerate_Rn_basis_candidates(n)
        params = {"n": n, "count": len(ids)}
        if len(ids) != expected:
            return "FAIL", {"kind": "count", "got": len(ids), "expected": expected}, params
        return "PASS", None, params
    return run


# --------------------------------------------------------------------------
# candidate bases for subvarieties of R_n

def _formA_words(n: int, r: int) -> list[Word]:
    x = Letter("x")
    out = []
    for es in itertools.product(range(n + 1), repeat=r + 1):
        if sum(es) > n:
            continue
        w = [x] * es[0]
        for i in range(1, r + 1):
            w += [Letter("t", i)] + [x] * es[i]
        out.append(Word(w))
    return out


def _flank_choices(n: int):
    # a^g with g = 0 collapses the letter choice
    yield 0, None
    for g in range(1, n + 1):
        for a in ("x", "y"):
            yield g, a


def enumerate_Rn_basis_candidates(n: int) -> list[Identity]:
    """Identities of the two normal shapes within the finiteness bounds.

    Trivial identities are dropped and the list is deduplicated under
    canonical orientation, in generation order.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    out: dict = {}

    def add(u: Word, v: Word):
        if u == v:
            return
        id_ = Identity(u, v)
        out.setdefault(id_, id_)

    for r in range(0, n + 1):
        ws = _formA_words(n, r)
        for u, v in itertools.combinations(ws, 2):
            add(u, v)
    x, y = Letter("x"), Letter("y")
    flanks = list(_flank_choices(n))
    for k in range(0, 2 * n + 1):
        for l in range(0, 2 * n + 1):
            for pre in itertools.product(flanks, repeat=k):
                head: list = []
                for i, (g, a) in enumerate(pre, 1):
                    head += [Letter(a)] * g if g else []
                    head.append(Letter("t", i))
                for post in itertools.product(flanks, repeat=l):
                    tail: list = []
                    for i, (g, a) in enumerate(post, k + 1):
                        tail.append(Letter("t", i))
                        tail += [Letter(a)] * g if g else []
                    for p in range(1, n + 1):
                        for q in range(1, n + 1):
                            add(Word(head + [x] * p + [y] * q + tail),
                                Word(head + [y] * q + [x] * p + tail))
    return list(out.values())


# --------------------------------------------------------------------------
# registry

def _claims() -> list[Claim]:
    c: list[Claim] = []
    for k in (3, 4):
        c.append(Claim(f"P4.1.subst.a{k}", f"ψ(a_{k}) q_{k + 1} = a_{k + 1} (n=m=2)", "a-subst", _subst_a(k)))
    for case in ("ii", "iii"):
        for k in (0, 1):
            c.append(Claim(f"P4.1.subst.c_{case}.{k}", f"ψ(c_{k}) = c_{k + 1}, case {case}",
                           "c-subst", _subst_c(case, k)))
    c.append(Claim("P4.1.literal.c_ii.0", "displayed image of t, case ii, k=0",
                   "c-subst", _subst_c("ii", 0, literal=True)))
    for fam, ks in (("a", (3, 4)), ("c_ii", (0, 1)), ("c_iii", (0, 1))):
        loc = "a-struct" if fam == "a" else "c-struct"
        for k in ks:
            c.append(Claim(f"P4.1.struct.{fam}{k}.squarefree", f"{fam}{k} is square-free", loc,
                           _squarefree(fam, k)))
            c.append(Claim(f"P4.1.struct.{fam}{k}.pairs", f"length-2 factors of {fam}{k} are unique", loc,
                           _pairs(fam, k)))
    c.append(Claim("P4.1.strict.c_ii", "M(c_0) satisfies c_1 = c_1' and c_0 is an isoterm", "c-strict", _strict_c))
    c.append(Claim("P4.1.strict.a3", "M(a_3) satisfies a_4 = x_1^2 (a_4)_{x_1}", "a-strict", _strict_a))
    for i in range(1, 5):
        c.append(Claim(f"P4.3.join.{i}", f"join membership {i}", "joins", _join(i)))
    c.append(Claim("P4.3.endpoints", "a^{p,q} endpoints for n+m <= 5", "endpoints", _endpoints))
    c.append(Claim("P4.3.chain.a11", "a_{1,1}[id] to a'_{1,1}[id] step by step", "a11-chain", _a11_chain))
    c.append(Claim("S5.chain.xyx", "xyx = x^3 y = ... = x^2 y under Phi_2", "xyx-chain", _xyx_chain))
    c.append(Claim("S5.prove.omega2", "x t_1 x t_2 x = x^3 t_1 t_2 from Phi_2 and omega_2", "small-proofs",
                   _prove_claim("x t_1 x t_2 x = x x x t_1 t_2", phi(2) + [omega(2)], 2)))
    c.append(Claim("S5.prove.x3x4", "x^3 = x^4 from Phi_2", "small-proofs",
                   _prove_claim("x x x = x x x x", phi(2), 3)))
    c.append(Claim("P3.2.jackson", "xyx is an isoterm for var M(xyx)", "jackson", _jackson))
    c.append(Claim("S5.Rn.enum.1", "candidate count for n = 1 (hand count 173)", "Rn-enum", _rn_enum(1, 173)))
    c.append(Claim("P4.2.reversal.psi12", "reversal maps Psi_1(4) onto Psi_2(4)", "reversal", _reversal_12))
    c.append(Claim("P4.2.reversal.psi3", "Psi_3(4) is closed under reversal", "reversal", _reversal_3))
    c.append(Claim("P2.perm.counts", "|S_{n,m}| for small n, m", "perm-count", _perm_counts))
    return sorted(c, key=lambda x: x.id)


CLAIMS: dict = {c.id: c for c in _claims()}


def select(pattern: str = "*") -> list[Claim]:
    pats = [p.strip() for p in pattern.split(",") if p.strip()] or ["*"]
    chosen = [c for cid, c in CLAIMS.items() if any(fnmatch.fnmatchcase(cid, p) for p in pats)]
    if not chosen:
        raise UnknownClaim(f"no claim matches {pattern!r}")
    return chosen


def run_claim(claim_id: str, cfg: Optional[Config] = None) -> Report:
    cfg = cfg or Config()
    if claim_id not in CLAIMS:
        raise UnknownClaim(f"unknown claim {claim_id!r}")
    claim = CLAIMS[claim_id]
    t0 = time.perf_counter()
    try:
        status, witness, params = claim.run(cfg)
    except (SearchLimitExceeded, ResourceLimitExceeded):
        status, witness, params = "INCONCLUSIVE", None, {}
    ms = int((time.perf_counter() - t0) * 1000)
    return Report(claim.id, status, witness, params, ms)


def _run_one(args) -> Report:
    cid, cfg = args
    return run_claim(cid, cfg)


def verify_paper(selection: str = "*", cfg: Optional[Config] = None) -> list[Report]:
    cfg = cfg or Config()
    ids = [c.id for c in select(selection)]
    if cfg.workers > 1 and len(ids) > 1:
        with ProcessPoolExecutor(max_workers=cfg.workers) as ex:
            reports = list(ex.map(_run_one, [(i, cfg) for i in ids]))
    else:
        reports = [run_claim(i, cfg) for i in ids]
    return sorted(reports, key=lambda r: r.id)


# --------------------------------------------------------------------------
# witness replay

def replay_witness(claim_id: str, witness: dict) -> bool:
    """True iff the witness of a FAIL report still demonstrates the failure,
    recomputed from freshly built objects."""
    kind = witness.get("kind")
    if kind == "identity_in_all":
        id_ = parse_identity(witness["identity"])
        if id_.is_trivial:
            return False
        return all(satisfies_bruteforce(rees_quotient(W), id_).holds for W in witness["W"])
    if kind == "assignment":
        M = rees_quotient(witness["W"])
        id_ = parse_identity(witness["identity"])
        asg = {}
        for k, lab in witness["assignment"].items():
            asg[word(k)[0]] = M.index[word(lab)] if lab != "0" else M.zero
        return M.evaluate(id_.lhs, asg) != M.evaluate(id_.rhs, asg)
    if kind in ("word_diff", "square", "repeated_factor", "count", "chain_step", "chain_ends",
                "no_proof", "not_isoterm", "identity_mismatch"):
        # deterministic claims: the failure is the recomputed outcome itself
        status, w2, _ = CLAIMS[claim_id].run(Config())
        return status == "FAIL" and w2 == witness
    raise ValueError(f"unknown witness kind {kind!r}")
