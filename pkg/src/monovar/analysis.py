"""Variety-level questions reduced to finite search.

Isoterm testing enumerates candidate words under per-letter and per-pair
projection constraints (necessary conditions, since erasing letters is a
substitution) and then checks each survivor in every supplied monoid.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence, Union

from .identities import Identity, Proof, SearchLimitExceeded, _compiled, prove
from .monoids import FiniteMonoid, ReesMonoid, aperiodicity_index, satisfies
from .schemas import psi1, psi3
from .words import (
    EMPTY,
    Letter,
    Word,
    decomposition,
    delete,
    islands,
    occ,
    render,
    restrict,
    stats,
    word,
)

__all__ = [
    "Bounds",
    "EquivalentWords",
    "NotIsoterm",
    "IsotermWithinBounds",
    "NonMember",
    "MemberWithinBounds",
    "equivalent_words",
    "is_isoterm",
    "member_MW",
    "join_membership",
    "invertibility_degree",
    "NormalForm",
    "normalize_modulo_O",
    "RoundTrip",
    "roundtrip_check",
    "is_formA",
    "is_formB",
]


@dataclass(frozen=True)
class Bounds:
    max_len: int
    occ_cap: int
    budget: int = 2_000_000

    def to_json(self) -> dict:
        return {"max_len": self.max_len, "occ_cap": self.occ_cap}


def _as_list(Ms) -> list:
    return [Ms] if isinstance(Ms, FiniteMonoid) else list(Ms)


def default_bounds(w: Word, Ms, max_len=None, occ_cap=None, budget=None) -> Bounds:
    if max_len is None:
        max_len = len(w) + 2
    if occ_cap is None:
        idx = 1
        for M in Ms:
            a = aperiodicity_index(M) if not isinstance(M, ReesMonoid) else _rees_index(M)
            idx = max(idx, a if a is not None else M.size)
        top = max(stats(w).occ.values(), default=0)
        occ_cap = max(top, idx) + 1
    return Bounds(max_len, occ_cap, budget or 2_000_000)


def _rees_index(M: ReesMonoid) -> int:
    # g^k is non-zero exactly while it is a factor of some word in W
    fs = set()
    for w in M.W:
        n = len(w)
        fs.update(tuple(w[i:j]) for i in range(n) for j in range(i + 1, n + 1))
    best = 1
    for g in fs:
        k = 1
        while g * (k + 1) in fs:
            k += 1
        best = max(best, k + 1)
    return best


@dataclass
class EquivalentWords:
    words: list
    bounds: Bounds
    widened: bool = False
    fresh: Optional[Letter] = None


def _fresh_letter(used) -> Letter:
    for base in ("u", "v", "w", "s", "r", "q", "p", "o"):
        l = Letter(base)
        if l not in used:
            return l
    i = 1
    while Letter("u", i) in used:
        i += 1
    return Letter("u", i)


def _holds_all(Ms, id_: Identity) -> bool:
    return all(satisfies(M, id_).holds for M in Ms)


class _Checker:
    """Satisfaction in every monoid, trying earlier counterexamples first.

    Candidates in one search tend to fail for the same reason, so a small
    move-to-front list of refuting assignments settles most of them
    without a full search.
    """

    def __init__(self, Ms, keep: int = 64):
        self.Ms = Ms
        self.keep = keep
        self.refuters: list = []

    def _refuted(self, id_: Identity) -> bool:
        for i, (M, asg) in enumerate(self.refuters):
            a = _eval(M, id_.lhs, asg)
            if a != _eval(M, id_.rhs, asg):
                if i:
                    self.refuters.insert(0, self.refuters.pop(i))
                return True
        return False

    def __call__(self, id_: Identity) -> bool:
        if self._refuted(id_):
            return False
        for M in self.Ms:
            res = satisfies(M, id_)
            if not res.holds:
                self.refuters.insert(0, (M, dict(res.witness)))
                del self.refuters[self.keep:]
                return False
        return True


def _eval(M, w, asg) -> int:
    acc = M.one
    for l in w:
        acc = M.mul(acc, asg.get(l, M.one))
        if acc == M.zero:
            return acc
    return acc


def equivalent_words(w, Ms, max_len: Optional[int] = None, occ_cap: Optional[int] = None,
                     budget: Optional[int] = None, first_other: bool = False) -> EquivalentWords:
    """All v within bounds with every M in ``Ms`` satisfying w = v.

    Words are produced in canonical order.  With ``first_other`` the search
    stops at the first v != w.
    """
    w = word(w)
    Ms = _as_list(Ms)
    if not Ms:
        raise ValueError("need at least one monoid")
    bounds = default_bounds(w, Ms, max_len, occ_cap, budget)
    if bounds.max_len < 0 or bounds.occ_cap < 1:
        raise ValueError("bounds must be positive")
    st = stats(w)
    fixed = all(M.zero is not None and M.zero != M.one for M in Ms)
    letters = sorted(st.alf)
    fresh = None
    if not fixed:
        fresh = _fresh_letter(st.alf)
        letters = letters + [fresh]
    wocc = {l: st.occ.get(l, 0) for l in letters}
    holds = _Checker(Ms)

    # single-letter projections
    allowed: dict = {}
    for l in letters:
        lo = 1 if fixed else 0
        ok = []
        for c in range(lo, bounds.occ_cap + 1):
            if c == wocc[l] or holds(Identity(Word([l] * wocc[l]), Word([l] * c))):
                ok.append(c)
        allowed[l] = ok
    if any(not allowed[l] for l in letters):
        return EquivalentWords([w], bounds, not fixed, fresh)

    # pair projections: allowed words over {a, b} and their prefixes
    pair_ok: dict = {}
    pair_prefix: dict = {}
    for a, b in itertools.combinations(letters, 2):
        target = restrict(w, {a, b})
        good = set()
        for ca in allowed[a]:
            for cb in allowed[b]:
                for pos in itertools.combinations(range(ca + cb), ca):
                    cand = [b] * (ca + cb)
                    for p in pos:
                        cand[p] = a
                    cand = Word(cand)
                    if cand == target or holds(Identity(target, cand)):
                        good.add(tuple(cand))
        pair_ok[(a, b)] = good
        pref = set()
        for g in good:
            for i in range(len(g) + 1):
                pref.add(g[:i])
        pair_prefix[(a, b)] = pref

    pairs_of = {l: [p for p in pair_ok if l in p] for l in letters}
    nodes = [0]
    found: list = []
    maxc = {l: max(allowed[l]) for l in letters}

    def dfs(cur: list, counts: dict, proj: dict, target_len: int):
        nodes[0] += 1
        if nodes[0] > bounds.budget:
            raise SearchLimitExceeded(f"equivalent_words exceeded {bounds.budget} nodes")
        if len(cur) == target_len:
            if any(counts[l] not in allowed[l] for l in letters):
                return False
            if any(proj[p] not in pair_ok[p] for p in pair_ok):
                return False
            v = Word(cur)
            if v == w or holds(Identity(w, v)):
                found.append(v)
                if first_other and v != w:
                    return True
            return False
        rest = target_len - len(cur)
        need = 0
        for l in letters:
            up = [c for c in allowed[l] if c >= counts[l]]
            if not up:
                return False
            need += up[0] - counts[l]
        if need > rest:
            return False
        for l in letters:
            if counts[l] >= maxc[l]:
                continue
            new_proj = {}
            ok = True
            for p in pairs_of[l]:
                np_ = proj[p] + (l,)
                if np_ not in pair_prefix[p]:
                    ok = False
                    break
                new_proj[p] = np_
            if not ok:
                continue
            saved = {p: proj[p] for p in new_proj}
            proj.update(new_proj)
            counts[l] += 1
            cur.append(l)
            stop = dfs(cur, counts, proj, target_len)
            cur.pop()
            counts[l] -= 1
            proj.update(saved)
            if stop:
                return True
        return False

    for L in range(0, bounds.max_len + 1):
        counts = {l: 0 for l in letters}
        proj = {p: () for p in pair_ok}
        if dfs([], counts, proj, L):
            break
    if w not in found:
        found.append(w)
    found.sort(key=Word.key)
    return EquivalentWords(found, bounds, not fixed, fresh)


# --------------------------------------------------------------------------
# verdicts

@dataclass
class NotIsoterm:
    word: Word
    witness: Word
    bounds: Bounds

    status = "NotIsoterm"

    def to_json(self) -> dict:
        return {"status": self.status, "word": render(self.word),
                "witness": render(self.witness), "bounds": self.bounds.to_json()}


@dataclass
class IsotermWithinBounds:
    word: Word
    bounds: Bounds
    widened: bool = False
    reason: str = "search"   # "factor": w is a renamed factor of some word in W

    status = "IsotermWithinBounds"

    def to_json(self) -> dict:
        out = {"status": self.status, "word": render(self.word), "bounds": self.bounds.to_json()}
        if self.widened:
            out["widened"] = True
        out["reason"] = self.reason
        return out


@dataclass
class NonMember:
    word: Word
    witness: Word
    bounds: Bounds

    status = "NonMember"

    def to_json(self) -> dict:
        return {"status": self.status, "word": render(self.word),
                "witness": render(self.witness), "bounds": self.bounds.to_json()}


@dataclass
class MemberWithinBounds:
    words: list
    bounds: list

    status = "MemberWithinBounds"

    def to_json(self) -> dict:
        return {"status": self.status, "words": [render(w) for w in self.words],
                "bounds": [b.to_json() for b in self.bounds]}


def _pattern(w) -> tuple:
    first: dict = {}
    return tuple(first.setdefault(l, len(first)) for l in w)


def factor_image(w: Word, M) -> bool:
    """True iff ``w`` renamed letter-to-letter injectively is a factor of a
    word in W (``M`` a Rees quotient).

    Then the assignment sending each letter of ``w`` to that factor's letter
    gives ``w`` a non-zero value that only ``w`` itself reaches, so ``w`` is
    an isoterm for M.
    """
    if not isinstance(M, ReesMonoid):
        return False
    pat, n = _pattern(w), len(w)
    for u in M.W:
        for i in range(len(u) - n + 1):
            if _pattern(u[i:i + n]) == pat:
                return True
    return False


def is_isoterm(w, Ms, max_len=None, occ_cap=None, budget=None):
    w = word(w)
    Ms = _as_list(Ms)
    if any(factor_image(w, M) for M in Ms):
        return IsotermWithinBounds(w, default_bounds(w, Ms, max_len, occ_cap, budget), reason="factor")
    res = equivalent_words(w, Ms, max_len, occ_cap, budget, first_other=True)
    others = [v for v in res.words if v != w]
    if others:
        return NotIsoterm(w, others[0], res.bounds)
    return IsotermWithinBounds(w, res.bounds, res.widened)


def member_MW(Wp, Ms, max_len=None, occ_cap=None, budget=None):
    """Is M(W') in the variety generated by ``Ms`` (a monoid or the factors
    of a direct product)?  Jackson: iff each word of W' is an isoterm."""
    Wp = [word(x) for x in ([Wp] if isinstance(Wp, (str, Word)) else Wp)]
    used = []
    for w in sorted(set(Wp), key=Word.key):
        v = is_isoterm(w, Ms, max_len, occ_cap, budget)
        if isinstance(v, NotIsoterm):
            return NonMember(w, v.witness, v.bounds)
        used.append(v.bounds)
    return MemberWithinBounds(sorted(set(Wp), key=Word.key), used)


def join_membership(w, Ms, max_len=None, occ_cap=None, budget=None):
    """M(w) in var M1 v ... v Mk: an identity holds in the join iff it holds
    in every Mi, so this is an isoterm test against the list."""
    Ms = _as_list(Ms)
    if not Ms:
        raise ValueError("need at least one monoid")
    return member_MW([w], Ms, max_len, occ_cap, budget)


# --------------------------------------------------------------------------
# invertibility

def _inversions(perm: list) -> int:
    # merge sort count
    if len(perm) < 2:
        return 0
    mid = len(perm) // 2
    left, right = perm[:mid], perm[mid:]
    n = _inversions(left) + _inversions(right)
    i = j = 0
    out = []
    while i < len(left) and j < len(right):
        if left[i] <= right[j]:
            out.append(left[i])
            i += 1
        else:
            out.append(right[j])
            n += len(left) - i
            j += 1
    out += left[i:] + right[j:]
    perm[:] = out
    return n


def invertibility_degree(w, w2) -> int:
    """Least number of swaps ``ab -> ba`` of adjacent distinct letters
    turning ``w`` into ``w2``.

    This is the inversion count of the order-preserving matching of equal
    letters.  When both words have the same simple letters and the same
    per-block contents the matching never crosses a simple letter, so the
    count splits into per-block counts.
    """
    w, w2 = word(w), word(w2)
    if sorted(w) != sorted(w2):
        raise ValueError("words must have the same letter content")
    target: dict = {}
    seen: dict = {}
    for i, l in enumerate(w2):
        k = seen.get(l, 0)
        target[(l, k)] = i
        seen[l] = k + 1
    seen = {}
    perm = []
    for l in w:
        k = seen.get(l, 0)
        perm.append(target[(l, k)])
        seen[l] = k + 1
    return _inversions(perm)


# --------------------------------------------------------------------------
# normalizer

def _formA_parts(id_: Identity):
    """(x, simple sequence) if ``id_`` has the shape x^e0 t1 x^e1 ... , else None."""
    letters = id_.alphabet
    for x in sorted(letters):
        if occ(id_.lhs, x) < 2 and occ(id_.rhs, x) < 2:
            continue
        others_l = [l for l in id_.lhs if l != x]
        others_r = [l for l in id_.rhs if l != x]
        if others_l == others_r and len(set(others_l)) == len(others_l):
            return x, others_l
    return None


def is_formA(id_: Identity) -> bool:
    return _formA_parts(id_) is not None


def is_formB(id_: Identity) -> bool:
    """Sides differ by swapping two adjacent islands x^p y^q of distinct
    letters; every other letter occurs once."""
    u, v = id_.lhs, id_.rhs
    if u == v or len(u) != len(v):
        return False
    i = 0
    while u[i] == v[i]:
        i += 1
    j = len(u)
    while u[j - 1] == v[j - 1]:
        j -= 1
    seg_u, seg_v = u[i:j], v[i:j]
    if len(set(seg_u)) != 2:
        return False
    x = seg_u[0]
    p = 0
    while p < len(seg_u) and seg_u[p] == x:
        p += 1
    y = seg_u[p] if p < len(seg_u) else None
    if y is None or any(l != y for l in seg_u[p:]):
        return False
    if tuple(seg_v) != tuple(seg_u[p:]) + tuple(seg_u[:p]):
        return False
    # islands must be maximal and the rest of the word over {x, y} + simple
    if (i > 0 and u[i - 1] in (x, y)) or (j < len(u) and u[j] in (x, y)):
        return False
    rest = [l for l in u if l not in (x, y)]
    return len(set(rest)) == len(rest)


@dataclass
class NormalForm:
    formA: list
    formB: list
    # stage checkpoints: lists of words, each adjacent pair one small move
    left_chain: list = field(default_factory=list)    # u ... v
    right_chain: list = field(default_factory=list)   # u' ... v'
    count_chain: list = field(default_factory=list)   # v ... w
    swap_chain: list = field(default_factory=list)    # w ... v'
    swap_kinds: list = field(default_factory=list)    # "O" or index into formB
    source: Optional[Identity] = None

    def to_json(self) -> dict:
        return {"formA": [str(i) for i in self.formA], "formB": [str(i) for i in self.formB]}


def _merge_chain(w: Word) -> list:
    """Stage 1: one occurrence at a time, move non-last islands of a letter
    onto its last island in the same block."""
    chain = [w]
    cur = list(w)
    while True:
        step = _one_merge(cur)
        if step is None:
            return chain
        cur = step
        chain.append(Word(cur))


def _block_spans(w) -> list:
    st = stats(w)
    spans, start = [], 0
    for i, l in enumerate(w):
        if l in st.simple:
            spans.append((start, i))
            start = i + 1
    spans.append((start, len(w)))
    return spans


def _one_merge(cur: list) -> Optional[list]:
    for a, b in _block_spans(cur):
        block = cur[a:b]
        last = {}
        for i, l in enumerate(block):
            last[l] = i
        # letters in order of their last occurrence
        for l in sorted(last, key=last.get):
            runs = islands(block, l)
            if len(runs) > 1:
                s, n = runs[0]
                # move the first occurrence of the first island right before
                # the last island
                ls, _ = runs[-1]
                new = block[:s] + block[s + 1:ls] + [l] + block[ls:]
                return cur[:a] + new + cur[b:]
    return None


def _counts_per_block(w: Word, x: Letter) -> list:
    return [sum(1 for l in w[a:b] if l == x) for a, b in _block_spans(w)]


def _set_counts(w: Word, x: Letter, target: list) -> Word:
    out: list = []
    for (a, b), c in zip(_block_spans(w), target):
        block = list(w[a:b])
        runs = islands(block, x)
        if runs:
            s, n = runs[0]
            block = block[:s] + [x] * c + block[s + n:]
        else:
            block = block + [x] * c
        out.append(block)
    simple = [l for l in w if l in stats(w).simple]
    res: list = []
    for i, block in enumerate(out):
        res += block
        if i < len(simple):
            res.append(simple[i])
    return Word(res)


def _island_order(block) -> list:
    order = []
    for l in block:
        if not order or order[-1] != l:
            order.append(l)
    return order


def normalize_modulo_O(id_: Identity, B: int = 4) -> NormalForm:
    """Reduce ``id_`` to formA/formB identities along the three stages."""
    u, u2 = id_.lhs, id_.rhs
    if id_.is_trivial:
        return NormalForm([], [], [u], [u2], [u], [u], [], id_)
    if is_formA(id_):
        return NormalForm([id_], [], [u], [u2], [u, u2], [u2], [], id_)
    if is_formB(id_):
        return NormalForm([], [id_], [u], [u2], [u], [u, u2], [0], id_)
    s1, s2 = stats(u), stats(u2)
    seq1 = [l for l in u if l in s1.simple]
    seq2 = [l for l in u2 if l in s2.simple]
    if seq1 != seq2:
        raise ValueError("sides must have the same sequence of simple letters")
    simple = seq1

    left = _merge_chain(u)
    right = _merge_chain(u2)
    v, v2 = left[-1], right[-1]

    formA: list = []
    count_chain = [v]
    w = v
    for x in sorted((s1.mul | s2.mul)):
        T = set(simple) | {x}
        a = Identity(restrict(v, T), restrict(v2, T))
        if not a.is_trivial:
            formA.append(a)
        target = _counts_per_block(v2, x)
        if _counts_per_block(w, x) != target:
            w = _set_counts(w, x, target)
            count_chain.append(w)

    formB: list = []
    swap_chain = [w]
    kinds: list = []
    spans2 = _block_spans(v2)
    guard = 0
    while w != v2:
        guard += 1
        if guard > 10_000:
            raise RuntimeError("island sorting did not converge")
        spans = _block_spans(w)
        s = next(i for i, ((a, b), (c, d)) in enumerate(zip(spans, spans2)) if w[a:b] != v2[c:d])
        a, b = spans[s]
        c, d = spans2[s]
        order = _island_order(w[a:b])
        pos = {l: i for i, l in enumerate(_island_order(v2[c:d]))}
        k = next(i for i in range(len(order) - 1) if pos[order[i]] > pos[order[i + 1]])
        yl, xl = order[k], order[k + 1]
        block = list(w[a:b])
        ys, yn = islands(block, yl)[0]
        xs, xn = islands(block, xl)[0]
        block = block[:ys] + [xl] * xn + [yl] * yn + block[xs + xn:]
        w_hat = Word(list(w[:a]) + block + list(w[b:]))
        shared = any(i != s and xl in w[p:q] and yl in w[p:q] for i, (p, q) in enumerate(spans))
        if shared:
            kinds.append("O")
        else:
            T = set(simple) | {xl, yl}
            fb = Identity(restrict(w, T), restrict(w_hat, T))
            if fb not in formB:
                formB.append(fb)
            kinds.append(formB.index(fb))
        w = w_hat
        swap_chain.append(w)
    return NormalForm(formA, formB, left, right, count_chain, swap_chain, kinds, id_)


@dataclass
class RoundTrip:
    status: str                  # PASS, FAIL or INCONCLUSIVE
    detail: str = ""
    proofs: int = 0

    def to_json(self) -> dict:
        return {"status": self.status, "detail": self.detail, "proofs": self.proofs}


def _transpositions(a: Word, b: Word) -> list:
    """Words on an insertion-sort path from ``a`` to its rearrangement ``b``."""
    cur = list(a)
    path = [a]
    for i, l in enumerate(b):
        j = cur.index(l, i)
        while j > i:
            cur[j - 1], cur[j] = cur[j], cur[j - 1]
            j -= 1
            path.append(Word(cur))
    return path


def _try(a: Word, b: Word, sigma, depth, max_states) -> bool:
    try:
        return prove(Identity(a, b), sigma, max_depth=depth, max_states=max_states) is not None
    except SearchLimitExceeded:
        return False


def _prove_segment(a: Word, b: Word, sigma, depth, max_states) -> tuple[bool, int, str]:
    if _try(a, b, sigma, depth, min(max_states, 300)):
        return True, 1, ""
    if sorted(a) == sorted(b):
        # one adjacent transposition at a time, built from either end since
        # only one direction may consist of valid moves; moves that need a
        # longer derivation get the full budget
        paths = []
        for x0, y0 in ((a, b), (b, a)):
            path = _transpositions(x0, y0)
            hard = [i for i, (x, y) in enumerate(zip(path, path[1:]))
                    if not _try(x, y, sigma, depth, 60)]
            paths.append((len(hard), path, hard))
        paths.sort(key=lambda p: p[0])
        for _, path, hard in paths:
            if all(_try(path[i], path[i + 1], sigma, depth, max_states) for i in hard):
                return True, len(path) - 1, ""
            break
    try:
        p = prove(Identity(a, b), sigma, max_depth=depth, max_states=max_states)
    except SearchLimitExceeded:
        return False, 1, f"state limit on {render(a)} = {render(b)}"
    if p is None:
        return False, 1, f"no derivation within depth {depth}: {render(a)} = {render(b)}"
    return True, 1, ""


def _prove_chain(chain: Sequence[Word], sigma, depth, max_states) -> tuple[bool, int, str]:
    n = 0
    for a, b in zip(chain, chain[1:]):
        if a == b:
            continue
        ok, k, why = _prove_segment(a, b, sigma, depth, max_states)
        n += k
        if not ok:
            return False, n, why
    return True, n, ""


def roundtrip_check(nf: NormalForm, B: int = 4, depth: int = 12,
                    max_states: int = 200_000) -> RoundTrip:
    """Check that the input and the output set interderive modulo Ψ₁(B)∪Ψ₃(B).

    Every derivation is split at the normalizer's checkpoints and each
    segment is handed to the bounded prover.
    """
    src = nf.source
    for a in nf.formA:
        if not is_formA(a):
            return RoundTrip("FAIL", f"not of form A: {a}")
    for b in nf.formB:
        if not is_formB(b):
            return RoundTrip("FAIL", f"not of form B: {b}")
    psi = psi1(B) + psi3(B)
    _compiled(tuple(psi))
    outputs = nf.formA + nf.formB
    total = 0
    # outputs + psi derive the input
    chain = list(nf.left_chain) + list(nf.count_chain[1:]) + list(nf.swap_chain[1:]) \
        + list(reversed(nf.right_chain))[1:]
    if chain[0] != src.lhs or chain[-1] != src.rhs:
        return RoundTrip("FAIL", "checkpoint chain does not connect the two sides")
    ok, n, why = _prove_chain(chain, psi + outputs, depth, max_states)
    total += n
    if not ok:
        return RoundTrip("INCONCLUSIVE", why, total)
    # input + psi derive every output
    sigma = psi + [src]
    u, u2 = src.lhs, src.rhs
    v, v2 = nf.left_chain[-1], nf.right_chain[-1]
    for a in nf.formA:
        T = a.alphabet
        ch = [a.lhs, restrict(v, T), restrict(u, T), restrict(u2, T), restrict(v2, T), a.rhs]
        ok, n, why = _prove_chain(ch, sigma, depth, max_states)
        total += n
        if not ok:
            return RoundTrip("INCONCLUSIVE", why, total)
    for b in nf.formB:
        T = b.alphabet
        ch = [b.lhs, restrict(v, T), restrict(u, T), restrict(u2, T), restrict(v2, T), b.rhs]
        ok, n, why = _prove_chain(ch, sigma + nf.formA, depth, max_states)
        if not ok:
            # the projections of form A identities carry the count changes
            ok2, n2, why2 = _prove_chain([b.lhs, b.rhs], sigma + nf.formA, depth, max_states)
            n += n2
            ok, why = ok2, why2 or why
        total += n
        if not ok:
            return RoundTrip("INCONCLUSIVE", why, total)
    return RoundTrip("PASS", "", total)
