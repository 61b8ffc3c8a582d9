"""Seeded and exhaustive corpora used by the acceptance run."""
import itertools
import random

from monovar.identities import Identity
from monovar.words import Letter, Word, is_factor, letter

XYZ = [letter(c) for c in "xyz"]


def all_words(k, max_len, min_len=1):
    return [Word(p) for n in range(min_len, max_len + 1)
            for p in itertools.product(XYZ[:k], repeat=n)]


def w_sets(k, total):
    """Sets W of words over k letters with total length <= total.

    Words that are factors of each other are not combined since M(W) would
    not change."""
    ws = all_words(k, total)
    out = []

    def rec(start, cur, left):
        if cur:
            out.append(list(cur))
        for i in range(start, len(ws)):
            w = ws[i]
            if len(w) <= left and not any(is_factor(w, c) or is_factor(c, w) for c in cur):
                cur.append(w)
                rec(i + 1, cur, left - len(w))
                cur.pop()

    rec(0, [], total)
    return out


def _rename_key(W):
    best = None
    for p in itertools.permutations(XYZ):
        m = dict(zip(XYZ, p))
        key = tuple(sorted(tuple(m[a] for a in w) for w in W))
        if best is None or key < best:
            best = key
    return best


def w_sets_up_to_renaming(k=3, total=6):
    reps = {}
    for W in w_sets(k, total):
        reps.setdefault(_rename_key(W), W)
    return list(reps.values())


def short_identities(k=3, max_len=3):
    return [Identity(a, b) for a, b in itertools.combinations(all_words(k, max_len, 0), 2)]


def sampled_identities(n, seed=11, max_len=6):
    rng = random.Random(seed)
    out = []
    for _ in range(n):
        a = rng.choices(XYZ, k=rng.randint(1, max_len))
        if rng.random() < 0.5:
            b = list(a)
            rng.shuffle(b)       # same content, so the identity often holds
        else:
            b = rng.choices(XYZ, k=rng.randint(0, max_len))
        out.append(Identity(Word(a), Word(b)))
    return out


def _side(rng, mult, simple, length):
    n = length - len(simple)
    letters = list(mult) * 2 + [rng.choice(mult) for _ in range(n - 2 * len(mult))]
    rng.shuffle(letters)
    cuts = sorted(rng.choices(range(len(letters) + 1), k=len(simple)))
    out, prev = [], 0
    for c, t in zip(cuts, simple):
        out += letters[prev:c] + [t]
        prev = c
    return Word(out + letters[prev:])


def normalizer_corpus(n=100, seed=7):
    """Identities with <= 3 multiple letters, sides <= 10 and equal simple skeletons."""
    rng = random.Random(seed)
    res = []
    while len(res) < n:
        k, m = rng.randint(1, 3), rng.randint(0, 3)
        if 2 * k + m > 10:
            continue
        mult = [Letter(c) for c in "xyz"[:k]]
        simple = [Letter("t", i + 1) for i in range(m)]
        u = _side(rng, mult, simple, rng.randint(2 * k + m, 10))
        v = _side(rng, mult, simple, rng.randint(2 * k + m, 10))
        i = Identity(u, v)
        if not i.is_trivial:
            res.append(i)
    return res
