"""Identities, substitutions and bounded equational deduction.

Substitutions map letters to (possibly empty) words.  Direct deducibility
is decided by an exhaustive erasing pattern matcher; :func:`prove` runs a
bidirectional breadth-first search over words, using the erasure closure of
the rule set so that the inner matcher only has to consider non-erasing
images.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping, Optional, Sequence

import numpy as np

from .words import EMPTY, Letter, Word, WordParseError, render, reverse, word

__all__ = [
    "Identity",
    "Substitution",
    "Step",
    "Proof",
    "Witness",
    "SearchLimitExceeded",
    "identity",
    "parse_identity",
    "apply",
    "dual",
    "match_pattern",
    "directly_deducible",
    "check_chain",
    "chain_is_valid",
    "prove",
    "default_max_len",
    "canonical_form",
    "erasure_closure",
]


class SearchLimitExceeded(RuntimeError):
    """A search hit its state/node budget before reaching a verdict."""


@dataclass(frozen=True, eq=False)
class Identity:
    lhs: Word
    rhs: Word

    def __post_init__(self):
        object.__setattr__(self, "lhs", word(self.lhs))
        object.__setattr__(self, "rhs", word(self.rhs))

    def canonical(self) -> tuple[Word, Word]:
        a, b = self.lhs, self.rhs
        return (a, b) if a.key() <= b.key() else (b, a)

    def __eq__(self, other):
        if not isinstance(other, Identity):
            return NotImplemented
        return self.canonical() == other.canonical()

    def __hash__(self):
        return hash(self.canonical())

    @property
    def is_trivial(self) -> bool:
        return self.lhs == self.rhs

    @property
    def alphabet(self) -> frozenset:
        return frozenset(self.lhs) | frozenset(self.rhs)

    def flipped(self) -> "Identity":
        return Identity(self.rhs, self.lhs)

    def __str__(self):
        return f"{render(self.lhs)} = {render(self.rhs)}"

    def __repr__(self):
        return f"Identity({str(self)!r})"


def identity(lhs, rhs) -> Identity:
    return Identity(word(lhs), word(rhs))


def parse_identity(text: str) -> Identity:
    """Parse ``"<word> = <word>"``."""
    if text.count("=") != 1:
        at = text.find("=", text.find("=") + 1) if "=" in text else len(text)
        raise WordParseError(f"identity must contain exactly one '=': {text!r}", at)
    left, right = text.split("=")
    return Identity(word(left), word(right))


class Substitution(dict):
    """Letter -> Word map; unmapped letters are fixed."""

    def __call__(self, w) -> Word:
        return apply(self, w)

    def to_json(self) -> dict:
        return {str(k): render(v) for k, v in sorted(self.items())}


def apply(phi: Mapping, w) -> Word:
    out: list = []
    for l in w:
        img = phi.get(l)
        if img is None:
            out.append(l)
        else:
            out.extend(img)
    return Word(out)


def dual(id_: Identity) -> Identity:
    return Identity(reverse(id_.lhs), reverse(id_.rhs))


# --------------------------------------------------------------------------
# pattern matching

def _match(pat, text, pi, ti, bind, erasing, exact, later, tlen):
    """Match ``pat[pi:]`` against ``text`` from ``ti``; yields end positions.

    ``bind`` is mutated in place and is valid at each yield.
    """
    if pi == len(pat):
        if not exact or ti == tlen:
            yield ti
        return
    v = pat[pi]
    img = bind.get(v)
    if img is not None:
        k = len(img)
        if ti + k <= tlen and text[ti:ti + k] == img:
            yield from _match(pat, text, pi + 1, ti + k, bind, erasing, exact, later, tlen)
        return
    lo = 0 if erasing else 1
    other = 0
    for u in pat[pi + 1:]:
        if u != v:
            b = bind.get(u)
            other += lo if b is None else len(b)
    c = later[pi] + 1
    room = tlen - ti - other
    if room < lo * c:
        return
    hi = room // c
    if exact and c == 1 and all(u in bind for u in pat[pi + 1:]):
        # only one image length can possibly work
        if lo <= room:
            lo = hi = room
        else:
            return
    for k in range(lo, hi + 1):
        cand = text[ti:ti + k]
        if k and c > 1 and _count_disjoint(text, cand, ti + k) < c - 1:
            continue
        bind[v] = cand
        yield from _match(pat, text, pi + 1, ti + k, bind, erasing, exact, later, tlen)
        del bind[v]


def _count_disjoint(text, piece, start):
    k = len(piece)
    n = 0
    i = start
    last = len(text) - k
    while i <= last:
        if text[i:i + k] == piece:
            n += 1
            i += k
        else:
            i += 1
    return n


def _later_counts(pat):
    seen: dict = {}
    out = [0] * len(pat)
    for i in range(len(pat) - 1, -1, -1):
        out[i] = seen.get(pat[i], 0)
        seen[pat[i]] = out[i] + 1
    return out


def _iter_matches(pat, text, start=0, bind=None, erasing=True, exact=True):
    pat = tuple(pat)
    text = tuple(text)
    bind = {} if bind is None else dict(bind)
    later = _later_counts(pat)
    tlen = len(text)
    for end in _match(pat, text, 0, start, bind, erasing, exact, later, tlen):
        yield bind, end


def match_pattern(s, target, binding: Optional[Mapping] = None) -> Iterator[Substitution]:
    """Every substitution ``phi`` on ``alf(s)`` with ``phi(s) == target``.

    Images may be empty.  ``binding`` pre-assigns some letters.
    """
    pre = {k: tuple(v) for k, v in (binding or {}).items()}
    for bind, _ in _iter_matches(word(s), word(target), bind=pre):
        yield Substitution({k: Word(v) for k, v in bind.items()})


# --------------------------------------------------------------------------
# direct deducibility

@dataclass(frozen=True)
class Witness:
    """``from = a·phi(rule side)·b``; direction ``lr`` means the step goes
    from the rule's lhs instance to its rhs instance."""

    a: Word
    b: Word
    phi: Substitution
    direction: str


@dataclass
class Step:
    rule: Identity
    a: Word
    b: Word
    phi: Substitution
    direction: str  # "lr": source = a phi(lhs) b, target = a phi(rhs) b

    def sides(self) -> tuple[Word, Word]:
        s, t = self.rule.lhs, self.rule.rhs
        if self.direction == "rl":
            s, t = t, s
        return self.a + apply(self.phi, s) + self.b, self.a + apply(self.phi, t) + self.b

    def reversed(self) -> "Step":
        return Step(self.rule, self.a, self.b, self.phi, "rl" if self.direction == "lr" else "lr")

    def to_json(self) -> dict:
        return {
            "rule": str(self.rule),
            "a": render(self.a),
            "b": render(self.b),
            "phi": Substitution(self.phi).to_json(),
            "dir": self.direction,
        }


@dataclass
class Proof:
    chain: list
    steps: list = field(default_factory=list)

    @property
    def goal(self) -> Identity:
        return Identity(self.chain[0], self.chain[-1])

    def __len__(self):
        return len(self.steps)

    def replay(self) -> bool:
        """Check every recorded witness literally."""
        if len(self.steps) != len(self.chain) - 1:
            return False
        for (u, v), st in zip(zip(self.chain, self.chain[1:]), self.steps):
            if st.sides() != (u, v):
                return False
        return True

    def then(self, other: "Proof") -> "Proof":
        if self.chain[-1] != other.chain[0]:
            raise ValueError("proofs do not compose")
        return Proof(self.chain + other.chain[1:], self.steps + other.steps)

    def reversed(self) -> "Proof":
        return Proof(self.chain[::-1], [s.reversed() for s in self.steps[::-1]])

    def to_json(self) -> dict:
        return {
            "chain": [render(w) for w in self.chain],
            "steps": [s.to_json() for s in self.steps],
        }

    @classmethod
    def from_json(cls, data: dict) -> "Proof":
        steps = []
        for s in data["steps"]:
            phi = Substitution({word(k)[0]: word(v) for k, v in s["phi"].items()})
            steps.append(Step(parse_identity(s["rule"]), word(s["a"]), word(s["b"]), phi, s["dir"]))
        return cls([word(w) for w in data["chain"]], steps)


def _common_prefix(u, v):
    n = min(len(u), len(v))
    i = 0
    while i < n and u[i] == v[i]:
        i += 1
    return i


def _common_suffix(u, v, limit):
    i = 0
    while i < limit and u[-1 - i] == v[-1 - i]:
        i += 1
    return i


def directly_deducible(id_: Identity, rule: Identity) -> Optional[Witness]:
    """A witness that ``id_`` is one rewrite step from ``rule``, or None.

    The returned witness satisfies ``id_.lhs = a·phi(s)·b`` and
    ``id_.rhs = a·phi(t)·b`` where ``(s, t)`` is the rule oriented by
    ``direction``.
    """
    u, v = id_.lhs, id_.rhs
    if u == v:
        phi = Substitution({l: EMPTY for l in rule.alphabet})
        return Witness(u, EMPTY, phi, "lr")
    cp = _common_prefix(u, v)
    cs = _common_suffix(u, v, min(len(u), len(v)) - cp)
    for direction, s, t in (("lr", rule.lhs, rule.rhs), ("rl", rule.rhs, rule.lhs)):
        for i in range(cp + 1):
            for bind, j in _iter_matches(s, u, start=i, exact=False):
                if len(u) - j > cs:
                    continue
                b_len = len(u) - j
                middle = v[i:len(v) - b_len]
                for bind2, _ in _iter_matches(t, middle, bind=bind):
                    phi = Substitution({k: Word(x) for k, x in bind2.items()})
                    return Witness(u[:i], u[j:], phi, direction)
    return None


@dataclass
class StepVerdict:
    index: int
    ok: bool
    rule: Optional[Identity] = None
    witness: Optional[Witness] = None

    def as_step(self) -> Optional[Step]:
        if not self.ok or self.rule is None:
            return None
        w = self.witness
        return Step(self.rule, w.a, w.b, w.phi, w.direction)


def check_chain(chain: Sequence, sigma: Iterable[Identity]) -> list[StepVerdict]:
    chain = [word(w) for w in chain]
    if not chain:
        raise ValueError("chain must be non-empty")
    sigma = list(sigma)
    out = []
    for i, (u, v) in enumerate(zip(chain, chain[1:])):
        verdict = StepVerdict(i, False)
        for rule in sigma:
            wit = directly_deducible(Identity(u, v), rule)
            if wit is not None:
                verdict = StepVerdict(i, True, rule, wit)
                break
        out.append(verdict)
    return out


def chain_is_valid(chain, sigma) -> bool:
    return all(v.ok for v in check_chain(chain, sigma))


# --------------------------------------------------------------------------
# proof search

def canonical_form(s, t):
    """Identity ``s = t`` up to renaming and orientation.

    Returns ``(S, T, names, flipped)``; ``names[i]`` is the original letter
    behind variable ``i``.
    """
    best = None
    for flipped, (a, b) in enumerate(((s, t), (t, s))):
        names: dict = {}
        for l in itertools.chain(a, b):
            if l not in names:
                names[l] = len(names)
        cand = (tuple(names[l] for l in a), tuple(names[l] for l in b))
        if best is None or cand < best[0]:
            inv = [None] * len(names)
            for l, i in names.items():
                inv[i] = l
            best = (cand, tuple(inv), bool(flipped))
    (S, T), inv, flipped = best
    return S, T, inv, flipped


@dataclass(frozen=True)
class _ClosureRule:
    S: tuple
    T: tuple
    origin: Identity
    names: tuple          # variable -> original letter
    erased: frozenset     # original letters mapped to the empty word
    flipped: bool         # S is an instance of origin.rhs


def erasure_closure(rules: Iterable[Identity], seen: Optional[dict] = None) -> list[_ClosureRule]:
    """All non-trivial identities obtained from ``rules`` by erasing letters,
    deduplicated up to renaming and orientation.  Order is deterministic.

    ``seen`` (canonical pairs already covered) is updated in place.
    """
    seen = {} if seen is None else seen
    out: list[_ClosureRule] = []
    for rule in rules:
        queue = [frozenset()]
        local = {frozenset()}
        while queue:
            nxt = []
            for erased in queue:
                s = tuple(l for l in rule.lhs if l not in erased)
                t = tuple(l for l in rule.rhs if l not in erased)
                if s == t:
                    continue
                S, T, names, flipped = canonical_form(s, t)
                if (S, T) in seen:
                    continue
                seen[(S, T)] = True
                out.append(_ClosureRule(S, T, rule, names, erased, flipped))
                for l in sorted(rule.alphabet - erased):
                    e2 = erased | {l}
                    if e2 not in local:
                        local.add(e2)
                        nxt.append(e2)
            queue = nxt
    return out


class _Compiled:
    """Erasure closure of a rule set with a counting prefilter.

    ``req[o, c]`` is the number of positions the pattern of orientation
    ``o`` needs on letters occurring at least ``c`` times in the word: every
    letter in the image of a variable used c times occurs c times itself.
    """

    def __init__(self, rules: Sequence[Identity], base: Optional["_Compiled"] = None):
        self.is_base = False
        self.seen = dict(base.seen) if base else {}
        fresh = erasure_closure(rules[len(base.rules):] if base else rules, self.seen)
        self.rules = tuple(rules)
        self.closure = (base.closure if base else []) + fresh
        self.orients = list(base.orients) if base else []
        offset = len(base.closure) if base else 0
        for idx, cr in enumerate(fresh, offset):
            for forward in (True, False):
                S, T = (cr.S, cr.T) if forward else (cr.T, cr.S)
                free = tuple(sorted(set(T) - set(S)))
                self.orients.append((idx, forward, S, T, free, _later_counts(S)))
        top = max((max(_counts(o[2]).values(), default=1) for o in self.orients), default=1)
        self.top = top
        req = np.zeros((len(self.orients), top + 1), dtype=np.int64)
        start = 0
        if base is not None:
            start = len(base.orients)
            k = min(base.req.shape[1], top + 1)
            req[:start, :k] = base.req[:, :k]
        for oi in range(start, len(self.orients)):
            for c in _counts(self.orients[oi][2]).values():
                req[oi, 1:c + 1] += c
        self.req = req

    def candidates(self, w) -> np.ndarray:
        counts = _counts(w)
        have = np.zeros(self.top + 1, dtype=np.int64)
        for c in range(1, self.top + 1):
            have[c] = sum(k for k in counts.values() if k >= c)
        return np.nonzero((self.req <= have).all(axis=1))[0]


_COMPILED: dict = {}


def _compiled(rules: Sequence[Identity]) -> _Compiled:
    key = tuple(rules)
    comp = _COMPILED.get(key)
    if comp is None:
        # reuse the longest cached prefix (typically a fixed schema set)
        base = None
        for k, c in _COMPILED.items():
            if len(k) < len(key) and key[:len(k)] == k and (base is None or len(k) > len(base.rules)):
                base = c
        if len(_COMPILED) > 32:
            keep = {k: c for k, c in _COMPILED.items() if c.is_base}
            _COMPILED.clear()
            _COMPILED.update(keep)
        if base is not None:
            base.is_base = True
        comp = _COMPILED[key] = _Compiled(key, base)
    return comp


class _Rewriter:
    def __init__(self, rules: Sequence[Identity], alphabet: Iterable[Letter]):
        comp = _compiled(rules)
        self.comp = comp
        self.closure = comp.closure
        self.orients = comp.orients
        self.alphabet = sorted(set(alphabet))

    def neighbours(self, w: tuple, max_len: int):
        n = len(w)
        for oi in self.comp.candidates(w):
            idx, forward, S, T, free, later = self.orients[oi]
            for i in range(n - len(S) + 1):
                bind: dict = {}
                for end in _match(S, w, 0, i, bind, False, False, later, n):
                    imgs = [dict(bind)]
                    if free:
                        imgs = []
                        for choice in itertools.product(self.alphabet, repeat=len(free)):
                            b2 = dict(bind)
                            b2.update({f: (c,) for f, c in zip(free, choice)})
                            imgs.append(b2)
                    for b in imgs:
                        mid: list = []
                        for var in T:
                            mid.extend(b[var])
                        new = w[:i] + tuple(mid) + w[end:]
                        if new != w and len(new) <= max_len:
                            yield new, (int(oi), i, end, tuple(sorted(b.items())))

    def step(self, src: tuple, info) -> Step:
        oi, i, end, bitems = info
        idx, forward, S, T, free, _ = self.orients[oi]
        cr = self.closure[idx]
        phi = Substitution({l: EMPTY for l in cr.erased})
        for var, img in bitems:
            phi[cr.names[var]] = Word(img)
        # S is an instance of origin.lhs unless flipped; forward keeps that
        from_lhs = (not cr.flipped) == forward
        return Step(cr.origin, Word(src[:i]), Word(src[end:]), phi, "lr" if from_lhs else "rl")


def _counts(w):
    d: dict = {}
    for l in w:
        d[l] = d.get(l, 0) + 1
    return d


def default_max_len(goal: Identity) -> int:
    return 2 * max(len(goal.lhs), len(goal.rhs)) + 4


def prove(
    goal: Identity,
    sigma: Iterable[Identity],
    max_len: Optional[int] = None,
    max_depth: int = 12,
    max_states: int = 10**6,
    alphabet: Optional[Iterable[Letter]] = None,
) -> Optional[Proof]:
    """Search for a derivation of ``goal`` from ``sigma``.

    Returns a replayable :class:`Proof`, or None when no derivation exists
    within ``max_len``/``max_depth``.  Raises :class:`SearchLimitExceeded`
    when more than ``max_states`` words were visited.  Letters occurring on
    only one side of a rule are instantiated by single letters of
    ``alphabet`` (default: the goal's alphabet).
    """
    if max_depth < 0 or max_states <= 0:
        raise ValueError("bounds must be positive")
    u, v = goal.lhs, goal.rhs
    if u == v:
        return Proof([u])
    if max_len is None:
        max_len = default_max_len(goal)
    sigma = list(dict.fromkeys(r for r in sigma if not r.is_trivial))
    rw = _Rewriter(sigma, alphabet if alphabet is not None else goal.alphabet)
    start, end = tuple(u), tuple(v)
    parents = [{start: None}, {end: None}]
    frontiers = [[start], [end]]
    depths = [0, 0]
    states = 2
    while depths[0] + depths[1] < max_depth and frontiers[0] and frontiers[1]:
        side = 0 if len(frontiers[0]) <= len(frontiers[1]) else 1
        mine, other = parents[side], parents[1 - side]
        nxt = []
        for w in sorted(frontiers[side], key=lambda t: Word(t).key()):
            for new, info in rw.neighbours(w, max_len):
                if new in mine:
                    continue
                mine[new] = (w, info)
                if new in other:
                    return _assemble(rw, parents, new, side)
                nxt.append(new)
                states += 1
                if states > max_states:
                    raise SearchLimitExceeded(f"prove visited more than {max_states} words")
        frontiers[side] = nxt
        depths[side] += 1
    return None


def _path(rw, parents, node):
    """Chain from the root of ``parents`` to ``node`` with forward steps."""
    words = [node]
    steps = []
    while parents[node] is not None:
        prev, info = parents[node]
        steps.append(rw.step(prev, info))
        words.append(prev)
        node = prev
    return Proof([Word(w) for w in reversed(words)], steps[::-1])


def _assemble(rw, parents, meet, side) -> Proof:
    left = _path(rw, parents[0], meet)
    right = _path(rw, parents[1], meet)
    proof = left.then(right.reversed())
    assert proof.replay(), "internal error: assembled proof does not replay"
    return proof
