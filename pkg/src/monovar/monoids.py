"""Finite monoids, Rees quotients M(W) and identity checking."""
from __future__ import annotations

import hashlib
import json
import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Optional, Sequence, Union

import numpy as np

from .identities import Identity, SearchLimitExceeded
from .words import EMPTY, Letter, Word, factors, render, word

__all__ = [
    "FiniteMonoid",
    "ReesMonoid",
    "SatResult",
    "ResourceLimitExceeded",
    "NonMember",
    "MemberWithinBound",
    "rees_quotient",
    "satisfies",
    "satisfies_bruteforce",
    "satisfies_rees",
    "direct_product",
    "dual_monoid",
    "is_aperiodic",
    "aperiodicity_index",
    "idempotents",
    "has_central_idempotents",
    "in_Acen_class",
    "satisfies_presentation",
    "CACHE_ENV",
]

ResourceLimitExceeded = SearchLimitExceeded
CACHE_ENV = "MONOVAR_CACHE_DIR"


class FiniteMonoid:
    """A monoid given by its multiplication table (row times column)."""

    def __init__(self, table, one: int, zero: Optional[int] = None, labels: Optional[list] = None):
        self._table = None if table is None else np.asarray(table, dtype=np.int64)
        self.one = int(one)
        self.zero = None if zero is None else int(zero)
        self.labels = labels

    @property
    def table(self) -> np.ndarray:
        return self._table

    @property
    def size(self) -> int:
        return int(self.table.shape[0])

    def __len__(self):
        return self.size

    def mul(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    def evaluate(self, w, assignment) -> int:
        acc = self.one
        for l in w:
            acc = self.mul(acc, assignment[l])
        return acc

    def label(self, i: int) -> str:
        if self.labels is None:
            return str(i)
        lab = self.labels[i]
        return "0" if lab is None else (render(lab) if isinstance(lab, tuple) else str(lab))

    def check_axioms(self, sample: int = 20000, seed: int = 0) -> bool:
        """Identity, zero and associativity laws (sampled above 64 elements)."""
        T, n = self.table, self.size
        idx = np.arange(n)
        if not (np.array_equal(T[self.one], idx) and np.array_equal(T[:, self.one], idx)):
            return False
        if self.zero is not None:
            z = self.zero
            if not ((T[z] == z).all() and (T[:, z] == z).all()):
                return False
        if n <= 64:
            left = T[T[:, :, None], idx[None, None, :]]   # (ab)c
            right = T[idx[:, None, None], T[None, :, :]]  # a(bc)
            return bool(np.array_equal(left, right))
        rng = np.random.default_rng(seed)
        a, b, c = rng.integers(0, n, size=(3, sample))
        return bool(np.array_equal(T[T[a, b], c], T[a, T[b, c]]))

    def to_json(self) -> dict:
        labels = [self.label(i) for i in range(self.size)]
        return {
            "elements": labels,
            "one": self.one,
            "zero": self.zero,
            "table": self.table.tolist(),
        }

    @classmethod
    def from_json(cls, data: dict) -> "FiniteMonoid":
        return cls(data["table"], data["one"], data.get("zero"), data.get("elements"))


class ReesMonoid(FiniteMonoid):
    """M(W): factors of the words in W plus a zero, in canonical order."""

    def __init__(self, W: Iterable, cache_dir: Optional[Union[str, Path]] = None):
        ws = sorted({word(w) for w in W}, key=Word.key)
        if any(len(w) == 0 for w in ws):
            raise ValueError("words in W must be non-empty")
        self.W = tuple(ws)
        elems: set = {EMPTY}
        for w in ws:
            elems.update(factors(w))
        self.elements = sorted(elems, key=Word.key)
        self.index = {e: i for i, e in enumerate(self.elements)}
        n = len(self.elements)
        super().__init__(None, 0, n, list(self.elements) + [None])
        self._cache_dir = cache_dir
        self._maxlen = max((len(w) for w in ws), default=0)

    @property
    def size(self) -> int:
        return len(self.elements) + 1

    def key(self) -> str:
        text = "\n".join(render(w) for w in self.W)
        return hashlib.sha256(text.encode()).hexdigest()[:32]

    def _cache_path(self) -> Optional[Path]:
        d = self._cache_dir or os.environ.get(CACHE_ENV)
        return Path(d) / f"rees-{self.key()}.json" if d else None

    @property
    def table(self) -> np.ndarray:
        if self._table is None:
            path = self._cache_path()
            if path is not None and path.exists():
                try:
                    data = json.loads(path.read_text())
                    if data.get("elements") == [self.label(i) for i in range(self.size)]:
                        self._table = np.asarray(data["table"], dtype=np.int64)
                        return self._table
                except (OSError, ValueError):
                    pass
            self._table = self._build_table()
            if path is not None:
                path.parent.mkdir(parents=True, exist_ok=True)
                tmp = path.with_suffix(".tmp")
                tmp.write_text(json.dumps(self.to_json()))
                tmp.replace(path)
        return self._table

    def _build_table(self) -> np.ndarray:
        n = self.size
        z = self.zero
        T = np.full((n, n), z, dtype=np.int64)
        idx = self.index
        for i, a in enumerate(self.elements):
            room = self._maxlen - len(a)
            for j, b in enumerate(self.elements):
                if len(b) > room:
                    break
                k = idx.get(a + b)
                if k is not None:
                    T[i, j] = k
        return T

    def mul(self, a: int, b: int) -> int:
        z = self.zero
        if a == z or b == z:
            return z
        k = self.index.get(self.elements[a] + self.elements[b])
        return z if k is None else k

    def element(self, w) -> int:
        """Index of ``w`` (the zero if w is not a factor)."""
        return self.index.get(word(w), self.zero)

    def is_factor_word(self, w) -> bool:
        return tuple(w) in self.index


def rees_quotient(W: Iterable, cache_dir=None) -> ReesMonoid:
    return ReesMonoid(W, cache_dir=cache_dir)


# --------------------------------------------------------------------------
# satisfaction

@dataclass
class SatResult:
    holds: bool
    witness: Optional[dict] = None     # letter -> element index
    labels: Optional[dict] = None      # letter -> rendered element
    values: Optional[tuple] = None     # (phi(lhs), phi(rhs)) as element indices

    def __bool__(self):
        return self.holds

    def to_json(self) -> dict:
        out: dict = {"holds": self.holds}
        if self.witness is not None:
            out["witness"] = self.labels
        return out


def _result(M: FiniteMonoid, id_: Identity, assignment: dict) -> SatResult:
    a = M.evaluate(id_.lhs, assignment)
    b = M.evaluate(id_.rhs, assignment)
    labels = {str(l): M.label(e) for l, e in sorted(assignment.items())}
    return SatResult(False, dict(sorted(assignment.items())), labels, (a, b))


def satisfies_bruteforce(M: FiniteMonoid, id_: Identity, budget: int = 2 * 10**7,
                         chunk: int = 1 << 16) -> SatResult:
    """Check ``id_`` under all |M|^k substitutions, in canonical order."""
    if id_.is_trivial:
        return SatResult(True)
    letters = sorted(id_.alphabet)
    n, k = M.size, len(letters)
    total = n ** k
    if total > budget:
        raise ResourceLimitExceeded(
            f"{n}^{k} = {total} substitutions exceed the budget {budget}")
    T = M.table
    pos = {l: i for i, l in enumerate(letters)}
    shape = (n,) * k
    for start in range(0, total, chunk):
        flat = np.arange(start, min(total, start + chunk))
        vals = np.unravel_index(flat, shape) if k else ()
        def ev(w):
            acc = np.full(flat.shape, M.one, dtype=np.int64)
            for l in w:
                acc = T[acc, vals[pos[l]]]
            return acc
        bad = np.nonzero(ev(id_.lhs) != ev(id_.rhs))[0]
        if bad.size:
            i = bad[0]
            assignment = {l: int(vals[pos[l]][i]) for l in letters}
            return _result(M, id_, assignment)
    return SatResult(True)


class _ReesSearch:
    """Look for phi with phi(u) a factor of W and phi(u) != phi(v).

    With ``u = P U S`` and ``v = P V S`` (longest common prefix and
    suffix), phi(u) != phi(v) iff phi(U) != phi(V).  The search binds the
    core span of ``u`` first and then grows the factor to the right and to
    the left, so the verdict on the core is known as early as possible.
    A letter occurring c times in u needs an image with c disjoint
    occurrences inside one word of W.
    """

    def __init__(self, M: ReesMonoid, u: Word, v: Word, budget: int):
        self.M, self.u, self.v = M, tuple(u), tuple(v)
        self.budget = budget
        self.nodes = 0
        right: dict = {}
        left: dict = {}
        for f in M.index:
            if f:
                right.setdefault(f[:-1], []).append(f[-1])
                left.setdefault(f[1:], []).append(f[0])
        for d in (right, left):
            for key in d:
                d[key].sort()
        self.right, self.left = right, left
        u, v = self.u, self.v
        p = 0
        while p < min(len(u), len(v)) and u[p] == v[p]:
            p += 1
        s = 0
        while s < min(len(u), len(v)) - p and u[-1 - s] == v[-1 - s]:
            s += 1
        self.U, self.V = u[p:len(u) - s], v[p:len(v) - s]
        self.core = frozenset(self.U) | frozenset(self.V)
        self.core_sorted = tuple(sorted(self.core))
        # Letters whose erasure already equalizes the sides must get non-empty
        # images; anchoring at one of them resolves the core comparison early.
        self.vital = frozenset(
            l for l in set(u)
            if tuple(x for x in u if x != l) == tuple(x for x in v if x != l))
        anchor = p
        if self.vital:
            cnt = {l: u.count(l) for l in self.vital}
            best = max(self.vital, key=lambda l: (cnt[l], -u.index(l)))
            anchor = u.index(best)
        self.order = ([(i, 1) for i in range(anchor, len(u))]
                      + [(i, -1) for i in range(anchor - 1, -1, -1)])
        self.live = [frozenset(u[i] for i, _ in self.order[k:]) for k in range(len(self.order) + 1)]
        self.need = {}
        for l in u:
            self.need[l] = self.need.get(l, 0) + 1
        self._occ: dict = {}
        self._pos: dict = {}
        self.failed: set = set()

    def _maxocc(self, g) -> int:
        c = self._occ.get(g)
        if c is None:
            k = len(g)
            c = 0
            for w in self.M.W:
                n, i = 0, 0
                while i <= len(w) - k:
                    if w[i:i + k] == g:
                        n += 1
                        i += k
                    else:
                        i += 1
                c = max(c, n)
            self._occ[g] = c
        return c

    def _img(self, w, bind):
        out: list = []
        for l in w:
            out.extend(bind[l])
        return tuple(out)

    def _resolve(self, bind) -> Optional[str]:
        """'equal', 'differs' or None (not yet decided) for phi(U) vs phi(V)."""
        U, V = self.U, self.V
        if all(l in bind for l in self.core):
            return "equal" if self._img(U, bind) == self._img(V, bind) else "differs"
        # phi(v) is zero once a run of bound letters maps outside the factors
        index = self.M.index
        run: list = []
        for l in self.v:
            g = bind.get(l)
            if g is None:
                if run and tuple(run) not in index:
                    return "differs"
                run = []
            else:
                run.extend(g)
        if run and tuple(run) not in index:
            return "differs"
        for a, b in ((_known(U, bind), _known(V, bind)),
                     (_known(U[::-1], bind, True), _known(V[::-1], bind, True))):
            n = min(len(a), len(b))
            if a[:n] != b[:n]:
                return "differs"
        return None

    def run(self) -> Optional[dict]:
        bind: dict = {}
        if self._dfs(0, (), bind, frozenset()):
            return dict(bind)
        return None

    def _dfs(self, k, f, bind, erased) -> bool:
        self.nodes += 1
        if self.nodes > self.budget:
            raise ResourceLimitExceeded(f"Rees search exceeded {self.budget} nodes")
        state = self._resolve(bind)
        if state == "equal":
            return False
        if k == len(self.order):
            return True  # phi(u) is a factor and the cores differ
        core_state = state or tuple((l, bind.get(l)) for l in self.core_sorted)
        key = (k, f, tuple(sorted((l, bind[l]) for l in self.live[k] if l in bind)), core_state)
        if key in self.failed:
            return False
        if f and not self._feasible(k, f, bind):
            self.failed.add(key)
            return False
        i, side = self.order[k]
        l = self.u[i]
        img = bind.get(l)
        index = self.M.index
        if img is not None:
            g = f + img if side > 0 else img + f
            if g in index and self._dfs(k + 1, g, bind, erased):
                return True
        else:
            need = self.need[l]
            for g, piece in self._extensions(f, side):
                if need > 1 and self._maxocc(piece) < need:
                    continue
                bind[l] = piece
                if self._dfs(k + 1, g, bind, erased):
                    return True
                del bind[l]
            e2 = erased | {l}
            if l not in self.vital and tuple(x for x in self.u if x not in e2) != tuple(x for x in self.v if x not in e2):
                bind[l] = ()
                if self._dfs(k + 1, f, bind, e2):
                    return True
                del bind[l]
        self.failed.add(key)
        return False

    def _positions(self, f):
        pos = self._pos.get(f)
        if pos is None:
            k = len(f)
            pos = [(w, i) for w in self.M.W for i in range(len(w) - k + 1) if w[i:i + k] == f]
            self._pos[f] = pos
        return pos

    def _feasible(self, k, f, bind) -> bool:
        """Bound images still to be placed must fit, in order and disjointly,
        beside some occurrence of f."""
        right, left = [], []
        for i, side in self.order[k:]:
            g = bind.get(self.u[i])
            if g:
                (right if side > 0 else left).append(g)
        if not right and not left:
            return True
        for w, start in self._positions(f):
            if _fits_right(w, start + len(f), right) and _fits_left(w, start, left):
                return True
        return False

    def _extensions(self, f, side):
        """Pairs (grown factor, added piece), non-empty pieces, shortest first."""
        ext = self.right if side > 0 else self.left
        level = [(f, ())]
        out = []
        while level:
            nxt = []
            for h, piece in level:
                for a in ext.get(h, ()):
                    if side > 0:
                        nxt.append((h + (a,), piece + (a,)))
                    else:
                        nxt.append(((a,) + h, (a,) + piece))
            out.extend(nxt)
            level = nxt
        return out


def _known(w, bind, backwards=False):
    """Image of the longest fully bound prefix of ``w`` (reversed if backwards)."""
    out: list = []
    for l in w:
        g = bind.get(l)
        if g is None:
            break
        out.extend(g[::-1] if backwards else g)
    return out


def _fits_right(w, pos, pieces) -> bool:
    for g in pieces:
        k = len(g)
        while pos <= len(w) - k and w[pos:pos + k] != g:
            pos += 1
        if pos > len(w) - k:
            return False
        pos += k
    return True


def _fits_left(w, end, pieces) -> bool:
    for g in pieces:
        k = len(g)
        while end - k >= 0 and w[end - k:end] != g:
            end -= 1
        if end - k < 0:
            return False
        end -= k
    return True


def satisfies_rees(M: ReesMonoid, id_: Identity, budget: int = 5 * 10**6) -> SatResult:
    """Exact satisfaction check for Rees quotients by factor-guided search."""
    if id_.is_trivial:
        return SatResult(True)
    u, v = id_.lhs, id_.rhs
    au, av = u.alphabet, v.alphabet
    if au != av:
        extra = min(au ^ av)
        assignment = {l: (M.zero if l == extra else M.one) for l in au | av}
        return _result(M, id_, assignment)
    for a, b in ((u, v), (v, u)):
        search = _ReesSearch(M, a, b, budget)
        bind = search.run()
        if bind is not None:
            assignment = {l: M.index[tuple(img)] for l, img in bind.items()}
            return _result(M, id_, assignment)
    return SatResult(True)


def satisfies(M: FiniteMonoid, id_: Identity, budget: Optional[int] = None) -> SatResult:
    if isinstance(M, ReesMonoid):
        return satisfies_rees(M, id_) if budget is None else satisfies_rees(M, id_, budget)
    return satisfies_bruteforce(M, id_) if budget is None else satisfies_bruteforce(M, id_, budget)


# --------------------------------------------------------------------------
# constructions and class tests

def direct_product(M1: FiniteMonoid, M2: FiniteMonoid) -> FiniteMonoid:
    n1, n2 = M1.size, M2.size
    T1, T2 = M1.table, M2.table
    T = (T1[:, None, :, None] * n2 + T2[None, :, None, :]).reshape(n1 * n2, n1 * n2)
    zero = None
    if M1.zero is not None and M2.zero is not None:
        zero = M1.zero * n2 + M2.zero
    labels = [f"({M1.label(i)}, {M2.label(j)})" for i in range(n1) for j in range(n2)]
    return FiniteMonoid(T, M1.one * n2 + M2.one, zero, labels)


def dual_monoid(M: FiniteMonoid) -> FiniteMonoid:
    labels = None if M.labels is None else [M.label(i) for i in range(M.size)]
    return FiniteMonoid(M.table.T.copy(), M.one, M.zero, labels)


def _power_tail(M: FiniteMonoid):
    T, n = M.table, M.size
    idx = np.arange(n)
    p = idx.copy()
    for _ in range(n):
        p = T[p, idx]
    return p, T[p, idx]


def is_aperiodic(M: FiniteMonoid) -> bool:
    p, q = _power_tail(M)
    return bool(np.array_equal(p, q))


def aperiodicity_index(M: FiniteMonoid) -> Optional[int]:
    """Least k with m^k = m^(k+1) for every m, or None if not aperiodic."""
    T, n = M.table, M.size
    idx = np.arange(n)
    p = idx.copy()
    for k in range(1, n + 2):
        q = T[p, idx]
        if np.array_equal(p, q):
            return k
        p = q
    return None


def idempotents(M: FiniteMonoid) -> list[int]:
    T = M.table
    return [int(e) for e in range(M.size) if T[e, e] == e]


def has_central_idempotents(M: FiniteMonoid) -> bool:
    T = M.table
    return all(np.array_equal(T[e, :], T[:, e]) for e in idempotents(M))


def in_Acen_class(M: FiniteMonoid) -> bool:
    return is_aperiodic(M) and has_central_idempotents(M)


# --------------------------------------------------------------------------
# presentations

@dataclass
class NonMember:
    identity: Identity
    witness: SatResult

    status = "NonMember"

    def to_json(self) -> dict:
        return {"status": self.status, "identity": str(self.identity),
                "witness": self.witness.labels}


@dataclass
class MemberWithinBound:
    bound: int
    checked: int

    status = "MemberWithinBound"

    def to_json(self) -> dict:
        return {"status": self.status, "bound": self.bound, "checked": self.checked}


def satisfies_presentation(M: FiniteMonoid, pres, B: Optional[int] = None):
    """Check all identities of ``pres`` (schemas truncated at ``B``)."""
    if isinstance(pres, (list, tuple)):
        ids, bound = list(pres), B or 0
    else:
        bound = pres.bound if B is None else B
        ids = pres.expand(bound)
    for id_ in ids:
        r = satisfies(M, id_)
        if not r.holds:
            return NonMember(id_, r)
    return MemberWithinBound(bound, len(ids))
