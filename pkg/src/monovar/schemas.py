"""Generators for the parametric words, identity sets and presentations.

Letter conventions: ``z_i``/``t_i`` carry the index as subscript, the
bracketed block index ``(j)`` is the superscript, hatted letters use the
bases ``zh``/``th`` and primed letters use the prime counter.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from .identities import Identity, Substitution, dual
from .words import EMPTY, Letter, Word, delete, occurrence_position, reverse, word

__all__ = [
    "PermTable",
    "SchemaError",
    "perm",
    "all_perms",
    "is_nm_permutation",
    "enum_S",
    "word_a",
    "word_a_prime",
    "word_a_dprime",
    "word_a_pq",
    "word_c",
    "word_c_prime",
    "word_d",
    "word_d_prime",
    "phi",
    "omega",
    "sigma",
    "psi1",
    "psi2",
    "psi3",
    "psi1_hat",
    "psi2_hat",
    "VarietyPresentation",
    "presentation",
    "AkConstruction",
    "CkConstruction",
    "default_rho_a",
    "default_rho_c",
    "word_ak",
    "subst_psi_a",
    "word_ck",
    "subst_psi_c",
    "subst_psi_c_literal",
    "strictness_rhs",
]


class SchemaError(ValueError):
    """Invalid parameters for a family generator."""


@dataclass(frozen=True)
class PermTable:
    """A permutation of ``{1..n}`` as its image list; ``rho(i)`` is ``iρ``."""

    images: tuple

    def __post_init__(self):
        imgs = tuple(int(i) for i in self.images)
        object.__setattr__(self, "images", imgs)
        if sorted(imgs) != list(range(1, len(imgs) + 1)):
            raise SchemaError(f"not a permutation of 1..{len(imgs)}: {imgs}")

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def __len__(self):
        return len(self.images)

    def __str__(self):
        return " ".join(map(str, self.images))


def perm(images: Iterable[int]) -> PermTable:
    return PermTable(tuple(images))


def _check_size(rho: PermTable, size: int) -> PermTable:
    if not isinstance(rho, PermTable):
        rho = perm(rho)
    expected = max(size, 1)  # S_0 := S_1
    if len(rho) != expected:
        raise SchemaError(f"permutation size {len(rho)} does not match {expected}")
    return rho


def all_perms(size: int) -> list[PermTable]:
    return [PermTable(p) for p in itertools.permutations(range(1, max(size, 1) + 1))]


def is_nm_permutation(rho: PermTable, n: int, m: int) -> bool:
    rho = _check_size(rho, n + m)
    for i in range(1, n + m):
        a, b = rho(i), rho(i + 1)
        low_a, low_b = a <= n, b <= n
        if low_a == low_b:
            return False
    return True


def enum_S(n: int, m: int) -> list[PermTable]:
    """All (n,m)-permutations in lexicographic order of image lists."""
    return [p for p in all_perms(n + m) if is_nm_permutation(p, n, m)]


# --------------------------------------------------------------------------
# base families

def _L(base, sub=None, sup=None, primes=0) -> Letter:
    return Letter(base, sub, sup, primes)


X, Y, T = _L("x"), _L("y"), _L("t")


def _z(i, j=None):
    return _L("z", i, j)


def _t(i, j=None):
    return _L("t", i, j)


def _a_parts(n, m, rho):
    rho = _check_size(rho, n + m)
    head = Word(l for i in range(1, n + 1) for l in (_z(i), _t(i)))
    mid = Word(_z(rho(i)) for i in range(1, n + m + 1))
    tail = Word(l for i in range(n + 1, n + m + 1) for l in (_t(i), _z(i)))
    return head, mid, tail


def word_a(n: int, m: int, rho) -> Word:
    head, mid, tail = _a_parts(n, m, rho)
    return head + (X,) + mid + (X,) + tail


def word_a_prime(n: int, m: int, rho) -> Word:
    head, mid, tail = _a_parts(n, m, rho)
    return head + mid + (X, X) + tail


def word_a_dprime(n: int, m: int, rho) -> Word:
    head, mid, tail = _a_parts(n, m, rho)
    return head + (X, X) + mid + tail


def word_a_pq(n: int, m: int, rho, p: int, q: int) -> Word:
    if not 0 <= p <= q <= n + m:
        raise SchemaError(f"need 0 <= p <= q <= n+m, got p={p}, q={q}")
    head, mid, tail = _a_parts(n, m, rho)
    return head + mid[:p] + (X,) + mid[p:q] + (X,) + mid[q:] + tail


def word_c(n: int, m: int, k: int, tau) -> Word:
    tau = _check_size(tau, n + m + k)
    out = [l for i in range(1, n + 1) for l in (_z(i), _t(i))]
    out += [X, Y, T]
    out += [l for i in range(n + 1, n + m + 1) for l in (_z(i), _t(i))]
    out.append(X)
    out += [_z(tau(i)) for i in range(1, n + m + k + 1)]
    out.append(Y)
    out += [l for i in range(n + m + 1, n + m + k + 1) for l in (_t(i), _z(i))]
    return Word(out)


def _swap_first(w: Word, a: Letter, b: Letter) -> Word:
    i, j = occurrence_position(w, a, 1), occurrence_position(w, b, 1)
    out = list(w)
    out[i], out[j] = out[j], out[i]
    return Word(out)


def word_c_prime(n: int, m: int, k: int, tau) -> Word:
    return _swap_first(word_c(n, m, k, tau), X, Y)


def word_d(n: int, m: int, k: int, tau) -> Word:
    return reverse(word_c(n, m, k, tau))


def word_d_prime(n: int, m: int, k: int, tau) -> Word:
    return reverse(word_c_prime(n, m, k, tau))


# --------------------------------------------------------------------------
# identity sets

def _dedup(ids: Iterable[Identity]) -> list[Identity]:
    return list(dict.fromkeys(ids))


def phi(n: int) -> list[Identity]:
    if n < 1:
        raise SchemaError("n must be >= 1")
    xn = Word([X] * n)
    return [Identity(xn, xn + (X,)), Identity(xn + (Y,), (Y,) + xn)]


def omega(n: int) -> Identity:
    if n < 1:
        raise SchemaError("n must be >= 1")
    lhs = [X]
    for i in range(1, n + 1):
        lhs += [_t(i), X]
    rhs = [X] * (n + 1) + [_t(i) for i in range(1, n + 1)]
    return Identity(Word(lhs), Word(rhs))


_SIGMA = {
    1: "x y z x t y = y x z x t y",
    2: "x z y t x y = x z y t y x",
    3: "x z x y t y = x z y x t y",
}


def sigma(i: int) -> Identity:
    if i not in _SIGMA:
        raise SchemaError("sigma index must be 1, 2 or 3")
    lhs, rhs = _SIGMA[i].split("=")
    return Identity(word(lhs), word(rhs))


def _check_bound(B: int):
    if B < 2:
        raise SchemaError("truncation bound B must be >= 2")


def psi1(B: int) -> list[Identity]:
    """Ψ₁ instances with k, ℓ >= 1 and k+ℓ <= B."""
    _check_bound(B)
    out = []
    for s in range(2, B + 1):
        for k in range(1, s):
            for rho in all_perms(s):
                out.append(Identity(word_a(k, s - k, rho), word_a_prime(k, s - k, rho)))
    return _dedup(out)


def psi2(B: int) -> list[Identity]:
    _check_bound(B)
    out = []
    for s in range(2, B + 1):
        for k in range(1, s):
            for rho in all_perms(s):
                out.append(Identity(word_a(k, s - k, rho), word_a_dprime(k, s - k, rho)))
    return _dedup(out)


def psi3(B: int) -> list[Identity]:
    """Ψ₃ instances with k, ℓ, m >= 1 and k+ℓ+m <= B (c- and d-identities)."""
    _check_bound(B)
    out = []
    for s in range(3, B + 1):
        for k in range(1, s - 1):
            for l in range(1, s - k):
                m = s - k - l
                for rho in all_perms(s):
                    out.append(Identity(word_c(k, l, m, rho), word_c_prime(k, l, m, rho)))
                    out.append(Identity(word_d(k, l, m, rho), word_d_prime(k, l, m, rho)))
    return _dedup(out)


def _parse_ids(*texts):
    out = []
    for t in texts:
        lhs, rhs = t.split("=")
        out.append(Identity(word(lhs), word(rhs)))
    return out


def psi1_hat() -> list[Identity]:
    return _parse_ids("x y x t y = y x x t y", "y t x y x = y t y x x")


def psi2_hat() -> list[Identity]:
    return _parse_ids("x y x t y = x x y t y", "y t x y x = y t x x y")


# --------------------------------------------------------------------------
# presentations

_SCHEMAS = {"psi1": psi1, "psi2": psi2, "psi3": psi3}


@dataclass
class VarietyPresentation:
    """Explicit identities plus truncated schema references."""

    name: str
    explicit: list = field(default_factory=list)
    schemas: list = field(default_factory=list)   # schema names, e.g. "psi1"
    extra: list = field(default_factory=list)
    bound: int = 4

    def expand(self, B: Optional[int] = None) -> list[Identity]:
        B = self.bound if B is None else B
        out = list(self.explicit)
        for s in self.schemas:
            out += _SCHEMAS[s](B)
        out += self.extra
        return _dedup(out)

    def with_extra(self, ids: Iterable[Identity], name: Optional[str] = None) -> "VarietyPresentation":
        return VarietyPresentation(name or self.name, list(self.explicit), list(self.schemas),
                                   list(self.extra) + list(ids), self.bound)


_NAMES = ("P", "Q", "R", "S", "N", "O")


def presentation(name: str, n: int = 2, B: int = 4, dual_: bool = False) -> VarietyPresentation:
    """Presentation of P_n, Q_n, R_n, S_n, N or O (or its dual).

    Duals follow the displayed forms: Ψ₂ replaces Ψ₁, σ₁ replaces σ₂,
    ω_n is kept as is.  For N the dual reverses every identity.
    """
    if name.endswith("^d"):
        name, dual_ = name[:-2], True
    if name not in _NAMES:
        raise SchemaError(f"unknown presentation {name!r}")
    _check_bound(B)
    label = name + ("^d" if dual_ else "")
    if name == "N":
        ids = phi(2) + [omega(2), sigma(2), sigma(3)]
        if dual_:
            ids = [dual(i) for i in ids]
        return VarietyPresentation(label, ids, [], [], B)
    if name == "O":
        return VarietyPresentation(label, [], ["psi2" if dual_ else "psi1", "psi3"], [], B)
    if n < 1:
        raise SchemaError("n must be >= 1")
    if name in ("P", "R"):
        base = VarietyPresentation(label, phi(n), ["psi2" if dual_ else "psi1", "psi3"], [], B)
    else:
        sig = [sigma(1), sigma(3)] if dual_ else [sigma(2), sigma(3)]
        base = VarietyPresentation(label, phi(n) + sig, [], [], B)
    if name in ("R", "S"):
        base = base.with_extra([omega(n)])
    return base


# --------------------------------------------------------------------------
# case (i): the words a_k

def default_rho_a(n: int = 2, m: int = 2) -> PermTable:
    """The (n,n)-permutation alternating low/high with lows in natural order."""
    if n != m:
        raise SchemaError("default permutation is defined for n = m")
    imgs = []
    for i in range(1, n + 1):
        imgs += [i, n + i]
    return perm(imgs)


def _zh(i, j):
    return _L("zh", i, j)


def _th(i, j):
    return _L("th", i, j)


def _xs(j, primes=0):
    return _L("x", j, None, primes)


def _ys(j, primes=0):
    return _L("y", j, None, primes)


def _ss(j, primes=0):
    return _L("s", j, None, primes)


@dataclass(frozen=True)
class AkConstruction:
    n: int
    m: int
    rho: PermTable

    def __post_init__(self):
        rho = _check_size(self.rho, self.n + self.m)
        object.__setattr__(self, "rho", rho)
        if self.n < 2 or self.m < 2:
            raise SchemaError("case (i) needs n, m >= 2")
        if not is_nm_permutation(rho, self.n, self.m):
            raise SchemaError(f"{rho} is not an ({self.n},{self.m})-permutation")

    def p(self, j: int) -> Word:
        return Word(l for i in range(1, self.n + 1)
                    for l in (_z(i, j), _t(i, j), _zh(i, j), _th(i, j)))

    def q(self, j: int) -> Word:
        return Word(l for i in range(self.n + 1, self.n + self.m + 1)
                    for l in (_th(i, j), _zh(i, j), _t(i, j), _z(i, j)))

    def r(self, j: int) -> Word:
        return Word(_z(self.rho(i), j) for i in range(1, self.n + self.m + 1))

    def word(self, k: int) -> Word:
        if k < 3:
            raise SchemaError("a_k is defined for k >= 3")
        nm, rho = self.n + self.m, self.rho
        out: list = []
        for i in range(1, k + 1):
            out += self.p(i)
        out += [_xs(1)] + list(self.r(1))
        for i in range(1, k - 1):
            out += [_zh(rho(1), i + 1), _xs(i + 1)] + list(self.r(i + 1))
            out += [_xs(i), _zh(rho(nm), i + 1)]
        out += [_zh(rho(1), k), _xs(k)] + list(self.r(k)) + [_xs(k - 1), T, _xs(k)]
        for i in range(1, k + 1):
            out += self.q(i)
        return Word(out)

    def psi(self, k: int) -> Substitution:
        if k < 3:
            raise SchemaError("a_k is defined for k >= 3")
        n, nm, rho = self.n, self.n + self.m, self.rho
        return Substitution({
            T: Word([_zh(rho(nm), k), _zh(rho(1), k + 1), _xs(k + 1)]) + self.r(k + 1),
            _th(n, k): Word([_th(n, k)]) + self.p(k + 1),
            _th(n + 1, 1): Word([T, _xs(k + 1), _th(n + 1, 1)]),
        })


def word_ak(n: int = 2, m: int = 2, rho=None, k: int = 3) -> Word:
    return AkConstruction(n, m, default_rho_a(n, m) if rho is None else rho).word(k)


def subst_psi_a(n: int = 2, m: int = 2, rho=None, k: int = 3) -> Substitution:
    return AkConstruction(n, m, default_rho_a(n, m) if rho is None else rho).psi(k)


# --------------------------------------------------------------------------
# cases (ii) and (iii): the words c_k

def default_rho_c(case: str, n: int, m: int) -> PermTable:
    if case == "ii":
        return perm(range(1, n + m + 1))
    if case == "iii":
        # (n+m, n+m+1)-permutation starting high: H L H ... L H
        lo, hi = n + m, n + m + 1
        imgs = []
        for i in range(hi):
            imgs.append(lo + 1 + i)
            if i < lo:
                imgs.append(1 + i)
        return perm(imgs)
    raise SchemaError(f"unknown case {case!r}")


@dataclass(frozen=True)
class CkConstruction:
    case: str
    n: int
    m: int
    rho: PermTable

    def __post_init__(self):
        if self.case == "ii":
            if self.n < 2 or self.m < 2:
                raise SchemaError("case (ii) needs n, m >= 2")
            rho = _check_size(self.rho, self.n + self.m)
        elif self.case == "iii":
            if self.n < 1 or self.m < 1:
                raise SchemaError("case (iii) needs n, m >= 1")
            nm = self.n + self.m
            rho = _check_size(self.rho, 2 * nm + 1)
            if not is_nm_permutation(rho, nm, nm + 1):
                raise SchemaError(f"{rho} is not an ({nm},{nm + 1})-permutation")
        else:
            raise SchemaError(f"unknown case {self.case!r}")
        object.__setattr__(self, "rho", rho)

    @property
    def width(self) -> int:
        """Number of z letters per r block."""
        nm = self.n + self.m
        return nm if self.case == "ii" else 2 * nm + 1

    def p(self, j: int) -> Word:
        return Word(l for i in range(1, self.n + 1) for l in (_z(i, j), _t(i, j)))

    def q(self, j: int) -> Word:
        return Word(l for i in range(self.n + 1, self.n + self.m + 1) for l in (_z(i, j), _t(i, j)))

    def r(self, j: int) -> Word:
        w, rho = self.width, self.rho
        out = [_ss(j), _xs(j), _z(rho(1), j), _xs(j + 1)]
        if self.case == "iii":
            out.append(_xs(j + 1, 1))
        out += [_z(rho(i), j) for i in range(2, w)]
        if self.case == "iii":
            out.append(_ys(j + 1, 1))
        out += [_ys(j + 1), _z(rho(w), j), _ys(j)]
        return Word(out)

    def s(self, j: int) -> Word:
        return Word([_ss(j), _xs(j), _xs(j + 1), _ys(j + 1), _ys(j)])

    def t(self, j: int) -> Word:
        if self.case != "iii":
            raise SchemaError("t_j blocks exist only in case (iii)")
        nm = self.n + self.m
        head = Word(l for i in range(nm + 1, 2 * nm + 2) for l in (_t(i, j), _z(i, j)))
        return head + self.s(j)

    def word(self, k: int) -> Word:
        if k < 0:
            raise SchemaError("k must be >= 0")
        out: list = []
        for i in range(k + 1):
            out += self.p(2 * i)
        out += [_xs(0), _ys(0)]
        for i in range(1, k + 1):
            out += self.s(2 * i - 1)
        j = 2 * k + 1
        out += [_ss(j), _xs(j), _ss(j, 1), _ys(j), T]
        for i in range(k + 1):
            out += self.q(2 * i)
        for i in range(k, -1, -1):
            out += self.r(2 * i)
        if self.case == "iii":
            for i in range(k + 1):
                out += self.t(2 * i)
        return Word(out)

    def head(self, k: int) -> Word:
        """The segment ψ maps ``t`` onto, ending in ``t``."""
        j = 2 * k + 3
        return Word([_ss(j), _xs(j), _ss(j, 1), _ys(j), T])

    def psi(self, k: int) -> Substitution:
        n, nm, j = self.n, self.n + self.m, 2 * k
        phi_ = Substitution({
            T: self.head(k),
            _t(n, j): Word([_t(n, j)]) + self.p(j + 2),
            _ss(j + 1, 1): Word([_xs(j + 2), _ys(j + 2)]),
        })
        if self.case == "ii":
            phi_[_t(nm, j)] = Word([_t(nm, j)]) + self.q(j + 2)
            phi_[_ss(j)] = self.r(j + 2) + (_ss(j),)
        else:
            # s_{2k} also starts the t_{2k} block, so r_{2k+2} rides on q
            phi_[_t(nm, j)] = Word([_t(nm, j)]) + self.q(j + 2) + self.r(j + 2)
        return phi_

    def psi_literal(self, k: int) -> Substitution:
        """ψ exactly as displayed for case (ii), including its image of t."""
        phi_ = self.psi(k)
        j = 2 * k + 3
        phi_[T] = Word([_xs(j), _ss(j), _ys(j), T])
        return phi_

    def trailer(self, k: int) -> Word:
        """Word appended after ψ(c_k) to obtain c_{k+1}."""
        return self.t(2 * k + 2) if self.case == "iii" else EMPTY


def _ck(case, n, m, rho):
    if n is None:
        n = m = 2 if case == "ii" else 1
    return CkConstruction(case, n, m, default_rho_c(case, n, m) if rho is None else rho)


def word_ck(case: str = "ii", n: Optional[int] = None, m: Optional[int] = None,
            rho=None, k: int = 0) -> Word:
    return _ck(case, n, m, rho).word(k)


def subst_psi_c(case: str = "ii", n: Optional[int] = None, m: Optional[int] = None,
                rho=None, k: int = 0) -> Substitution:
    return _ck(case, n, m, rho).psi(k)


def subst_psi_c_literal(n: int = 2, m: int = 2, rho=None, k: int = 0) -> Substitution:
    return _ck("ii", n, m, rho).psi_literal(k)


def strictness_rhs(family: str, w: Word) -> Word:
    """Right-hand side of the strictness identity for ``w``.

    ``family`` is ``"a"`` (x₁²·w without x₁) or ``"c"`` (first occurrences
    of x₀ and y₀ swapped).
    """
    if family == "a":
        x1 = _xs(1)
        return Word([x1, x1]) + delete(w, {x1})
    if family == "c":
        return _swap_first(w, _xs(0), _ys(0))
    raise SchemaError(f"unknown family {family!r}")
