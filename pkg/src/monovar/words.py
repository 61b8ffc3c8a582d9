"""Letters and words of the free monoid.

A word is a tuple of :class:`Letter` values.  Letters carry an optional
integer subscript and superscript plus a prime count, so decorated letters
like ``z_1^2`` or ``s_3'`` are ordinary structured values.

Token grammar (one letter)::

    base [ "_" int ] [ "^" int ] { "'" }      base = [a-z]+

A word is a whitespace separated list of tokens.  The empty word renders
as ``1`` and parses from ``""`` or ``"1"``.
"""
from __future__ import annotations

import re
from collections import Counter
from typing import Iterable, NamedTuple, Optional

__all__ = [
    "Letter",
    "Word",
    "WordParseError",
    "EMPTY",
    "parse_letter",
    "parse_word",
    "render",
    "letter",
    "word",
    "Stats",
    "stats",
    "occ",
    "delete",
    "restrict",
    "occurrence_position",
    "occurrence_precedes",
    "decomposition",
    "islands",
    "factors",
    "is_factor",
    "is_square_free",
    "length2_factors_unique",
    "reverse",
    "power",
]


class WordParseError(ValueError):
    """Raised for a malformed letter token; ``offset`` is the character index."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at offset {offset})")
        self.offset = offset


def _letter_key(l: "Letter"):
    return (
        l.base,
        -1 if l.sub is None else l.sub,
        -1 if l.sup is None else l.sup,
        l.primes,
    )


class Letter(NamedTuple):
    base: str
    sub: Optional[int] = None
    sup: Optional[int] = None
    primes: int = 0

    def key(self):
        return _letter_key(self)

    def __lt__(self, other):
        return _letter_key(self) < _letter_key(other)

    def __le__(self, other):
        return _letter_key(self) <= _letter_key(other)

    def __gt__(self, other):
        return _letter_key(self) > _letter_key(other)

    def __ge__(self, other):
        return _letter_key(self) >= _letter_key(other)

    def __str__(self):
        s = self.base
        if self.sub is not None:
            s += f"_{self.sub}"
        if self.sup is not None:
            s += f"^{self.sup}"
        return s + "'" * self.primes

    def __repr__(self):
        return f"Letter({str(self)!r})"


class Word(tuple):
    """Immutable word; ``+`` is concatenation, slicing returns a Word.

    Ordering is the canonical one used everywhere for determinism: shorter
    words first, then lexicographic on letters.
    """

    __slots__ = ()

    def __new__(cls, letters: Iterable[Letter] = ()):
        return super().__new__(cls, letters)

    def __add__(self, other):
        return Word(tuple.__add__(self, tuple(other)))

    def __radd__(self, other):
        return Word(tuple(other) + tuple(self))

    def __mul__(self, n):
        return Word(tuple.__mul__(self, n))

    def __getitem__(self, item):
        r = tuple.__getitem__(self, item)
        return Word(r) if isinstance(item, slice) else r

    def key(self):
        return (len(self), tuple(_letter_key(l) for l in self))

    def __lt__(self, other):
        return self.key() < Word(other).key()

    def __le__(self, other):
        return self.key() <= Word(other).key()

    def __gt__(self, other):
        return self.key() > Word(other).key()

    def __ge__(self, other):
        return self.key() >= Word(other).key()

    def __str__(self):
        return render(self)

    def __repr__(self):
        return f"Word({render(self)!r})"

    @property
    def alphabet(self) -> frozenset:
        return frozenset(self)


EMPTY = Word()

_TOKEN = re.compile(r"([a-z]+)(?:_(\d+))?(?:\^(\d+))?('*)")


def parse_letter(token: str, offset: int = 0) -> Letter:
    m = _TOKEN.fullmatch(token)
    if m is None:
        raise WordParseError(f"malformed letter token {token!r}", offset)
    base, sub, sup, primes = m.groups()
    return Letter(
        base,
        None if sub is None else int(sub),
        None if sup is None else int(sup),
        len(primes),
    )


def parse_word(text: str) -> Word:
    if text.strip() in ("", "1"):
        return EMPTY
    letters = []
    for m in re.finditer(r"\S+", text):
        letters.append(parse_letter(m.group(), m.start()))
    return Word(letters)


def render(w: Iterable[Letter]) -> str:
    w = tuple(w)
    if not w:
        return "1"
    return " ".join(str(l) for l in w)


def letter(token: str) -> Letter:
    return parse_letter(token)


def word(text) -> Word:
    """Coerce a string or letter sequence into a Word."""
    if isinstance(text, Word):
        return text
    if isinstance(text, str):
        return parse_word(text)
    return Word(text)


def power(w, n: int) -> Word:
    return Word(tuple(word(w)) * n)


class Stats(NamedTuple):
    alf: frozenset
    occ: dict
    simple: frozenset
    mul: frozenset


def stats(w) -> Stats:
    counts = Counter(w)
    simple = frozenset(l for l, c in counts.items() if c == 1)
    mul = frozenset(l for l, c in counts.items() if c > 1)
    return Stats(frozenset(counts), dict(counts), simple, mul)


def occ(w, x: Letter) -> int:
    return sum(1 for l in w if l == x)


def delete(w, Z) -> Word:
    """The word ``w_Z``: all occurrences of letters in ``Z`` removed."""
    Z = frozenset(Z)
    return Word(l for l in w if l not in Z)


def restrict(w, Z) -> Word:
    """The word ``w(Z)``: only letters of ``Z`` kept."""
    Z = frozenset(Z)
    return Word(l for l in w if l in Z)


def occurrence_position(w, x: Letter, i: int) -> int:
    """Index in ``w`` of the ``i``-th (1-based) occurrence of ``x``."""
    if i < 1:
        raise IndexError(f"occurrence index {i} of letter {x} must be >= 1")
    seen = 0
    for pos, l in enumerate(w):
        if l == x:
            seen += 1
            if seen == i:
                return pos
    raise IndexError(f"letter {x} has only {seen} occurrence(s), asked for occurrence {i}")


def occurrence_precedes(w, first, second) -> bool:
    """True iff occurrence ``first=(x, i)`` precedes ``second=(y, j)`` in ``w``."""
    (x, i), (y, j) = first, second
    return occurrence_position(w, x, i) < occurrence_position(w, y, j)


def decomposition(w) -> tuple[list[Word], list[Letter]]:
    """Split ``w`` into blocks separated by its simple letters."""
    w = word(w)
    simple = stats(w).simple
    blocks: list[Word] = []
    seq: list[Letter] = []
    cur: list[Letter] = []
    for l in w:
        if l in simple:
            blocks.append(Word(cur))
            seq.append(l)
            cur = []
        else:
            cur.append(l)
    blocks.append(Word(cur))
    return blocks, seq


def islands(w, x: Letter) -> list[tuple[int, int]]:
    """Maximal runs of ``x`` in ``w`` as ``(start, length)`` pairs."""
    runs = []
    start = None
    for pos, l in enumerate(w):
        if l == x:
            if start is None:
                start = pos
        elif start is not None:
            runs.append((start, pos - start))
            start = None
    if start is not None:
        runs.append((start, len(w) - start))
    return runs


def factors(w) -> list[Word]:
    """All distinct contiguous subwords of ``w`` (empty word included),
    sorted by length then lexicographically."""
    w = tuple(w)
    n = len(w)
    found = {w[i:j] for i in range(n) for j in range(i, n + 1)}
    found.add(())
    return sorted((Word(f) for f in found), key=Word.key)


def is_factor(u, w) -> bool:
    u, w = tuple(u), tuple(w)
    k = len(u)
    if k == 0:
        return True
    return any(w[i:i + k] == u for i in range(len(w) - k + 1))


def is_square_free(w) -> bool:
    w = tuple(w)
    n = len(w)
    for i in range(n):
        for half in range(1, (n - i) // 2 + 1):
            if w[i:i + half] == w[i + half:i + 2 * half]:
                return False
    return True


def length2_factors_unique(w) -> bool:
    w = tuple(w)
    pairs = [w[i:i + 2] for i in range(len(w) - 1)]
    return len(pairs) == len(set(pairs))


def reverse(w) -> Word:
    return Word(tuple(w)[::-1])
