"""Words over a finite alphabet and the scattered-subword order.

Words are plain Python strings; an :class:`Alphabet` fixes the ambient letter
set (needed for richness, shuffles, upward closures and the like).
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator

from .errors import AlphabetError, CapExceeded, PreconditionError

# Characters with a syntactic role in regexes, formulas and file formats.
RESERVED = set("()[]+*|&!#<>=/\"'_,:;.-") | {"ε", "∅"}

DEFAULT_SUBWORD_CAP = 24


@dataclass(frozen=True)
class Alphabet:
    """An ordered finite set of single-character letters."""

    letters: str
    index: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        if not isinstance(self.letters, str):
            object.__setattr__(self, "letters", "".join(self.letters))
        if not self.letters:
            raise AlphabetError("alphabet must contain at least one letter")
        if len(set(self.letters)) != len(self.letters):
            raise AlphabetError(f"alphabet letters are not distinct: {self.letters!r}")
        for c in self.letters:
            if c.isspace() or c in RESERVED:
                raise AlphabetError(f"reserved character {c!r} cannot be a letter")
        object.__setattr__(self, "index", {c: i for i, c in enumerate(self.letters)})

    @property
    def k(self) -> int:
        return len(self.letters)

    def __len__(self):
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __contains__(self, c):
        return c in self.index

    def __str__(self):
        return self.letters

    def check(self, word: str) -> str:
        """Return ``word`` unchanged, raising if it uses a foreign letter."""
        for c in word:
            if c not in self.index:
                raise AlphabetError(f"letter {c!r} of {word!r} not in alphabet {self.letters!r}")
        return word

    def prefix(self, k: int) -> "Alphabet":
        if not 1 <= k <= self.k:
            raise PreconditionError(f"cannot take {k} letters from a {self.k}-letter alphabet")
        return Alphabet(self.letters[:k])

    def words(self, maxlen: int, minlen: int = 0) -> Iterator[str]:
        """All words with ``minlen <= |w| <= maxlen`` in shortlex order."""
        for n in range(minlen, maxlen + 1):
            for t in itertools.product(self.letters, repeat=n):
                yield "".join(t)


def same_alphabet(*alphabets: Alphabet) -> Alphabet:
    first = alphabets[0]
    for other in alphabets[1:]:
        if other.letters != first.letters:
            raise AlphabetError(f"alphabet mismatch: {first.letters!r} vs {other.letters!r}")
    return first


def _check_pair(u, v, alphabet):
    if alphabet is not None:
        alphabet.check(u)
        alphabet.check(v)


def is_subword(u: str, v: str, alphabet: Alphabet | None = None) -> bool:
    """True iff ``u`` embeds into ``v`` (greedy left-most embedding)."""
    _check_pair(u, v, alphabet)
    if len(u) > len(v):
        return False
    it = iter(v)
    return all(c in it for c in u)


class Relation(enum.Enum):
    EQUAL = "="
    BELOW = "<"          # strict subword
    ABOVE = ">"          # strict superword
    INCOMPARABLE = "#"


def compare(u: str, v: str, alphabet: Alphabet | None = None) -> Relation:
    _check_pair(u, v, alphabet)
    if u == v:
        return Relation.EQUAL
    if is_subword(u, v):
        return Relation.BELOW
    if is_subword(v, u):
        return Relation.ABOVE
    return Relation.INCOMPARABLE


def is_incomparable(u: str, v: str, alphabet: Alphabet | None = None) -> bool:
    return compare(u, v, alphabet) is Relation.INCOMPARABLE


def shuffle_with_alphabet(u: str, alphabet: Alphabet) -> frozenset[str]:
    """Every word obtained from ``u`` by inserting one letter somewhere."""
    alphabet.check(u)
    return frozenset(u[:i] + c + u[i:] for i in range(len(u) + 1) for c in alphabet)


@dataclass(frozen=True)
class RichFactorization:
    blocks: tuple[tuple[str, str], ...]
    tail: str

    @property
    def richness(self) -> int:
        return len(self.blocks)

    def word(self) -> str:
        return "".join(b + a for b, a in self.blocks) + self.tail


def rich_factorization(u: str, alphabet: Alphabet) -> RichFactorization:
    """Split off shortest rich prefixes until the remainder is poor."""
    alphabet.check(u)
    k = alphabet.k
    blocks = []
    seen: set[str] = set()
    start = 0
    for i, c in enumerate(u):
        seen.add(c)
        if len(seen) == k:
            blocks.append((u[start:i], c))
            start = i + 1
            seen = set()
    return RichFactorization(tuple(blocks), u[start:])


def richness(u: str, alphabet: Alphabet) -> int:
    return rich_factorization(u, alphabet).richness


def is_rich(u: str, alphabet: Alphabet) -> bool:
    return set(u) >= set(alphabet.letters)


@lru_cache(maxsize=None)
def _f(k: int, n: int) -> int:
    if k == 1:
        return n
    return max(m * _f(k - 1, n + 1 - m) + m + _f(k - 1, n - m) for m in range(n + 1))


def f(k: int, n: int) -> int:
    """Exact small-subword length bound ``f_k(n)``.

    Every word over ``k`` letters has a Simon ``n``-equivalent subword of
    length at most ``f(k, n)``.
    """
    if k < 1:
        raise PreconditionError("f(k, n) needs k >= 1")
    if n < 0:
        raise PreconditionError("f(k, n) needs n >= 0")
    if k == 2:
        # Same maximisation, but without the recursion for large n.
        return max(m * (n + 1 - m) + m + (n - m) for m in range(n + 1)) if n < 4096 \
            else _f2_closed(n)
    # warm the cache bottom-up to keep recursion shallow
    for j in range(2, k):
        for i in range(0, n + k + 1):
            _f(j, i)
    return _f(k, n)


def _f2_closed(n: int) -> int:
    # m*(n+1-m) + n is maximal at m = (n+1)//2
    m = (n + 1) // 2
    return max(mm * (n + 1 - mm) + n for mm in (m, m + 1) if 0 <= mm <= n)


def f_upper(k: int, n: int) -> float:
    """Closed-form upper bound ``((n+2k-1)/k)^k - 1`` on :func:`f`."""
    return ((n + 2 * k - 1) / k) ** k - 1


def generate_Uk(k: int, eta: int, alphabet: Alphabet) -> str:
    """``U_0 = ε`` and ``U_k = (U_{k-1} a_k)^eta U_{k-1}`` over the first k letters."""
    if k < 0 or eta < 1:
        raise PreconditionError("generate_Uk needs k >= 0 and eta >= 1")
    if k > alphabet.k:
        raise AlphabetError(f"U_{k} needs {k} letters, alphabet has {alphabet.k}")
    u = ""
    for i in range(k):
        u = (u + alphabet.letters[i]) * eta + u
    return u


def generate_Pk_Nk(k: int, eta: int, alphabet: Alphabet) -> tuple[frozenset[str], frozenset[str]]:
    """Required (P) and forbidden (N) subwords that pin down ``U_k`` exactly."""
    if k > alphabet.k:
        raise AlphabetError(f"P_{k}/N_{k} need {k} letters, alphabet has {alphabet.k}")
    P, N = {""}, set()
    for i in range(k):
        a = alphabet.letters[i]
        P = {a * j + v + a * (eta - j) for j in range(eta + 1) for v in P}
        N = {a * (eta + 1)} | {a * j + w + a * (eta - j) for j in range(eta + 1) for w in N}
    return frozenset(P), frozenset(N)


def distinct_subwords(u: str, cap: int = DEFAULT_SUBWORD_CAP) -> frozenset[str]:
    """The finite set of all subwords of ``u`` (including ε and ``u``)."""
    if len(u) > cap:
        raise CapExceeded(f"distinct_subwords: |u| = {len(u)} exceeds cap {cap}",
                          cap=cap, reached=len(u))
    subs = {""}
    for c in u:
        subs |= {s + c for s in subs}
    return frozenset(subs)


def letter_count(u: str, a: str) -> int:
    return u.count(a)
