"""Simon's congruence, the distance δ, PT heights and the class automaton.

Subword profiles are encoded as bitmasks over all words of length at most
``n``. Layer ``L`` (words of length ``L``) occupies ``k**L`` consecutive bits
starting at offset ``(k**L - 1) // (k - 1)`` (``L`` when ``k == 1``); inside a
layer a word is numbered little-endian in base ``k`` (first letter least
significant). Appending letter ``a`` to a word whose profile is ``P`` adds,
for each layer ``L``, a copy of layer ``L-1`` of ``P`` shifted to the block of
words ending with ``a``. Two words are ``n``-equivalent iff their level-``n``
profiles are equal.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Optional

from .automata import Dfa, minimize, to_dfa
from .errors import CapExceeded, PreconditionError
from .words import Alphabet, is_subword, shuffle_with_alphabet

DEFAULT_CLASS_CAP = 2_000_000
DEFAULT_ENUM_CAP = 200_000
INF = math.inf


def _infer_alphabet(*words: str) -> Alphabet:
    letters = sorted(set("".join(words)))
    return Alphabet("".join(letters) or "a")


# ------------------------------------------------------------- bit layout

class ProfileSpace:
    """Bit layout for level-``n`` profiles over an alphabet."""

    def __init__(self, alphabet: Alphabet, n: int):
        if n < 0:
            raise PreconditionError("level must be >= 0")
        self.alphabet = alphabet
        self.n = n
        k = alphabet.k
        self.offsets = [0]
        for L in range(1, n + 2):
            self.offsets.append(self.offsets[-1] + k ** (L - 1))
        self.layer_masks = [(1 << k ** L) - 1 for L in range(n + 1)]
        self.total_bits = self.offsets[n + 1]
        # per letter: list of (src offset, mask, dst offset) for L = 1..n
        self._moves = [
            [(self.offsets[L - 1], self.layer_masks[L - 1], self.offsets[L] + ai * k ** (L - 1))
             for L in range(1, n + 1)]
            for ai in range(k)
        ]

    @property
    def empty_profile(self) -> int:
        return 1

    def step(self, bits: int, ai: int) -> int:
        new = bits
        for src, mask, dst in self._moves[ai]:
            new |= ((bits >> src) & mask) << dst
        return new

    def encode(self, word: str) -> int:
        idx = self.alphabet.index
        bits = 1
        for c in word:
            bits = self.step(bits, idx[c])
        return bits

    def word_bit(self, w: str) -> int:
        k = self.alphabet.k
        idx = self.alphabet.index
        num = 0
        for j, c in enumerate(w):
            num += idx[c] * k ** j
        return self.offsets[len(w)] + num

    def decode(self, bits: int) -> frozenset:
        out = []
        k = self.alphabet.k
        letters = self.alphabet.letters
        for L in range(self.n + 1):
            layer = (bits >> self.offsets[L]) & self.layer_masks[L]
            while layer:
                low = layer & -layer
                num = low.bit_length() - 1
                layer ^= low
                w = []
                for _ in range(L):
                    num, r = divmod(num, k)
                    w.append(letters[r])
                out.append("".join(w))
        return frozenset(out)


@lru_cache(maxsize=256)
def profile_space(alphabet: Alphabet, n: int) -> ProfileSpace:
    return ProfileSpace(alphabet, n)


@dataclass(frozen=True)
class SubwordProfile:
    """The subwords of length <= n of some word, as a canonical bitmask."""

    alphabet: Alphabet
    n: int
    bits: int

    @property
    def words(self) -> frozenset:
        return profile_space(self.alphabet, self.n).decode(self.bits)

    @property
    def maximal(self) -> tuple:
        """The ⊑-maximal words, sorted by (length, word)."""
        ws = self.words
        out = []
        for w in ws:
            if len(w) == self.n or not any(w[:i] + c + w[i:] in ws
                                           for i in range(len(w) + 1) for c in self.alphabet):
                out.append(w)
        return tuple(sorted(out, key=lambda w: (len(w), w)))

    def __le__(self, other: "SubwordProfile") -> bool:
        return self.bits & ~other.bits == 0


def profile(u: str, n: int, alphabet: Alphabet | None = None) -> SubwordProfile:
    alphabet = alphabet or _infer_alphabet(u)
    alphabet.check(u)
    return SubwordProfile(alphabet, n, profile_space(alphabet, n).encode(u))


def sim_equiv(u: str, v: str, n: int, alphabet: Alphabet | None = None) -> bool:
    """True iff ``u`` and ``v`` have the same subwords of length <= n."""
    alphabet = alphabet or _infer_alphabet(u, v)
    sp = profile_space(alphabet, n)
    return sp.encode(alphabet.check(u)) == sp.encode(alphabet.check(v))


# ------------------------------------------------------------------- delta

def _next_table(u: str, letters: str) -> list[tuple]:
    """nxt[i][j] = 1 + position of the first letters[j] in u[i:], or -1."""
    n = len(u)
    table = [None] * (n + 1)
    row = [-1] * len(letters)
    table[n] = tuple(row)
    pos = {c: j for j, c in enumerate(letters)}
    for i in range(n - 1, -1, -1):
        row = list(row)
        row[pos[u[i]]] = i + 1
        table[i] = tuple(row)
    return table


def _delta_tables(tu, tv, k) -> float:
    seen = {(0, 0)}
    frontier = [(0, 0)]
    length = 0
    while frontier:
        length += 1
        nxt = []
        for i, j in frontier:
            ri, rj = tu[i], tv[j]
            for c in range(k):
                a, b = ri[c], rj[c]
                if a < 0 or b < 0:
                    if a != b:
                        return length
                    continue
                if (a, b) not in seen:
                    seen.add((a, b))
                    nxt.append((a, b))
        frontier = nxt
    return INF


def delta(u: str, v: str, alphabet: Alphabet | None = None) -> float:
    """Least n with u and v not n-equivalent; ``math.inf`` when u == v.

    Breadth-first search in the product of the subword chain automata of
    ``u`` and ``v``; the first length at which exactly one side dies is the
    length of a shortest separating subword.
    """
    alphabet = alphabet or _infer_alphabet(u, v)
    alphabet.check(u)
    alphabet.check(v)
    if u == v:
        return INF
    L = alphabet.letters
    return _delta_tables(_next_table(u, L), _next_table(v, L), len(L))


def pt_height_word(u: str, alphabet: Alphabet) -> int:
    """Exact PT height of the singleton language ``{u}``."""
    alphabet.check(u)
    L = alphabet.letters
    tu = _next_table(u, L)
    best = 0
    for v in shuffle_with_alphabet(u, alphabet):
        best = max(best, _delta_tables(tu, _next_table(v, L), len(L)))
        if best == len(u) + 1:
            break
    return int(best)


def pt_height_finite(ws: Iterable[str], alphabet: Alphabet) -> int:
    """Exact PT height of a finite nonempty language (max over its words)."""
    ws = sorted(set(ws), key=lambda w: (-len(w), w))
    if not ws:
        raise PreconditionError("pt_height_finite needs a nonempty set")
    best = 0
    for w in ws:
        if len(w) + 1 <= best:
            break  # heights never exceed |w| + 1, and the rest are shorter
        best = max(best, pt_height_word(w, alphabet))
    return best


# ------------------------------------------------------- small subwords

def _small_positions(u: str, lo: int, hi: int, n: int) -> list[int]:
    if n <= 0 or lo >= hi:
        return []
    letters = set(u[lo:hi])
    if len(letters) == 1:
        return list(range(lo, min(hi, lo + n)))
    # rich factorization of u[lo:hi] relative to its own letters
    blocks = []  # (block start, position of closing letter)
    seen: set = set()
    start = lo
    for i in range(lo, hi):
        seen.add(u[i])
        if len(seen) == len(letters):
            blocks.append((start, i))
            start = i + 1
            seen = set()
    m = len(blocks)
    if m >= n:
        out = []
        for s, e in blocks[:n]:
            first = {}
            for i in range(s, e + 1):
                first.setdefault(u[i], i)
            out.extend(sorted(first.values()))
        return out
    n2 = n + 1 - m
    out = []
    for s, e in blocks:
        out.extend(_small_positions(u, s, e, n2))
        out.append(e)
    out.extend(_small_positions(u, start, hi, n2 - 1))
    return out


def small_subword_positions(u: str, n: int) -> list[int]:
    """Positions (increasing) of a subword of ``u`` that is n-equivalent to ``u``."""
    if n < 0:
        raise PreconditionError("n must be >= 0")
    return _small_positions(u, 0, len(u), n)


def small_subword(u: str, n: int) -> str:
    """A subword v of u with v n-equivalent to u and |v| <= f(k, n),
    k the number of distinct letters of u."""
    return "".join(u[i] for i in small_subword_positions(u, n))


# ------------------------------------------------------ class automaton

@dataclass(frozen=True)
class ClassAutomaton:
    alphabet: Alphabet
    n: int
    profiles: tuple      # state -> bitmask
    delta: tuple         # state -> tuple of successor states
    representatives: tuple  # state -> shortlex-least word of the class

    @property
    def num_states(self) -> int:
        return len(self.profiles)

    @property
    def space(self) -> ProfileSpace:
        return profile_space(self.alphabet, self.n)

    def state_of(self, word: str) -> int:
        q = 0
        idx = self.alphabet.index
        for c in self.alphabet.check(word):
            q = self.delta[q][idx[c]]
        return q

    def profile(self, state: int) -> SubwordProfile:
        return SubwordProfile(self.alphabet, self.n, self.profiles[state])

    def to_dfa(self, accepting: Iterable[int], minimal: bool = True) -> Dfa:
        d = Dfa(self.alphabet, self.delta, 0, frozenset(accepting))
        return minimize(d) if minimal else d


def class_automaton(alphabet: Alphabet, n: int, cap: int = DEFAULT_CLASS_CAP) -> ClassAutomaton:
    """Breadth-first construction of the automaton of n-classes."""
    sp = profile_space(alphabet, n)
    k = alphabet.k
    letters = alphabet.letters
    index = {1: 0}
    profiles = [1]
    reps = [""]
    delta = []
    i = 0
    while i < len(profiles):
        bits = profiles[i]
        row = []
        for ai in range(k):
            nb = sp.step(bits, ai)
            q = index.get(nb)
            if q is None:
                if len(profiles) >= cap:
                    raise CapExceeded(
                        f"class automaton at level {n} over {letters!r} exceeds {cap} states "
                        f"({len(profiles) - i} states still unexpanded)",
                        cap=cap, reached=len(profiles))
                q = index[nb] = len(profiles)
                profiles.append(nb)
                reps.append(reps[i] + letters[ai])
            row.append(q)
        delta.append(tuple(row))
        i += 1
    return ClassAutomaton(alphabet, n, tuple(profiles), tuple(delta), tuple(reps))


def class_count_bound(k: int, n: int) -> Optional[float]:
    """Upper bound m on the number of n-classes over k >= 2 letters:
    log2 m = k ((n+2k-3)/(k-1))^(k-1) log2 n log2 k. None for k < 2 or n < 1."""
    if k < 2 or n < 1:
        return None
    exponent = k * ((n + 2 * k - 3) / (k - 1)) ** (k - 1) * math.log2(n) * math.log2(k)
    return 2.0 ** exponent if exponent < 1024 else INF


# -------------------------------------------------------- PT decisions

def _update(vec: tuple, ci: int, n: int) -> tuple:
    """Absorption counters after appending (or prepending) letter ci."""
    new_c = min(vec[ci] + 1, n)
    return tuple(new_c if j == ci else min(v, new_c) for j, v in enumerate(vec))


def absorption(x: str, a: str, n: int, alphabet: Alphabet, from_right: bool = False) -> int:
    """Capped counter used by the insertion test: x a y ~n x y iff
    absorption(x, a) + absorption(y, a, from_right=True) >= n."""
    vec = (0,) * alphabet.k
    idx = alphabet.index
    for c in (reversed(x) if from_right else x):
        vec = _update(vec, idx[c], n)
    return vec[idx[a]]


def _is_n_pt_insertion(d: Dfa, n: int) -> bool:
    k = d.alphabet.k
    zero = (0,) * k
    # forward: reachable (state, counters of the prefix read so far)
    fwd = {(d.initial, zero)}
    queue = deque(fwd)
    while queue:
        s, D = queue.popleft()
        for ci in range(k):
            nxt = (d.delta[s][ci], _update(D, ci, n))
            if nxt not in fwd:
                fwd.add(nxt)
                queue.append(nxt)
    # backward: (q1, q2, counters of a suffix y) where q1 and q2 disagree on y
    preds: list[list[list[int]]] = [[[] for _ in range(k)] for _ in range(d.num_states)]
    for s, row in enumerate(d.delta):
        for ci, t in enumerate(row):
            preds[t][ci].append(s)
    best: dict = {}  # (q1, q2) -> per-letter maximum of the suffix counters
    bwd = set()
    queue = deque()
    for q1 in range(d.num_states):
        for q2 in range(d.num_states):
            if (q1 in d.finals) != (q2 in d.finals):
                bwd.add((q1, q2, zero))
                queue.append((q1, q2, zero))
    while queue:
        q1, q2, E = queue.popleft()
        cur = best.get((q1, q2))
        best[(q1, q2)] = E if cur is None else tuple(map(max, cur, E))
        for ci in range(k):
            E2 = _update(E, ci, n)
            for p1 in preds[q1][ci]:
                for p2 in preds[q2][ci]:
                    item = (p1, p2, E2)
                    if item not in bwd:
                        bwd.add(item)
                        queue.append(item)
    for s, D in fwd:
        for ci in range(k):
            E = best.get((d.delta[s][ci], s))
            if E is not None and D[ci] + E[ci] >= n:
                return False
    return True


def _is_n_pt_classes(d: Dfa, n: int, cap: int) -> bool:
    ca = class_automaton(d.alphabet, n, cap)
    seen = {}
    queue = deque([(0, d.initial)])
    visited = {(0, d.initial)}
    while queue:
        c, s = queue.popleft()
        acc = s in d.finals
        if seen.setdefault(c, acc) != acc:
            return False
        for ci in range(d.alphabet.k):
            nxt = (ca.delta[c][ci], d.delta[s][ci])
            if nxt not in visited:
                visited.add(nxt)
                queue.append(nxt)
    return True


def is_n_pt(d, n: int, method: str = "insertion", cap: int = DEFAULT_CLASS_CAP) -> bool:
    """True iff the language of ``d`` is a union of n-classes.

    ``method="insertion"`` checks closure under single-letter insertions that
    preserve the n-class (exact, no class automaton); ``method="classes"``
    runs the product with the level-n class automaton.
    """
    if n < 0:
        raise PreconditionError("level must be >= 0")
    d = to_dfa(d)
    if method == "insertion":
        return _is_n_pt_insertion(d, n)
    if method == "classes":
        return _is_n_pt_classes(d, n, cap)
    raise ValueError(f"unknown method {method!r}")


def _longest_path_mod_selfloops(d: Dfa) -> Optional[int]:
    """Longest path (in edges) from the initial state ignoring self-loops,
    or None when a cycle through two or more states is reachable."""
    adj = [sorted({t for t in row if t != s}) for s, row in enumerate(d.delta)]
    longest: dict = {}
    state: dict = {}
    stack = [(d.initial, 0)]
    while stack:
        q, i = stack.pop()
        if i == 0:
            if state.get(q) == 2:
                continue
            state[q] = 1
        if i < len(adj[q]):
            stack.append((q, i + 1))
            t = adj[q][i]
            if state.get(t) == 1:
                return None
            if state.get(t) != 2:
                stack.append((t, 0))
        else:
            state[q] = 2
            longest[q] = max((1 + longest[t] for t in adj[q]), default=0)
    return longest[d.initial]


def pt_height_dfa(d, method: str = "insertion", cap: int = DEFAULT_CLASS_CAP) -> Optional[int]:
    """Exact PT height of a regular language, or None when it is not PT."""
    d = to_dfa(d)
    bound = _longest_path_mod_selfloops(d)
    if bound is None:
        return None
    for n in range(bound + 1):
        if is_n_pt(d, n, method=method, cap=cap):
            return n
    return None


# ------------------------------------------------------ class enumeration

def enumerate_class(u: str, n: int, maxlen: int, alphabet: Alphabet | None = None,
                    cap: int = DEFAULT_ENUM_CAP) -> frozenset:
    """All words of length <= maxlen that are n-equivalent to u."""
    alphabet = alphabet or _infer_alphabet(u)
    sp = profile_space(alphabet, n)
    target = sp.encode(alphabet.check(u))
    out = []
    stack = [("", 1)]
    letters = alphabet.letters
    while stack:
        w, bits = stack.pop()
        if bits == target:
            out.append(w)
            if len(out) > cap:
                raise CapExceeded(f"class of {u!r} has more than {cap} words up to length {maxlen}",
                                  cap=cap, reached=len(out))
        if len(w) < maxlen:
            for ai, c in enumerate(letters):
                nb = sp.step(bits, ai)
                # profiles only grow along extensions
                if nb & ~target == 0:
                    stack.append((w + c, nb))
    return frozenset(out)


def is_sim_below(u: str, v: str, n: int, alphabet: Alphabet | None = None) -> bool:
    """u ⊑ v and u ~n v."""
    return is_subword(u, v) and sim_equiv(u, v, n, alphabet)
