"""Incomparability images I(L) = {u : u ⊥ v for some v ∈ L} and their duals
C(L) = A* ∖ I(L) = {u : every v ∈ L is comparable with u}."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from . import automata as fa
from .automata import Automaton, Dfa, minimize, to_dfa
from .errors import PreconditionError, VerificationError
from .simon import (DEFAULT_CLASS_CAP, ClassAutomaton, class_automaton, enumerate_class,
                    is_n_pt, sim_equiv)
from .words import Alphabet, f, is_incomparable, is_subword

__all__ = [
    "is_incomparable", "incomparability_singleton", "in_I", "in_C", "I_of_pt", "C_of_pt",
    "two_witness", "LayerReport", "layer_report",
]


def incomparability_singleton(u: str, alphabet: Alphabet) -> Dfa:
    """Canonical DFA of the words incomparable with ``u``."""
    comparable = fa.union(fa.up_word_dfa(u, alphabet), fa.down_word_dfa(u, alphabet))
    return fa.complement(comparable)


def _incomparable_witness(u: str, d: Dfa):
    """A word of L(d) incomparable with u, or None (product breadth-first search)."""
    letters = d.alphabet.letters
    m = len(u)
    # up: how much of u is embedded so far; down: greedy position in u, or -1 once w ⋢ u
    nxt = [[(u.find(c, j) + 1) if u.find(c, j) >= 0 else -1 for c in letters] for j in range(m + 1)]
    start = (d.initial, 0, 0)
    parent = {start: None}
    queue = deque([start])
    while queue:
        cur = queue.popleft()
        s, up, down = cur
        if s in d.finals and up < m and down < 0:
            out = []
            while parent[cur] is not None:
                cur, c = parent[cur]
                out.append(c)
            return "".join(reversed(out))
        for ci, c in enumerate(letters):
            up2 = up + 1 if up < m and u[up] == c else up
            down2 = -1 if down < 0 else nxt[down][ci]
            item = (d.delta[s][ci], up2, down2)
            if item not in parent:
                parent[item] = (cur, c)
                queue.append(item)
    return None


def in_I(u: str, d: Automaton) -> bool:
    d = to_dfa(d)
    d.alphabet.check(u)
    return _incomparable_witness(u, d) is not None


def in_C(u: str, d: Automaton) -> bool:
    return not in_I(u, d)


# ------------------------------------------------------ class decomposition

def _ancestors(ca: ClassAutomaton, p: int) -> list[int]:
    preds: dict = {}
    for s, row in enumerate(ca.delta):
        for t in row:
            if t != s:
                preds.setdefault(t, set()).add(s)
    seen = {p}
    stack = [p]
    while stack:
        t = stack.pop()
        for s in preds.get(t, ()):
            if s not in seen:
                seen.add(s)
                stack.append(s)
    return sorted(seen)


def _class_dfa(ca: ClassAutomaton, p: int, anc: list[int]) -> Dfa:
    """Canonical DFA of the class of state p (ancestors of p plus a sink)."""
    ids = {q: i for i, q in enumerate(anc)}
    sink = len(anc)
    delta = [[ids.get(t, sink) for t in ca.delta[q]] for q in anc]
    delta.append([sink] * ca.alphabet.k)
    return minimize(Dfa(ca.alphabet, delta, ids[0], {ids[p]}))


def _count_layer(ca: ClassAutomaton, p: int, anc: list[int], length: int) -> int:
    """Number of words of the given length in the class of state p."""
    ancs = set(anc)
    counts = {0: 1}
    for _ in range(length):
        new: dict = {}
        for q, c in counts.items():
            for t in ca.delta[q]:
                if t in ancs:
                    new[t] = new.get(t, 0) + c
        counts = new
    return counts.get(p, 0)


def _below_all(ca: ClassAutomaton, p: int, anc: list[int], w: str) -> bool:
    """True iff w is a subword of every word in the class of state p."""
    ancs = set(anc)
    m = len(w)
    letters = ca.alphabet.letters
    seen = {(0, 0)}
    stack = [(0, 0)]
    while stack:
        q, j = stack.pop()
        if q == p and j < m:
            return False
        for ci, t in enumerate(ca.delta[q]):
            if t in ancs:
                j2 = j + 1 if j < m and w[j] == letters[ci] else j
                if (t, j2) not in seen:
                    seen.add((t, j2))
                    stack.append((t, j2))
    return True


def _common_subwords(ca: ClassAutomaton, p: int, anc: list[int], rep: str) -> list[str]:
    """All words that embed into every word of the class (a finite downward-closed set)."""
    out = []
    letters = ca.alphabet.letters
    stack = [("", 0)]  # candidate, greedy position in rep
    while stack:
        w, pos = stack.pop()
        if not _below_all(ca, p, anc, w):
            continue
        out.append(w)
        for c in letters:
            j = rep.find(c, pos)
            if j >= 0:
                stack.append((w + c, j + 1))
    return out


def class_comparables(ca: ClassAutomaton, p: int) -> Dfa:
    """Canonical DFA of C(T) for the class T of state p.

    T is a singleton, a ⊑-chain, or has two distinct words of every length
    beyond its shortest one; which case holds is read off the number of words
    of length |rep|+1 in T.
    """
    alphabet = ca.alphabet
    rep = ca.representatives[p]
    anc = _ancestors(ca, p)
    nxt = _count_layer(ca, p, anc, len(rep) + 1)
    if nxt == 0:
        return fa.union(fa.up_word_dfa(rep, alphabet), fa.down_word_dfa(rep, alphabet))
    if nxt == 1:
        return fa.union(_class_dfa(ca, p, anc), fa.down_word_dfa(rep, alphabet))
    return fa.words_dfa(_common_subwords(ca, p, anc, rep), alphabet)


def C_of_pt(d: Automaton, n: int, cap: int = DEFAULT_CLASS_CAP, check: bool = True) -> Dfa:
    d = to_dfa(d)
    if check and not is_n_pt(d, n):
        raise PreconditionError(f"language is not {n}-PT")
    ca = class_automaton(d.alphabet, n, cap)
    result = fa.universal(d.alphabet)
    for p, rep in enumerate(ca.representatives):
        if d.accepts(rep):
            result = fa.intersect(result, class_comparables(ca, p))
    return result


def I_of_pt(d: Automaton, n: int, method: str = "classes", cap: int = DEFAULT_CLASS_CAP) -> Dfa:
    """Canonical DFA of I(L) for an n-PT language L.

    ``method="classes"`` intersects C(T) over the n-classes T ⊆ L (level-n
    class automaton). ``method="flat"`` builds the class automaton at level
    f(k, n) + 1 and accepts the classes whose representative is in I(L);
    this is exact because I(L) is a union of such classes, but the automaton
    is only feasible for small n.
    """
    d = to_dfa(d)
    if not is_n_pt(d, n):
        raise PreconditionError(f"language is not {n}-PT")
    if method == "classes":
        return fa.complement(C_of_pt(d, n, cap, check=False))
    if method == "flat":
        level = f(d.alphabet.k, n) + 1
        ca = class_automaton(d.alphabet, level, cap)
        accepting = [p for p, rep in enumerate(ca.representatives)
                     if _incomparable_witness(rep, d) is not None]
        return ca.to_dfa(accepting)
    raise ValueError(f"unknown method {method!r}")


# ------------------------------------------------------------ two witness

def two_witness(w: str, u: str, v: str, n: int, alphabet: Alphabet | None = None) -> str:
    """A word w' ≠ w of the same length with w' n-equivalent to w.

    Requires u, v distinct n-equivalent subwords of w of length |w| - 1.
    With w = w0 a1 w1 a2 w2, u = w0 a1 w1 w2 and v = w0 w1 a2 w2 the result is
    w0 w1 a2 a2 w2.
    """
    if alphabet is not None:
        for x in (w, u, v):
            alphabet.check(x)
    if u == v:
        raise PreconditionError("u and v must differ")
    if len(u) != len(w) - 1 or len(v) != len(w) - 1:
        raise PreconditionError("u and v must be one letter shorter than w")
    for x in (u, v):
        if not is_subword(x, w) or not sim_equiv(x, w, n, alphabet):
            raise PreconditionError(f"{x!r} is not an {n}-equivalent subword of {w!r}")
    dels = [i for i in range(len(w))]
    best = None
    for first, second in ((u, v), (v, u)):
        # second = w minus p1, first = w minus p2, p1 < p2
        for p1 in dels:
            if w[:p1] + w[p1 + 1:] != second:
                continue
            for p2 in dels[p1 + 1:]:
                if w[:p2] + w[p2 + 1:] == first:
                    if best is None or (p1, p2) < best:
                        best = (p1, p2)
                    break
    if best is None:
        raise PreconditionError("no decomposition of w matches u and v")
    p1, p2 = best
    w0, w1, w2 = w[:p1], w[p1 + 1:p2], w[p2 + 1:]
    result = w0 + w1 + w[p2] + w[p2] + w2
    if len(result) != len(w) or result == w or not sim_equiv(result, w, n, alphabet):
        raise VerificationError(f"two_witness produced {result!r} for {w!r}")
    return result


# ---------------------------------------------------------------- layers

@dataclass(frozen=True)
class LayerReport:
    word: str
    n: int
    maxlen: int
    counts: tuple  # counts[l] = number of class members of length l

    @property
    def tags(self) -> tuple:
        return tuple("empty" if c == 0 else "singular" if c == 1 else "populous"
                     for c in self.counts)

    def tag(self, length: int) -> str:
        return self.tags[length]


def layer_report(u: str, n: int, maxlen: int, alphabet: Alphabet | None = None,
                 cap: int = 200_000) -> LayerReport:
    members = enumerate_class(u, n, maxlen, alphabet, cap=cap)
    counts = [0] * (maxlen + 1)
    for w in members:
        counts[len(w)] += 1
    return LayerReport(u, n, maxlen, tuple(counts))
