"""Upward, downward and strict closures, minimal elements, CFG upward
closures and inverse morphisms."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .automata import (Automaton, Dfa, Nfa, difference, empty, minimize, to_dfa, trim,
                       words_dfa)
from .cfg import Cfg
from .errors import AlphabetError, CapExceeded, PreconditionError
from .words import Alphabet, is_subword

DEFAULT_MIN_WORDS_CAP = 100_000
DEFAULT_CFG_CAP = 100_000


def _as_nfa(a: Automaton) -> Nfa:
    return a.to_nfa() if isinstance(a, Dfa) else a


def up_closure(a: Automaton) -> Dfa:
    """Canonical DFA of the superwords of the words of L: self-loops everywhere."""
    nfa = _as_nfa(a)
    loops = {(q, c, q) for q in range(nfa.num_states) for c in nfa.alphabet}
    return to_dfa(Nfa(nfa.alphabet, nfa.num_states, nfa.transitions | loops,
                      nfa.initials, nfa.finals))


def down_closure(a: Automaton) -> Dfa:
    """Canonical DFA of the subwords of the words of L: every letter may be skipped."""
    nfa = _as_nfa(a)
    skips = {(s, None, t) for s, c, t in nfa.transitions if c is not None}
    return to_dfa(Nfa(nfa.alphabet, nfa.num_states, nfa.transitions | skips,
                      nfa.initials, nfa.finals))


def _two_layers(nfa: Nfa, bridges) -> Nfa:
    n = nfa.num_states
    trans = set(nfa.transitions)
    trans |= {(s + n, c, t + n) for s, c, t in nfa.transitions}
    trans |= set(bridges)
    return Nfa(nfa.alphabet, 2 * n, frozenset(trans), nfa.initials,
               frozenset(q + n for q in nfa.finals))


def one_insertion(a: Automaton) -> Nfa:
    """NFA of the words obtained by inserting exactly one letter into a word of L."""
    nfa = _as_nfa(a)
    n = nfa.num_states
    return _two_layers(nfa, {(q, c, q + n) for q in range(n) for c in nfa.alphabet})


def one_deletion(a: Automaton) -> Nfa:
    """NFA of the words obtained by deleting exactly one letter from a word of L."""
    nfa = _as_nfa(a)
    n = nfa.num_states
    return _two_layers(nfa, {(s, None, t + n) for s, c, t in nfa.transitions if c is not None})


def strict_up(a: Automaton) -> Dfa:
    """Canonical DFA of the strict superwords of the words of L."""
    return up_closure(one_insertion(a))


def strict_down(a: Automaton) -> Dfa:
    """Canonical DFA of the strict subwords of the words of L."""
    return down_closure(one_deletion(a))


def min_lang(a: Automaton) -> Dfa:
    """Canonical DFA of the ⊑-minimal words of L."""
    return difference(to_dfa(a), strict_up(a))


def minimal_elements(words) -> frozenset:
    """The ⊑-minimal words of a finite set."""
    ws = sorted(set(words), key=lambda w: (len(w), w))
    out: list[str] = []
    for w in ws:
        if not any(is_subword(m, w) for m in out):
            out.append(w)
    return frozenset(out)


def min_words(a: Automaton, cap: int = DEFAULT_MIN_WORDS_CAP) -> frozenset:
    """The finite set of ⊑-minimal words of L.

    A minimal word is read along an accepting path that repeats no state
    (cutting out a cycle would give a smaller member), so enumerating the
    labels of such paths in the trimmed canonical DFA and filtering suffices.
    """
    nfa = trim(to_dfa(a))
    if not nfa.finals:
        return frozenset()
    succ = nfa.successors()
    adj = [sorted((c, t) for c, ts in m.items() for t in ts) for m in succ]
    found = set()
    count = 0
    stack = [(q, "", frozenset([q])) for q in nfa.initials]
    while stack:
        q, w, seen = stack.pop()
        count += 1
        if count > cap:
            raise CapExceeded(f"min_words: more than {cap} simple paths", cap=cap, reached=count)
        if q in nfa.finals:
            found.add(w)
            continue  # extending a member cannot give a minimal word
        for c, t in adj[q]:
            if t not in seen:
                stack.append((t, w + c, seen | {t}))
    return minimal_elements(found)


def up_closure_cfg(g: Cfg, cap: int = DEFAULT_CFG_CAP) -> Dfa:
    """Canonical DFA of the upward closure of a context-free language.

    Only derivations in which no nonterminal repeats along a branch are
    enumerated; every derived word has such a derivation for one of its
    subwords, so the upward closures agree.
    """
    total = 0

    @lru_cache(maxsize=None)
    def gen(nt: str, forbidden: frozenset) -> frozenset:
        nonlocal total
        below = forbidden | {nt}
        out = set()
        for rhs in g.rules(nt):
            parts = [""]
            for sym in rhs:
                if sym in g.alphabet and sym not in g.nonterminals:
                    parts = [p + sym for p in parts]
                    continue
                if sym in below:
                    parts = []
                    break
                sub = gen(sym, below)
                parts = list(minimal_elements(p + s for p in parts for s in sub))
                total += len(parts)
                if total > cap:
                    raise CapExceeded(f"up_closure_cfg: more than {cap} partial words", cap=cap,
                                      reached=total)
                if not parts:
                    break
            out.update(parts)
        return minimal_elements(out)

    words = gen(g.start, frozenset())
    if not words:
        return empty(g.alphabet)
    return up_closure(words_dfa(words, g.alphabet))


def cfg_minimal_words(g: Cfg, cap: int = DEFAULT_CFG_CAP) -> frozenset:
    return min_words(up_closure_cfg(g, cap))


@dataclass(frozen=True)
class Morphism:
    source: Alphabet
    target: Alphabet
    images: tuple  # image of each source letter, in source order

    @classmethod
    def from_dict(cls, source: Alphabet, target: Alphabet, images: dict) -> "Morphism":
        missing = [c for c in source if c not in images]
        if missing:
            raise AlphabetError(f"morphism undefined on {''.join(missing)!r}")
        return cls(source, target, tuple(target.check(images[c]) for c in source))

    def __call__(self, word: str) -> str:
        idx = self.source.index
        return "".join(self.images[idx[c]] for c in self.source.check(word))


def inverse_morphism(d: Automaton, rho: Morphism) -> Dfa:
    """Canonical DFA of the words whose image under rho is in L(d)."""
    d = to_dfa(d)
    if d.alphabet.letters != rho.target.letters:
        raise AlphabetError("morphism target differs from the automaton alphabet")
    delta = [[d.run(img, q) for img in rho.images] for q in range(d.num_states)]
    return minimize(Dfa(rho.source, delta, d.initial, d.finals))


def lower_bound_witness(u: str, alphabet: Alphabet) -> tuple[str, str]:
    """Words v, v' with v ~(|u|-1) v', u ⊑ v' and u ⋢ v.

    With π_a the other letters in alphabet order followed by a, and
    u = a_1 ... a_l, v = π_{a_1} ... π_{a_(l-1)} and v' = v a_l.
    """
    alphabet.check(u)
    if not u:
        raise PreconditionError("lower_bound_witness needs a nonempty word")

    def pi(a):
        return "".join(c for c in alphabet.letters if c != a) + a

    v = "".join(pi(a) for a in u[:-1])
    return v, v + u[-1]
