"""Finite automata values and the standard constructions on them.

States are integers ``0..num_states-1``. A :class:`Dfa` stores a complete
transition table indexed by letter position in its alphabet. Operations that
produce languages return canonical DFAs (minimal, complete, states numbered
breadth-first from the initial state in alphabet order), so two canonical DFAs
accept the same language iff they compare equal.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Optional, Union

from .errors import AlphabetError, CapExceeded, PreconditionError
from .words import Alphabet, same_alphabet

DEFAULT_DEPTH_CAP = 14


@dataclass(frozen=True)
class Nfa:
    alphabet: Alphabet
    num_states: int
    transitions: frozenset  # of (src, letter or None, dst)
    initials: frozenset
    finals: frozenset

    def __post_init__(self):
        object.__setattr__(self, "transitions", frozenset(self.transitions))
        object.__setattr__(self, "initials", frozenset(self.initials))
        object.__setattr__(self, "finals", frozenset(self.finals))
        n = self.num_states
        for s, c, t in self.transitions:
            if not (0 <= s < n and 0 <= t < n):
                raise PreconditionError(f"transition ({s}, {c}, {t}) uses an undeclared state")
            if c is not None and c not in self.alphabet:
                raise AlphabetError(f"transition letter {c!r} not in alphabet {self.alphabet.letters!r}")
        for q in self.initials | self.finals:
            if not 0 <= q < n:
                raise PreconditionError(f"state {q} is not declared")

    @property
    def has_epsilon(self) -> bool:
        return any(c is None for _, c, _ in self.transitions)

    def successors(self) -> list[dict]:
        """Per-state map letter -> set of targets (key None for ε)."""
        succ: list[dict] = [dict() for _ in range(self.num_states)]
        for s, c, t in self.transitions:
            succ[s].setdefault(c, set()).add(t)
        return succ

    def eps_closure(self, states: Iterable[int], succ=None) -> frozenset:
        succ = succ if succ is not None else self.successors()
        seen = set(states)
        stack = list(seen)
        while stack:
            s = stack.pop()
            for t in succ[s].get(None, ()):
                if t not in seen:
                    seen.add(t)
                    stack.append(t)
        return frozenset(seen)

    def accepts(self, word: str) -> bool:
        self.alphabet.check(word)
        succ = self.successors()
        cur = self.eps_closure(self.initials, succ)
        for c in word:
            nxt = set()
            for s in cur:
                nxt |= succ[s].get(c, set())
            cur = self.eps_closure(nxt, succ)
            if not cur:
                return False
        return bool(cur & self.finals)

    def remove_epsilon(self) -> "Nfa":
        """Equivalent NFA without ε-transitions on the same state set."""
        if not self.has_epsilon:
            return self
        succ = self.successors()
        closures = [self.eps_closure([s], succ) for s in range(self.num_states)]
        trans = set()
        for s in range(self.num_states):
            for p in closures[s]:
                for c, ts in succ[p].items():
                    if c is None:
                        continue
                    for t in ts:
                        for q in closures[t]:
                            trans.add((s, c, q))
        # closing targets means only the initials' closures need adding
        initials = set()
        for s in self.initials:
            initials |= closures[s]
        return Nfa(self.alphabet, self.num_states, frozenset(trans), frozenset(initials), self.finals)


@dataclass(frozen=True)
class Dfa:
    alphabet: Alphabet
    delta: tuple  # delta[state][letter index] -> state
    initial: int
    finals: frozenset
    canonical: bool = field(default=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "delta", tuple(tuple(row) for row in self.delta))
        object.__setattr__(self, "finals", frozenset(self.finals))
        n, k = len(self.delta), self.alphabet.k
        if n == 0:
            raise PreconditionError("a DFA needs at least one state")
        for row in self.delta:
            if len(row) != k or any(not 0 <= t < n for t in row):
                raise PreconditionError("DFA transition table must be total and in range")
        if not 0 <= self.initial < n or any(not 0 <= q < n for q in self.finals):
            raise PreconditionError("DFA initial/final states out of range")

    @property
    def num_states(self) -> int:
        return len(self.delta)

    def step(self, state: int, letter: str) -> int:
        return self.delta[state][self.alphabet.index[letter]]

    def run(self, word: str, state: Optional[int] = None) -> int:
        q = self.initial if state is None else state
        idx = self.alphabet.index
        for c in word:
            try:
                q = self.delta[q][idx[c]]
            except KeyError:
                raise AlphabetError(f"letter {c!r} not in alphabet {self.alphabet.letters!r}") from None
        return q

    def accepts(self, word: str) -> bool:
        return self.run(word) in self.finals

    def __contains__(self, word: str) -> bool:
        return self.accepts(word)

    def to_nfa(self) -> Nfa:
        letters = self.alphabet.letters
        trans = frozenset((s, letters[i], t) for s, row in enumerate(self.delta) for i, t in enumerate(row))
        return Nfa(self.alphabet, self.num_states, trans, frozenset([self.initial]), self.finals)

    def language_sample(self, maxlen: int) -> list[str]:
        return [w for w in self.alphabet.words(maxlen) if self.accepts(w)]


Automaton = Union[Nfa, Dfa]


# ---------------------------------------------------------------- basic DFAs

def universal(alphabet: Alphabet) -> Dfa:
    return Dfa(alphabet, ((0,) * alphabet.k,), 0, {0}, canonical=True)


def empty(alphabet: Alphabet) -> Dfa:
    return Dfa(alphabet, ((0,) * alphabet.k,), 0, frozenset(), canonical=True)


def word_dfa(u: str, alphabet: Alphabet) -> Dfa:
    """Canonical DFA of ``{u}``."""
    alphabet.check(u)
    n = len(u)
    sink = n + 1
    delta = []
    for i in range(n + 1):
        row = [sink] * alphabet.k
        if i < n:
            row[alphabet.index[u[i]]] = i + 1
        delta.append(row)
    delta.append([sink] * alphabet.k)
    return minimize(Dfa(alphabet, delta, 0, {n}))


def words_dfa(words: Iterable[str], alphabet: Alphabet) -> Dfa:
    """Canonical DFA of a finite set of words (via a trie)."""
    trie: list[dict] = [{}]
    finals = set()
    for w in words:
        alphabet.check(w)
        q = 0
        for c in w:
            if c not in trie[q]:
                trie[q][c] = len(trie)
                trie.append({})
            q = trie[q][c]
        finals.add(q)
    sink = len(trie)
    delta = [[node.get(c, sink) for c in alphabet.letters] for node in trie]
    delta.append([sink] * alphabet.k)
    return minimize(Dfa(alphabet, delta, 0, finals))


def down_word_dfa(u: str, alphabet: Alphabet) -> Dfa:
    """Canonical DFA of the subwords of ``u``: a chain of |u|+1 states plus a sink.

    State ``i`` means the greedy left-most embedding has consumed ``u[:i]``.
    """
    alphabet.check(u)
    n = len(u)
    sink = n + 1
    delta = []
    for i in range(n + 1):
        row = []
        for c in alphabet.letters:
            j = u.find(c, i)
            row.append(sink if j < 0 else j + 1)
        delta.append(row)
    delta.append([sink] * alphabet.k)
    return minimize(Dfa(alphabet, delta, 0, set(range(n + 1))))


def up_word_dfa(u: str, alphabet: Alphabet) -> Dfa:
    """Canonical DFA of the superwords of ``u``."""
    alphabet.check(u)
    n = len(u)
    delta = []
    for i in range(n + 1):
        delta.append([i + 1 if i < n and c == u[i] else i for c in alphabet.letters])
    return minimize(Dfa(alphabet, delta, 0, {n}))


# ------------------------------------------------------ determinize/minimize

def determinize(nfa: Nfa) -> Dfa:
    """Subset construction (complete; the empty subset becomes the sink)."""
    succ = nfa.successors()
    letters = nfa.alphabet.letters
    start = nfa.eps_closure(nfa.initials, succ)
    index = {start: 0}
    subsets = [start]
    delta = []
    i = 0
    while i < len(subsets):
        cur = subsets[i]
        row = []
        for c in letters:
            nxt = set()
            for s in cur:
                nxt |= succ[s].get(c, set())
            nxt = nfa.eps_closure(nxt, succ) if nxt else frozenset()
            if nxt not in index:
                index[nxt] = len(subsets)
                subsets.append(nxt)
            row.append(index[nxt])
        delta.append(row)
        i += 1
    finals = {j for j, sub in enumerate(subsets) if sub & nfa.finals}
    return Dfa(nfa.alphabet, delta, 0, finals)


def _reachable_order(d: Dfa) -> list[int]:
    order = [d.initial]
    seen = {d.initial}
    i = 0
    while i < len(order):
        for t in d.delta[order[i]]:
            if t not in seen:
                seen.add(t)
                order.append(t)
        i += 1
    return order


def minimize(d: Dfa) -> Dfa:
    """Canonical minimal complete DFA (Moore refinement, BFS renumbering)."""
    if d.canonical:
        return d
    order = _reachable_order(d)
    pos = {q: i for i, q in enumerate(order)}
    delta = [[pos[t] for t in d.delta[q]] for q in order]
    n = len(order)
    block = [1 if order[i] in d.finals else 0 for i in range(n)]
    count = len(set(block))
    while True:
        sigs: dict = {}
        new = [sigs.setdefault((block[i], tuple(block[t] for t in delta[i])), len(sigs)) for i in range(n)]
        if len(sigs) == count:
            break
        block, count = new, len(sigs)
    # renumber blocks breadth-first from the initial block
    rename = {block[0]: 0}
    queue = [0]
    rep = {block[0]: 0}
    qi = 0
    while qi < len(queue):
        i = queue[qi]
        qi += 1
        for t in delta[i]:
            b = block[t]
            if b not in rename:
                rename[b] = len(rename)
                rep[b] = t
                queue.append(t)
    new_delta = [None] * len(rename)
    finals = set()
    for b, i in rep.items():
        new_delta[rename[b]] = [rename[block[t]] for t in delta[i]]
        if order[i] in d.finals:
            finals.add(rename[b])
    return Dfa(d.alphabet, new_delta, 0, finals, canonical=True)


def to_dfa(a: Automaton) -> Dfa:
    """Canonical DFA of an NFA or DFA."""
    if isinstance(a, Dfa):
        return minimize(a)
    return minimize(determinize(a))


def is_canonical(d: Dfa) -> bool:
    return d == minimize(Dfa(d.alphabet, d.delta, d.initial, d.finals))


# ------------------------------------------------------------ boolean ops

def complement(d: Automaton) -> Dfa:
    d = to_dfa(d)
    finals = frozenset(range(d.num_states)) - d.finals
    return Dfa(d.alphabet, d.delta, d.initial, finals, canonical=True)


def _product(d1: Dfa, d2: Dfa, accept) -> Dfa:
    same_alphabet(d1.alphabet, d2.alphabet)
    start = (d1.initial, d2.initial)
    index = {start: 0}
    pairs = [start]
    delta = []
    i = 0
    k = d1.alphabet.k
    while i < len(pairs):
        p, q = pairs[i]
        r1, r2 = d1.delta[p], d2.delta[q]
        row = []
        for j in range(k):
            nxt = (r1[j], r2[j])
            if nxt not in index:
                index[nxt] = len(pairs)
                pairs.append(nxt)
            row.append(index[nxt])
        delta.append(row)
        i += 1
    finals = {j for j, (p, q) in enumerate(pairs) if accept(p in d1.finals, q in d2.finals)}
    return minimize(Dfa(d1.alphabet, delta, 0, finals))


def intersect(d1: Automaton, d2: Automaton) -> Dfa:
    return _product(to_dfa(d1), to_dfa(d2), lambda x, y: x and y)


def union(d1: Automaton, d2: Automaton) -> Dfa:
    return _product(to_dfa(d1), to_dfa(d2), lambda x, y: x or y)


def difference(d1: Automaton, d2: Automaton) -> Dfa:
    return _product(to_dfa(d1), to_dfa(d2), lambda x, y: x and not y)


def symmetric_difference(d1: Automaton, d2: Automaton) -> Dfa:
    return _product(to_dfa(d1), to_dfa(d2), lambda x, y: x != y)


def union_all(ds: Iterable[Automaton], alphabet: Alphabet) -> Dfa:
    out = empty(alphabet)
    for d in ds:
        out = union(out, d)
    return out


def intersect_all(ds: Iterable[Automaton], alphabet: Alphabet) -> Dfa:
    out = universal(alphabet)
    for d in ds:
        out = intersect(out, d)
    return out


# ------------------------------------------------------- decision helpers

def _shortest_to(d: Dfa, targets: frozenset | set) -> Optional[str]:
    if d.initial in targets:
        return ""
    parent = {d.initial: None}
    queue = deque([d.initial])
    letters = d.alphabet.letters
    while queue:
        q = queue.popleft()
        for i, t in enumerate(d.delta[q]):
            if t in parent:
                continue
            parent[t] = (q, letters[i])
            if t in targets:
                out = []
                while parent[t] is not None:
                    t, c = parent[t]
                    out.append(c)
                return "".join(reversed(out))
            queue.append(t)
    return None


def shortest_word(d: Automaton) -> Optional[str]:
    """A shortest accepted word (shortlex-least among shortest), or None."""
    d = d if isinstance(d, Dfa) else determinize(d)
    return _shortest_to(d, d.finals)


def shortest_separator(d1: Automaton, d2: Automaton) -> Optional[str]:
    """A shortest word accepted by exactly one of the automata, or None."""
    a, b = (x if isinstance(x, Dfa) else determinize(x) for x in (d1, d2))
    same_alphabet(a.alphabet, b.alphabet)
    # plain product BFS, no minimization needed
    start = (a.initial, b.initial)
    if (start[0] in a.finals) != (start[1] in b.finals):
        return ""
    parent = {start: None}
    queue = deque([start])
    letters = a.alphabet.letters
    while queue:
        p, q = queue.popleft()
        for i in range(len(letters)):
            nxt = (a.delta[p][i], b.delta[q][i])
            if nxt in parent:
                continue
            parent[nxt] = ((p, q), letters[i])
            if (nxt[0] in a.finals) != (nxt[1] in b.finals):
                out = []
                cur = nxt
                while parent[cur] is not None:
                    cur, c = parent[cur]
                    out.append(c)
                return "".join(reversed(out))
            queue.append(nxt)
    return None


def is_empty(d: Automaton) -> bool:
    return shortest_word(d) is None


def is_universal(d: Automaton) -> bool:
    return is_empty(complement(d))


def includes(d1: Automaton, d2: Automaton) -> bool:
    """True iff L(d2) is a subset of L(d1)."""
    return is_empty(difference(d2, d1))


def equivalent(d1: Automaton, d2: Automaton) -> bool:
    return to_dfa(d1) == to_dfa(d2)


def productive_states(d: Dfa) -> frozenset:
    """States from which some final state is reachable."""
    preds: list[set] = [set() for _ in range(d.num_states)]
    for s, row in enumerate(d.delta):
        for t in row:
            preds[t].add(s)
    seen = set(d.finals)
    stack = list(seen)
    while stack:
        t = stack.pop()
        for s in preds[t]:
            if s not in seen:
                seen.add(s)
                stack.append(s)
    return frozenset(seen)


def reachable_states(d: Dfa) -> frozenset:
    return frozenset(_reachable_order(d))


def is_finite(d: Automaton) -> bool:
    """True iff the language is finite (no cycle through a useful state)."""
    d = to_dfa(d)
    useful = productive_states(d) & reachable_states(d)
    color = {}
    for root in useful:
        if root in color:
            continue
        stack = [(root, iter(d.delta[root]))]
        color[root] = 1
        while stack:
            q, it = stack[-1]
            for t in it:
                if t not in useful:
                    continue
                c = color.get(t, 0)
                if c == 1:
                    return False
                if c == 0:
                    color[t] = 1
                    stack.append((t, iter(d.delta[t])))
                    break
            else:
                color[q] = 2
                stack.pop()
    return True


def finite_language(d: Automaton, cap: int = 100_000) -> frozenset:
    """Explicit word set of a finite language."""
    d = to_dfa(d)
    if not is_finite(d):
        raise PreconditionError("language is infinite")
    useful = productive_states(d)
    out = set()
    stack = [(d.initial, "")]
    letters = d.alphabet.letters
    while stack:
        q, w = stack.pop()
        if q not in useful:
            continue
        if q in d.finals:
            out.add(w)
            if len(out) > cap:
                raise CapExceeded(f"finite language has more than {cap} words", cap=cap, reached=len(out))
        for i, t in enumerate(d.delta[q]):
            if t in useful:
                stack.append((t, w + letters[i]))
    return frozenset(out)


def nfa_depth(a: Automaton, cap: int = DEFAULT_DEPTH_CAP) -> int:
    """Maximum number of transitions on a simple path from an initial to a final state."""
    nfa = a.to_nfa() if isinstance(a, Dfa) else a
    if nfa.num_states > cap:
        raise CapExceeded(f"nfa_depth: {nfa.num_states} states exceed cap {cap}",
                          cap=cap, reached=nfa.num_states)
    adj = [sorted({t for ts in m.values() for t in ts}) for m in nfa.successors()]
    best = -1

    def dfs(q, visited, length):
        nonlocal best
        if q in nfa.finals and length > best:
            best = length
        for t in adj[q]:
            if t not in visited:
                visited.add(t)
                dfs(t, visited, length + 1)
                visited.discard(t)

    for q0 in sorted(nfa.initials):
        dfs(q0, {q0}, 0)
    if best < 0:
        raise PreconditionError("no final state is reachable")
    return best


def trim(d: Dfa) -> Nfa:
    """NFA on the useful states of ``d`` (no sink)."""
    useful = productive_states(d) & reachable_states(d)
    if d.initial not in useful:
        return Nfa(d.alphabet, 1, frozenset(), frozenset([0]), frozenset())
    ids = {q: i for i, q in enumerate(sorted(useful, key=lambda q: (q != d.initial, q)))}
    letters = d.alphabet.letters
    trans = frozenset((ids[s], letters[i], ids[t]) for s in useful
                      for i, t in enumerate(d.delta[s]) if t in useful)
    return Nfa(d.alphabet, len(ids), trans, frozenset([ids[d.initial]]),
               frozenset(ids[q] for q in d.finals if q in useful))


def dfa_from_predicate(alphabet: Alphabet, maxlen: int, pred) -> Dfa:
    """Canonical DFA of ``{w : |w| <= maxlen and pred(w)}`` (test helper)."""
    return words_dfa((w for w in alphabet.words(maxlen) if pred(w)), alphabet)


def iter_accepted(d: Automaton, maxlen: int) -> Iterator[str]:
    for w in d.alphabet.words(maxlen):
        if d.accepts(w):
            yield w
