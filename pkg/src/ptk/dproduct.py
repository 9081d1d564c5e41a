"""D-products: concatenations of star factors ``B*`` and letter factors ``a``.

Text form: star factors bracketed, letter factors bare, whitespace-separated,
e.g. ``[ab]* a [b]* c``; ``_`` is the empty product.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .automata import Automaton, Dfa, Nfa, includes, nfa_depth, to_dfa, trim
from .closures import down_closure
from .errors import AlphabetError, CapExceeded, ParseError, PreconditionError, VerificationError
from .simon import small_subword_positions
from .words import Alphabet


@dataclass(frozen=True, order=True)
class Star:
    letters: str  # sorted in alphabet order, nonempty

    def __str__(self):
        return f"[{self.letters}]*"


@dataclass(frozen=True, order=True)
class Letter:
    letter: str

    def __str__(self):
        return self.letter


Factor = Union[Star, Letter]


@dataclass(frozen=True)
class DProduct:
    alphabet: Alphabet
    factors: tuple

    def __post_init__(self):
        for f in self.factors:
            if isinstance(f, Star):
                if not f.letters:
                    raise PreconditionError("star factor needs a nonempty subalphabet")
                self.alphabet.check(f.letters)
            elif isinstance(f, Letter):
                self.alphabet.check(f.letter)
            else:
                raise TypeError(f"not a factor: {f!r}")

    def __len__(self):
        return len(self.factors)

    def __str__(self):
        return " ".join(str(f) for f in self.factors) or "_"

    @property
    def num_stars(self) -> int:
        return sum(isinstance(f, Star) for f in self.factors)

    def sort_key(self):
        return (len(self.factors), str(self))


def star(letters, alphabet: Alphabet) -> Star:
    s = set(letters)
    return Star("".join(c for c in alphabet.letters if c in s))


def parse_dproduct(text: str, alphabet: Alphabet) -> DProduct:
    factors = []
    for tok in text.split():
        if tok == "_":
            continue
        if tok.startswith("["):
            if not tok.endswith("]*") or len(tok) < 4:
                raise ParseError(f"bad star factor {tok!r}")
            body = tok[1:-2]
            try:
                alphabet.check(body)
            except AlphabetError as e:
                raise ParseError(str(e)) from None
            factors.append(star(body, alphabet))
        elif len(tok) == 1 and tok in alphabet:
            factors.append(Letter(tok))
        else:
            raise ParseError(f"bad factor {tok!r}")
    return DProduct(alphabet, tuple(factors))


def dproduct_to_nfa(p: DProduct) -> Nfa:
    """Chain automaton with one state per factor boundary."""
    trans = set()
    for i, f in enumerate(p.factors):
        if isinstance(f, Star):
            trans.add((i, None, i + 1))
            trans |= {(i + 1, c, i + 1) for c in f.letters}
        else:
            trans.add((i, f.letter, i + 1))
    ell = len(p.factors)
    return Nfa(p.alphabet, ell + 1, frozenset(trans), frozenset([0]), frozenset([ell]))


def dproduct_member(u: str, p: DProduct) -> bool:
    p.alphabet.check(u)
    # greedy: a star absorbs letters as long as the rest can still match
    return dproduct_to_nfa(p).accepts(u)


def down_closure_dproduct(p: DProduct) -> Dfa:
    return down_closure(dproduct_to_nfa(p))


def simplify(factors: list, alphabet: Alphabet) -> list:
    """Merge adjacent star factors B* C* with B ⊆ C (or C ⊆ B) until none remain."""
    out = list(factors)
    changed = True
    while changed:
        changed = False
        for i in range(len(out) - 1):
            a, b = out[i], out[i + 1]
            if isinstance(a, Star) and isinstance(b, Star):
                sa, sb = set(a.letters), set(b.letters)
                if sa <= sb or sb <= sa:
                    out[i:i + 2] = [a if sb <= sa else b]
                    changed = True
                    break
    return out


# ------------------------------------------------------------------ covers

def _scc_letters(nfa: Nfa) -> list[str]:
    """For each state, the letters on edges inside its strongly connected component."""
    n = nfa.num_states
    adj = [[] for _ in range(n)]
    for s, c, t in nfa.transitions:
        adj[s].append(t)
    # Tarjan, iterative
    index = {}
    low = {}
    comp = [-1] * n
    stack, on = [], set()
    counter = 0
    ncomp = 0
    for root in range(n):
        if root in index:
            continue
        work = [(root, 0)]
        while work:
            v, i = work.pop()
            if i == 0:
                index[v] = low[v] = counter
                counter += 1
                stack.append(v)
                on.add(v)
            if i < len(adj[v]):
                work.append((v, i + 1))
                w = adj[v][i]
                if w not in index:
                    work.append((w, 0))
                elif w in on:
                    low[v] = min(low[v], index[w])
                continue
            if low[v] == index[v]:
                while True:
                    w = stack.pop()
                    on.discard(w)
                    comp[w] = ncomp
                    if w == v:
                        break
                ncomp += 1
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
    letters = [set() for _ in range(ncomp)]
    for s, c, t in nfa.transitions:
        if comp[s] == comp[t]:
            letters[comp[s]].add(c)
    return [letters[comp[q]] for q in range(n)]


def cover_nfa(a: Automaton) -> Nfa:
    """The ε-free automaton on which covers are computed (useful states only)."""
    if isinstance(a, Dfa):
        return trim(a)
    nfa = a.remove_epsilon()
    # drop useless states
    succ = nfa.successors()
    fwd = set(nfa.initials)
    stack = list(fwd)
    while stack:
        q = stack.pop()
        for ts in succ[q].values():
            for t in ts:
                if t not in fwd:
                    fwd.add(t)
                    stack.append(t)
    bwd = set(nfa.finals)
    stack = list(bwd)
    while stack:
        t = stack.pop()
        for s, c, t2 in nfa.transitions:
            if t2 == t and s not in bwd:
                bwd.add(s)
                stack.append(s)
    useful = sorted(fwd & bwd)
    ids = {q: i for i, q in enumerate(useful)}
    trans = frozenset((ids[s], c, ids[t]) for s, c, t in nfa.transitions if s in ids and t in ids)
    return Nfa(nfa.alphabet, max(len(ids), 1), trans,
               frozenset(ids[q] for q in nfa.initials if q in ids),
               frozenset(ids[q] for q in nfa.finals if q in ids))


def dproduct_cover_nfa(a: Automaton, cap: int = 100_000) -> list[DProduct]:
    """D-products P_1..P_r with L ⊆ ∪P_i ⊆ ↓L, one per simple accepting path.

    Along a simple path q_0 a_1 q_1 ... a_p q_p each state contributes the star
    of the letters readable on cycles through it (its strongly connected
    component); every accepting run is the simple path with such cycles
    inserted. Each product has length at most 2p + 1.
    """
    nfa = cover_nfa(a)
    alphabet = nfa.alphabet
    loops = _scc_letters(nfa)
    succ = nfa.successors()
    adj = [sorted((c, t) for c, ts in m.items() for t in ts) for m in succ]

    def star_of(q):
        return [star(loops[q], alphabet)] if loops[q] else []

    out = set()
    count = 0
    stack = [(q, tuple(star_of(q)), frozenset([q])) for q in sorted(nfa.initials)]
    while stack:
        q, factors, seen = stack.pop()
        count += 1
        if count > cap:
            raise CapExceeded(f"dproduct_cover_nfa: more than {cap} simple paths", cap=cap, reached=count)
        if q in nfa.finals:
            out.add(DProduct(alphabet, tuple(simplify(list(factors), alphabet))))
        for c, t in adj[q]:
            if t not in seen:
                stack.append((t, factors + (Letter(c),) + tuple(star_of(t)), seen | {t}))
    return sorted(out, key=DProduct.sort_key)


def cover_depth(a: Automaton, cap: int = 14) -> int:
    """Depth of the automaton the cover is computed on."""
    return nfa_depth(cover_nfa(a), cap=cap)


# ------------------------------------------------------- product for a word

def dproduct_for_word(u: str, d: Automaton, n: int, check_pt: bool = False) -> DProduct:
    """A D-product P with u ∈ P ⊆ L, for L n-PT and u ∈ L.

    u is split around a small n-equivalent subword; each other letter becomes
    a star, widened by the letters occurring both before and after it in the
    same segment; adjacent comparable stars are then merged. The result is
    checked by automata inclusion before it is returned.
    """
    d = to_dfa(d)
    alphabet = d.alphabet
    alphabet.check(u)
    if not d.accepts(u):
        raise PreconditionError(f"{u!r} is not in the language")
    if check_pt:
        from .simon import is_n_pt
        if not is_n_pt(d, n):
            raise PreconditionError(f"language is not {n}-PT")
    keep = small_subword_positions(u, n)
    segments = []
    prev = -1
    for pos in keep + [len(u)]:
        segments.append(u[prev + 1:pos])
        prev = pos
    factors: list = []
    for i, seg in enumerate(segments):
        if i > 0:
            factors.append(Letter(u[keep[i - 1]]))
        stars = []
        for j, b in enumerate(seg):
            extra = set(seg[:j]) & set(seg[j + 1:])
            stars.append(star({b} | extra, alphabet))
        factors.extend(simplify(stars, alphabet))
    p = DProduct(alphabet, tuple(simplify(factors, alphabet)))
    nfa = dproduct_to_nfa(p)
    if not nfa.accepts(u):
        raise VerificationError(f"{u!r} not in constructed product {p}")
    if not includes(d, nfa):
        raise VerificationError(f"constructed product {p} is not included in the language")
    return p
