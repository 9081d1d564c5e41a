"""Regular expressions: ``+`` union, juxtaposition, postfix ``*``, parentheses,
``_`` or ``ε`` for the empty word and ``∅`` for the empty language.
Whitespace is ignored.
"""

from __future__ import annotations

from .automata import Dfa, Nfa, to_dfa
from .errors import ParseError
from .words import Alphabet

EPS_TOKENS = {"_", "ε"}


class _Builder:
    def __init__(self):
        self.n = 0
        self.trans = set()

    def state(self):
        self.n += 1
        return self.n - 1


class _Parser:
    def __init__(self, text: str, alphabet: Alphabet):
        self.s = [c for c in text if not c.isspace()]
        self.i = 0
        self.alphabet = alphabet
        self.b = _Builder()

    def peek(self):
        return self.s[self.i] if self.i < len(self.s) else None

    def fail(self, msg):
        raise ParseError(f"regex: {msg} at position {self.i} in {''.join(self.s)!r}")

    # each fragment is a pair (start, end) with a single entry and exit state
    def union(self):
        frags = [self.concat()]
        while self.peek() == "+":
            self.i += 1
            frags.append(self.concat())
        if len(frags) == 1:
            return frags[0]
        s, e = self.b.state(), self.b.state()
        for fs, fe in frags:
            self.b.trans.add((s, None, fs))
            self.b.trans.add((fe, None, e))
        return s, e

    def concat(self):
        frags = []
        while self.peek() is not None and self.peek() not in "+)":
            frags.append(self.star())
        if not frags:
            s = self.b.state()
            return s, s
        for (_, e1), (s2, _) in zip(frags, frags[1:]):
            self.b.trans.add((e1, None, s2))
        return frags[0][0], frags[-1][1]

    def star(self):
        frag = self.atom()
        while self.peek() == "*":
            self.i += 1
            s, e = self.b.state(), self.b.state()
            fs, fe = frag
            self.b.trans |= {(s, None, fs), (fe, None, e), (fe, None, fs), (s, None, e)}
            frag = (s, e)
        return frag

    def atom(self):
        c = self.peek()
        if c is None:
            self.fail("unexpected end of input")
        if c == "(":
            self.i += 1
            frag = self.union()
            if self.peek() != ")":
                self.fail("missing ')'")
            self.i += 1
            return frag
        self.i += 1
        if c in EPS_TOKENS:
            s = self.b.state()
            return s, s
        if c == "∅":
            return self.b.state(), self.b.state()
        if c in self.alphabet:
            s, e = self.b.state(), self.b.state()
            self.b.trans.add((s, c, e))
            return s, e
        self.i -= 1
        self.fail(f"unexpected character {c!r}")


def regex_to_nfa(text: str, alphabet: Alphabet) -> Nfa:
    p = _Parser(text, alphabet)
    s, e = p.union()
    if p.peek() is not None:
        p.fail("unbalanced ')'")
    return Nfa(alphabet, p.b.n, frozenset(p.b.trans), frozenset([s]), frozenset([e]))


def regex_to_dfa(text: str, alphabet: Alphabet) -> Dfa:
    return to_dfa(regex_to_nfa(text, alphabet))
