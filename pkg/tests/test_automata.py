import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ptk import Alphabet, parse_cfg, regex_to_dfa, regex_to_nfa
from ptk.automata import (Dfa, Nfa, complement, determinize, difference, down_word_dfa, empty,
                          equivalent, finite_language, includes, intersect, is_empty, is_finite,
                          is_universal, iter_accepted, minimize, nfa_depth, shortest_separator,
                          shortest_word, to_dfa, trim, union, universal, up_word_dfa, word_dfa,
                          words_dfa)
from ptk.errors import AlphabetError, CapExceeded, ParseError, PreconditionError
from ptk.textio import parse_automaton, to_dot, to_text

from oracles import all_words, sub

AB = Alphabet("ab")


def random_nfa(rng, alphabet, max_states=5, eps=True):
    n = rng.randint(1, max_states)
    labels = list(alphabet.letters) + ([None] if eps else [])
    trans = frozenset((rng.randrange(n), rng.choice(labels), rng.randrange(n))
                      for _ in range(rng.randint(0, 3 * n)))
    initials = frozenset(rng.sample(range(n), rng.randint(1, min(2, n))))
    finals = frozenset(q for q in range(n) if rng.random() < 0.4)
    return Nfa(alphabet, n, trans, initials, finals)


seeds = st.integers(0, 10**6)


class TestBasics:
    def test_word_automata(self):
        for u in ["", "a", "abb"]:
            for w in all_words("ab", 5):
                assert word_dfa(u, AB).accepts(w) == (w == u)
                assert up_word_dfa(u, AB).accepts(w) == sub(u, w)
                assert down_word_dfa(u, AB).accepts(w) == sub(w, u)

    def test_down_word_dfa_states(self):
        assert minimize(down_word_dfa("aba", AB)).num_states == 5

    def test_words_dfa(self):
        d = words_dfa({"ab", "b", ""}, AB)
        assert {w for w in all_words("ab", 4) if d.accepts(w)} == {"ab", "b", ""}

    def test_universal_and_empty(self):
        assert is_universal(universal(AB))
        assert is_empty(empty(AB))
        assert not is_empty(universal(AB))

    def test_foreign_letter_rejected(self):
        with pytest.raises(AlphabetError):
            word_dfa("a", AB).accepts("c")


class TestMinimize:
    @settings(max_examples=60)
    @given(seeds)
    def test_language_preserved(self, seed):
        nfa = random_nfa(random.Random(seed), AB)
        d = to_dfa(nfa)
        for w in all_words("ab", 6):
            assert d.accepts(w) == nfa.accepts(w)

    @settings(max_examples=60)
    @given(seeds)
    def test_canonical_is_minimal_and_unique(self, seed):
        rng = random.Random(seed)
        nfa = random_nfa(rng, AB)
        d1 = to_dfa(nfa)
        # an equivalent DFA reached by a different route
        d2 = minimize(intersect(determinize(nfa), universal(AB)))
        assert d1 == d2
        # no two states are equivalent: pairwise separable
        for p in range(d1.num_states):
            for q in range(p + 1, d1.num_states):
                a = Dfa(d1.alphabet, d1.delta, p, d1.finals)
                b = Dfa(d1.alphabet, d1.delta, q, d1.finals)
                assert shortest_separator(a, b) is not None


class TestBoolean:
    @settings(max_examples=40)
    @given(seeds)
    def test_ops(self, seed):
        rng = random.Random(seed)
        a, b = random_nfa(rng, AB), random_nfa(rng, AB)
        i, u, d, c = intersect(a, b), union(a, b), difference(a, b), complement(a)
        for w in all_words("ab", 5):
            x, y = a.accepts(w), b.accepts(w)
            assert i.accepts(w) == (x and y)
            assert u.accepts(w) == (x or y)
            assert d.accepts(w) == (x and not y)
            assert c.accepts(w) == (not x)

    @settings(max_examples=40)
    @given(seeds)
    def test_separator_and_inclusion(self, seed):
        rng = random.Random(seed)
        a, b = random_nfa(rng, AB), random_nfa(rng, AB)
        s = shortest_separator(a, b)
        if s is None:
            assert equivalent(a, b)
        else:
            assert a.accepts(s) != b.accepts(s)
            shorter = [w for w in all_words("ab", len(s) - 1) if a.accepts(w) != b.accepts(w)]
            assert not shorter
        assert includes(union(a, b), a)
        assert includes(a, intersect(a, b))

    def test_shortest_word(self):
        assert shortest_word(regex_to_dfa("aab* + ba", AB)) == "aa"
        assert shortest_word(empty(AB)) is None


class TestFiniteness:
    def test_examples(self):
        assert is_finite(words_dfa({"ab", "a"}, AB))
        assert not is_finite(regex_to_dfa("ab*", AB))
        assert finite_language(down_word_dfa("ab", AB)) == {"", "a", "b", "ab"}

    def test_finite_language_rejects_infinite(self):
        with pytest.raises(PreconditionError):
            finite_language(universal(AB))

    def test_iter_accepted(self):
        got = list(iter_accepted(regex_to_dfa("a*", AB), 3))
        assert got == ["", "a", "aa", "aaa"]


class TestDepth:
    def test_examples(self):
        # a+b*: canonical DFA has 4 states and depth 2
        d = regex_to_dfa("aa*b*", AB)
        assert d.num_states == 4
        assert nfa_depth(d) == 2
        assert nfa_depth(word_dfa("abab", AB)) == 4

    def test_cap(self):
        with pytest.raises(CapExceeded):
            nfa_depth(word_dfa("a" * 20, AB), cap=10)

    def test_no_final(self):
        with pytest.raises(PreconditionError):
            nfa_depth(empty(AB))

    def test_trim(self):
        t = trim(regex_to_dfa("ab", AB))
        assert t.num_states == 3


class TestRegex:
    @pytest.mark.parametrize("text,members,non", [
        ("a(a+b)*", ["a", "ab", "abba"], ["", "b", "ba"]),
        ("(ab)*+(ba)*", ["abab", "baba", ""], ["aab", "abba"]),
        ("a(a)*(b)*", ["ab", "a", "aabb"], ["ba", ""]),
        ("(aa)*", ["", "aa", "aaaa"], ["a", "aaa", "b"]),
        ("_ + ab", ["", "ab"], ["a", "abab"]),
        ("ε", [""], ["a"]),
        ("∅", [], ["", "a"]),
        ("a b  *", ["a", "abbb"], ["b"]),
    ])
    def test_membership(self, text, members, non):
        n, d = regex_to_nfa(text, AB), regex_to_dfa(text, AB)
        for w in members:
            assert n.accepts(w) and d.accepts(w)
        for w in non:
            assert not n.accepts(w) and not d.accepts(w)

    def test_empty_operand_is_epsilon(self):
        d = regex_to_dfa("a+", AB)
        assert d.accepts("") and d.accepts("a") and not d.accepts("aa")

    @pytest.mark.parametrize("bad", ["(a", "*a", "c", "a)"])
    def test_errors(self, bad):
        with pytest.raises(ParseError):
            regex_to_nfa(bad, AB)


class TestTextFormat:
    @settings(max_examples=40)
    @given(seeds)
    def test_round_trip(self, seed):
        nfa = random_nfa(random.Random(seed), AB)
        back = parse_automaton(to_text(nfa))
        assert equivalent(back, nfa)
        d = to_dfa(nfa)
        assert to_dfa(parse_automaton(to_text(d))) == d

    def test_parse_example(self):
        text = """
        alphabet: ab
        states: 2
        initial: 0
        final: 1
        trans: 0 a 1
        trans: 1 b 1
        trans: 1 eps 0
        """
        a = parse_automaton(text)
        assert a.accepts("ab") and a.accepts("aba") and not a.accepts("b")

    @pytest.mark.parametrize("text", [
        "states: 2\ninitial: 0\nfinal: 1\n",
        "alphabet: ab\nstates: 1\ninitial: 3\nfinal: 0\n",
        "alphabet: ab\nstates: 1\ninitial: 0\nfinal: 0\ntrans: 0 c 0\n",
        "alphabet: ab\nstates: x\ninitial: 0\nfinal: 0\n",
    ])
    def test_parse_errors(self, text):
        with pytest.raises(ParseError):
            parse_automaton(text)

    def test_dot(self):
        out = to_dot(regex_to_dfa("ab", AB))
        assert out.startswith("digraph")


class TestCfg:
    def test_parse(self):
        g = parse_cfg("S -> a S b | ab | _", AB)
        assert g.start == "S"
        assert len(g.rules("S")) == 3

    @pytest.mark.parametrize("text", ["", "S a", "S -> a T"])
    def test_errors(self, text):
        with pytest.raises(ParseError):
            parse_cfg(text, AB)
