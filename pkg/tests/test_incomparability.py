import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ptk import (Alphabet, I_of_pt, enumerate_class, in_C, in_I, incomparability_singleton,
                 is_incomparable, is_n_pt, layer_report, pt_height_dfa, pt_height_word,
                 regex_to_dfa, sim_equiv, two_witness)
from ptk.automata import (complement, down_word_dfa, empty, equivalent, up_word_dfa,
                          word_dfa)
from ptk.errors import PreconditionError
from ptk.incomparability import class_comparables
from ptk.simon import class_automaton
from ptk.words import f, is_subword

import oracles
from test_closures import random_pt

A1 = Alphabet("a")
AB = Alphabet("ab")
ABC = Alphabet("abc")
seeds = st.integers(0, 10**6)


def brute_I(member, letters, maxlen, witness_len):
    """Words up to maxlen incomparable with some member of length ≤ witness_len."""
    members = [w for w in oracles.all_words(letters, witness_len) if member(w)]
    return {u for u in oracles.all_words(letters, maxlen)
            if any(oracles.rel_holds("#", u, m) for m in members)}


def test_is_incomparable_examples():
    assert is_incomparable("ab", "ba")
    assert not is_incomparable("ab", "ab")
    assert not is_incomparable("a", "ab")


class TestSingleton:
    def test_examples(self):
        d = incomparability_singleton("ab", AB)
        expect = {w for w in oracles.all_words("ab", 6) if len(w) >= 2 and "ab" not in w}
        assert {w for w in oracles.all_words("ab", 6) if d.accepts(w)} == expect
        assert equivalent(incomparability_singleton("", AB), empty(AB))
        assert equivalent(incomparability_singleton("aaa", A1), empty(A1))

    @settings(max_examples=40)
    @given(st.text(alphabet="abc", max_size=4))
    def test_matches_brute_force(self, u):
        d = incomparability_singleton(u, ABC)
        for w in oracles.all_words("abc", 5):
            assert d.accepts(w) == oracles.rel_holds("#", u, w)

    @pytest.mark.parametrize("u", ["a", "b", "ab", "aab", "abab", "bbba"])
    def test_height(self, u):
        assert pt_height_dfa(incomparability_singleton(u, AB)) == len(u)


class TestPointwise:
    def test_examples(self):
        assert in_I("ba", word_dfa("ab", AB))
        assert not in_I("ab", empty(AB))
        assert not in_I("a", up_word_dfa("ab", AB))

    @settings(max_examples=40, deadline=None)
    @given(seeds)
    def test_matches_brute_force(self, seed):
        rng = random.Random(seed)
        d = random_pt(rng, 2)
        for u in oracles.all_words("ab", 4):
            got = in_I(u, d)
            assert got != in_C(u, d)
            expect = any(oracles.rel_holds("#", u, w)
                         for w in oracles.all_words("ab", 7) if d.accepts(w))
            if expect:
                assert got
            if got:
                # witnesses may be longer than the first window
                assert any(oracles.rel_holds("#", u, w)
                           for w in oracles.all_words("ab", 9) if d.accepts(w))

    def test_counterexample_language(self):
        L = regex_to_dfa("(abc)*(_+a+ab)", ABC)
        for u in oracles.all_words("abc", 5):
            assert in_I(u, L) == (not L.accepts(u))


class TestIofPT:
    @pytest.mark.parametrize("method", ["classes", "flat"])
    def test_examples(self, method):
        up_ab = up_word_dfa("ab", AB)
        got = I_of_pt(up_ab, 2, method=method)
        assert equivalent(got, complement(down_word_dfa("ab", AB)))
        got = I_of_pt(word_dfa("ab", AB), 2, method=method)
        assert equivalent(got, incomparability_singleton("ab", AB))
        assert equivalent(I_of_pt(empty(AB), 0, method=method), empty(AB))

    def test_rejects_wrong_level(self):
        with pytest.raises(PreconditionError):
            I_of_pt(regex_to_dfa("aa*b*", AB), 1)

    @settings(max_examples=25, deadline=None)
    @given(seeds, st.integers(1, 2))
    def test_random_pt(self, seed, n):
        d = random_pt(random.Random(seed), n)
        got = I_of_pt(d, n)
        expect = brute_I(d.accepts, "ab", 5, 8)
        assert {w for w in oracles.all_words("ab", 5) if got.accepts(w)} == expect
        assert is_n_pt(got, f(2, n) + 1)

    @pytest.mark.parametrize("seed", range(4))
    def test_methods_agree(self, seed):
        d = random_pt(random.Random(seed), 1)
        assert equivalent(I_of_pt(d, 1, "classes"), I_of_pt(d, 1, "flat"))

    def test_words_up_to_three(self):
        for w in oracles.all_words("ab", 3):
            h = pt_height_word(w, AB)
            assert equivalent(I_of_pt(word_dfa(w, AB), h), incomparability_singleton(w, AB))


class TestClassComparables:
    @pytest.mark.parametrize("n", [1, 2])
    def test_matches_brute_force(self, n):
        ca = class_automaton(AB, n)
        for p, rep in enumerate(ca.representatives):
            T = enumerate_class(rep, n, 7, AB)
            got = class_comparables(ca, p)
            for u in oracles.all_words("ab", 4):
                expect = all(oracles.sub(u, t) or oracles.sub(t, u) for t in T)
                assert got.accepts(u) == expect

    @pytest.mark.parametrize("n", [1, 2])
    def test_non_chains_exclude_long_words(self, n):
        ca = class_automaton(AB, n)
        m = f(2, n)
        for p, rep in enumerate(ca.representatives):
            T = sorted(enumerate_class(rep, n, 7, AB), key=len)
            chain = all(is_subword(a, b) for a, b in zip(T, T[1:]))
            if chain:
                continue
            T_dfa = ca.to_dfa([p])
            for u in oracles.all_words("ab", 7, m + 1):
                assert not in_C(u, T_dfa)


class TestTwoWitness:
    def test_example(self):
        assert two_witness("aba", "ab", "ba", 1) == "baa"

    def test_preconditions(self):
        with pytest.raises(PreconditionError):
            two_witness("aba", "ab", "ab", 1)
        with pytest.raises(PreconditionError):
            two_witness("aba", "a", "ba", 1)
        with pytest.raises(PreconditionError):
            two_witness("abb", "ab", "bb", 2)

    @settings(max_examples=80)
    @given(st.text(alphabet="abc", min_size=2, max_size=9), st.integers(0, 3), seeds)
    def test_random(self, w, n, seed):
        dels = sorted({w[:i] + w[i + 1:] for i in range(len(w))})
        good = [x for x in dels if sim_equiv(x, w, n)]
        if len(good) < 2:
            return
        rng = random.Random(seed)
        u, v = rng.sample(good, 2)
        out = two_witness(w, u, v, n)
        assert len(out) == len(w) and out != w and oracles.sim(out, w, n)


class TestLayers:
    def test_examples(self):
        r = layer_report("", 1, 3, AB)
        assert r.tags == ("singular", "empty", "empty", "empty")
        assert layer_report("ab", 1, 2, AB).tag(2) == "populous"
        r = layer_report("a", 2, 4, A1)
        assert r.tags == ("empty", "singular", "empty", "empty", "empty")

    @settings(max_examples=40, deadline=None)
    @given(st.text(alphabet="ab", max_size=5), st.integers(1, 3))
    def test_counts_and_propagation(self, u, n):
        r = layer_report(u, n, 8, AB)
        T = enumerate_class(u, n, 8, AB)
        assert list(r.counts) == [sum(1 for w in T if len(w) == i) for i in range(9)]
        tags = r.tags
        for p in range(8):
            if tags[p] == "populous":
                assert tags[p + 1] == "populous"
        p0 = min(i for i, c in enumerate(r.counts) if c)
        if any(t == "populous" for t in tags[p0 + 1:]) and p0 + 1 <= 8:
            assert tags[p0 + 1] == "populous"
