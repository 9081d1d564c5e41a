import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ptk import (Alphabet, Relation, compare, distinct_subwords, f, f_upper, generate_Pk_Nk,
                 generate_Uk, is_incomparable, is_subword, rich_factorization, richness,
                 shuffle_with_alphabet)
from ptk.errors import AlphabetError, CapExceeded

from oracles import all_words, sub, subwords

AB = Alphabet("ab")
ABC = Alphabet("abc")

words_ab = st.text(alphabet="ab", max_size=8)
words_abc = st.text(alphabet="abc", max_size=8)


class TestAlphabet:
    def test_basic(self):
        assert AB.k == 2
        assert "a" in AB and "c" not in AB
        assert ABC.prefix(2) == AB

    @pytest.mark.parametrize("letters", ["", "aa", "a b", "a(", "a*", "ε"])
    def test_rejects(self, letters):
        with pytest.raises(AlphabetError):
            Alphabet(letters)

    def test_check(self):
        assert AB.check("abba") == "abba"
        with pytest.raises(AlphabetError):
            AB.check("abc")

    def test_words_enumeration(self):
        assert list(AB.words(2)) == ["", "a", "b", "aa", "ab", "ba", "bb"]
        assert list(AB.words(2, minlen=2)) == ["aa", "ab", "ba", "bb"]


class TestSubwordOrder:
    def test_examples(self):
        assert is_subword("", "abc")
        assert is_subword("ac", "abc")
        assert not is_subword("ca", "abc")
        assert compare("ab", "ba") is Relation.INCOMPARABLE
        assert compare("ab", "aab") is Relation.BELOW
        assert compare("aab", "ab") is Relation.ABOVE
        assert compare("ab", "ab") is Relation.EQUAL
        assert is_incomparable("ab", "ba")

    @given(words_abc, words_abc)
    def test_matches_brute_force(self, u, v):
        assert is_subword(u, v) == sub(u, v)

    @given(words_ab, words_ab, words_ab)
    def test_transitive(self, u, v, w):
        if is_subword(u, v) and is_subword(v, w):
            assert is_subword(u, w)

    @given(words_ab, words_ab)
    def test_antisymmetric(self, u, v):
        if is_subword(u, v) and is_subword(v, u):
            assert u == v

    @given(words_abc, words_abc)
    def test_compare_consistent(self, u, v):
        r = compare(u, v)
        assert (r is Relation.EQUAL) == (u == v)
        assert (r in (Relation.EQUAL, Relation.BELOW)) == is_subword(u, v)
        assert (r in (Relation.EQUAL, Relation.ABOVE)) == is_subword(v, u)


def test_shuffle_with_alphabet():
    assert shuffle_with_alphabet("a", AB) == {"aa", "ba", "ab"}
    assert shuffle_with_alphabet("", AB) == {"a", "b"}


@given(words_abc)
def test_shuffle_is_all_one_letter_insertions(u):
    got = shuffle_with_alphabet(u, ABC)
    expect = {w for w in all_words("abc", len(u) + 1, len(u) + 1) if sub(u, w)}
    assert got == expect


class TestRichness:
    def test_factorization(self):
        fz = rich_factorization("aabbab", AB)
        assert fz.blocks == (("aa", "b"), ("b", "a"))
        assert fz.tail == "b"
        assert fz.richness == 2
        assert fz.word() == "aabbab"

    def test_poor_word(self):
        assert richness("aaa", AB) == 0
        assert rich_factorization("aaa", AB).tail == "aaa"

    @given(words_abc)
    def test_reassembles(self, u):
        fz = rich_factorization(u, ABC)
        assert fz.word() == u
        for ui, ai in fz.blocks:
            assert set(ui) == set("abc") - {ai}
        assert set(fz.tail) != set("abc")

    @given(words_abc)
    def test_richness_is_maximal_block_count(self, u):
        # brute force: the largest number of rich factors u splits into
        def best(w):
            if not w:
                return 0
            out = 0
            for i in range(1, len(w) + 1):
                if set(w[:i]) == set("abc"):
                    out = max(out, 1 + best(w[i:]))
            return out
        assert richness(u, ABC) == best(u)


class TestF:
    def test_small_values(self):
        assert [f(1, n) for n in range(5)] == [0, 1, 2, 3, 4]
        assert [f(2, n) for n in range(5)] == [0, 2, 4, 7, 10]

    def test_monotone(self):
        for k in range(1, 5):
            vals = [f(k, n) for n in range(12)]
            assert vals == sorted(vals)

    def test_below_closed_form(self):
        for k in range(1, 6):
            for n in range(13):
                assert f(k, n) <= f_upper(k, n)
                assert f(k, n) < ((n + 2 * k - 1) / k) ** k


class TestUk:
    def test_examples(self):
        assert generate_Uk(1, 3, AB) == "aaa"
        assert generate_Uk(2, 1, AB) == "aba"
        assert generate_Uk(2, 2, AB) == "aabaabaa"

    @pytest.mark.parametrize("k,eta", [(1, 1), (1, 4), (2, 1), (2, 3), (3, 2)])
    def test_length(self, k, eta):
        assert len(generate_Uk(k, eta, ABC)) == (eta + 1) ** k - 1

    def test_pn_constraints_small(self):
        P, N = generate_Pk_Nk(2, 1, AB)
        u = generate_Uk(2, 1, AB)
        assert all(is_subword(p, u) for p in P)
        assert not any(is_subword(w, u) for w in N)


class TestDistinctSubwords:
    @given(st.text(alphabet="abc", max_size=9))
    def test_matches_brute_force(self, u):
        assert distinct_subwords(u) == subwords(u)

    def test_cap(self):
        with pytest.raises(CapExceeded):
            distinct_subwords("a" * 30)


@settings(max_examples=30)
@given(st.integers(0, 3), st.text(alphabet="ab", max_size=5))
def test_subwords_of_length_counted_once(n, u):
    combos = {"".join(t) for t in itertools.combinations(u, n)}
    assert {w for w in subwords(u) if len(w) == n} == combos
