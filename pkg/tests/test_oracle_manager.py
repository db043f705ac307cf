import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from automaton_manager import accepts, content, iter_words
from config import ORACLE_CONFIG
from errors import BoundExceededError, ContractError
from oracle_manager import (
    SubwordProfile,
    is_subword,
    naive_subwords,
    oracle_pt_separable,
    profile_set,
    subword_profile,
)
from report_manager import distinct_trimmed, iter_small_automata
from tests.helpers import LETTERS, automata, language_upto, nfa, w, words

A_STAR = nfa(1, ["0 a 0"], final=[0])
B_PLUS = nfa(2, ["0 b 1", "1 b 1"], final=[1])
AB_PLUS = nfa(3, ["0 a 1", "1 b 2", "2 a 1"], final=[2])
BA_PLUS = nfa(3, ["0 b 1", "1 a 2", "2 b 1"], final=[2])
EMPTY = nfa(1, [])


class TestSubwordProfile:
    def test_level_one(self):
        assert subword_profile(w("ab"), 1).subwords == ((), w("a"), w("b"))

    def test_all_short_words(self):
        profile = subword_profile(w("abab"), 2)
        assert set(profile.subwords) == set(iter_words("ab", 2))
        assert w("ba") in profile

    def test_empty_word(self):
        assert subword_profile((), 3).subwords == ((),)

    def test_negative_level(self):
        with pytest.raises(ContractError):
            subword_profile(w("a"), -1)

    @settings(max_examples=100, deadline=None)
    @given(words, st.integers(min_value=0, max_value=4))
    def test_matches_naive_enumeration(self, word, n):
        assert subword_profile(word, n) == naive_subwords(word, n)

    @settings(max_examples=100, deadline=None)
    @given(words, st.integers(min_value=0, max_value=3))
    def test_downward_closed(self, word, n):
        profile = subword_profile(word, n)
        assert () in profile
        for sub in profile.subwords:
            for i in range(len(sub)):
                assert sub[:i] + sub[i + 1:] in profile
            assert is_subword(sub, word)

    def test_is_subword(self):
        assert is_subword(w("ab"), w("aab"))
        assert not is_subword(w("ba"), w("aab"))
        assert is_subword((), ())

    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    def test_content_complete_blocks_give_full_profile(self, n):
        # x, z ⊆ B, c(y) = B 이면 Sub_n(x y^n z) = B^{≤n} : 모든 이런 단어가 서로 ∼n
        short = list(iter_words("ab", 3))
        for y in short:
            letters = content(y)
            if not letters:
                continue
            full = set(iter_words(sorted(letters), n))
            for x in short:
                if not content(x) <= letters:
                    continue
                for z in short:
                    if content(z) <= letters:
                        assert set(subword_profile(x + y * n + z, n).subwords) == full


class TestProfileSet:
    def test_epsilon_only(self):
        assert profile_set(nfa(1, [], final=[0]), 2) == {SubwordProfile.of(2, [()])}

    def test_a_star_level_one(self):
        assert profile_set(A_STAR, 1) == {SubwordProfile.of(1, [()]), SubwordProfile.of(1, [(), w("a")])}

    def test_ab_plus_contains_full_profile(self):
        assert subword_profile(w("abab"), 2) in profile_set(AB_PLUS, 2)

    @settings(max_examples=40, deadline=None)
    @given(automata(max_states=2), st.integers(min_value=0, max_value=2))
    def test_contains_profiles_of_short_words(self, a, n):
        found = profile_set(a, n)
        for word in language_upto(a, 6):
            assert subword_profile(word, n) in found

    @pytest.mark.slow
    @pytest.mark.parametrize("n", [1, 2])
    def test_equals_profiles_of_bounded_words(self, n):
        # 최단 도달 단어는 (상태, 프로파일) 쌍을 반복하지 않고, 프로파일은 길이 ≤ n 부분단어 수만큼만 커진다
        small = distinct_trimmed(itertools.chain(iter_small_automata(1), iter_small_automata(2)))
        subword_count = sum(len(LETTERS) ** i for i in range(n + 1))
        profiles = {word: subword_profile(word, n) for word in iter_words(LETTERS, 2 * subword_count)}
        for a in small[::5]:
            bound = max(1, a.num_states) * subword_count
            expected = {p for word, p in profiles.items() if len(word) <= bound and accepts(a, word)}
            assert profile_set(a, n) == expected

    def test_state_bound(self, monkeypatch):
        monkeypatch.setitem(ORACLE_CONFIG, "max_states", 1)
        with pytest.raises(BoundExceededError) as info:
            profile_set(AB_PLUS, 1)
        assert info.value.bound_name == "max_states"

    def test_node_budget(self, monkeypatch):
        monkeypatch.setitem(ORACLE_CONFIG, "max_nodes", 2)
        lonely = nfa(4, ["0 a 1", "1 b 2", "2 a 3", "3 b 0"], final=[3])
        with pytest.raises(BoundExceededError):
            profile_set(lonely, 3)


class TestOracle:
    def test_a_star_vs_b_plus(self):
        verdict = oracle_pt_separable(A_STAR, B_PLUS, 4)
        assert verdict.separable and verdict.level == 1
        assert verdict.describe() == "SEPARABLE at n=1"

    def test_ab_plus_vs_ba_plus(self):
        verdict = oracle_pt_separable(AB_PLUS, BA_PLUS, 4)
        assert not verdict.separable
        assert verdict.describe() == "COMMON_CLASS up to n=4"
        assert len(verdict.common_profile) == len(list(iter_words("ab", 4)))

    def test_empty_language(self):
        verdict = oracle_pt_separable(EMPTY, AB_PLUS, 3)
        assert verdict.separable and verdict.level == 0

    def test_default_limit(self):
        assert oracle_pt_separable(AB_PLUS, BA_PLUS).level == ORACLE_CONFIG["default_max_n"]

    def test_negative_limit(self):
        with pytest.raises(ContractError):
            oracle_pt_separable(A_STAR, B_PLUS, -1)
