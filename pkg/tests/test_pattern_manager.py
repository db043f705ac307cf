import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from errors import ContractError
from pattern_manager import FactorizationPattern, is_proper, matches_pattern, normalize, pattern_witness
from tests.helpers import w

AB = frozenset({"a", "b"})
A = frozenset({"a"})

short_words = st.lists(st.sampled_from("ab"), max_size=3).map(tuple)
alphabets = st.sampled_from([A, frozenset({"b"}), AB])


@st.composite
def patterns(draw, max_blocks: int = 3) -> FactorizationPattern:
    p = draw(st.integers(min_value=0, max_value=max_blocks))
    return FactorizationPattern.build(
        [draw(short_words) for _ in range(p + 1)],
        [draw(alphabets) for _ in range(p)],
    )


class TestFactorizationPattern:
    def test_length_mismatch(self):
        with pytest.raises(ContractError):
            FactorizationPattern.build([w("a")], [A])

    def test_empty_block(self):
        with pytest.raises(ContractError):
            FactorizationPattern.build([(), ()], [set()])

    def test_lines(self):
        pat = FactorizationPattern.build([(), w("ab")], [AB])
        assert pat.lines() == ["u: ε", "B: a b", "u: a b"]


class TestPatternWitness:
    def test_plain_word(self):
        pat = FactorizationPattern.build([w("ab")], [])
        assert all(pattern_witness(pat, n) == w("ab") for n in range(1, 5))

    def test_canonical_loop_word(self):
        pat = FactorizationPattern.build([(), ()], [AB])
        assert pattern_witness(pat, 2) == w("abab")

    def test_level_zero(self):
        with pytest.raises(ContractError):
            pattern_witness(FactorizationPattern.build([(), ()], [A]), 0)


class TestNormalize:
    def test_trailing_letter_absorbed(self):
        pat = FactorizationPattern.build([w("a"), ()], [A])
        assert normalize(pat) == FactorizationPattern.build([(), ()], [A])

    def test_comparable_blocks_merged(self):
        pat = FactorizationPattern.build([(), (), ()], [A, AB])
        assert normalize(pat) == FactorizationPattern.build([(), ()], [AB])

    def test_proper_pattern_unchanged(self):
        pat = FactorizationPattern.build([w("b"), w("b")], [A])
        assert is_proper(pat)
        assert normalize(pat) == pat

    def test_improper_detection(self):
        assert not is_proper(FactorizationPattern.build([(), w("a")], [A]))
        assert not is_proper(FactorizationPattern.build([(), (), ()], [AB, A]))
        assert is_proper(FactorizationPattern.build([(), (), ()], [A, frozenset({"b"})]))

    @settings(max_examples=150, deadline=None)
    @given(patterns())
    def test_idempotent_and_proper(self, pat):
        once = normalize(pat)
        assert is_proper(once)
        assert normalize(once) == once

    @settings(max_examples=100, deadline=None)
    @given(patterns(), st.integers(min_value=1, max_value=3))
    def test_language_inclusion(self, pat, n):
        assert matches_pattern(pattern_witness(pat, n), normalize(pat), n)


class TestMatchesPattern:
    def test_block_count(self):
        pat = FactorizationPattern.build([(), w("b")], [A])
        assert matches_pattern(w("aab"), pat, 2)
        assert not matches_pattern(w("aab"), pat, 3)

    def test_exact_content(self):
        pat = FactorizationPattern.build([(), ()], [AB])
        assert matches_pattern(w("aabba"), pat, 1)
        assert not matches_pattern(w("aaa"), pat, 1)

    def test_fixed_words(self):
        pat = FactorizationPattern.build([w("b"), w("b")], [A])
        assert matches_pattern(w("bab"), pat, 1)
        assert not matches_pattern(w("ab"), pat, 1)
        assert not matches_pattern(w("bb"), pat, 1)

    @settings(max_examples=100, deadline=None)
    @given(patterns(), st.integers(min_value=1, max_value=3))
    def test_witness_matches_own_pattern(self, pat, n):
        assert matches_pattern(pattern_witness(pat, n), pat, n)
