import pytest
from hypothesis import given, settings

from automaton_manager import Automaton, is_empty, product
from errors import ContractError
from prefix_manager import (
    BuchiAutomaton,
    accepts_lasso,
    buchi_product_nonempty,
    closure_buchi,
    find_lasso,
    prefix_separable,
    suffix_separable,
)
from tests.helpers import automata, nfa, w

A_STAR = nfa(1, ["0 a 0"], final=[0])
B_STAR = nfa(1, ["0 b 0"], final=[0])
A_STAR_B = nfa(2, ["0 a 0", "0 b 1"], final=[1])
AB_PLUS = nfa(3, ["0 a 1", "1 b 2", "2 a 1"], final=[2])
A_ALL = nfa(2, ["0 a 1", "1 a 1", "1 b 1"], final=[1])
B_ALL = nfa(2, ["0 b 1", "1 a 1", "1 b 1"], final=[1])
ENDS_A = nfa(2, ["0 a 0", "0 b 0", "0 a 1"], final=[1])
ENDS_B = nfa(2, ["0 a 0", "0 b 0", "0 b 1"], final=[1])
ONLY_A = nfa(2, ["0 a 1"], final=[1])
ONLY_B = nfa(2, ["0 b 1"], final=[1])


def acyclic(a: Automaton) -> Automaton:
    return Automaton.build(a.num_states, a.alphabet, a.initial, a.final, [t for t in a.transitions if t[0] < t[2]])


class TestClosure:
    def test_a_star_accepts_a_omega(self):
        assert accepts_lasso(closure_buchi(A_STAR), (), w("a"))

    def test_finite_language_has_empty_closure(self):
        closure = closure_buchi(ONLY_A)
        assert find_lasso(closure, closure) is None

    def test_ab_plus(self):
        closure = closure_buchi(AB_PLUS)
        assert closure.all_accepting
        assert accepts_lasso(closure, (), w("ab"))
        assert not accepts_lasso(closure, (), w("ba"))

    def test_trims_first(self):
        closure = closure_buchi(nfa(3, ["0 a 1", "0 b 2", "2 b 2"], final=[1]))
        assert closure.automaton.num_states == 2
        assert not accepts_lasso(closure, (), w("b"))

    def test_empty_cycle_rejected(self):
        with pytest.raises(ContractError):
            accepts_lasso(closure_buchi(A_STAR), w("a"), ())

    def test_accepting_out_of_range(self):
        with pytest.raises(ContractError):
            BuchiAutomaton(automaton=A_STAR, accepting=frozenset({3}))


class TestBuchiProduct:
    def test_same_loop(self):
        assert buchi_product_nonempty(closure_buchi(A_STAR), closure_buchi(A_STAR))

    def test_different_letters(self):
        assert not buchi_product_nonempty(closure_buchi(A_STAR), closure_buchi(B_STAR))

    def test_shared_closure_point(self):
        assert find_lasso(closure_buchi(A_STAR), closure_buchi(A_STAR_B)) == ((), w("a"))

    def test_requires_all_accepting(self):
        partial = BuchiAutomaton(automaton=A_STAR_B, accepting=frozenset({1}))
        with pytest.raises(ContractError):
            buchi_product_nonempty(partial, closure_buchi(A_STAR))

    @settings(max_examples=60, deadline=None)
    @given(automata(), automata())
    def test_lasso_accepted_by_both(self, a1, a2):
        b1, b2 = closure_buchi(a1), closure_buchi(a2)
        lasso = find_lasso(b1, b2)
        if lasso is not None:
            stem, cycle = lasso
            assert cycle
            assert accepts_lasso(b1, stem, cycle)
            assert accepts_lasso(b2, stem, cycle)


class TestPrefixSeparable:
    def test_different_first_letter(self):
        assert prefix_separable(A_ALL, B_ALL) is True

    def test_common_closure_point(self):
        assert prefix_separable(A_STAR, A_STAR_B) is False

    def test_finite_languages(self):
        assert prefix_separable(ONLY_A, ONLY_B) is True

    def test_self(self):
        assert prefix_separable(AB_PLUS, AB_PLUS) is False
        empty = nfa(1, [])
        assert prefix_separable(empty, empty) is True

    def test_suffix_mirror(self):
        assert prefix_separable(ENDS_A, ENDS_B) is False
        assert suffix_separable(ENDS_A, ENDS_B) is True
        assert suffix_separable(A_ALL, B_ALL) is False

    @settings(max_examples=60, deadline=None)
    @given(automata(), automata())
    def test_intersection_blocks_separation(self, a1, a2):
        if not is_empty(product(a1, a2)):
            assert prefix_separable(a1, a2) is False
            assert suffix_separable(a1, a2) is False

    @settings(max_examples=60, deadline=None)
    @given(automata().map(acyclic), automata().map(acyclic))
    def test_finite_languages_reduce_to_intersection(self, a1, a2):
        assert prefix_separable(a1, a2) == is_empty(product(a1, a2))
