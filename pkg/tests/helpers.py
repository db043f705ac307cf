"""
테스트 공용 헬퍼 - 작은 오토마톤 생성기와 hypothesis 전략
"""

from typing import Iterable, List, Sequence, Set

from hypothesis import strategies as st

from automaton_manager import Automaton, Word, accepts, iter_words

LETTERS = ("a", "b")


def nfa(
    num_states: int,
    transitions: Iterable[tuple],
    initial: Iterable[int] = (0,),
    final: Iterable[int] = (),
    alphabet: Sequence[str] = LETTERS,
) -> Automaton:
    """"0 a 1" 문자열 또는 (p, a, q) 튜플 목록으로 오토마톤 생성"""
    parsed = []
    for t in transitions:
        if isinstance(t, str):
            p, letter, q = t.split()
            parsed.append((int(p), letter, int(q)))
        else:
            parsed.append(t)
    return Automaton.build(num_states, alphabet, initial, final, parsed)


def w(text: str) -> Word:
    """"abab" → ('a', 'b', 'a', 'b')"""
    return tuple(text)


def language_upto(a: Automaton, max_length: int) -> Set[Word]:
    return {word for word in iter_words(a.alphabet, max_length) if accepts(a, word)}


def all_words(max_length: int, letters: Sequence[str] = LETTERS) -> List[Word]:
    return list(iter_words(letters, max_length))


@st.composite
def automata(draw, max_states: int = 3, letters: Sequence[str] = LETTERS) -> Automaton:
    """상태 1..max_states 개의 임의 NFA"""
    n = draw(st.integers(min_value=1, max_value=max_states))
    state = st.integers(min_value=0, max_value=n - 1)
    transitions = draw(st.sets(st.tuples(state, st.sampled_from(letters), state), max_size=n * n * len(letters)))
    initial = draw(st.sets(state, min_size=1))
    final = draw(st.sets(state))
    return Automaton.build(n, letters, initial, final, transitions)


@st.composite
def deterministic_automata(draw, max_states: int = 3, letters: Sequence[str] = LETTERS) -> Automaton:
    """부분 함수 δ를 갖는 임의 DFA (초기 상태 0)"""
    n = draw(st.integers(min_value=1, max_value=max_states))
    transitions = []
    for p in range(n):
        for letter in letters:
            target = draw(st.one_of(st.none(), st.integers(min_value=0, max_value=n - 1)))
            if target is not None:
                transitions.append((p, letter, target))
    final = draw(st.sets(st.integers(min_value=0, max_value=n - 1)))
    return Automaton.build(n, letters, [0], final, transitions)


words = st.lists(st.sampled_from(LETTERS), max_size=8).map(tuple)
