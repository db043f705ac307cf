"""
=================================================================
🤖 PT 분리 판정 툴킷 - 오토마톤 관리자 모듈 (automaton_manager.py)
=================================================================

📋 파일 역할:
- 유한 오토마톤(NFA/DFA) 불변 표현
- 그래프 알고리즘: 트림, Tarjan SCC, SCC 내용, 제한, 곱, 공집합 판정
- 부분집합 구성(determinize)과 여집합(complement) - 오라클/여집합 경로 전용
- 최단 수락 단어(BFS, 사전순 타이브레이크)

🔗 주요 컴포넌트:
- Automaton: 상태 0..n-1, 알파벳, 초기/최종 상태, 전이 집합
- SccDecomposition: 역위상 순서의 강연결요소 분해

⚡ 설계 원칙:
- 언어는 A* 위에서 정의 (ε 표현 가능), 상태 0개 오토마톤은 ∅
- 내용 계산은 선언된 알파벳이 아니라 항상 전이 라벨을 사용
- 모든 연산은 순수 함수이며 오토마톤 값은 생성 후 변경되지 않음
"""

import logging
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, FrozenSet, Iterable, List, Optional, Set, Tuple

from errors import ContractError

logger = logging.getLogger(__name__)

Letter = str
AlphabetSet = FrozenSet[str]
Word = Tuple[str, ...]
Transition = Tuple[int, str, int]

EMPTY_WORD: Word = ()


def is_valid_token(token: str) -> bool:
    """문자 토큰 규칙: 공백과 ':'을 포함하지 않는 비어있지 않은 문자열"""
    return bool(token) and ":" not in token and not any(ch.isspace() for ch in token)


def content(word: Iterable[str]) -> AlphabetSet:
    """단어에 등장하는 문자 집합 c(u)"""
    return frozenset(word)


def format_word(word: Word) -> str:
    """보고서용 단어 표기 (토큰을 공백으로 연결, 빈 단어는 ε)"""
    return " ".join(word) if word else "ε"


def format_alphabet(letters: Iterable[str]) -> str:
    """보고서용 알파벳 표기 (정렬된 토큰)"""
    ordered = sorted(letters)
    return " ".join(ordered) if ordered else "∅"


def parse_word(text: str) -> Word:
    """
    명령줄 단어 해석

    - 공백이 있으면 공백으로 구분된 토큰 열
    - 공백이 없으면 한 글자씩 문자로 해석 ("abab" → a b a b)
    - 빈 문자열 또는 "ε"는 빈 단어
    """
    stripped = text.strip()
    if stripped in ("", "ε"):
        return EMPTY_WORD
    if any(ch.isspace() for ch in stripped):
        return tuple(stripped.split())
    return tuple(stripped)


@dataclass(frozen=True)
class Automaton:
    """
    🎯 유한 오토마톤 𝒜 = (Q, A, I, F, δ)

    상태는 0..num_states-1 의 조밀한 정수이고, 결정성 여부는 저장하지 않고
    항상 전이로부터 유도합니다.
    """

    num_states: int
    alphabet: AlphabetSet
    initial: FrozenSet[int]
    final: FrozenSet[int]
    transitions: FrozenSet[Transition]

    def __post_init__(self):
        if self.num_states < 0:
            raise ContractError(f"상태 수는 음수일 수 없습니다: {self.num_states}")
        for state in self.initial | self.final:
            if not 0 <= state < self.num_states:
                raise ContractError(f"상태 번호 범위 초과: {state} (상태 수 {self.num_states})")
        for source, letter, target in self.transitions:
            if letter not in self.alphabet:
                raise ContractError(f"선언되지 않은 문자: {letter!r}")
            if not (0 <= source < self.num_states and 0 <= target < self.num_states):
                raise ContractError(f"전이 끝점 범위 초과: {source} {letter} {target}")

    @classmethod
    def build(
        cls,
        num_states: int,
        alphabet: Iterable[str],
        initial: Iterable[int],
        final: Iterable[int],
        transitions: Iterable[Transition] = (),
    ) -> "Automaton":
        """임의의 iterable 인자로부터 오토마톤 생성"""
        return cls(
            num_states=num_states,
            alphabet=frozenset(alphabet),
            initial=frozenset(initial),
            final=frozenset(final),
            transitions=frozenset((int(p), a, int(q)) for p, a, q in transitions),
        )

    @property
    def states(self) -> range:
        return range(self.num_states)

    @cached_property
    def sorted_alphabet(self) -> Tuple[str, ...]:
        return tuple(sorted(self.alphabet))

    @cached_property
    def sorted_transitions(self) -> Tuple[Transition, ...]:
        return tuple(sorted(self.transitions))

    @cached_property
    def successors(self) -> Tuple[Dict[str, Tuple[int, ...]], ...]:
        """상태별 {문자: 도착 상태들} 사상 (도착 상태는 오름차순)"""
        table: List[Dict[str, List[int]]] = [{} for _ in self.states]
        for source, letter, target in self.sorted_transitions:
            table[source].setdefault(letter, []).append(target)
        return tuple({a: tuple(ts) for a, ts in row.items()} for row in table)

    @cached_property
    def predecessors(self) -> Tuple[Tuple[Tuple[str, int], ...], ...]:
        """상태별 (문자, 출발 상태) 목록"""
        table: List[List[Tuple[str, int]]] = [[] for _ in self.states]
        for source, letter, target in self.sorted_transitions:
            table[target].append((letter, source))
        return tuple(tuple(row) for row in table)

    @cached_property
    def is_deterministic(self) -> bool:
        """초기 상태가 최대 1개이고 δ가 함수이면 결정적"""
        if len(self.initial) > 1:
            return False
        return all(len(targets) == 1 for row in self.successors for targets in row.values())

    def post(self, states: Iterable[int], letter: str) -> FrozenSet[int]:
        """상태 집합에서 한 문자를 읽은 뒤의 상태 집합"""
        result: Set[int] = set()
        for state in states:
            result.update(self.successors[state].get(letter, ()))
        return frozenset(result)


@dataclass(frozen=True)
class SccDecomposition:
    """강연결요소 분해 - components는 역위상 순서 (싱크 쪽 요소가 먼저)"""

    component_of: Tuple[int, ...]
    components: Tuple[FrozenSet[int], ...]

    def same_component(self, p: int, q: int) -> bool:
        return self.component_of[p] == self.component_of[q]


# ====================================
# 🔍 기본 질의
# ====================================

def accepts(a: Automaton, w: Iterable[str]) -> bool:
    """
    단어 수락 여부 (상태 집합 시뮬레이션)

    Raises:
        ContractError: w에 a.alphabet 밖의 문자가 있을 때
    """
    current = a.initial
    for letter in w:
        if letter not in a.alphabet:
            raise ContractError(f"알파벳 밖의 문자: {letter!r}")
        current = a.post(current, letter)
        if not current:
            return False
    return bool(current & a.final)


def _forward_reachable(a: Automaton, sources: Iterable[int], letters: Optional[AlphabetSet] = None) -> Set[int]:
    seen = set(sources)
    queue = deque(sorted(seen))
    while queue:
        state = queue.popleft()
        for letter, targets in a.successors[state].items():
            if letters is not None and letter not in letters:
                continue
            for target in targets:
                if target not in seen:
                    seen.add(target)
                    queue.append(target)
    return seen


def _backward_reachable(a: Automaton, targets: Iterable[int], letters: Optional[AlphabetSet] = None) -> Set[int]:
    seen = set(targets)
    queue = deque(sorted(seen))
    while queue:
        state = queue.popleft()
        for letter, source in a.predecessors[state]:
            if letters is not None and letter not in letters:
                continue
            if source not in seen:
                seen.add(source)
                queue.append(source)
    return seen


def reachable_from(a: Automaton, sources: Iterable[int], letters: Optional[AlphabetSet] = None) -> FrozenSet[int]:
    """sources에서 (letters 라벨만 사용해) 도달 가능한 상태 - 빈 경로 포함"""
    return frozenset(_forward_reachable(a, sources, letters))


def is_empty(a: Automaton) -> bool:
    """초기 상태에서 최종 상태에 도달할 수 없으면 True"""
    if not a.final:
        return True
    return not (_forward_reachable(a, a.initial) & a.final)


def induced(a: Automaton, keep: Iterable[int]) -> Automaton:
    """keep 상태만 남기고 오름차순으로 번호를 다시 매긴 부분 오토마톤"""
    kept = sorted(set(keep))
    renumber = {old: new for new, old in enumerate(kept)}
    return Automaton.build(
        num_states=len(kept),
        alphabet=a.alphabet,
        initial=(renumber[s] for s in a.initial if s in renumber),
        final=(renumber[s] for s in a.final if s in renumber),
        transitions=(
            (renumber[p], letter, renumber[q])
            for p, letter, q in a.transitions
            if p in renumber and q in renumber
        ),
    )


def trim(a: Automaton) -> Automaton:
    """
    도달 가능하면서 최종 상태로 갈 수 있는 상태만 남김

    언어는 바뀌지 않으며, 남는 상태가 없으면 상태 0개 오토마톤을 반환합니다.
    """
    useful = _forward_reachable(a, a.initial) & _backward_reachable(a, a.final)
    if len(useful) < a.num_states:
        logger.debug(f"트림: {a.num_states}개 중 {len(useful)}개 상태 유지")
    return induced(a, useful)


# ====================================
# 🔗 강연결요소
# ====================================

def tarjan_scc(a: Automaton, letters: Optional[AlphabetSet] = None) -> SccDecomposition:
    """
    Tarjan 알고리즘 (반복형, 선형 시간)

    letters가 주어지면 해당 라벨의 전이만 사용합니다 (restrict 없이 같은 결과).
    요소는 완성되는 순서, 즉 역위상 순서로 나열됩니다.
    """
    n = a.num_states
    index = [-1] * n
    lowlink = [0] * n
    on_stack = [False] * n
    stack: List[int] = []
    component_of = [-1] * n
    components: List[FrozenSet[int]] = []
    counter = 0

    def neighbours(state: int) -> List[int]:
        result = []
        for letter, targets in a.successors[state].items():
            if letters is None or letter in letters:
                result.extend(targets)
        return result

    for root in range(n):
        if index[root] != -1:
            continue
        work = [(root, iter(neighbours(root)))]
        index[root] = lowlink[root] = counter
        counter += 1
        stack.append(root)
        on_stack[root] = True

        while work:
            state, children = work[-1]
            advanced = False
            for child in children:
                if index[child] == -1:
                    index[child] = lowlink[child] = counter
                    counter += 1
                    stack.append(child)
                    on_stack[child] = True
                    work.append((child, iter(neighbours(child))))
                    advanced = True
                    break
                if on_stack[child]:
                    lowlink[state] = min(lowlink[state], index[child])
            if advanced:
                continue

            work.pop()
            if work:
                parent = work[-1][0]
                lowlink[parent] = min(lowlink[parent], lowlink[state])

            if lowlink[state] == index[state]:
                members = set()
                while True:
                    member = stack.pop()
                    on_stack[member] = False
                    component_of[member] = len(components)
                    members.add(member)
                    if member == state:
                        break
                components.append(frozenset(members))

    return SccDecomposition(component_of=tuple(component_of), components=tuple(components))


def component_contents(
    a: Automaton, scc: SccDecomposition, letters: Optional[AlphabetSet] = None
) -> Tuple[AlphabetSet, ...]:
    """각 강연결요소 내부 전이의 라벨 집합 (자기 루프 없는 자명한 요소는 ∅)"""
    found: List[Set[str]] = [set() for _ in scc.components]
    for source, letter, target in a.transitions:
        if letters is not None and letter not in letters:
            continue
        component = scc.component_of[source]
        if component == scc.component_of[target]:
            found[component].add(letter)
    return tuple(frozenset(labels) for labels in found)


def scc_content(a: Automaton, p: int) -> AlphabetSet:
    """상태 p의 강연결요소 안에서 쓰이는 전이 라벨 집합"""
    if not 0 <= p < a.num_states:
        raise ContractError(f"존재하지 않는 상태: {p}")
    scc = tarjan_scc(a)
    return component_contents(a, scc)[scc.component_of[p]]


# ====================================
# ✂️ 구성 연산
# ====================================

def restrict(a: Automaton, letters: Iterable[str]) -> Automaton:
    """전이를 letters 라벨로만 제한 (상태, 초기/최종, 선언 알파벳은 그대로)"""
    allowed = frozenset(letters)
    return Automaton(
        num_states=a.num_states,
        alphabet=a.alphabet,
        initial=a.initial,
        final=a.final,
        transitions=frozenset(t for t in a.transitions if t[1] in allowed),
    )


def reverse(a: Automaton) -> Automaton:
    """전이 방향을 뒤집고 초기/최종 상태를 맞바꾼 오토마톤 (역언어)"""
    return Automaton(
        num_states=a.num_states,
        alphabet=a.alphabet,
        initial=a.final,
        final=a.initial,
        transitions=frozenset((q, letter, p) for p, letter, q in a.transitions),
    )


def product(a1: Automaton, a2: Automaton) -> Automaton:
    """
    곱 구성 - 도달 가능한 상태 쌍만 생성

    두 성분이 같은 문자로 동시에 움직일 때만 전이가 생기며, 알파벳은 합집합입니다.
    상태 번호는 BFS 발견 순서(초기 쌍 오름차순, 문자 사전순)로 매깁니다.
    """
    index: Dict[Tuple[int, int], int] = {}
    queue: deque = deque()
    for pair in sorted((i1, i2) for i1 in a1.initial for i2 in a2.initial):
        index[pair] = len(index)
        queue.append(pair)

    transitions: List[Transition] = []
    while queue:
        p1, p2 = queue.popleft()
        source = index[(p1, p2)]
        row1 = a1.successors[p1]
        row2 = a2.successors[p2]
        for letter in sorted(row1.keys() & row2.keys()):
            for t1 in row1[letter]:
                for t2 in row2[letter]:
                    target_pair = (t1, t2)
                    if target_pair not in index:
                        index[target_pair] = len(index)
                        queue.append(target_pair)
                    transitions.append((source, letter, index[target_pair]))

    return Automaton.build(
        num_states=len(index),
        alphabet=a1.alphabet | a2.alphabet,
        initial=(index[(i1, i2)] for i1 in a1.initial for i2 in a2.initial),
        final=(i for (p1, p2), i in index.items() if p1 in a1.final and p2 in a2.final),
        transitions=transitions,
    )


def determinize(a: Automaton) -> Automaton:
    """
    부분집합 구성 (도달 가능한 부분집합만)

    주 판정 경로에서는 쓰지 않으며 오라클 / 여집합 경로 전용입니다.
    초기 부분집합이 비어 있으면 (초기 상태 없음) 상태 1개의 빈 언어 DFA를 반환합니다.
    """
    start = frozenset(a.initial)
    index: Dict[FrozenSet[int], int] = {start: 0}
    queue = deque([start])
    transitions: List[Transition] = []
    while queue:
        subset = queue.popleft()
        for letter in a.sorted_alphabet:
            target = a.post(subset, letter)
            if not target:
                continue
            if target not in index:
                index[target] = len(index)
                queue.append(target)
            transitions.append((index[subset], letter, index[target]))

    logger.debug(f"부분집합 구성: {a.num_states}개 상태 → {len(index)}개 부분집합")
    return Automaton.build(
        num_states=len(index),
        alphabet=a.alphabet,
        initial=[0],
        final=(i for subset, i in index.items() if subset & a.final),
        transitions=transitions,
    )


def complement(d: Automaton) -> Automaton:
    """
    결정적 오토마톤의 여집합 (d.alphabet 위의 A* \\ L(d))

    싱크 상태로 완전화한 뒤 최종 / 비최종을 맞바꿉니다.

    Raises:
        ContractError: 비결정적 입력
    """
    if not d.is_deterministic:
        raise ContractError("complement는 결정적 오토마톤만 받습니다")

    if d.num_states == 0 or not d.initial:
        # 초기 상태가 없으면 빈 언어: 여집합은 A*
        return Automaton.build(1, d.alphabet, [0], [0], ((0, a, 0) for a in d.alphabet))

    sink = d.num_states
    transitions = set(d.transitions)
    needs_sink = False
    for state in d.states:
        for letter in d.sorted_alphabet:
            if letter not in d.successors[state]:
                transitions.add((state, letter, sink))
                needs_sink = True

    num_states = d.num_states + (1 if needs_sink else 0)
    if needs_sink:
        transitions.update((sink, letter, sink) for letter in d.alphabet)

    return Automaton.build(
        num_states=num_states,
        alphabet=d.alphabet,
        initial=d.initial,
        final=(s for s in range(num_states) if s not in d.final),
        transitions=transitions,
    )


# ====================================
# 🛤️ 경로 / 단어 탐색
# ====================================

def shortest_word(a: Automaton) -> Optional[Word]:
    """
    수락되는 최단 단어 (같은 길이면 사전순 최소)

    초기 상태 오름차순, 문자 사전순 BFS로 발견 순서를 고정합니다.
    언어가 비어 있으면 None.
    """
    parent: Dict[int, Optional[Tuple[int, str]]] = {}
    queue: deque = deque()
    for state in sorted(a.initial):
        parent[state] = None
        queue.append(state)

    while queue:
        state = queue.popleft()
        if state in a.final:
            letters: List[str] = []
            cursor = state
            while parent[cursor] is not None:
                previous, letter = parent[cursor]
                letters.append(letter)
                cursor = previous
            return tuple(reversed(letters))
        row = a.successors[state]
        for letter in sorted(row):
            for target in row[letter]:
                if target not in parent:
                    parent[target] = (state, letter)
                    queue.append(target)
    return None


def path_word(a: Automaton, source: int, target: int, letters: Optional[AlphabetSet] = None) -> Optional[Word]:
    """source에서 target까지 (letters 라벨만 쓰는) 최단 경로의 라벨, 없으면 None"""
    if source == target:
        return EMPTY_WORD
    parent: Dict[int, Tuple[int, str]] = {}
    seen = {source}
    queue = deque([source])
    while queue:
        state = queue.popleft()
        row = a.successors[state]
        for letter in sorted(row):
            if letters is not None and letter not in letters:
                continue
            for nxt in row[letter]:
                if nxt in seen:
                    continue
                seen.add(nxt)
                parent[nxt] = (state, letter)
                if nxt == target:
                    word: List[str] = []
                    cursor = nxt
                    while cursor != source:
                        previous, label = parent[cursor]
                        word.append(label)
                        cursor = previous
                    return tuple(reversed(word))
                queue.append(nxt)
    return None


def path_words_from(a: Automaton, source: int, letters: Optional[AlphabetSet] = None) -> Dict[int, Word]:
    """source에서 도달 가능한 각 상태까지의 최단 경로 라벨 (BFS 한 번)"""
    words: Dict[int, Word] = {source: EMPTY_WORD}
    queue = deque([source])
    while queue:
        state = queue.popleft()
        row = a.successors[state]
        for letter in sorted(row):
            if letters is not None and letter not in letters:
                continue
            for nxt in row[letter]:
                if nxt not in words:
                    words[nxt] = words[state] + (letter,)
                    queue.append(nxt)
    return words


def path_words_to(a: Automaton, target: int, letters: Optional[AlphabetSet] = None) -> Dict[int, Word]:
    """target에 도달할 수 있는 각 상태에서 target까지의 최단 경로 라벨 (역방향 BFS 한 번)"""
    words: Dict[int, Word] = {target: EMPTY_WORD}
    queue = deque([target])
    while queue:
        state = queue.popleft()
        for letter, source in sorted(a.predecessors[state]):
            if letters is not None and letter not in letters:
                continue
            if source not in words:
                words[source] = (letter,) + words[state]
                queue.append(source)
    return words


def covering_loop_word(a: Automaton, q: int, letters: AlphabetSet) -> Word:
    """
    q를 지나며 letters의 모든 문자를 한 번 이상 쓰는 닫힌 경로의 라벨

    q의 (letters로 제한한) 강연결요소 내용이 정확히 letters여야 합니다.
    문자마다 요소 안의 전이 하나를 골라 q → 전이 → q 순환을 이어 붙입니다.

    Raises:
        ContractError: 그런 루프가 없을 때
    """
    scc = tarjan_scc(a, letters)
    component = scc.component_of[q]
    members = scc.components[component]
    chosen: Dict[str, Transition] = {}
    for source, letter, target in a.sorted_transitions:
        if letter in letters and letter not in chosen and source in members and target in members:
            chosen[letter] = (source, letter, target)
    if set(chosen) != set(letters):
        raise ContractError(f"상태 {q}에 (={format_alphabet(letters)})-루프가 없습니다")

    loop: List[str] = []
    for letter in sorted(chosen):
        source, _, target = chosen[letter]
        loop.extend(path_word(a, q, source, letters))
        loop.append(letter)
        loop.extend(path_word(a, target, q, letters))
    return tuple(loop)


def iter_words(letters: Iterable[str], max_length: int):
    """길이 오름차순, 같은 길이는 사전순으로 max_length 이하 모든 단어 생성"""
    ordered = sorted(set(letters))
    layer: List[Word] = [EMPTY_WORD]
    for _ in range(max_length + 1):
        yield from layer
        layer = [w + (a,) for w in layer for a in ordered]
