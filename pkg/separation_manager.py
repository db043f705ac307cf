"""
=================================================================
🧩 PT 분리 판정 툴킷 - PT 분리 관리자 모듈 (separation_manager.py)
=================================================================

📋 파일 역할:
- 두 NFA의 언어가 조각 판정 가능(PT) 언어로 분리되는지 다항 시간에 판정
- 공통 (=B)-루프 최대 알파벳 고정점 C1 ⊇ C2 ⊇ … 계산
- 패턴 4-튜플 열거와 확장 오토마톤 Ã1, Ã2 구성
- 분리 불가일 때 인수분해 패턴과 증인 단어 추출

🔗 주요 컴포넌트:
- LoopQuery / PatternTuple / ExtendedAutomaton / PatternEvidence
- max_common_loop_alphabet, enumerate_pattern_tuples, build_extended
- pt_separable (전략: "shortcut" 허브 탐색 / "extended" 확장 오토마톤 곱)
- extract_pattern, is_piecewise_testable

⚡ 처리 흐름 (extended 전략):
(q1, q2)마다 최대 루프 알파벳 B 계산 -> B로 제한한 도달성으로 (p1, r1, p2, r2) 수집
-> 튜플마다 새 문자 a_τ 와 전이 p1→r1, p2→r2 추가 -> L(Ã1) ∩ L(Ã2) 공집합 판정

⚡ 처리 흐름 (shortcut 전략):
같은 곱 언어를 a_τ 없이 탐색합니다. 상태 쌍이 "루프 전" 단계로 들어가 B 문자로
각자 움직이고, 공통 루프 허브 (q1, q2)를 지나 "루프 후" 단계에서 다시 각자 움직인 뒤
동기 읽기로 돌아옵니다. 튜플 수가 |Q|^4 에 이르는 입력에서도 다항 시간을 유지합니다.
"""

import logging
from collections import deque
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from automaton_manager import (
    AlphabetSet,
    Automaton,
    SccDecomposition,
    Word,
    complement,
    content,
    component_contents,
    covering_loop_word,
    format_alphabet,
    is_empty,
    path_words_from,
    path_words_to,
    product,
    shortest_word,
    tarjan_scc,
)
from config import SEPARATION_CONFIG
from errors import ContractError, InconsistentMetadataError
from pattern_manager import FactorizationPattern

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class LoopQuery:
    """(=B)-루프를 함께 찾을 상태 쌍"""

    q1: int
    q2: int


@dataclass(frozen=True)
class LoopPath:
    """p →(⊆B) q →(=B) q →(⊆B) r 경로의 세 구간 라벨"""

    entry: Word
    loop: Word
    exit: Word

    def expand(self, n: int) -> Word:
        """x·y^n·z"""
        return self.entry + self.loop * n + self.exit


@dataclass(frozen=True)
class PatternTuple:
    """τ = (p1, r1, p2, r2) 와 이를 보증하는 (q1, q2, B) 및 각 오토마톤의 경로 라벨"""

    p1: int
    r1: int
    p2: int
    r2: int
    witness_q1: int
    witness_q2: int
    witness_B: AlphabetSet
    paths: Tuple[LoopPath, LoopPath]

    def __post_init__(self):
        if not self.witness_B:
            raise ContractError("패턴 튜플의 B는 비어 있을 수 없습니다")

    @property
    def key(self) -> Tuple[int, int, int, int]:
        return (self.p1, self.r1, self.p2, self.r2)


@dataclass(frozen=True)
class ExtendedAutomaton:
    """원래 오토마톤 + 패턴 문자 a_τ (side: 1 = Ã1, 2 = Ã2)"""

    base: Automaton
    pattern_letters: Dict[str, PatternTuple] = field(hash=False)
    side: int = 1

    def expand_word(self, word: Word, n: int) -> Word:
        """패턴 문자마다 이 오토마톤 쪽 경로 x·y^n·z 를 넣어 원래 알파벳 단어로 복원"""
        expanded: List[str] = []
        for letter in word:
            entry = self.pattern_letters.get(letter)
            if entry is None:
                expanded.append(letter)
            else:
                expanded.extend(entry.paths[self.side - 1].expand(n))
        return tuple(expanded)


@dataclass(frozen=True)
class PatternEvidence:
    """분리 불가 증거: 확장 알파벳 위 공통 단어와 이를 해독한 패턴"""

    pattern: FactorizationPattern
    word: Word
    left: ExtendedAutomaton = field(hash=False)
    right: ExtendedAutomaton = field(hash=False)

    def witness_words(self, n: int) -> Tuple[Word, Word]:
        """v_n ∈ L1, w_n ∈ L2 (u0 x1 y1^n z1 u1 … 꼴, v_n ∼n w_n)"""
        if n < 1:
            raise ContractError(f"증인 레벨은 1 이상이어야 합니다: {n}")
        return self.left.expand_word(self.word, n), self.right.expand_word(self.word, n)


# ====================================
# 🔁 최대 공통 루프 알파벳 (C_i 고정점)
# ====================================

class _RestrictionCache:
    """알파벳별 제한 오토마톤의 SCC 분해와 요소 내용 캐시"""

    def __init__(self, automaton: Automaton):
        self.automaton = automaton
        self._data: Dict[Optional[AlphabetSet], Tuple[SccDecomposition, Tuple[AlphabetSet, ...]]] = {}

    def content_at(self, q: int, letters: Optional[AlphabetSet]) -> AlphabetSet:
        data = self._data.get(letters)
        if data is None:
            scc = tarjan_scc(self.automaton, letters)
            data = (scc, component_contents(self.automaton, scc, letters))
            self._data[letters] = data
        scc, contents = data
        return contents[scc.component_of[q]]


def _fixpoint(
    cache1: _RestrictionCache,
    q1: int,
    cache2: _RestrictionCache,
    q2: int,
    trace: Optional[List[AlphabetSet]] = None,
) -> Tuple[Optional[AlphabetSet], int]:
    """C_1 = cont(q1) ∩ cont(q2), C_{i+1} = 제한 오토마톤에서 같은 계산. (결과, 제한 횟수)"""
    current = cache1.content_at(q1, None) & cache2.content_at(q2, None)
    if trace is not None:
        trace.append(current)
    steps = 0
    while current:
        refined = cache1.content_at(q1, current) & cache2.content_at(q2, current)
        steps += 1
        if trace is not None:
            trace.append(refined)
        if refined == current:
            break
        current = refined

    bound = len(cache1.automaton.alphabet | cache2.automaton.alphabet)
    if steps > bound:
        logger.error(f"고정점 반복 {steps}회가 알파벳 크기 {bound}를 넘었습니다 (q1={q1}, q2={q2})")
    return (current or None), steps


def _check_state(a: Automaton, q: int, name: str) -> None:
    if not 0 <= q < a.num_states:
        raise ContractError(f"{name}={q}는 존재하지 않는 상태입니다 (상태 수 {a.num_states})")


def max_common_loop_alphabet(
    a1: Automaton,
    q1: int,
    a2: Automaton,
    q2: int,
    trace: Optional[List[AlphabetSet]] = None,
) -> Optional[AlphabetSet]:
    """
    q1, q2 모두에 (=B)-루프가 있는 최대 비어있지 않은 B, 없으면 None

    Args:
        trace: 주어지면 계산한 C_1, C_2, … 를 순서대로 덧붙임 (계측용)
    """
    _check_state(a1, q1, "q1")
    _check_state(a2, q2, "q2")
    result, _ = _fixpoint(_RestrictionCache(a1), q1, _RestrictionCache(a2), q2, trace)
    return result


def loop_alphabet_table(a1: Automaton, a2: Automaton) -> Dict[LoopQuery, AlphabetSet]:
    """
    모든 (q1, q2)에 대해 최대 공통 루프 알파벳 계산 (None인 쌍은 제외)

    (q1, q2) 계산은 서로 독립이므로 SEPARATION_CONFIG["workers"] > 1 이면 q1 행 단위로 병렬 처리합니다.
    결과 사전은 항상 (q1, q2) 오름차순입니다.
    """
    cache1, cache2 = _RestrictionCache(a1), _RestrictionCache(a2)
    looping2 = [q2 for q2 in a2.states if cache2.content_at(q2, None)]

    def row(q1: int) -> List[Tuple[LoopQuery, AlphabetSet, int]]:
        found = []
        if not cache1.content_at(q1, None):
            return found
        for q2 in looping2:
            letters, steps = _fixpoint(cache1, q1, cache2, q2)
            if letters:
                found.append((LoopQuery(q1, q2), letters, steps))
        return found

    workers = max(1, int(SEPARATION_CONFIG["workers"]))
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(row, a1.states))
    else:
        rows = [row(q1) for q1 in a1.states]

    table: Dict[LoopQuery, AlphabetSet] = {}
    max_steps = 0
    for entries in rows:
        for query, letters, steps in entries:
            table[query] = letters
            max_steps = max(max_steps, steps)
    logger.debug(f"루프 알파벳 표: {len(table)}개 쌍, 최대 고정점 반복 {max_steps}회")
    return table


# ====================================
# 🧱 패턴 튜플 / 확장 오토마톤
# ====================================

def enumerate_pattern_tuples(a1: Automaton, a2: Automaton) -> List[PatternTuple]:
    """
    (q1, q2, p1, r1, p2, r2) 정규 순서로 패턴 튜플 열거

    같은 (p1, r1, p2, r2)는 처음 보증한 (q1, q2) 로 한 번만 냅니다.
    """
    tuples: List[PatternTuple] = []
    seen = set()
    for query, letters in sorted(loop_alphabet_table(a1, a2).items(), key=lambda item: (item[0].q1, item[0].q2)):
        q1, q2 = query.q1, query.q2
        entries1 = path_words_to(a1, q1, letters)
        exits1 = path_words_from(a1, q1, letters)
        entries2 = path_words_to(a2, q2, letters)
        exits2 = path_words_from(a2, q2, letters)
        loop1 = covering_loop_word(a1, q1, letters)
        loop2 = covering_loop_word(a2, q2, letters)

        for p1 in sorted(entries1):
            for r1 in sorted(exits1):
                path1 = LoopPath(entries1[p1], loop1, exits1[r1])
                for p2 in sorted(entries2):
                    for r2 in sorted(exits2):
                        key = (p1, r1, p2, r2)
                        if key in seen:
                            continue
                        seen.add(key)
                        tuples.append(PatternTuple(
                            p1=p1, r1=r1, p2=p2, r2=r2,
                            witness_q1=q1, witness_q2=q2, witness_B=letters,
                            paths=(path1, LoopPath(entries2[p2], loop2, exits2[r2])),
                        ))

    logger.info(f"패턴 튜플 {len(tuples)}개 열거")
    return tuples


def build_extended(a1: Automaton, a2: Automaton) -> Tuple[ExtendedAutomaton, ExtendedAutomaton]:
    """
    Ã1, Ã2 구성: 튜플마다 공유 문자 "@<index>" 와 전이 p1→r1 (Ã1), p2→r2 (Ã2) 추가

    Raises:
        ContractError: 새 문자 이름이 원래 알파벳과 겹칠 때
    """
    prefix = SEPARATION_CONFIG["pattern_letter_prefix"]
    tuples = enumerate_pattern_tuples(a1, a2)
    names = [f"{prefix}{index}" for index in range(len(tuples))]
    clash = set(names) & (a1.alphabet | a2.alphabet)
    if clash:
        raise ContractError(f"패턴 문자 이름이 기존 문자와 겹칩니다: {sorted(clash)}")

    pattern_letters = dict(zip(names, tuples))
    extended1 = Automaton.build(
        a1.num_states,
        a1.alphabet | set(names),
        a1.initial,
        a1.final,
        list(a1.transitions) + [(t.p1, name, t.r1) for name, t in pattern_letters.items()],
    )
    extended2 = Automaton.build(
        a2.num_states,
        a2.alphabet | set(names),
        a2.initial,
        a2.final,
        list(a2.transitions) + [(t.p2, name, t.r2) for name, t in pattern_letters.items()],
    )
    return (
        ExtendedAutomaton(base=extended1, pattern_letters=pattern_letters, side=1),
        ExtendedAutomaton(base=extended2, pattern_letters=pattern_letters, side=2),
    )


def tuple_is_valid(a1: Automaton, a2: Automaton, t: PatternTuple) -> bool:
    """튜플의 경로 라벨이 실제로 p_i →(⊆B) q_i →(=B) q_i →(⊆B) r_i 를 이루는지 재검사"""
    for a, (p, q, r), path in (
        (a1, (t.p1, t.witness_q1, t.r1), t.paths[0]),
        (a2, (t.p2, t.witness_q2, t.r2), t.paths[1]),
    ):
        if not (content(path.entry) | content(path.exit)) <= t.witness_B:
            return False
        if content(path.loop) != t.witness_B:
            return False
        for start, word, end in ((p, path.entry, q), (q, path.loop, q), (q, path.exit, r)):
            states = frozenset([start])
            for letter in word:
                states = a.post(states, letter)
            if end not in states:
                return False
    return True


# ====================================
# ⚖️ 판정
# ====================================

def pattern_search(a1: Automaton, a2: Automaton) -> bool:
    """Ã1 × Ã2 곱이 비어있지 않은지를 패턴 문자 없이 허브 노드 탐색으로 판정 (True = 공통 단어 존재)"""
    hubs: Dict[AlphabetSet, set] = {}
    for query, letters in loop_alphabet_table(a1, a2).items():
        hubs.setdefault(letters, set()).add((query.q1, query.q2))
    alphabets = sorted(hubs, key=lambda letters: sorted(letters))

    # 노드: (단계, 알파벳 번호, p1, p2) - 단계 0 동기 / 1 루프 전 / 2 루프 후
    start_nodes = [(0, -1, i1, i2) for i1 in sorted(a1.initial) for i2 in sorted(a2.initial)]
    seen = set(start_nodes)
    queue = deque(start_nodes)

    def push(node):
        if node not in seen:
            seen.add(node)
            queue.append(node)

    while queue:
        phase, k, p1, p2 = queue.popleft()
        row1, row2 = a1.successors[p1], a2.successors[p2]
        if phase == 0:
            if p1 in a1.final and p2 in a2.final:
                logger.debug(f"허브 탐색: 노드 {len(seen)}개 방문 후 공통 단어 발견")
                return True
            for letter in row1.keys() & row2.keys():
                for t1 in row1[letter]:
                    for t2 in row2[letter]:
                        push((0, -1, t1, t2))
            for index in range(len(alphabets)):
                push((1, index, p1, p2))
            continue

        letters = alphabets[k]
        for letter, targets in row1.items():
            if letter in letters:
                for t1 in targets:
                    push((phase, k, t1, p2))
        for letter, targets in row2.items():
            if letter in letters:
                for t2 in targets:
                    push((phase, k, p1, t2))
        if phase == 1 and (p1, p2) in hubs[letters]:
            push((2, k, p1, p2))
        elif phase == 2:
            push((0, -1, p1, p2))

    logger.debug(f"허브 탐색: 노드 {len(seen)}개 방문, 공통 단어 없음")
    return False


def pt_separable(a1: Automaton, a2: Automaton, strategy: Optional[str] = None) -> bool:
    """
    L(a1), L(a2)가 PT 언어로 분리되는지 판정

    True: PT 분리자 존재 / False: 모든 n에 대해 v ∈ L1, w ∈ L2, v ∼n w 존재

    Args:
        strategy: "shortcut" 또는 "extended" (None이면 SEPARATION_CONFIG["strategy"])
    """
    chosen = strategy or SEPARATION_CONFIG["strategy"]
    if chosen == "extended":
        extended1, extended2 = build_extended(a1, a2)
        separable = is_empty(product(extended1.base, extended2.base))
    elif chosen == "shortcut":
        separable = not pattern_search(a1, a2)
    else:
        raise ContractError(f"알 수 없는 판정 전략: {chosen}")

    logger.info(f"PT 분리 판정({chosen}): {'분리 가능' if separable else '분리 불가'}")
    return separable


def extract_evidence(e1: ExtendedAutomaton, e2: ExtendedAutomaton) -> Optional[PatternEvidence]:
    """
    Ã1 ∩ Ã2 의 최단 (사전순 최소) 단어를 패턴으로 해독

    일반 문자 구간은 u_i, 패턴 문자 a_τ 는 해당 B 가 됩니다. 곱이 비어 있으면 None.

    Raises:
        InconsistentMetadataError: 한쪽 메타데이터에만 있는 패턴 문자
    """
    word = shortest_word(product(e1.base, e2.base))
    if word is None:
        return None

    words: List[List[str]] = [[]]
    blocks: List[AlphabetSet] = []
    for letter in word:
        left = e1.pattern_letters.get(letter)
        right = e2.pattern_letters.get(letter)
        if left is None and right is None:
            words[-1].append(letter)
            continue
        if left is None or right is None or left.key != right.key:
            raise InconsistentMetadataError(f"패턴 문자 메타데이터 불일치: {letter}")
        blocks.append(left.witness_B)
        words.append([])

    pattern = FactorizationPattern.build(words, blocks)
    logger.info(f"패턴 추출: p={pattern.p}, B={[format_alphabet(b) for b in blocks]}")
    return PatternEvidence(pattern=pattern, word=word, left=e1, right=e2)


def extract_pattern(e1: ExtendedAutomaton, e2: ExtendedAutomaton) -> Optional[FactorizationPattern]:
    """extract_evidence 의 패턴 부분만 반환"""
    evidence = extract_evidence(e1, e2)
    return evidence.pattern if evidence else None


def separation_evidence(a1: Automaton, a2: Automaton) -> Optional[PatternEvidence]:
    """build_extended → extract_evidence (데스크 규모 입력의 --evidence 출력용)"""
    extended1, extended2 = build_extended(a1, a2)
    return extract_evidence(extended1, extended2)


def is_piecewise_testable(d: Automaton) -> bool:
    """
    DFA가 PT 언어를 인식하는지: 언어와 그 여집합이 PT 분리되는지로 판정

    Raises:
        ContractError: 비결정적 입력
    """
    if not d.is_deterministic:
        raise ContractError("is_piecewise_testable은 결정적 오토마톤만 받습니다")
    return pt_separable(d, complement(d))
