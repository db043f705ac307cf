"""
=================================================================
🔚 PT 분리 판정 툴킷 - 접두사 분리 관리자 모듈 (prefix_manager.py)
=================================================================

📋 파일 역할:
- 접두사 판정 가능(prefix-testable) 언어로의 분리 판정
- 트림 후 모든 상태를 수락으로 둔 Büchi 폐포 구성
- 모든 상태가 수락인 Büchi 곱의 공집합 판정 (도달 가능한 사이클 = 올가미)
- 역오토마톤으로 대칭 판정하는 접미사(suffix-testable) 분리

⚡ 판정 순서:
1. L(a1) ∩ L(a2) = ∅ 인지 확인 (곱 공집합)
2. 두 Büchi 폐포의 곱에 도달 가능한 사이클이 없는지 확인
"""

import logging
from dataclasses import dataclass
from typing import FrozenSet, List, Optional, Tuple

from automaton_manager import (
    Automaton,
    Word,
    format_word,
    is_empty,
    path_word,
    product,
    reachable_from,
    reverse,
    tarjan_scc,
    trim,
)
from errors import ContractError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class BuchiAutomaton:
    """무한 단어 오토마톤 - 수락 상태를 무한히 자주 방문하는 실행이 수락"""

    automaton: Automaton
    accepting: FrozenSet[int]

    def __post_init__(self):
        outside = [q for q in self.accepting if not 0 <= q < self.automaton.num_states]
        if outside:
            raise ContractError(f"Büchi 수락 상태 범위 초과: {sorted(outside)}")

    @property
    def all_accepting(self) -> bool:
        return len(self.accepting) == self.automaton.num_states


def closure_buchi(a: Automaton) -> BuchiAutomaton:
    """트림 후 모든 상태를 수락으로 표시 (L(a)의 위상 폐포에 속하는 무한 단어)"""
    trimmed = trim(a)
    return BuchiAutomaton(automaton=trimmed, accepting=frozenset(trimmed.states))


def _nontrivial_components(a: Automaton) -> List[FrozenSet[int]]:
    """크기 2 이상이거나 자기 루프가 있는 강연결요소"""
    scc = tarjan_scc(a)
    loops = {p for p, _, q in a.transitions if p == q}
    return [members for members in scc.components if len(members) > 1 or members & loops]


def find_lasso(b1: BuchiAutomaton, b2: BuchiAutomaton) -> Optional[Tuple[Word, Word]]:
    """
    두 Büchi 오토마톤이 함께 수락하는 u·v^ω 의 (u, v), 없으면 None

    Raises:
        ContractError: 모든 상태가 수락이 아닌 입력 (플래그 없는 곱은 이 경우에만 유효)
    """
    for name, b in (("b1", b1), ("b2", b2)):
        if not b.all_accepting:
            raise ContractError(f"{name}: 모든 상태가 수락인 Büchi 오토마톤만 받습니다")

    joint = product(b1.automaton, b2.automaton)
    components = _nontrivial_components(joint)
    if not components:
        return None

    # product()는 도달 가능한 쌍만 만들므로 모든 요소가 도달 가능
    members = components[-1]
    anchor = min(members)
    stem = None
    for start in sorted(joint.initial):
        stem = path_word(joint, start, anchor)
        if stem is not None:
            break
    cycle = _cycle_word(joint, anchor, members)
    logger.debug(f"올가미 발견: {format_word(stem)} ({format_word(cycle)})^ω")
    return stem, cycle


def _cycle_word(a: Automaton, anchor: int, members: FrozenSet[int]) -> Word:
    """anchor 에서 시작해 같은 요소 안에서 anchor 로 돌아오는 비어있지 않은 경로 라벨"""
    for source, letter, target in a.sorted_transitions:
        if source == anchor and target in members:
            back = path_word(a, target, anchor)
            return (letter,) + back
    raise ContractError(f"상태 {anchor}를 지나는 사이클이 없습니다")


def buchi_product_nonempty(b1: BuchiAutomaton, b2: BuchiAutomaton) -> bool:
    """곱에 도달 가능한 사이클이 있으면 True (모든 상태가 수락이므로 곧 올가미)"""
    return find_lasso(b1, b2) is not None


def accepts_lasso(b: BuchiAutomaton, stem: Word, cycle: Word) -> bool:
    """
    궁극적 주기 단어 stem·cycle^ω 수락 여부

    (상태, cycle 위치) 그래프에서 도달 가능한 사이클이 수락 상태를 지나는지 봅니다.

    Raises:
        ContractError: 빈 cycle
    """
    if not cycle:
        raise ContractError("사이클 단어는 비어 있을 수 없습니다")

    a = b.automaton
    current = a.initial
    for letter in stem:
        current = a.post(current, letter)

    period = len(cycle)

    def node_of(q: int, i: int) -> int:
        return q * period + i

    transitions = [
        (node_of(q, i), "step", node_of(t, (i + 1) % period))
        for q in a.states
        for i in range(period)
        for t in a.successors[q].get(cycle[i], ())
    ]
    graph = Automaton.build(a.num_states * period, ["step"], (node_of(q, 0) for q in current), [], transitions)
    live = reachable_from(graph, graph.initial)
    for members in _nontrivial_components(graph):
        if members & live and any(node // period in b.accepting for node in members):
            return True
    return False


def prefix_separable(a1: Automaton, a2: Automaton) -> bool:
    """
    L(a1), L(a2) 가 접두사 판정 가능 언어로 분리되는지

    공통 유한 단어가 없고 두 폐포가 공통 무한 단어를 갖지 않으면 True.
    """
    if not is_empty(product(a1, a2)):
        logger.info("접두사 분리 판정: 공통 유한 단어 존재 → 분리 불가")
        return False
    separable = not buchi_product_nonempty(closure_buchi(a1), closure_buchi(a2))
    logger.info(f"접두사 분리 판정: {'분리 가능' if separable else '공통 폐포 점 존재 → 분리 불가'}")
    return separable


def suffix_separable(a1: Automaton, a2: Automaton) -> bool:
    """접미사 판정 가능 언어 (A*u 의 불리언 조합) 분리 - 역언어의 접두사 분리와 같음"""
    return prefix_separable(reverse(a1), reverse(a2))
