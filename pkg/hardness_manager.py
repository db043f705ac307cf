"""
=================================================================
🧨 PT 분리 판정 툴킷 - 하드니스 관리자 모듈 (hardness_manager.py)
=================================================================

📋 파일 역할:
- 3-SAT → "같은 내용의 단어 쌍" 문제 환원 (두 DFA 생성)
- 같은 내용 단어 쌍의 완전 탐색 (지수 시간 - 경계 사례 시연용)
- 브루트포스 SAT, 해 복원, 작은 CNF 전체 집합 생성

🔗 주요 컴포넌트:
- Cnf3: 변수 수와 3개 이하 리터럴 절 목록
- sat_reduction: 𝒜1 = 변수 선택 사슬, 𝒜2 = 절 사슬 + 𝒜1 복사본
- same_content_witness: c(u) = c(v) 인 u ∈ L(𝒜1), v ∈ L(𝒜2) 탐색

⚠️ 루프가 아니라 경로에서 같은 알파벳을 요구하면 문제가 NP-완전이 되며,
   주 알고리즘이 다항 시간인 이유(루프만 비교)를 보여주는 대조군입니다.
"""

import itertools
import logging
from dataclasses import dataclass
from typing import Dict, Iterator, List, Optional, Tuple

from automaton_manager import AlphabetSet, Automaton, Word
from config import HARDNESS_CONFIG
from errors import BoundExceededError, ContractError

logger = logging.getLogger(__name__)


def literal_token(literal: int) -> str:
    """리터럴 → 문자 토큰 ("x3", "~x3")"""
    return f"x{literal}" if literal > 0 else f"~x{-literal}"


@dataclass(frozen=True)
class Cnf3:
    """3-CNF 식 - 절은 0이 아닌 부호 있는 변수 번호의 튜플"""

    num_vars: int
    clauses: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        if self.num_vars < 0:
            raise ContractError(f"변수 수는 음수일 수 없습니다: {self.num_vars}")
        for clause in self.clauses:
            if not clause:
                raise ContractError("빈 절은 허용되지 않습니다")
            if len(clause) > 3:
                raise ContractError(f"절의 리터럴이 3개를 넘습니다: {clause}")
            for literal in clause:
                if literal == 0 or abs(literal) > self.num_vars:
                    raise ContractError(f"잘못된 리터럴: {literal} (변수 수 {self.num_vars})")


@dataclass(frozen=True)
class SameContentResult:
    """같은 내용 탐색 결과 - truncated는 길이 한도 때문에 잘린 가지가 있었는지 여부"""

    pair: Optional[Tuple[Word, Word]]
    truncated: bool


# ====================================
# 🔁 환원
# ====================================

def sat_reduction(f: Cnf3) -> Tuple[Automaton, Automaton]:
    """
    3-SAT 식을 두 DFA로 환원

    - 알파벳: x1..xn, ~x1..~xn (2n개)
    - 𝒜1: 상태 0..n 사슬, i번째 단계에서 xi 또는 ~xi 선택
    - 𝒜2: 상태 0..k 절 사슬 (i번째 절의 각 리터럴마다 전이 하나) 뒤에 𝒜1 복사본

    Returns:
        Tuple[Automaton, Automaton]: (𝒜1, 𝒜2), 상태 수 n+1 과 k+n+1
    """
    n = f.num_vars
    k = len(f.clauses)
    alphabet = [literal_token(v) for v in range(1, n + 1)] + [literal_token(-v) for v in range(1, n + 1)]

    chooser = [(v - 1, literal_token(v), v) for v in range(1, n + 1)]
    chooser += [(v - 1, literal_token(-v), v) for v in range(1, n + 1)]
    a1 = Automaton.build(n + 1, alphabet, [0], [n], chooser)

    clause_chain = [
        (i, literal_token(literal), i + 1)
        for i, clause in enumerate(f.clauses)
        for literal in clause
    ]
    shifted = [(p + k, letter, q + k) for p, letter, q in chooser]
    a2 = Automaton.build(k + n + 1, alphabet, [0], [k + n], clause_chain + shifted)

    logger.info(f"3-SAT 환원: 변수 {n}개, 절 {k}개 → 상태 {a1.num_states} / {a2.num_states}")
    return a1, a2


def decode_valuation(f: Cnf3, u: Word) -> Dict[int, bool]:
    """𝒜1 단어 u에서 해 복원: xi가 u에 있으면 참"""
    letters = set(u)
    return {v: literal_token(v) in letters for v in range(1, f.num_vars + 1)}


def satisfies(f: Cnf3, valuation: Dict[int, bool]) -> bool:
    """모든 절에 참인 리터럴이 있는지"""
    return all(
        any(valuation[abs(lit)] == (lit > 0) for lit in clause)
        for clause in f.clauses
    )


def brute_force_sat(f: Cnf3) -> Optional[Dict[int, bool]]:
    """모든 할당을 (False 먼저) 순서대로 시도, 만족 할당이 없으면 None"""
    variables = range(1, f.num_vars + 1)
    for bits in itertools.product((False, True), repeat=f.num_vars):
        valuation = dict(zip(variables, bits))
        if satisfies(f, valuation):
            return valuation
    return None


def iter_cnf_family(max_vars: int = 3, max_clauses: int = 3) -> Iterator[Cnf3]:
    """
    변수 ≤ max_vars, 절 ≤ max_clauses 인 3-CNF 전체 (완전 탐색용)

    절은 서로 다른 변수의 리터럴 1~3개, 식은 절의 중복 조합입니다.
    """
    for n in range(1, max_vars + 1):
        clauses = []
        for size in range(1, min(3, n) + 1):
            for chosen in itertools.combinations(range(1, n + 1), size):
                for signs in itertools.product((1, -1), repeat=size):
                    clauses.append(tuple(v * s for v, s in zip(chosen, signs)))
        for count in range(0, max_clauses + 1):
            for combo in itertools.combinations_with_replacement(clauses, count):
                yield Cnf3(num_vars=n, clauses=combo)


# ====================================
# 🔎 같은 내용 탐색 (지수 시간)
# ====================================

def _accepted_contents(a: Automaton, len_bound: int, budget: List[int]) -> Tuple[Dict[AlphabetSet, Word], bool]:
    """
    길이 len_bound 이하 수락 단어의 내용별 대표 단어와 잘림 여부

    (상태, 내용) 쌍마다 이미 더 많은 남은 길이로 방문했으면 가지를 자릅니다.
    깊이 우선 탐색은 명시적 스택으로 진행합니다 (재귀 없음).
    """
    found: Dict[AlphabetSet, Word] = {}
    best_remaining: Dict[Tuple[int, AlphabetSet], int] = {}
    truncated = False
    word: List[str] = []

    def enter(state: int, letters: AlphabetSet, remaining: int) -> Optional[Iterator[Tuple[str, int]]]:
        """방문 처리 후 이어서 볼 (문자, 다음 상태) 반복자, 더 내려갈 곳이 없으면 None"""
        nonlocal truncated
        key = (state, letters)
        if best_remaining.get(key, -1) >= remaining:
            return None
        best_remaining[key] = remaining
        budget[0] -= 1
        if budget[0] < 0:
            raise BoundExceededError("max_nodes", HARDNESS_CONFIG["max_nodes"], "같은 내용 탐색")

        if state in a.final and letters not in found:
            found[letters] = tuple(word)
        row = a.successors[state]
        if remaining == 0:
            if row:
                truncated = True
            return None
        return iter([(letter, target) for letter in sorted(row) for target in row[letter]])

    for start in sorted(a.initial):
        edges = enter(start, frozenset(), len_bound)
        if edges is None:
            continue
        # len(word) == len(stack) - 1
        stack = [(frozenset(), len_bound, edges)]
        while stack:
            letters, remaining, edges = stack[-1]
            step = next(edges, None)
            if step is None:
                stack.pop()
                if stack:
                    word.pop()
                continue
            letter, target = step
            grown = letters | {letter}
            word.append(letter)
            child = enter(target, grown, remaining - 1)
            if child is None:
                word.pop()
            else:
                stack.append((grown, remaining - 1, child))
    return found, truncated


def same_content_witness(a1: Automaton, a2: Automaton, len_bound: Optional[int] = None) -> SameContentResult:
    """
    c(u) = c(v) 인 u ∈ L(a1), v ∈ L(a2) 완전 탐색 (지수 시간)

    길이 len_bound 이하 단어만 봅니다. 여러 내용이 공통이면 정렬된 내용이 가장 작은 것을 고릅니다.

    Returns:
        SameContentResult: pair가 None이고 truncated가 False이면 "쌍이 없음"이 확정

    Raises:
        BoundExceededError: 쌍을 못 찾았는데 길이 한도로 잘린 가지가 있을 때
                            (한도 안에서는 없음과 구별해서 보고), 또는 노드 예산 초과
    """
    bound = HARDNESS_CONFIG["default_len_bound"] if len_bound is None else len_bound
    if bound < 0:
        raise ContractError(f"길이 한도는 음수일 수 없습니다: {bound}")

    budget = [HARDNESS_CONFIG["max_nodes"]]
    left, truncated_left = _accepted_contents(a1, bound, budget)
    right, truncated_right = _accepted_contents(a2, bound, budget)
    truncated = truncated_left or truncated_right

    common = sorted(left.keys() & right.keys(), key=lambda c: (len(c), sorted(c)))
    if common:
        chosen = common[0]
        logger.info(f"같은 내용 쌍 발견: {sorted(chosen)}")
        return SameContentResult(pair=(left[chosen], right[chosen]), truncated=truncated)

    if truncated:
        raise BoundExceededError("len_bound", bound, "한도 안에서는 같은 내용 쌍이 없지만 더 긴 단어가 있습니다")
    return SameContentResult(pair=None, truncated=False)
