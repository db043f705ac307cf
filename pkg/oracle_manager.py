"""
=================================================================
🔬 PT 분리 판정 툴킷 - 부분단어 오라클 모듈 (oracle_manager.py)
=================================================================

📋 파일 역할:
- Sub_n(u): 길이 n 이하 흩어진 부분단어 집합 계산
- 오토마톤 언어가 만나는 ∼n 클래스 전체 열거 (부분집합 × 프로파일 BFS)
- 브루트포스 PT 분리 오라클: 두 프로파일 집합이 서로소가 되는 최소 n 탐색

🔗 주요 컴포넌트:
- SubwordProfile: 정렬된 단어 목록으로 저장 (구조적 동등성)
- OracleVerdict: separable_at(n) 또는 common_class_up_to(n_max)

⚠️ 데스크 규모 전용: 상태 수, 레벨, BFS 노드 수를 ORACLE_CONFIG로 제한합니다.
"""

import itertools
import logging
from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from typing import FrozenSet, Iterable, Optional, Set, Tuple

from automaton_manager import Automaton, Word, format_word
from config import ORACLE_CONFIG
from errors import BoundExceededError, ContractError

logger = logging.getLogger(__name__)


def _canonical(words: Iterable[Word]) -> Tuple[Word, ...]:
    return tuple(sorted(set(words), key=lambda w: (len(w), w)))


@dataclass(frozen=True)
class SubwordProfile:
    """∼n 클래스 식별자: Sub_n(u)를 (길이, 사전순) 정렬한 단어 목록"""

    n: int
    subwords: Tuple[Word, ...]

    @classmethod
    def of(cls, n: int, words: Iterable[Word]) -> "SubwordProfile":
        return cls(n=n, subwords=_canonical(words))

    def __contains__(self, word) -> bool:
        return tuple(word) in set(self.subwords)

    def __len__(self) -> int:
        return len(self.subwords)

    def describe(self) -> str:
        return "{" + ", ".join(format_word(w) for w in self.subwords) + "}"


@dataclass(frozen=True)
class OracleVerdict:
    """오라클 판정 - separable이면 level은 분리되는 최소 n, 아니면 확인한 n_max"""

    separable: bool
    level: int
    common_profile: Optional[SubwordProfile] = None

    def describe(self) -> str:
        if self.separable:
            return f"SEPARABLE at n={self.level}"
        return f"COMMON_CLASS up to n={self.level}"


# ====================================
# 📐 부분단어
# ====================================

def _extend(profile: FrozenSet[Word], letter: str, n: int) -> FrozenSet[Word]:
    """Sub_n(ua) = Sub_n(u) ∪ {xa : x ∈ Sub_n(u), |xa| ≤ n}"""
    grown = {w + (letter,) for w in profile if len(w) < n}
    if grown <= profile:
        return profile
    return profile | grown


def _profile_words(w: Iterable[str], n: int) -> FrozenSet[Word]:
    profile: FrozenSet[Word] = frozenset({()})
    for letter in w:
        profile = _extend(profile, letter, n)
    return profile


def subword_profile(w: Iterable[str], n: int) -> SubwordProfile:
    """
    Sub_n(w) 계산 (점진 규칙)

    Raises:
        ContractError: n < 0
    """
    if n < 0:
        raise ContractError(f"레벨은 음수일 수 없습니다: {n}")
    return SubwordProfile.of(n, _profile_words(w, n))


def is_subword(u: Iterable[str], v: Iterable[str]) -> bool:
    """u ⊲ v (u가 v의 흩어진 부분단어인지) - 탐욕 매칭"""
    remaining = iter(v)
    return all(letter in remaining for letter in u)


def naive_subwords(w: Iterable[str], n: int) -> SubwordProfile:
    """모든 위치 부분집합을 나열하는 O(2^|w|) 기준 구현 (교차검증용)"""
    letters = tuple(w)
    found: Set[Word] = set()
    for size in range(0, min(n, len(letters)) + 1):
        for positions in itertools.combinations(range(len(letters)), size):
            found.add(tuple(letters[i] for i in positions))
    return SubwordProfile.of(n, found)


# ====================================
# 🧭 언어 단위 프로파일 집합
# ====================================

@lru_cache(maxsize=256)
def _profile_frozensets(a: Automaton, n: int) -> FrozenSet[FrozenSet[Word]]:
    """(부분집합 상태, 프로파일) 쌍 BFS로 L(a)가 만나는 Sub_n 값 전체"""
    budget = ORACLE_CONFIG["max_nodes"]
    start = (frozenset(a.initial), frozenset({()}))
    seen = {start}
    queue = deque([start])
    results: Set[FrozenSet[Word]] = set()

    while queue:
        subset, profile = queue.popleft()
        if subset & a.final:
            results.add(profile)
        for letter in a.sorted_alphabet:
            target = a.post(subset, letter)
            if not target:
                continue
            node = (target, _extend(profile, letter, n))
            if node not in seen:
                seen.add(node)
                if len(seen) > budget:
                    raise BoundExceededError("max_nodes", budget, f"profile_set n={n}")
                queue.append(node)

    logger.debug(f"프로파일 BFS: n={n}, 노드 {len(seen)}개, 클래스 {len(results)}개")
    return frozenset(results)


def _check_bounds(a: Automaton, n: int) -> None:
    if n < 0:
        raise ContractError(f"레벨은 음수일 수 없습니다: {n}")
    if a.num_states > ORACLE_CONFIG["max_states"]:
        raise BoundExceededError("max_states", ORACLE_CONFIG["max_states"], f"상태 {a.num_states}개")
    if n > ORACLE_CONFIG["max_level"]:
        raise BoundExceededError("max_level", ORACLE_CONFIG["max_level"], f"n={n}")


def profile_set(a: Automaton, n: int) -> FrozenSet[SubwordProfile]:
    """
    {Sub_n(w) : w ∈ L(a)} 정확히 계산

    프로파일은 유한 격자에서 단조 증가하므로 BFS는 항상 종료합니다.

    Raises:
        BoundExceededError: 상태 수 / 레벨 / 노드 수 한도 초과
    """
    _check_bounds(a, n)
    return frozenset(SubwordProfile.of(n, p) for p in _profile_frozensets(a, n))


def oracle_pt_separable(a1: Automaton, a2: Automaton, n_max: Optional[int] = None) -> OracleVerdict:
    """
    n = 0..n_max 에서 두 언어의 ∼n 클래스 집합이 서로소인 최소 n 탐색

    Returns:
        OracleVerdict: separable_at(n) 또는 모든 n ≤ n_max 에서 공통 클래스 존재
                       (공통 클래스 예시는 n_max 레벨의 정렬 최소 프로파일)
    """
    limit = ORACLE_CONFIG["default_max_n"] if n_max is None else n_max
    if limit < 0:
        raise ContractError(f"n_max는 음수일 수 없습니다: {limit}")
    common_example: Optional[SubwordProfile] = None
    for n in range(0, limit + 1):
        _check_bounds(a1, n)
        _check_bounds(a2, n)
        shared = _profile_frozensets(a1, n) & _profile_frozensets(a2, n)
        if not shared:
            logger.info(f"오라클: n={n}에서 분리")
            return OracleVerdict(separable=True, level=n)
        profiles = sorted((SubwordProfile.of(n, p) for p in shared), key=lambda p: (len(p), p.subwords))
        common_example = profiles[0]

    logger.info(f"오라클: n≤{limit}에서 공통 클래스 존재")
    return OracleVerdict(separable=False, level=limit, common_profile=common_example)
