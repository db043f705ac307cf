"""
=================================================================
🧵 PT 분리 판정 툴킷 - 인수분해 패턴 모듈 (pattern_manager.py)
=================================================================

📋 파일 역할:
- 인수분해 패턴 (u⃗, B⃗) 표현
- 패턴 증인 단어 u0·b1^n·u1·…·bp^n·up 생성 (b_i = B_i 문자를 정렬해 이은 단어)
- 적절성(proper) 판정과 정규화 (경계 문자 흡수, 비교 가능한 인접 알파벳 병합)
- L(u⃗, B⃗, n) = u0 (=B1)^n u1 … (=Bp)^n up 소속 판정

🔗 연동 관계:
- separation_manager.py: extract_pattern 결과 타입
- cli.py: --evidence 출력, witness 명령
"""

import logging
from dataclasses import dataclass
from typing import Iterable, List, Tuple

from automaton_manager import AlphabetSet, Word, format_alphabet, format_word
from errors import ContractError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FactorizationPattern:
    """(u⃗, B⃗): 단어 u0..up 와 비어있지 않은 부분 알파벳 B1..Bp"""

    u: Tuple[Word, ...]
    B: Tuple[AlphabetSet, ...]

    def __post_init__(self):
        if len(self.u) != len(self.B) + 1:
            raise ContractError(f"|u| = |B| + 1 이어야 합니다: |u|={len(self.u)}, |B|={len(self.B)}")
        for index, letters in enumerate(self.B, start=1):
            if not letters:
                raise ContractError(f"B{index}가 비어 있습니다")

    @classmethod
    def build(cls, u: Iterable[Iterable[str]], B: Iterable[Iterable[str]]) -> "FactorizationPattern":
        return cls(u=tuple(tuple(w) for w in u), B=tuple(frozenset(b) for b in B))

    @property
    def p(self) -> int:
        return len(self.B)

    def lines(self) -> List[str]:
        """보고서 표기: u0, B1, u1, …, Bp, up 순서의 `u: …` / `B: …` 줄"""
        rows = [f"u: {format_word(self.u[0])}"]
        for letters, word in zip(self.B, self.u[1:]):
            rows.append(f"B: {format_alphabet(letters)}")
            rows.append(f"u: {format_word(word)}")
        return rows


def loop_word(letters: AlphabetSet) -> Word:
    """내용이 정확히 letters인 정규 루프 단어 (정렬된 문자)"""
    return tuple(sorted(letters))


def pattern_witness(pat: FactorizationPattern, n: int) -> Word:
    """
    u0·(b1)^n·u1·…·(bp)^n·up

    Raises:
        ContractError: n < 1
    """
    if n < 1:
        raise ContractError(f"증인 레벨은 1 이상이어야 합니다: {n}")
    word: List[str] = list(pat.u[0])
    for letters, tail in zip(pat.B, pat.u[1:]):
        word.extend(loop_word(letters) * n)
        word.extend(tail)
    return tuple(word)


# ====================================
# 🧹 적절성 / 정규화
# ====================================

def _comparable(left: AlphabetSet, right: AlphabetSet) -> bool:
    return left <= right or right <= left


def is_proper(pat: FactorizationPattern) -> bool:
    """
    적절한 패턴인지 판정

    1. 블록 B_i 바로 앞 단어의 마지막 문자와 바로 뒤 단어의 첫 문자가 B_i에 없음
    2. 두 블록 사이 단어가 비어 있으면 두 알파벳은 서로 포함 관계가 아님
    """
    for i, letters in enumerate(pat.B):
        before, after = pat.u[i], pat.u[i + 1]
        if before and before[-1] in letters:
            return False
        if after and after[0] in letters:
            return False
    for i in range(pat.p - 1):
        if not pat.u[i + 1] and _comparable(pat.B[i], pat.B[i + 1]):
            return False
    return True


def normalize(pat: FactorizationPattern) -> FactorizationPattern:
    """
    흡수 규칙을 고정점까지 적용해 적절한 패턴으로 변환

    - a ∈ B 이면 w·a·(=B)^n ⊆ w·(=B)^n : 블록에 붙은 문자를 블록으로 흡수
    - B ⊆ B' 이면 (=B)^n (=B')^n ⊆ (=B')^n : 빈 단어로 붙은 비교 가능한 블록 병합

    n ≥ 1 에서 L(pat, n) ⊆ L(normalize(pat), n) 이 유지됩니다.
    """
    words: List[List[str]] = [list(w) for w in pat.u]
    blocks: List[AlphabetSet] = list(pat.B)

    changed = True
    while changed:
        changed = False
        for i, letters in enumerate(blocks):
            while words[i] and words[i][-1] in letters:
                words[i].pop()
                changed = True
            while words[i + 1] and words[i + 1][0] in letters:
                words[i + 1].pop(0)
                changed = True
        for i in range(len(blocks) - 1):
            if not words[i + 1] and _comparable(blocks[i], blocks[i + 1]):
                blocks[i] = blocks[i] | blocks[i + 1]
                del blocks[i + 1]
                del words[i + 1]
                changed = True
                break

    result = FactorizationPattern.build(words, blocks)
    if result != pat:
        logger.debug(f"패턴 정규화: p={pat.p} → p={result.p}")
    return result


# ====================================
# ✅ 패턴 언어 소속
# ====================================

def _block_matches(segment: Tuple[str, ...], letters: AlphabetSet, n: int) -> bool:
    """segment ∈ (=letters)^n 인지: 탐욕적으로 완성되는 조각 수가 n 이상이면 참"""
    if n == 0:
        return not segment
    pieces = 0
    seen = set()
    for letter in segment:
        if letter not in letters:
            return False
        seen.add(letter)
        if len(seen) == len(letters):
            pieces += 1
            seen = set()
    return pieces >= n


def matches_pattern(word: Iterable[str], pat: FactorizationPattern, n: int) -> bool:
    """word ∈ L(u⃗, B⃗, n) = u0 (=B1)^n u1 … (=Bp)^n up"""
    w = tuple(word)
    head = pat.u[0]
    if w[: len(head)] != head:
        return False
    positions = {len(head)}
    for letters, tail in zip(pat.B, pat.u[1:]):
        advanced = set()
        for start in positions:
            for end in range(start, len(w) + 1):
                if w[end: end + len(tail)] != tail:
                    continue
                if _block_matches(w[start:end], letters, n):
                    advanced.add(end + len(tail))
        positions = advanced
        if not positions:
            return False
    return len(w) in positions
