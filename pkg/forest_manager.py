"""
=================================================================
🌲 PT 분리 판정 툴킷 - 인수분해 숲 모듈 (forest_manager.py)
=================================================================

📋 파일 역할:
- 내용 사상 c : A+ → (2^A, ∪) 에 대한 Ramsey 인수분해 트리 생성
- 트리 구조 불변식 검사와 텍스트 렌더링

⚡ 구성 방법 (내용 C인 단어 w):
1. w를 내용이 정확히 C가 되는 가장 짧은 접두사 f1, f2, …, fk 와 나머지 r로 자름
2. f1..fk 는 모두 내용 C (2^A에서 모든 원소는 멱등) → k ≥ 3 이면 넓은 노드 하나
3. 각 fj = gj·aj (aj는 마지막으로 추가된 문자) → 이진 노드, gj는 더 작은 내용으로 재귀
4. 나머지 r이 있으면 (f1..fk) 와 r 을 이진 노드로 연결, r도 더 작은 내용으로 재귀
높이는 |C| 당 최대 3씩 늘어나므로 3·2^|C| 한도를 넉넉히 지킵니다.
"""

import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, List, Tuple

from automaton_manager import Word, content, format_word
from errors import ContractError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FactorizationTree:
    """순서 있는 트리 - 노드 라벨은 자식 라벨을 이어 붙인 단어"""

    label: Word
    children: Tuple["FactorizationTree", ...] = ()

    @cached_property
    def height(self) -> int:
        if not self.children:
            return 0
        return 1 + max(child.height for child in self.children)

    def violations(self) -> List[str]:
        """구조 불변식 위반 목록 (비어 있으면 유효한 Ramsey 트리)"""
        problems: List[str] = []
        stack = [self]
        while stack:
            node = stack.pop()
            if not node.children:
                if len(node.label) != 1:
                    problems.append(f"잎 라벨이 문자가 아님: {format_word(node.label)}")
                continue
            if len(node.children) < 2:
                problems.append(f"자식이 1개인 내부 노드: {format_word(node.label)}")
            joined = tuple(letter for child in node.children for letter in child.label)
            if joined != node.label:
                problems.append(f"라벨이 자식 라벨의 연결이 아님: {format_word(node.label)}")
            if len(node.children) >= 3:
                contents = {content(child.label) for child in node.children}
                if len(contents) != 1:
                    problems.append(f"넓은 노드의 자식 내용이 다름: {format_word(node.label)}")
            stack.extend(node.children)
        return problems

    def render(self) -> List[str]:
        """들여쓰기 텍스트 (깊이 우선, 왼쪽부터)"""
        rows: List[str] = []

        def walk(node: "FactorizationTree", depth: int):
            rows.append(f"{'  ' * depth}{format_word(node.label)}")
            for child in node.children:
                walk(child, depth + 1)

        walk(self, 0)
        return rows


def height_bound(word: Iterable[str]) -> int:
    """3·2^|c(w)|"""
    return 3 * 2 ** len(content(word))


def _node(children: List[FactorizationTree]) -> FactorizationTree:
    if len(children) == 1:
        return children[0]
    label = tuple(letter for child in children for letter in child.label)
    return FactorizationTree(label=label, children=tuple(children))


def _build(word: Word) -> FactorizationTree:
    if len(word) == 1:
        return FactorizationTree(label=word)

    full = content(word)
    blocks: List[FactorizationTree] = []
    start = 0
    seen = set()
    for end, letter in enumerate(word):
        seen.add(letter)
        if len(seen) == len(full):
            head, last = word[start:end], word[end:end + 1]
            leaf = FactorizationTree(label=last)
            blocks.append(_node([_build(head), leaf]) if head else leaf)
            start = end + 1
            seen = set()

    grouped = _node(blocks)
    rest = word[start:]
    if not rest:
        return grouped
    return _node([grouped, _build(rest)])


def ramsey_factorization(w: Iterable[str]) -> FactorizationTree:
    """
    내용 사상에 대한 Ramsey 인수분해 트리

    Raises:
        ContractError: 빈 단어
    """
    word = tuple(w)
    if not word:
        raise ContractError("빈 단어에는 인수분해 트리가 없습니다")
    tree = _build(word)
    logger.debug(f"인수분해 트리: 길이 {len(word)}, 높이 {tree.height}")
    return tree
