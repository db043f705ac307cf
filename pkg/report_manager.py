"""
=================================================================
📊 PT 분리 판정 툴킷 - 보고서 관리자 모듈 (report_manager.py)
=================================================================

📋 파일 역할:
- 작은 오토마톤 전수 생성 / 무작위 트림 NFA 생성
- 코퍼스 교차검증 표 (PT 판정 vs 오라클 vs 접두사/접미사 판정) 생성
- 확장성 측정과 로그-로그 다항 차수 추정

🔗 연동 관계:
- cli.py: check-corpus 명령
- data_manager.py: 코퍼스 로드, 표 내보내기 (csv / json / xlsx)
- tests/: 오라클 일치 / 확장성 테스트
"""

import itertools
import logging
import os
import time
from typing import Iterable, Iterator, List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd

from automaton_manager import Automaton, trim
from config import DATA_CONFIG
from data_manager import load_automaton, serialize_automaton
from errors import BoundExceededError, ContractError
from oracle_manager import oracle_pt_separable
from prefix_manager import prefix_separable, suffix_separable
from separation_manager import pt_separable
from utils import debug_print, now_local

logger = logging.getLogger(__name__)

NamedAutomaton = Tuple[str, Automaton]

CROSS_CHECK_COLUMNS = ["left", "right", "pt", "oracle", "oracle_level", "prefix", "suffix", "consistent"]


# ====================================
# 🎲 오토마톤 생성기
# ====================================

def alphabet_letters(size: int) -> List[str]:
    """크기 size의 알파벳: 26 이하면 a, b, c, … / 그 이상이면 x0, x1, …"""
    if size <= 26:
        return [chr(ord("a") + i) for i in range(size)]
    return [f"x{i}" for i in range(size)]


def iter_small_automata(num_states: int, alphabet: Sequence[str] = ("a", "b")) -> Iterator[Automaton]:
    """
    상태 num_states 개 NFA 전수 열거 (전이 부분집합 × 비어있지 않은 초기 집합 × 최종 집합)

    개수는 2^(n²|A|) · (2^n - 1) · 2^n 이므로 n ≤ 2 에서만 실용적입니다.
    """
    letters = sorted(set(alphabet))
    slots = [(p, letter, q) for p in range(num_states) for letter in letters for q in range(num_states)]
    for mask in range(1 << len(slots)):
        transitions = [slot for bit, slot in enumerate(slots) if mask >> bit & 1]
        for initial_mask in range(1, 1 << num_states):
            for final_mask in range(1 << num_states):
                yield Automaton.build(
                    num_states,
                    letters,
                    (q for q in range(num_states) if initial_mask >> q & 1),
                    (q for q in range(num_states) if final_mask >> q & 1),
                    transitions,
                )


def distinct_trimmed(automata: Iterable[Automaton]) -> List[Automaton]:
    """트림 후 직렬화가 같은 오토마톤을 하나로 (처음 나온 순서 유지)"""
    seen = set()
    result = []
    for a in automata:
        trimmed = trim(a)
        key = serialize_automaton(trimmed)
        if key not in seen:
            seen.add(key)
            result.append(trimmed)
    return result


def random_nfa(
    num_states: int,
    alphabet: Sequence[str],
    rng: np.random.Generator,
    density: float = 1.5,
) -> Automaton:
    """상태당 평균 density 개의 무작위 전이를 갖는 NFA (트림 보장 없음)"""
    letters = sorted(set(alphabet))
    count = int(rng.poisson(density * num_states))
    transitions = [
        (int(rng.integers(num_states)), letters[int(rng.integers(len(letters)))], int(rng.integers(num_states)))
        for _ in range(count)
    ]
    initial = [q for q in range(num_states) if rng.random() < 0.4] or [0]
    final = [q for q in range(num_states) if rng.random() < 0.4]
    return Automaton.build(num_states, letters, initial, final, transitions)


def random_trim_nfa(
    num_states: int,
    alphabet_size: int,
    rng: np.random.Generator,
    density: float = 2.0,
) -> Automaton:
    """
    트림된 무작위 NFA

    0 → 1 → … → n-1 척추 경로로 모든 상태가 초기 상태 0에서 도달 가능하고
    최종 상태 n-1 에 도달 가능하도록 만든 뒤, 상태당 평균 density 개의 전이를 더합니다.
    """
    letters = alphabet_letters(alphabet_size)

    def pick_letter() -> str:
        return letters[int(rng.integers(len(letters)))]

    transitions = [(q, pick_letter(), q + 1) for q in range(num_states - 1)]
    extra = int(rng.poisson(density * num_states))
    transitions.extend(
        (int(rng.integers(num_states)), pick_letter(), int(rng.integers(num_states)))
        for _ in range(extra)
    )
    final = {num_states - 1} | {q for q in range(num_states) if rng.random() < 0.1}
    return Automaton.build(num_states, letters, [0], final, transitions)


# ====================================
# 🧪 교차검증
# ====================================

def load_corpus_dir(folder: Optional[str] = None) -> List[NamedAutomaton]:
    """폴더의 .aut 파일을 파일 이름 순서로 로드"""
    folder = folder or DATA_CONFIG["corpus_folder"]
    suffix = DATA_CONFIG["aut_suffix"]
    names = sorted(name for name in os.listdir(folder) if name.endswith(suffix))
    corpus = [(name, load_automaton(os.path.join(folder, name))) for name in names]
    logger.info(f"코퍼스 로드: {folder} ({len(corpus)}개)")
    return corpus


def corpus_pairs(corpus: Sequence[NamedAutomaton]) -> List[Tuple[NamedAutomaton, NamedAutomaton]]:
    """서로 다른 두 항목의 순서쌍 (i < j)"""
    return list(itertools.combinations(corpus, 2))


def cross_check_pair(left: NamedAutomaton, right: NamedAutomaton, max_n: Optional[int] = None) -> dict:
    """
    한 쌍에 대한 교차검증 행

    consistent는 PT 분리 불가인데 오라클이 어떤 n ≤ n_max 에서 분리할 때만 False입니다.
    PT 분리 가능인데 오라클이 n_max 까지 공통 클래스를 찾은 경우는 오라클 레벨이 부족한 것으로 봅니다.
    """
    (left_name, a1), (right_name, a2) = left, right
    pt = pt_separable(a1, a2)
    try:
        verdict = oracle_pt_separable(a1, a2, max_n)
        oracle = "separable" if verdict.separable else "common"
        level = verdict.level
        consistent = pt or not verdict.separable
    except BoundExceededError as e:
        logger.warning(f"오라클 한도 초과 ({left_name}, {right_name}): {e}")
        oracle, level, consistent = "bounded", -1, True

    return {
        "left": left_name,
        "right": right_name,
        "pt": pt,
        "oracle": oracle,
        "oracle_level": level,
        "prefix": prefix_separable(a1, a2),
        "suffix": suffix_separable(a1, a2),
        "consistent": consistent,
    }


def cross_check(
    pairs: Iterable[Tuple[NamedAutomaton, NamedAutomaton]], max_n: Optional[int] = None
) -> pd.DataFrame:
    """쌍 목록 전체의 교차검증 표 (입력 순서 유지)"""
    rows = [cross_check_pair(left, right, max_n) for left, right in pairs]
    table = pd.DataFrame(rows, columns=CROSS_CHECK_COLUMNS)
    debug_print("교차검증 요약", summarize(table))
    return table


def summarize(table: pd.DataFrame) -> dict:
    """교차검증 표의 집계"""
    if table.empty:
        return {"pairs": 0, "pt_separable": 0, "oracle_common": 0, "inconsistent": 0}
    return {
        "pairs": int(len(table)),
        "pt_separable": int(table["pt"].sum()),
        "oracle_common": int((table["oracle"] == "common").sum()),
        "inconsistent": int((~table["consistent"]).sum()),
    }


def format_cross_check(table: pd.DataFrame) -> List[str]:
    """check-corpus 출력 줄 (탭 구분, 입력 순서)"""
    lines = ["\t".join(CROSS_CHECK_COLUMNS)]
    for row in table.itertuples(index=False):
        cells = [str(getattr(row, column)) for column in CROSS_CHECK_COLUMNS]
        lines.append("\t".join(cells))
    summary = summarize(table)
    lines.append(
        f"pairs={summary['pairs']} pt_separable={summary['pt_separable']} "
        f"oracle_common={summary['oracle_common']} inconsistent={summary['inconsistent']}"
    )
    return lines


# ====================================
# 📈 확장성 측정
# ====================================

def scaling_profile(
    num_states: int = 100,
    alphabet_sizes: Sequence[int] = (2, 5, 10, 20),
    repeats: int = 2,
    seed: int = 0,
) -> pd.DataFrame:
    """
    무작위 트림 NFA 쌍의 PT 판정 시간 측정

    Returns:
        pd.DataFrame: alphabet_size, num_states, repeat, seconds, separable, measured_at
    """
    rng = np.random.default_rng(seed)
    rows = []
    for size in alphabet_sizes:
        for repeat in range(repeats):
            a1 = random_trim_nfa(num_states, size, rng)
            a2 = random_trim_nfa(num_states, size, rng)
            started = time.perf_counter()
            separable = pt_separable(a1, a2)
            elapsed = time.perf_counter() - started
            rows.append({
                "alphabet_size": size,
                "num_states": num_states,
                "repeat": repeat,
                "seconds": elapsed,
                "separable": separable,
                "measured_at": now_local().isoformat(),
            })
            logger.info(f"확장성 측정: |Q|={num_states}, |A|={size}, {elapsed:.3f}s")
    return pd.DataFrame(rows)


def fit_growth_degree(table: pd.DataFrame, x: str = "alphabet_size", y: str = "seconds") -> float:
    """
    log y = d · log x + c 최소제곱 기울기 d (다항 성장 차수 추정)

    x 값별 평균을 먼저 구하고, 0초 측정은 1마이크로초로 올려 계산합니다.
    """
    grouped = table.groupby(x)[y].mean()
    if len(grouped) < 2:
        raise ContractError(f"{x} 값이 2개 이상 필요합니다")
    xs = np.log(grouped.index.to_numpy(dtype=float))
    ys = np.log(np.maximum(grouped.to_numpy(dtype=float), 1e-6))
    slope, _ = np.polyfit(xs, ys, 1)
    return float(slope)
