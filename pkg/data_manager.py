"""
======================================================================
PT 분리 판정 툴킷 - 데이터 관리 모듈 (data_manager.py)
======================================================================

📋 파일 역할:
- `.aut` 텍스트 형식 파싱 / 직렬화 / 파일 입출력
- DIMACS CNF 파싱 / 쓰기
- 교차검증 보고서 내보내기 (csv / json / xlsx)

🔧 `.aut` 형식 (UTF-8, 줄 단위, '#'로 시작하는 토큰부터 줄 끝까지 주석):
    alphabet: <tok> <tok> ...
    states: <n>
    initial: <i> ...
    final: <i> ...
    trans: <p> <tok> <q>      (0개 이상)

직렬화는 위 순서로 섹션을 내보내고 전이는 (p, tok, q) 순으로 정렬합니다.

🔗 연동 관계:
- cli.py: 모든 명령의 입력 파일 로드
- hardness_manager.py: gen-sat 결과 저장
- report_manager.py: 코퍼스 로드와 보고서 내보내기
"""

import logging
import os
from typing import Dict, List, Optional, Tuple

import pandas as pd

from automaton_manager import Automaton, is_valid_token
from config import DATA_CONFIG, SEPARATION_CONFIG
from errors import ContractError, ParseError
from hardness_manager import Cnf3

logger = logging.getLogger(__name__)

_SECTION_ORDER = ("alphabet", "states", "initial", "final", "trans")


# ====================================
# 📄 .aut 파싱 / 직렬화
# ====================================

def _strip_comment(line: str) -> List[str]:
    """공백 단위 토큰화 후 '#'로 시작하는 토큰부터 버림"""
    tokens = []
    for token in line.split():
        if token.startswith("#"):
            break
        tokens.append(token)
    return tokens


def _parse_state(token: str, line_number: int) -> int:
    try:
        value = int(token)
    except ValueError:
        raise ParseError(f"상태 번호가 정수가 아닙니다: {token!r}", line_number)
    if value < 0:
        raise ParseError(f"상태 번호는 음수일 수 없습니다: {value}", line_number)
    return value


def parse_automaton(text: str, allow_reserved: bool = False) -> Automaton:
    """
    `.aut` 텍스트를 Automaton으로 변환

    Args:
        text: `.aut` 형식 문자열
        allow_reserved: 패턴 문자 접두사("@")로 시작하는 토큰 허용 여부
                        (확장 오토마톤을 다시 읽을 때만 True)

    Returns:
        Automaton: 파싱된 오토마톤

    Raises:
        ParseError: 구문 오류, 선언되지 않은 문자, 상태 번호 범위 초과 (줄 번호 포함)
    """
    reserved_prefix = SEPARATION_CONFIG["pattern_letter_prefix"]
    seen: Dict[str, int] = {}
    alphabet: Optional[List[str]] = None
    num_states: Optional[int] = None
    initial: List[int] = []
    final: List[int] = []
    transitions: List[Tuple[int, str, int]] = []

    for line_number, raw_line in enumerate(text.splitlines(), start=1):
        tokens = _strip_comment(raw_line)
        if not tokens:
            continue

        head = tokens[0]
        if ":" in head and not head.endswith(":"):
            # "alphabet:a b" 처럼 붙여 쓴 경우
            key, _, rest = head.partition(":")
            tokens = [key + ":"] + ([rest] if rest else []) + tokens[1:]
            head = tokens[0]
        if not head.endswith(":"):
            raise ParseError(f"섹션 이름이 필요합니다: {head!r}", line_number)
        key = head[:-1]
        values = tokens[1:]

        if key not in _SECTION_ORDER:
            raise ParseError(f"알 수 없는 섹션: {key!r}", line_number)
        if key != "trans" and key in seen:
            raise ParseError(f"중복 섹션: {key!r} (처음 {seen[key]}번째 줄)", line_number)
        seen.setdefault(key, line_number)

        if key in ("initial", "final", "trans") and (alphabet is None or num_states is None):
            raise ParseError("alphabet과 states 섹션이 먼저 와야 합니다", line_number)

        if key == "alphabet":
            for token in values:
                if not is_valid_token(token):
                    raise ParseError(f"잘못된 문자 토큰: {token!r}", line_number)
                if token.startswith(reserved_prefix) and not allow_reserved:
                    raise ParseError(
                        f"'{reserved_prefix}'로 시작하는 토큰은 패턴 문자용으로 예약되어 있습니다: {token!r}",
                        line_number,
                    )
            if len(set(values)) != len(values):
                raise ParseError("alphabet에 중복 문자가 있습니다", line_number)
            alphabet = values
        elif key == "states":
            if len(values) != 1:
                raise ParseError("states에는 정수 하나가 필요합니다", line_number)
            num_states = _parse_state(values[0], line_number)
        elif key in ("initial", "final"):
            target = initial if key == "initial" else final
            for token in values:
                state = _parse_state(token, line_number)
                if state >= num_states:
                    raise ParseError(f"상태 번호 범위 초과: {state} (상태 수 {num_states})", line_number)
                target.append(state)
        else:
            if len(values) != 3:
                raise ParseError("trans 형식은 '<p> <tok> <q>' 입니다", line_number)
            source = _parse_state(values[0], line_number)
            letter = values[1]
            target_state = _parse_state(values[2], line_number)
            if letter not in alphabet:
                raise ParseError(f"선언되지 않은 문자: {letter!r}", line_number)
            for state in (source, target_state):
                if state >= num_states:
                    raise ParseError(f"상태 번호 범위 초과: {state} (상태 수 {num_states})", line_number)
            transitions.append((source, letter, target_state))

    if alphabet is None:
        raise ParseError("alphabet 섹션이 없습니다")
    if num_states is None:
        raise ParseError("states 섹션이 없습니다")

    automaton = Automaton.build(num_states, alphabet, initial, final, transitions)
    logger.debug(f"오토마톤 파싱 완료: 상태 {num_states}개, 전이 {len(automaton.transitions)}개")
    return automaton


def serialize_automaton(a: Automaton) -> str:
    """Automaton을 정규 `.aut` 텍스트로 변환 (섹션 순서 고정, 전이 정렬)"""
    def section(key: str, items) -> str:
        body = " ".join(str(item) for item in items)
        return f"{key}: {body}" if body else f"{key}:"

    lines = [
        section("alphabet", a.sorted_alphabet),
        section("states", [a.num_states]),
        section("initial", sorted(a.initial)),
        section("final", sorted(a.final)),
    ]
    lines.extend(f"trans: {p} {letter} {q}" for p, letter, q in a.sorted_transitions)
    return "\n".join(lines) + "\n"


def load_automaton(path: str, allow_reserved: bool = False) -> Automaton:
    """
    `.aut` 파일 로드

    Raises:
        OSError: 파일을 읽을 수 없을 때 (상위로 전파)
        ParseError: 구문 오류 (메시지에 파일 경로 포함)
    """
    with open(path, "r", encoding=DATA_CONFIG["encoding"]) as f:
        text = f.read()
    try:
        return parse_automaton(text, allow_reserved=allow_reserved)
    except ParseError as e:
        logger.error(f"오토마톤 파싱 실패: {path} - {e}")
        raise ParseError(f"{path}: {e}") from e


def save_automaton(a: Automaton, path: str) -> None:
    """Automaton을 `.aut` 파일로 저장 (파일 전체 덮어쓰기)"""
    with open(path, "w", encoding=DATA_CONFIG["encoding"]) as f:
        f.write(serialize_automaton(a))
    logger.info(f"오토마톤 저장 완료: {path}")


# ====================================
# 🧮 DIMACS CNF
# ====================================

def parse_dimacs(text: str) -> Cnf3:
    """
    DIMACS CNF 텍스트 파싱

    'c' 주석 줄, 'p cnf <vars> <clauses>' 헤더, 0으로 끝나는 절(여러 줄에 걸칠 수 있음)을 읽습니다.
    '%' 줄이 나오면 읽기를 멈춥니다.

    Raises:
        ParseError: 헤더 누락/형식 오류, 정수가 아닌 리터럴, 0으로 끝나지 않은 절,
                    3-CNF 조건 위반
    """
    num_vars: Optional[int] = None
    declared_clauses = 0
    clauses: List[Tuple[int, ...]] = []
    pending: List[int] = []
    pending_line = 0

    for line_number, raw_line in enumerate(text.splitlines(), start=1):
        line = raw_line.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("%"):
            break
        if line.startswith("p"):
            parts = line.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise ParseError(f"잘못된 헤더: {line}", line_number)
            if num_vars is not None:
                raise ParseError("헤더가 두 번 나왔습니다", line_number)
            try:
                num_vars, declared_clauses = int(parts[2]), int(parts[3])
            except ValueError:
                raise ParseError(f"헤더 값이 정수가 아닙니다: {line}", line_number)
            continue
        if num_vars is None:
            raise ParseError("'p cnf' 헤더 전에 절이 나왔습니다", line_number)

        for token in line.split():
            try:
                literal = int(token)
            except ValueError:
                raise ParseError(f"리터럴이 정수가 아닙니다: {token!r}", line_number)
            if not pending:
                pending_line = line_number
            if literal == 0:
                if not pending:
                    raise ParseError("빈 절은 허용되지 않습니다", line_number)
                clauses.append(tuple(pending))
                pending = []
            else:
                pending.append(literal)

    if num_vars is None:
        raise ParseError("'p cnf' 헤더가 없습니다")
    if pending:
        raise ParseError("절이 0으로 끝나지 않았습니다", pending_line)
    if len(clauses) != declared_clauses:
        logger.warning(f"헤더의 절 수({declared_clauses})와 실제 절 수({len(clauses)})가 다릅니다")

    try:
        return Cnf3(num_vars=num_vars, clauses=tuple(clauses))
    except ContractError as e:
        raise ParseError(str(e)) from e


def load_dimacs(path: str) -> Cnf3:
    """DIMACS CNF 파일 로드"""
    with open(path, "r", encoding=DATA_CONFIG["encoding"]) as f:
        return parse_dimacs(f.read())


def write_dimacs(f: Cnf3) -> str:
    """Cnf3를 DIMACS 텍스트로 변환"""
    lines = [f"p cnf {f.num_vars} {len(f.clauses)}"]
    lines.extend(" ".join(str(lit) for lit in clause) + " 0" for clause in f.clauses)
    return "\n".join(lines) + "\n"


# ====================================
# 📊 보고서 내보내기
# ====================================

def export_table(table: pd.DataFrame, path: str) -> str:
    """
    교차검증 / 측정 표를 파일로 내보내기

    확장자로 형식을 고릅니다: .csv, .json, .xlsx (xlsxwriter 엔진)

    Args:
        table: 내보낼 DataFrame
        path: 출력 파일 경로

    Returns:
        str: 실제로 쓴 파일 경로

    Raises:
        ContractError: 지원하지 않는 확장자
    """
    folder = os.path.dirname(os.path.abspath(path))
    os.makedirs(folder, exist_ok=True)
    suffix = os.path.splitext(path)[1].lower()

    if suffix == ".csv":
        table.to_csv(path, index=False, encoding=DATA_CONFIG["encoding"])
    elif suffix == ".json":
        table.to_json(path, orient="records", force_ascii=False, indent=2)
    elif suffix == ".xlsx":
        with pd.ExcelWriter(path, engine="xlsxwriter") as writer:
            table.to_excel(writer, index=False, sheet_name="report")
    else:
        raise ContractError(f"지원하지 않는 형식: {suffix or path}")

    logger.info(f"보고서 저장 완료: {path} ({len(table)}행)")
    return path
