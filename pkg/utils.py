"""
======================================================================
PT 분리 판정 툴킷 - 통합 유틸리티 모듈 (utils.py)
======================================================================

📋 파일 역할:
- 로깅 초기화 (타임존 적용 타임스탬프)
- 디버그 덤프 헬퍼
- 주요 기능을 각 전문 모듈에서 모아 한 곳에서 임포트할 수 있는 진입점

🔧 모듈 구조:
1. automaton_manager.py - 오토마톤 표현과 그래프 알고리즘
2. data_manager.py - .aut / DIMACS / 보고서 입출력
3. separation_manager.py - PT 분리 판정 (주 알고리즘)
4. prefix_manager.py - 접두사 / 접미사 판정 분리
5. oracle_manager.py, pattern_manager.py, forest_manager.py - 브루트포스 오라클
6. hardness_manager.py - 3-SAT 환원
7. report_manager.py - 코퍼스 교차검증과 확장성 측정

🔗 임포트 방식:
from utils import pt_separable  # 짧은 진입점
"""

import json
import logging
import sys
from datetime import datetime
from typing import Any, Optional

import pytz

from config import LOG_CONFIG

logger = logging.getLogger(__name__)

_HANDLER_NAME = "ptsep-stderr"


def now_local() -> datetime:
    """설정된 타임존의 현재 시각"""
    try:
        return datetime.now(pytz.timezone(LOG_CONFIG["timezone"]))
    except pytz.UnknownTimeZoneError:
        logger.warning(f"알 수 없는 타임존: {LOG_CONFIG['timezone']} - UTC 사용")
        return datetime.now(pytz.utc)


class _ZonedFormatter(logging.Formatter):
    """로그 타임스탬프를 설정 타임존으로 표시"""

    def formatTime(self, record, datefmt=None):
        try:
            zone = pytz.timezone(LOG_CONFIG["timezone"])
        except pytz.UnknownTimeZoneError:
            zone = pytz.utc
        stamp = datetime.fromtimestamp(record.created, zone)
        return stamp.strftime(datefmt or "%Y-%m-%d %H:%M:%S")


class _CurrentStderrHandler(logging.StreamHandler):
    """기록할 때마다 그 시점의 sys.stderr 로 출력 (교체되거나 닫힌 이전 스트림은 건드리지 않음)"""

    @property
    def stream(self):
        return sys.stderr

    @stream.setter
    def stream(self, value):
        pass


def setup_logging(level: Optional[str] = None) -> logging.Logger:
    """
    루트 로거에 stderr 핸들러를 한 번만 설치

    stdout은 보고서 전용이므로 로그는 항상 stderr로 보냅니다.

    Args:
        level: 로그 레벨 이름 (None이면 LOG_CONFIG["level"])

    Returns:
        logging.Logger: 설정된 루트 로거
    """
    root = logging.getLogger()
    level_name = (level or LOG_CONFIG["level"]).upper()
    root.setLevel(getattr(logging, level_name, logging.WARNING))

    if not any(getattr(h, "name", None) == _HANDLER_NAME for h in root.handlers):
        handler = _CurrentStderrHandler()
        handler.name = _HANDLER_NAME
        handler.setFormatter(_ZonedFormatter(LOG_CONFIG["format"]))
        root.addHandler(handler)

    return root


def debug_print(message: str, data: Any = None) -> None:
    """
    디버그 모드에서 구조화 데이터를 JSON으로 덤프

    Args:
        message: 출력할 메시지
        data: 함께 출력할 데이터 (dict, list 등)
    """
    if not LOG_CONFIG["debug_mode"]:
        return
    if data is None:
        logger.debug(message)
        return
    try:
        dumped = json.dumps(data, indent=2, ensure_ascii=False, default=str)
    except (TypeError, ValueError) as e:
        dumped = f"[JSON 직렬화 실패: {e}] {data!r}"
    logger.debug(f"{message}\n{dumped}")


# ====================================
# 📦 주요 기능 재노출
# ====================================
from automaton_manager import (  # noqa: E402
    Automaton,
    accepts,
    complement,
    determinize,
    is_empty,
    product,
    restrict,
    reverse,
    scc_content,
    tarjan_scc,
    trim,
)
from data_manager import load_automaton, parse_automaton, serialize_automaton  # noqa: E402
from separation_manager import (  # noqa: E402
    build_extended,
    extract_pattern,
    is_piecewise_testable,
    pt_separable,
)
from prefix_manager import prefix_separable, suffix_separable  # noqa: E402
from oracle_manager import oracle_pt_separable, subword_profile  # noqa: E402
from pattern_manager import normalize, pattern_witness  # noqa: E402
from forest_manager import ramsey_factorization  # noqa: E402
from hardness_manager import same_content_witness, sat_reduction  # noqa: E402
