"""
PT 분리 판정 툴킷 - 중앙집중식 설정 관리

이 파일은 판정 알고리즘, 오라클, 하드니스 생성기, CLI가 공유하는 설정을 관리합니다.
주요 구조:
- SEPARATION_CONFIG: 패턴 문자 접두사, 판정 전략, 병렬 워커 수
- ORACLE_CONFIG: 부분단어 오라클의 자원 한도 (데스크 규모 전용)
- HARDNESS_CONFIG: 3-SAT 환원 탐색 한도
- LOG_CONFIG: 로그 레벨과 타임존
- .env 파일 또는 환경변수(PTSEP_<SECTION>_<KEY>)로 값 덮어쓰기 가능
"""

import os

from dotenv import load_dotenv

load_dotenv()

# 📱 애플리케이션 기본 정보
APP_CONFIG = {
    "name": "ptsep",
    "version": "1.0.0",
    "description": "Piecewise testable / prefix-testable separation toolkit",
}

# 📁 로컬 데이터 경로 설정
PROJECT_ROOT = os.path.dirname(os.path.abspath(__file__))

DATA_CONFIG = {
    "corpus_folder": os.path.join(PROJECT_ROOT, "corpus"),
    "aut_suffix": ".aut",
    "encoding": "utf-8",
}

# 🧩 PT 분리 판정 설정
SEPARATION_CONFIG = {
    # 확장 오토마톤에 추가되는 패턴 문자 이름: "@0", "@1", ...
    "pattern_letter_prefix": "@",
    # "shortcut": 허브 노드로 패턴 문자를 시뮬레이션 / "extended": 확장 오토마톤을 그대로 구성
    "strategy": "shortcut",
    # (q1, q2) 고정점 계산 병렬 워커 수 (1이면 순차)
    "workers": 1,
}

# 🔬 부분단어 오라클 설정 (브루트포스, 작은 입력 전용)
ORACLE_CONFIG = {
    "max_states": 12,
    "max_level": 8,
    "max_nodes": 400_000,
    "default_max_n": 4,
}

# 🧨 3-SAT 환원 / 같은 내용 탐색 설정
HARDNESS_CONFIG = {
    "default_len_bound": 12,
    "max_nodes": 2_000_000,
}

# 📝 로깅 설정
LOG_CONFIG = {
    "level": "WARNING",
    "timezone": "Asia/Seoul",
    "debug_mode": False,
    "format": "%(asctime)s [%(levelname)s] %(name)s: %(message)s",
}

# 🖥️ CLI 종료 코드
CLI_CONFIG = {
    "exit_affirmative": 0,
    "exit_negative": 1,
    "exit_error": 2,
}

_SECTIONS = {
    "app": APP_CONFIG,
    "data": DATA_CONFIG,
    "separation": SEPARATION_CONFIG,
    "oracle": ORACLE_CONFIG,
    "hardness": HARDNESS_CONFIG,
    "log": LOG_CONFIG,
    "cli": CLI_CONFIG,
}


def _coerce(raw: str, current):
    """환경변수 문자열을 기존 값의 타입으로 변환"""
    if isinstance(current, bool):
        return raw.strip().lower() in ("1", "true", "yes", "on")
    if isinstance(current, int):
        return int(raw)
    if isinstance(current, float):
        return float(raw)
    return raw


def _apply_env_overrides():
    """PTSEP_<SECTION>_<KEY> 형식의 환경변수를 설정에 반영"""
    for section_name, section in _SECTIONS.items():
        for key, current in list(section.items()):
            env_name = f"PTSEP_{section_name.upper()}_{key.upper()}"
            raw = os.getenv(env_name)
            if raw is not None:
                section[key] = _coerce(raw, current)


_apply_env_overrides()


# 🔧 유틸리티 함수들
def get_config(section: str) -> dict:
    """설정 섹션 전체 반환 (없는 섹션이면 KeyError)"""
    if section not in _SECTIONS:
        raise KeyError(f"알 수 없는 설정 섹션: {section}")
    return _SECTIONS[section]


def get_setting(section: str, key: str):
    """특정 설정값 반환"""
    return get_config(section)[key]


def update_setting(section: str, key: str, value) -> None:
    """런타임에서 설정값 덮어쓰기 (테스트와 CLI 플래그용)"""
    config = get_config(section)
    if key not in config:
        raise KeyError(f"알 수 없는 설정 키: {section}.{key}")
    config[key] = value
