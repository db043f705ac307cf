"""
PT 분리 판정 툴킷 - 예외 정의

모든 예외는 SeparationError 아래에 모이며, 기존 코드가 잡던 ValueError / KeyError /
RuntimeError 계열도 함께 상속하여 `except ValueError` 처리가 그대로 동작합니다.
"""

from typing import Optional


class SeparationError(Exception):
    """툴킷 예외의 최상위 클래스"""


class ParseError(SeparationError, ValueError):
    """`.aut` / DIMACS 텍스트 구문 오류 (줄 번호 포함)"""

    def __init__(self, message: str, line_number: Optional[int] = None):
        self.line_number = line_number
        if line_number is not None:
            message = f"line {line_number}: {message}"
        super().__init__(message)


class ContractError(SeparationError, ValueError):
    """연산의 사전조건 위반"""


class BoundExceededError(SeparationError, RuntimeError):
    """오라클 / 완전 탐색의 자원 한도 초과"""

    def __init__(self, bound_name: str, bound_value: int, detail: str = ""):
        self.bound_name = bound_name
        self.bound_value = bound_value
        message = f"한도 초과: {bound_name}={bound_value}"
        if detail:
            message = f"{message} ({detail})"
        super().__init__(message)


class InconsistentMetadataError(SeparationError, KeyError):
    """확장 오토마톤 메타데이터 불일치 (내부 오류)"""

    def __str__(self) -> str:
        return str(self.args[0]) if self.args else "메타데이터 불일치"
