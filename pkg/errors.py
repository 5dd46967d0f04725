# errors.py - 検査器の例外階層と診断の位置情報
from dataclasses import dataclass


@dataclass(frozen=True)
class Span:
    """ソース上の位置（1 始まり）"""
    file: str = "<input>"
    line: int = 0
    column: int = 0

    def __str__(self):
        return f"{self.file}:{self.line}:{self.column}"


class CheckerError(Exception):
    """
    検査器が報告する全エラーの基底クラス

    Args:
        message: メッセージ
        span: 位置情報（分かる場合）
    """
    kind = "error"

    def __init__(self, message, span=None):
        super().__init__(message)
        self.message = message
        self.span = span

    def with_span(self, span):
        if self.span is None:
            self.span = span
        return self

    def __str__(self):
        if self.span is not None:
            return f"{self.span}: {self.message}"
        return self.message


class ScopeError(CheckerError):
    kind = "scope"


class TypeMismatch(CheckerError):
    """期待された型と実際の型の不一致。正規形を両方保持する"""
    kind = "type-mismatch"

    def __init__(self, message, expected=None, actual=None, span=None):
        super().__init__(message, span)
        self.expected = expected
        self.actual = actual


class CannotInfer(CheckerError):
    kind = "cannot-infer"


class UniverseError(CheckerError):
    kind = "universe"


class BoundaryMismatch(CheckerError):
    kind = "boundary-mismatch"


class LineNotConstant(CheckerError):
    kind = "line-not-constant"


class HitDeclError(CheckerError):
    kind = "hit-decl"


class ParseError(CheckerError):
    kind = "syntax"


class ImportCycleError(CheckerError):
    kind = "import-cycle"


class LintError(CheckerError):
    kind = "lint"


class BoundExceeded(CheckerError):
    kind = "bound-exceeded"


class DepthExhausted(CheckerError):
    kind = "depth-exhausted"


class InternalError(CheckerError):
    """利用者の入力ではなく内部の不整合"""
    kind = "internal"


class ConstructionError(CheckerError):
    """有限モデルの対象が照合の前提を満たさない"""
    kind = "construction"
