# loader.py - .ct ファイルの読み込み・import の解決・検査と診断
import logging
import os
import re
import traceback
from dataclasses import dataclass, field

import parser as surface
from checker import Checker
from errors import CheckerError, ImportCycleError, LintError, Span
from syntax import AxiomDecl, DefDecl, HitDeclSyntax, ImportDecl

logger = logging.getLogger(__name__)

SUFFIX = ".ct"


@dataclass
class Diagnostic:
    """
    検査の診断一件

    Args:
        severity: "error" か "warning"
        file: ファイルのパス
        line, column: 位置（分からなければ 0）
        kind: エラーの種類（errors.py の kind）
        message: メッセージ
        expected, actual: 型の不一致の場合の正規形
    """
    severity: str
    file: str
    line: int
    column: int
    kind: str
    message: str
    expected: str = None
    actual: str = None

    @staticmethod
    def from_error(error, path):
        span = error.span or Span(path, 0, 0)
        return Diagnostic(
            "error", span.file if span.file != "<input>" else path, span.line, span.column,
            error.kind, error.message,
            getattr(error, "expected", None), getattr(error, "actual", None),
        )

    def to_dict(self):
        record = {
            "severity": self.severity, "file": self.file, "line": self.line,
            "column": self.column, "kind": self.kind, "message": self.message,
        }
        if self.expected is not None:
            record["expected"] = self.expected
            record["actual"] = self.actual
        return record

    def __str__(self):
        text = f"{self.file}:{self.line}:{self.column}: {self.severity} [{self.kind}] {self.message}"
        if self.expected is not None:
            text += f"\n  期待: {self.expected}\n  実際: {self.actual}"
        return text


@dataclass
class LibEntry:
    """ファイル中の定義一件（補題の対応表に使う）"""
    name: str
    kind: str
    annotation: str = None
    line: int = 0


@dataclass
class LibFile:
    path: str
    entries: list = field(default_factory=list)
    diagnostics: list = field(default_factory=list)

    @property
    def ok(self):
        return not any(d.severity == "error" for d in self.diagnostics)

    @property
    def stem(self):
        return os.path.splitext(os.path.basename(self.path))[0]


class Loader:
    """
    ファイルを import の順に検査する

    全ファイルは一つの検査セッション（Checker）を共有する。import は
    root からの相対パスで、拡張子 .ct は省略できる。
    """

    def __init__(self, root, checker=None):
        self.root = os.path.abspath(root)
        self.checker = checker if checker is not None else Checker()
        self.files = {}
        self._visiting = []

    def resolve(self, name, importer=None):
        candidate = name if name.endswith(SUFFIX) else name + SUFFIX
        if os.path.isabs(candidate):
            return candidate
        for base in ([os.path.dirname(importer)] if importer else []) + [self.root]:
            path = os.path.join(base, candidate)
            if os.path.exists(path):
                return os.path.abspath(path)
        return os.path.abspath(os.path.join(self.root, candidate))

    def load(self, path):
        """
        ファイルとその import 先を検査する

        Returns:
            LibFile: 検査結果（診断を含む）
        """
        path = os.path.abspath(path)
        if path in self.files:
            return self.files[path]
        if path in self._visiting:
            cycle = self._visiting[self._visiting.index(path):] + [path]
            raise ImportCycleError("import が循環しています: " + " -> ".join(os.path.basename(p) for p in cycle))
        lib = LibFile(path)
        try:
            with open(path, "r", encoding="utf-8") as f:
                text = f.read()
        except OSError as e:
            lib.diagnostics.append(Diagnostic("error", path, 0, 0, "io", f"ファイルを読めません: {e}"))
            self.files[path] = lib
            return lib
        self._visiting.append(path)
        try:
            self._check_source(lib, text)
        finally:
            self._visiting.pop()
        self.files[path] = lib
        status = "成功" if lib.ok else f"失敗（{len(lib.diagnostics)} 件）"
        logger.info(f"{os.path.basename(path)}: {len(lib.entries)} 個の宣言を検査しました - {status}")
        return lib

    def _check_source(self, lib, text):
        try:
            source = surface.parse_text(text, lib.path)
        except CheckerError as e:
            lib.diagnostics.append(Diagnostic.from_error(e, lib.path))
            return
        seen = set()
        for decl in source.decls:
            try:
                if isinstance(decl, ImportDecl):
                    self._check_import(lib, decl)
                    continue
                if decl.name in seen:
                    raise CheckerError(f"同じファイルで名前が重複しています: {decl.name}", decl.span)
                seen.add(decl.name)
                self._check_decl(lib, decl)
            except ImportCycleError as e:
                e.with_span(decl.span)
                lib.diagnostics.append(Diagnostic.from_error(e, lib.path))
                return
            except CheckerError as e:
                e.with_span(decl.span)
                logger.error(f"{lib.path}: {e}")
                logger.debug(traceback.format_exc())
                lib.diagnostics.append(Diagnostic.from_error(e, lib.path))
                # 以降の宣言はこの宣言に依存しうるので打ち切る
                return

    def _check_import(self, lib, decl):
        target = self.resolve(decl.path, lib.path)
        dep = self.load(target)
        if not dep.ok:
            raise CheckerError(f"import したファイルに誤りがあります: {decl.path}", decl.span)

    def _check_decl(self, lib, decl):
        line = decl.span.line if decl.span else 0
        if isinstance(decl, DefDecl):
            self.checker.define(decl.name, decl.ty, decl.body, decl.annotation, lib.path)
            lib.entries.append(LibEntry(decl.name, "def", decl.annotation, line))
        elif isinstance(decl, AxiomDecl):
            self.checker.postulate(decl.name, decl.ty, decl.annotation, lib.path)
            lib.entries.append(LibEntry(decl.name, "axiom", decl.annotation, line))
        elif isinstance(decl, HitDeclSyntax):
            self.checker.declare_hit(decl)
            lib.entries.append(LibEntry(decl.name, "hit", None, line))

    def load_paths(self, paths):
        """パス（ファイルまたはディレクトリ）の列を検査する。結果はパス順"""
        results = []
        for path in expand_paths(paths):
            try:
                results.append(self.load(path))
            except ImportCycleError as e:
                lib = LibFile(os.path.abspath(path), diagnostics=[Diagnostic.from_error(e, path)])
                self.files[lib.path] = lib
                results.append(lib)
        return results


def expand_paths(paths):
    """ディレクトリを .ct ファイルの一覧（名前順）に展開する"""
    found = []
    for path in paths:
        if os.path.isdir(path):
            for root, _dirs, files in os.walk(path):
                found.extend(os.path.join(root, f) for f in files if f.endswith(SUFFIX))
        else:
            found.append(path)
    return sorted(os.path.abspath(p) for p in found)


def check_text(text, filename="<input>", checker=None):
    """
    文字列のソースを検査する（import は使えない）

    Returns:
        (Checker, LibFile)
    """
    loader = Loader(os.getcwd(), checker)
    lib = LibFile(filename)
    loader._check_source(lib, text)
    return loader.checker, lib


def corpus(root):
    """標準ライブラリ全体を検査して LibFile のリストを返す"""
    loader = Loader(root)
    return loader.load_paths([root])


# 注釈が指す箇所の一覧（注釈は "§5 Cor.: ..." の形）
PAPER_MAP = {
    "§2": "判断の形と基本の型",
    "§2.2": "簡約付きの cofibrant な W 型",
    "§3": "区間・cofibrant な命題・道と同値",
    "§3.1": "LFR・懸垂・命題切り詰め・錐・K_B",
    "§3.2": "立方体の圏と前層の W 型",
    "§3.3": "離散型",
    "§4": "Church のテーゼと Kleene の T 述語",
    "§4.1": "立方体アセンブリでの反証",
    "§5": "ヌル型・ヌル化・ヌル型の宇宙",
    "§5.1": "よく支えられた族・J_B・Markov の原理の例",
    "§6": "CT・MP・Brouwer の連続性原理",
}

ANNOTATION = re.compile(r"^(§\d+(?:\.\d+)*)(?:\s+([A-Z][a-z]+\.))?:\s*(.*)$")


def parse_annotation(annotation):
    """
    注釈を (箇所, 種別, 文) に分ける

    Returns:
        tuple: 形に合わなければ (None, None, 注釈)
    """
    if annotation is None:
        return None, None, None
    m = ANNOTATION.match(annotation)
    if m is None:
        return None, None, annotation
    return m.group(1), m.group(2), m.group(3)


def lemma_map(files, strict=False):
    """
    定義から注釈への対応表

    Args:
        files: LibFile の列
        strict: True なら注釈がない、または箇所が PAPER_MAP にない定義で LintError を送出する

    Returns:
        list: {"file", "name", "kind", "annotation", "location", "statement"} の辞書のリスト
    """
    records = []
    missing = []
    unknown = []
    for lib in files:
        for entry in lib.entries:
            if entry.kind == "hit":
                continue
            where = f"{os.path.basename(lib.path)}:{entry.name}"
            section, label, statement = parse_annotation(entry.annotation)
            location = section if label is None or section is None else f"{section} {label}"
            records.append({
                "file": os.path.basename(lib.path), "name": entry.name,
                "kind": entry.kind, "annotation": entry.annotation,
                "location": location, "statement": statement,
            })
            if entry.annotation is None:
                missing.append(where)
            elif section not in PAPER_MAP:
                unknown.append(where)
    if strict and missing:
        raise LintError(f"注釈のない定義があります: {', '.join(missing)}")
    if strict and unknown:
        raise LintError(f"注釈の箇所が対応表にありません: {', '.join(unknown)}")
    return records
