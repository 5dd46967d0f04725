# test_loader.py - ファイルの読み込み・import・診断のテスト
import json
import os

import pytest

from errors import LintError
from loader import (
    PAPER_MAP, Diagnostic, LibEntry, LibFile, Loader, check_text, expand_paths, lemma_map, parse_annotation,
)


def write(directory, name, text):
    path = directory / name
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8")
    return str(path)


@pytest.fixture
def library(tmp_path):
    write(tmp_path, "base.ct", '@lemma "§2: two"\ndef two : Nat = 2\n')
    write(tmp_path, "use.ct", 'import base\n@lemma "§2 Ex.: four"\ndef four : Nat = suc (suc two)\n')
    return tmp_path


class TestLoader:
    def test_import_order(self, library):
        loader = Loader(str(library))
        lib = loader.load(str(library / "use.ct"))
        assert lib.ok
        assert [e.name for e in lib.entries] == ["four"]
        assert os.path.abspath(str(library / "base.ct")) in loader.files
        assert "two" in loader.checker.glob.defs

    def test_each_file_once(self, library):
        loader = Loader(str(library))
        results = loader.load_paths([str(library)])
        assert [lib.stem for lib in results] == ["base", "use"]
        assert len(loader.files) == 2

    def test_resolve(self, library):
        loader = Loader(str(library))
        assert loader.resolve("base") == os.path.abspath(str(library / "base.ct"))
        assert loader.resolve("base.ct") == loader.resolve("base")

    def test_import_relative_to_importer(self, tmp_path):
        write(tmp_path, "sub/a.ct", "def a : Nat = 0\n")
        write(tmp_path, "sub/b.ct", "import a\ndef b : Nat = a\n")
        loader = Loader(str(tmp_path))
        assert loader.load(str(tmp_path / "sub" / "b.ct")).ok

    def test_broken_import(self, tmp_path):
        write(tmp_path, "bad.ct", "def bad : Nat = tt\n")
        write(tmp_path, "top.ct", "import bad\ndef ok : Nat = 0\n")
        loader = Loader(str(tmp_path))
        lib = loader.load(str(tmp_path / "top.ct"))
        assert not lib.ok
        assert lib.diagnostics[0].line == 1
        assert not loader.files[os.path.abspath(str(tmp_path / "bad.ct"))].ok

    def test_import_cycle(self, tmp_path):
        write(tmp_path, "a.ct", "import b\n")
        write(tmp_path, "b.ct", "import a\n")
        loader = Loader(str(tmp_path))
        results = loader.load_paths([str(tmp_path / "a.ct")])
        kinds = [d.kind for lib in results for d in lib.diagnostics]
        kinds += [d.kind for lib in loader.files.values() for d in lib.diagnostics]
        assert "import-cycle" in kinds

    def test_missing_file(self, tmp_path):
        loader = Loader(str(tmp_path))
        lib = loader.load(str(tmp_path / "none.ct"))
        assert not lib.ok
        assert lib.diagnostics[0].kind == "io"

    def test_expand_paths(self, library):
        write(library, "notes.txt", "x")
        paths = expand_paths([str(library)])
        assert [os.path.basename(p) for p in paths] == ["base.ct", "use.ct"]


class TestCheckText:
    def test_ok(self):
        checker, lib = check_text('@lemma "one"\ndef one : Nat = 1\n', "x.ct")
        assert lib.ok
        assert lib.entries == [LibEntry("one", "def", "one", 2)]
        assert "one" in checker.glob.defs

    def test_diagnostic_fields(self):
        _checker, lib = check_text("def bad : Nat = tt\n", "x.ct")
        (d,) = lib.diagnostics
        assert d.file == "x.ct"
        record = d.to_dict()
        assert record["kind"] == "type-mismatch"
        assert {"expected", "actual"} <= set(record)
        json.dumps(record, ensure_ascii=False)
        assert str(d).startswith("x.ct:1:")


class TestLemmaMap:
    def test_records(self, library):
        loader = Loader(str(library))
        files = loader.load_paths([str(library)])
        records = lemma_map(files)
        assert [(r["file"], r["name"], r["location"], r["statement"]) for r in records] == [
            ("base.ct", "two", "§2", "two"), ("use.ct", "four", "§2 Ex.", "four"),
        ]
        assert lemma_map(files, strict=True) == records

    def test_missing_annotation(self):
        lib = LibFile("m.ct", [LibEntry("bare", "def"), LibEntry("H", "hit")])
        records = lemma_map([lib])
        assert records == [{
            "file": "m.ct", "name": "bare", "kind": "def", "annotation": None,
            "location": None, "statement": None,
        }]
        with pytest.raises(LintError):
            lemma_map([lib], strict=True)

    def test_location_outside_the_map(self):
        lib = LibFile("m.ct", [LibEntry("far", "def", "§9.1: elsewhere"), LibEntry("prose", "def", "no location")])
        records = lemma_map([lib])
        assert [r["location"] for r in records] == ["§9.1", None]
        with pytest.raises(LintError):
            lemma_map([lib], strict=True)

    @pytest.mark.parametrize("annotation, expected", [
        ("§5 Cor.: contractible", ("§5", "Cor.", "contractible")),
        ("§3.1: truncation", ("§3.1", None, "truncation")),
        ("plain words", (None, None, "plain words")),
    ])
    def test_parse_annotation(self, annotation, expected):
        assert parse_annotation(annotation) == expected

    def test_map_has_the_stdlib_sections(self):
        assert {"§2", "§3", "§3.1", "§4", "§5", "§5.1", "§6"} <= set(PAPER_MAP)


class TestDiagnostic:
    def test_without_types(self):
        d = Diagnostic("error", "f.ct", 3, 4, "scope", "未定義の名前です: y")
        assert "expected" not in d.to_dict()
        assert str(d) == "f.ct:3:4: error [scope] 未定義の名前です: y"
