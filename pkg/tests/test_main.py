# test_main.py - コマンドラインの終了コードと出力のテスト
import json
import logging

import pytest

from main import EXIT_FAILURE, EXIT_OK, EXIT_USAGE, main


@pytest.fixture(autouse=True)
def cli_env(monkeypatch):
    monkeypatch.setenv("CT_LOG_FILE", "")
    monkeypatch.setenv("CT_JSON", "0")
    monkeypatch.delenv("CT_STDLIB_ROOT", raising=False)
    root = logging.getLogger()
    saved = list(root.handlers)
    yield
    # setup_logger が差し替えたハンドラを戻す
    root.handlers[:] = saved


@pytest.fixture
def source(tmp_path):
    path = tmp_path / "small.ct"
    path.write_text('@lemma "§2: two"\ndef two : Nat = 2\n@lemma "§2: given"\naxiom given : Nat\n', encoding="utf-8")
    return str(path)


class TestCheck:
    def test_bad_file(self, tmp_path, capsys):
        path = tmp_path / "bad.ct"
        path.write_text("def bad : Nat = tt\n", encoding="utf-8")
        assert main(["check", str(path)]) == EXIT_FAILURE
        assert "[type-mismatch]" in capsys.readouterr().out

    def test_bad_file_as_json(self, tmp_path, capsys):
        path = tmp_path / "bad.ct"
        path.write_text("def bad : Nat = tt\n", encoding="utf-8")
        assert main(["check", "--json", str(path)]) == EXIT_FAILURE
        (line,) = capsys.readouterr().out.splitlines()
        assert json.loads(line)["kind"] == "type-mismatch"

    def test_good_file(self, source, capsys):
        assert main(["check", source]) == EXIT_OK
        assert capsys.readouterr().out.startswith("ok: 1 ")

    def test_missing_path(self, tmp_path):
        assert main(["check", str(tmp_path / "none.ct")]) == EXIT_USAGE

    @pytest.mark.slow
    def test_stdlib(self, capsys):
        assert main(["check"]) == EXIT_OK
        assert "ok: 10 " in capsys.readouterr().out


class TestNormalize:
    def test_definition(self, source, capsys):
        assert main(["normalize", source, "two", "--type"]) == EXIT_OK
        assert capsys.readouterr().out.splitlines() == ["2", ": Nat"]

    @pytest.mark.parametrize("name", ["nothing", "given"])
    def test_no_normal_form(self, source, name):
        assert main(["normalize", source, name]) == EXIT_FAILURE

    def test_missing_file(self, tmp_path):
        assert main(["normalize", str(tmp_path / "none.ct"), "x"]) == EXIT_USAGE


class TestOracle:
    def test_table(self, capsys):
        assert main(["oracle", "box", "--dim", "1", "--depth", "2"]) == EXIT_OK
        assert capsys.readouterr().out.rstrip().endswith("件一致")

    def test_json(self, capsys):
        assert main(["oracle", "sieve", "--dim", "1", "--depth", "2", "--json"]) == EXIT_OK
        records = [json.loads(line) for line in capsys.readouterr().out.splitlines()]
        assert records and all(r["passed"] for r in records)

    def test_unknown_suite(self):
        assert main(["oracle", "nope", "--dim", "1"]) == EXIT_USAGE

    @pytest.mark.parametrize("args", [["--dim", "4"], ["--depth", "5"], ["--dim", "-1"]])
    def test_bounds(self, args):
        assert main(["oracle", "box", *args]) == EXIT_USAGE


class TestLemmas:
    @pytest.mark.slow
    def test_stdlib_is_annotated(self, capsys):
        assert main(["lemmas", "--json"]) == EXIT_OK
        records = [json.loads(line) for line in capsys.readouterr().out.splitlines()]
        assert {"CT", "mpFromTrunc"} <= {r["name"] for r in records}
        by_name = {r["name"]: r for r in records}
        assert by_name["locBContr"]["location"] == "§5 Cor."

    def test_unannotated_root(self, tmp_path, monkeypatch, capsys):
        (tmp_path / "m.ct").write_text("def bare : Nat = 0\n", encoding="utf-8")
        monkeypatch.setenv("CT_STDLIB_ROOT", str(tmp_path))
        assert main(["lemmas"]) == EXIT_FAILURE
        assert "(注釈なし)" in capsys.readouterr().out

    def test_unknown_location(self, tmp_path, monkeypatch, capsys):
        (tmp_path / "m.ct").write_text('@lemma "§9: nowhere"\ndef z : Nat = 0\n', encoding="utf-8")
        monkeypatch.setenv("CT_STDLIB_ROOT", str(tmp_path))
        assert main(["lemmas"]) == EXIT_FAILURE
        assert "§9" in capsys.readouterr().out


def test_command_required():
    with pytest.raises(SystemExit) as info:
        main([])
    assert info.value.code == 2
