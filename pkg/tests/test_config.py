# test_config.py - 環境変数による設定のテスト
import logging
import os

import pytest

from config import MAX_ORACLE_DEPTH, MAX_ORACLE_DIM, load_config

CT_VARS = [
    "CT_STDLIB_ROOT", "CT_LOG_LEVEL", "CT_LOG_FILE", "CT_ORACLE_DIM",
    "CT_ORACLE_DEPTH", "CT_KLEENE_FUEL", "CT_JSON",
]


@pytest.fixture(autouse=True)
def clean_env(monkeypatch):
    for name in CT_VARS:
        monkeypatch.delenv(name, raising=False)
    yield
    # .env から読まれた値も消す（元の値は monkeypatch が戻す）
    for name in CT_VARS:
        os.environ.pop(name, None)


class TestDefaults:
    def test_defaults(self, tmp_path):
        config = load_config(str(tmp_path))
        assert config["CT_STDLIB_ROOT"] == str(tmp_path / "stdlib")
        assert config["CT_LOG_LEVEL"] == "INFO"
        assert config["CT_ORACLE_DIM"] == 2
        assert config["CT_ORACLE_DEPTH"] == 3
        assert config["CT_KLEENE_FUEL"] == 64
        assert config["CT_JSON"] is False

    def test_dotenv_file(self, tmp_path):
        (tmp_path / ".env").write_text("CT_KLEENE_FUEL=9\nCT_JSON=1\n", encoding="utf-8")
        config = load_config(str(tmp_path))
        assert config["CT_KLEENE_FUEL"] == 9
        assert config["CT_JSON"] is True


class TestOverrides:
    def test_environment_wins(self, tmp_path, monkeypatch):
        monkeypatch.setenv("CT_STDLIB_ROOT", "/lib/ct")
        monkeypatch.setenv("CT_LOG_LEVEL", "debug")
        monkeypatch.setenv("CT_ORACLE_DIM", "1")
        config = load_config(str(tmp_path))
        assert config["CT_STDLIB_ROOT"] == "/lib/ct"
        assert config["CT_LOG_LEVEL"] == "DEBUG"
        assert config["CT_ORACLE_DIM"] == 1

    def test_malformed_integer(self, tmp_path, monkeypatch, caplog):
        monkeypatch.setenv("CT_KLEENE_FUEL", "many")
        with caplog.at_level(logging.WARNING, logger="config"):
            config = load_config(str(tmp_path))
        assert config["CT_KLEENE_FUEL"] == 64
        assert "CT_KLEENE_FUEL" in caplog.text

    @pytest.mark.parametrize("raw, expected", [("9", MAX_ORACLE_DIM), ("-2", 0)])
    def test_dimension_clamped(self, tmp_path, monkeypatch, raw, expected):
        monkeypatch.setenv("CT_ORACLE_DIM", raw)
        assert load_config(str(tmp_path))["CT_ORACLE_DIM"] == expected

    def test_depth_clamped(self, tmp_path, monkeypatch):
        monkeypatch.setenv("CT_ORACLE_DEPTH", "10")
        assert load_config(str(tmp_path))["CT_ORACLE_DEPTH"] == MAX_ORACLE_DEPTH

    def test_unknown_log_level(self, tmp_path, monkeypatch):
        monkeypatch.setenv("CT_LOG_LEVEL", "loud")
        assert load_config(str(tmp_path))["CT_LOG_LEVEL"] == "INFO"
