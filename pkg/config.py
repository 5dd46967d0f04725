# config.py - 環境変数の読み込みと設定
import os
import logging
from dotenv import load_dotenv

logger = logging.getLogger(__name__)

# オラクルの上限（これを超える値は丸める）
MAX_ORACLE_DIM = 3
MAX_ORACLE_DEPTH = 4


def _int_setting(name, default):
    raw = os.getenv(name)
    if raw is None or raw == "":
        return default
    try:
        return int(raw)
    except ValueError:
        logger.warning(f"{name} が整数ではないため、デフォルト値を使用します: {raw!r} -> {default}")
        return default


def _clamp(name, value, bound):
    if value > bound:
        logger.warning(f"{name} が上限 {bound} を超えているため丸めます: {value}")
        return bound
    if value < 0:
        logger.warning(f"{name} が負の値のため 0 にします: {value}")
        return 0
    return value


def load_config(script_dir):
    """
    環境変数を読み込み、設定する

    Args:
        script_dir: スクリプトのディレクトリパス

    Returns:
        dict: 設定値を含む辞書
    """
    env_path = os.path.join(script_dir, '.env')
    if os.path.exists(env_path):
        logger.info(f".env ファイルを読み込みます: {env_path}")
        load_dotenv(env_path)
    else:
        logger.info(f".env ファイルがないため、環境変数とデフォルト値を使用します: {env_path}")

    config = {
        "CT_STDLIB_ROOT": os.getenv("CT_STDLIB_ROOT") or os.path.join(script_dir, "stdlib"),
        "CT_LOG_LEVEL": os.getenv("CT_LOG_LEVEL", "INFO").upper(),
        "CT_LOG_FILE": os.getenv("CT_LOG_FILE", "ct_checker.log"),
        "CT_ORACLE_DIM": _clamp("CT_ORACLE_DIM", _int_setting("CT_ORACLE_DIM", 2), MAX_ORACLE_DIM),
        "CT_ORACLE_DEPTH": _clamp("CT_ORACLE_DEPTH", _int_setting("CT_ORACLE_DEPTH", 3), MAX_ORACLE_DEPTH),
        "CT_KLEENE_FUEL": _int_setting("CT_KLEENE_FUEL", 64),
        "CT_JSON": os.getenv("CT_JSON", "0") == "1",
    }

    if config["CT_LOG_LEVEL"] not in ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"):
        logger.warning(f"CT_LOG_LEVEL が不正なため INFO を使用します: {config['CT_LOG_LEVEL']}")
        config["CT_LOG_LEVEL"] = "INFO"

    return config


def log_config(config):
    """有効な設定を一度ずつ記録する"""
    logger.info(f"標準ライブラリ: {config['CT_STDLIB_ROOT']}")
    logger.info(f"ログレベル: {config['CT_LOG_LEVEL']}")
    logger.info(f"ログファイル: {config['CT_LOG_FILE'] if config['CT_LOG_FILE'] else 'なし'}")
    logger.info(f"オラクル: 次元 {config['CT_ORACLE_DIM']}, 深さ {config['CT_ORACLE_DEPTH']}")
    logger.info(f"Kleene の燃料: {config['CT_KLEENE_FUEL']} ステップ")
    logger.info(f"JSON 出力: {'有効' if config['CT_JSON'] else '無効'}")
