# logger.py - ロギング設定
import os
import logging
import sys


def setup_logger(script_dir, level="INFO", log_file="ct_checker.log"):
    """
    ロギングを設定する

    標準出力はコマンドの結果に使うので、ログは標準エラーとファイルに出す。

    Args:
        script_dir: ログファイルを置くディレクトリ
        level: ログレベルの名前
        log_file: ログファイル名（空ならファイルには出さない）
    """
    handlers = [logging.StreamHandler(sys.stderr)]
    path = None
    if log_file:
        path = log_file if os.path.isabs(log_file) else os.path.join(script_dir, log_file)
        handlers.insert(0, logging.FileHandler(path, encoding='utf-8'))

    logging.basicConfig(
        level=getattr(logging, level.upper(), logging.INFO),
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        handlers=handlers,
        force=True,
    )

    logger = logging.getLogger(__name__)
    logger.info(f"ロガーを初期化しました。ファイル: {path if path else 'なし'}, レベル: {level}")
    logger.debug(f"Python バージョン: {sys.version}")

    return logger
