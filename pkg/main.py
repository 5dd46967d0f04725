# main.py - コマンドラインの入口（check / normalize / oracle / lemmas）
import argparse
import json
import logging
import os
import sys
import traceback

from config import MAX_ORACLE_DEPTH, MAX_ORACLE_DIM, load_config, log_config
import oracle
from errors import BoundExceeded, CheckerError, LintError
from evaluate import normalize
from loader import Loader, corpus, lemma_map
from logger import setup_logger
from syntax import pretty

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2


def build_parser(config):
    parser = argparse.ArgumentParser(prog="ctt", description="小さな立方型理論の検査器と正規化器")
    sub = parser.add_subparsers(dest="command", required=True)

    check = sub.add_parser("check", help=".ct ファイルを検査する")
    check.add_argument("paths", nargs="*", help="ファイルかディレクトリ（省略時は標準ライブラリ）")
    check.add_argument("--json", action="store_true", default=config["CT_JSON"], help="診断を JSON で出力する")

    norm = sub.add_parser("normalize", help="定義の正規形を表示する")
    norm.add_argument("file")
    norm.add_argument("name")
    norm.add_argument("--type", action="store_true", help="型も表示する")

    oracle = sub.add_parser("oracle", help="有限モデルのオラクルを実行する")
    oracle.add_argument("suite")
    oracle.add_argument("--dim", type=int, default=config["CT_ORACLE_DIM"])
    oracle.add_argument("--depth", type=int, default=config["CT_ORACLE_DEPTH"])
    oracle.add_argument("--json", action="store_true", default=config["CT_JSON"])

    lemmas = sub.add_parser("lemmas", help="標準ライブラリの補題対応表を表示する")
    lemmas.add_argument("--json", action="store_true", default=config["CT_JSON"])
    return parser


def cmd_check(args, config):
    paths = args.paths or [config["CT_STDLIB_ROOT"]]
    missing = [p for p in paths if not os.path.exists(p)]
    if missing:
        logger.error(f"パスが見つかりません: {', '.join(missing)}")
        return EXIT_USAGE
    loader = Loader(config["CT_STDLIB_ROOT"])
    files = loader.load_paths(paths)
    # import で読まれたファイルの診断も含める
    diagnostics = [d for lib in loader.files.values() for d in lib.diagnostics]
    for d in diagnostics:
        print(json.dumps(d.to_dict(), ensure_ascii=False) if args.json else str(d))
    checked = len(loader.files)
    if any(d.kind == "io" for d in diagnostics):
        return EXIT_USAGE
    if diagnostics:
        logger.error(f"{checked} 個のファイルのうち {sum(not lib.ok for lib in loader.files.values())} 個に誤りがあります")
        return EXIT_FAILURE
    if not args.json:
        decls = sum(len(lib.entries) for lib in loader.files.values())
        print(f"ok: {checked} 個のファイル、{decls} 個の宣言（指定 {len(files)} 個）")
    return EXIT_OK


def cmd_normalize(args, config):
    if not os.path.exists(args.file):
        logger.error(f"ファイルが見つかりません: {args.file}")
        return EXIT_USAGE
    loader = Loader(config["CT_STDLIB_ROOT"])
    lib = loader.load(args.file)
    if not lib.ok:
        for d in lib.diagnostics:
            print(str(d))
        return EXIT_FAILURE
    glob = loader.checker.glob
    entry = glob.defs.get(args.name)
    if entry is None:
        logger.error(f"定義が見つかりません: {args.name}")
        return EXIT_FAILURE
    if entry.is_axiom:
        logger.error(f"{args.name} は公理なので正規形はありません")
        return EXIT_FAILURE
    print(pretty(normalize(glob, entry.body)))
    if args.type:
        print(f": {pretty(normalize(glob, entry.ty_term))}")
    return EXIT_OK


def cmd_oracle(args, config):
    if args.dim > MAX_ORACLE_DIM or args.depth > MAX_ORACLE_DEPTH:
        logger.error(f"次元は {MAX_ORACLE_DIM}、深さは {MAX_ORACLE_DEPTH} までです: dim={args.dim}, depth={args.depth}")
        return EXIT_USAGE
    try:
        records = oracle.run_suite(
            args.suite, args.dim, args.depth,
            stdlib_root=config["CT_STDLIB_ROOT"], fuel=config["CT_KLEENE_FUEL"],
        )
    except KeyError as e:
        logger.error(str(e.args[0]) if e.args else str(e))
        return EXIT_USAGE
    except BoundExceeded as e:
        logger.error(str(e))
        return EXIT_USAGE
    print(oracle.format_json_lines(records) if args.json else oracle.format_table(records))
    return EXIT_OK if all(r.passed for r in records) else EXIT_FAILURE


def cmd_lemmas(args, config):
    files = corpus(config["CT_STDLIB_ROOT"])
    records = lemma_map(files)
    for r in records:
        if args.json:
            print(json.dumps(r, ensure_ascii=False))
        else:
            location = r["location"] or "(箇所なし)"
            statement = r["statement"] if r["statement"] is not None else "(注釈なし)"
            print(f"{r['file']}:{r['name']}\t{location}\t{statement}")
    broken = [lib for lib in files if not lib.ok]
    for lib in broken:
        for d in lib.diagnostics:
            logger.error(str(d))
    try:
        lemma_map(files, strict=True)
    except LintError as e:
        logger.error(str(e))
        return EXIT_FAILURE
    return EXIT_FAILURE if broken else EXIT_OK


COMMANDS = {
    "check": cmd_check,
    "normalize": cmd_normalize,
    "oracle": cmd_oracle,
    "lemmas": cmd_lemmas,
}


def main(argv=None):
    script_dir = os.path.dirname(os.path.abspath(__file__))
    config = load_config(script_dir)
    setup_logger(script_dir, config["CT_LOG_LEVEL"], config["CT_LOG_FILE"])
    log_config(config)
    args = build_parser(config).parse_args(argv)
    try:
        return COMMANDS[args.command](args, config)
    except CheckerError as e:
        logger.error(f"{args.command} が失敗しました: {e}")
        logger.debug(traceback.format_exc())
        return EXIT_FAILURE
    except OSError as e:
        logger.error(f"入出力エラー: {e}")
        logger.debug(traceback.format_exc())
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
