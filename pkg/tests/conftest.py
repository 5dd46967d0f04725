# conftest.py - テスト共通の設定とフィクスチャ
import os
import sys

import pytest

ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
sys.path.insert(0, ROOT)

from checker import Checker  # noqa: E402
from cube_model import BoxCat  # noqa: E402
from loader import Loader  # noqa: E402

STDLIB = os.path.join(ROOT, "stdlib")


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: 標準ライブラリ全体や大きな有限モデルを使うテスト")


@pytest.fixture
def checker():
    return Checker()


@pytest.fixture(scope="session")
def stdlib_root():
    return STDLIB


@pytest.fixture(scope="session")
def stdlib_loader():
    """標準ライブラリ全体を一度だけ読み込む"""
    loader = Loader(STDLIB)
    loader.load_paths([STDLIB])
    return loader


@pytest.fixture(scope="session")
def box2():
    return BoxCat(2)
