"""测试公共夹具"""

import sys
from pathlib import Path

import numpy as np
import pytest

ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(ROOT))

from src.algebra.laurent_ring import LaurentPolynomial  # noqa: E402
from src.config.constants import CoefficientRing  # noqa: E402
from src.config.settings import reset_config  # noqa: E402
from src.knots.corpus import load_corpus  # noqa: E402


@pytest.fixture(autouse=True)
def fresh_config(monkeypatch):
    """每个测试使用默认配置，不受本地 .env 与环境变量影响"""
    monkeypatch.delenv('TFC_SEED', raising=False)
    monkeypatch.delenv('TFC_LOG_LEVEL', raising=False)
    monkeypatch.chdir(ROOT)
    reset_config()
    yield
    reset_config()


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture(scope='session')
def corpus():
    return load_corpus(ROOT / 'data' / 'knots' / 'corpus.json')


@pytest.fixture
def poly():
    """按文本构造单变量整系数多项式"""
    def make(text: str, ring: CoefficientRing = CoefficientRing.INTEGERS) -> LaurentPolynomial:
        return LaurentPolynomial.parse(text, ("t",), ring)
    return make
