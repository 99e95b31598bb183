"""
测试公共 fixture

- 固定种子的随机数生成器和白噪声信号
- 在临时目录生成源音频 / 清单
- 每个测试前清空配置缓存，避免环境变量残留
"""

import json
from pathlib import Path

import numpy as np
import pytest
import soundfile as sf

from app.config import get_settings
from app.models import MonoSignal


@pytest.fixture(autouse=True)
def _fresh_settings(monkeypatch):
    for key in ("AMBIO_LOG", "AMBIO_LOG_LEVEL", "AMBIO_CAPTION_COMPOSER", "AMBIO_AUGMENT_JOBS"):
        monkeypatch.delenv(key, raising=False)
    get_settings.cache_clear()
    yield
    get_settings.cache_clear()


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(1234)


@pytest.fixture
def noise(rng) -> MonoSignal:
    """1 秒 16 kHz 白噪声"""
    return MonoSignal(rng.uniform(-0.5, 0.5, 16_000), 16_000)


def make_noise(seconds: float, sample_rate: int = 16_000, seed: int = 0, amplitude: float = 0.5) -> MonoSignal:
    gen = np.random.default_rng(seed)
    return MonoSignal(gen.uniform(-amplitude, amplitude, int(round(seconds * sample_rate))), sample_rate)


def write_source(path: Path, seconds: float, sample_rate: int = 16_000, seed: int = 0) -> Path:
    """写一个 16-bit PCM 单声道源文件"""
    path.parent.mkdir(parents=True, exist_ok=True)
    sf.write(path, make_noise(seconds, sample_rate, seed).samples, sample_rate, subtype="PCM_16")
    return path


def write_manifest(path: Path, rows: list[dict]) -> Path:
    path.write_text("".join(json.dumps(r, ensure_ascii=False) + "\n" for r in rows), encoding="utf-8")
    return path
