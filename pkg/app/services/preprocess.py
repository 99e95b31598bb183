"""
音频预处理

数据增强前对每个源音频做统一处理：
1. 重采样到 16 kHz（Kaiser 窗多相滤波）
2. 去除首尾静音（10 ms 窗口 RMS 低于 -40 dBFS 视为静音）
3. 循环拼接或截断到 10 秒
"""

import logging
import math
from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray
from scipy.signal import resample_poly

from app.config import Settings, get_settings
from app.exceptions import SilentSignalError
from app.models import MonoSignal

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PreprocessConfig:
    """预处理参数"""
    target_sample_rate: int = 16_000
    clip_duration_s: float = 10.0
    silence_threshold_dbfs: float = -40.0
    silence_window_ms: float = 10.0
    kaiser_beta: float = 8.6

    @classmethod
    def from_settings(cls, settings: Settings | None = None) -> "PreprocessConfig":
        s = settings or get_settings()
        return cls(
            target_sample_rate=s.target_sample_rate,
            clip_duration_s=s.clip_duration_s,
            silence_threshold_dbfs=s.silence_threshold_dbfs,
            silence_window_ms=s.silence_window_ms,
            kaiser_beta=s.resample_kaiser_beta,
        )

    @property
    def clip_samples(self) -> int:
        return int(round(self.clip_duration_s * self.target_sample_rate))


def resample(mono: MonoSignal, target_rate: int, kaiser_beta: float = 8.6) -> MonoSignal:
    """多相重采样；采样率相同时原样返回"""
    if mono.sample_rate == target_rate:
        return mono
    g = math.gcd(mono.sample_rate, target_rate)
    up, down = target_rate // g, mono.sample_rate // g
    out = resample_poly(mono.samples, up, down, window=("kaiser", kaiser_beta))
    return MonoSignal(out, target_rate)


def trim_silence(
    mono: MonoSignal,
    threshold_dbfs: float = -40.0,
    window_ms: float = 10.0,
) -> MonoSignal:
    """
    去除首尾静音

    按不重叠窗口计算 RMS（dBFS，满幅 1.0），保留第一个到最后一个非静音窗口之间的内容。

    Raises:
        SilentSignalError: 所有窗口都是静音
    """
    mono.require_non_empty()
    win = max(1, int(round(mono.sample_rate * window_ms / 1000.0)))
    n_windows = math.ceil(len(mono) / win)
    padded = np.zeros(n_windows * win)
    padded[: len(mono)] = mono.samples
    rms = np.sqrt(np.mean(padded.reshape(n_windows, win) ** 2, axis=1))

    threshold = 10.0 ** (threshold_dbfs / 20.0)
    loud = np.flatnonzero(rms >= threshold)
    if loud.size == 0:
        raise SilentSignalError(f"signal is silent below {threshold_dbfs} dBFS")

    start = int(loud[0]) * win
    stop = min(len(mono), (int(loud[-1]) + 1) * win)
    return MonoSignal(mono.samples[start:stop], mono.sample_rate)


def fit_length(samples: NDArray[np.float64], n_samples: int) -> NDArray[np.float64]:
    """首尾相接循环到不少于 n_samples，再截断"""
    if samples.shape[0] >= n_samples:
        return samples[:n_samples]
    repeats = math.ceil(n_samples / samples.shape[0])
    return np.tile(samples, repeats)[:n_samples]


def preprocess(mono: MonoSignal, config: PreprocessConfig | None = None) -> MonoSignal:
    """
    完整预处理：重采样 → 去首尾静音 → 循环/截断

    Returns:
        恰好 clip_samples 个采样点、target_sample_rate 采样率的信号
    """
    cfg = config or PreprocessConfig.from_settings()
    mono.require_non_empty()

    resampled = resample(mono, cfg.target_sample_rate, cfg.kaiser_beta)
    trimmed = trim_silence(resampled, cfg.silence_threshold_dbfs, cfg.silence_window_ms)
    fitted = fit_length(trimmed.samples, cfg.clip_samples)

    logger.debug(
        "preprocessed",
        extra={
            "input_rate": mono.sample_rate,
            "input_samples": len(mono),
            "trimmed_samples": len(trimmed),
            "looped": len(trimmed) < cfg.clip_samples,
        },
    )
    return MonoSignal(fitted, cfg.target_sample_rate)
