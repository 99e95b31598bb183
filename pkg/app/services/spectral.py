"""
多分辨率 STFT 距离

单一分辨率下：
    谱收敛  SC  = ‖ |Y| − |X| ‖_F / ‖ |Y| ‖_F        （Y 为参考信号，非对称）
    对数幅度 LM  = mean | log|Y| − log|X| |           （对称）

幅度取 sqrt(|STFT|² + floor) 以避免 log(0)。
多分辨率距离对每个分辨率的 SC + LM 求和；FOA 信号逐通道计算，均值即四通道等权平均。
默认分辨率：FFT {2048, 1024, 512}，hop = FFT/4，周期 Hann 窗。
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from numpy.typing import NDArray
from scipy.signal import stft

from app.config import Settings, get_settings
from app.exceptions import MetricError
from app.models import FOA_CHANNELS, FoaSignal
from app.schemas.report import MrstftReport


@dataclass(frozen=True)
class StftResolution:
    fft_size: int
    hop: int


@dataclass(frozen=True)
class MrstftConfig:
    resolutions: tuple[StftResolution, ...] = field(
        default_factory=lambda: tuple(StftResolution(n, n // 4) for n in (2048, 1024, 512))
    )
    mag_floor: float = 1e-7

    @classmethod
    def from_settings(cls, settings: Settings | None = None) -> MrstftConfig:
        s = settings or get_settings()
        return cls(
            resolutions=tuple(
                StftResolution(n, max(1, int(n * s.mrstft_hop_ratio))) for n in s.mrstft_fft_sizes
            ),
            mag_floor=s.mrstft_mag_floor,
        )


def _magnitude(x: NDArray[np.float64], res: StftResolution, floor: float) -> NDArray[np.float64]:
    if x.shape[0] < res.fft_size:
        x = np.pad(x, (0, res.fft_size - x.shape[0]))
    # scipy 的 "hann" 默认即周期窗（fftbins=True）
    _, _, spec = stft(x, window="hann", nperseg=res.fft_size, noverlap=res.fft_size - res.hop)
    return np.sqrt(np.abs(spec) ** 2 + floor)


def stft_terms(
    reference: NDArray[np.float64],
    candidate: NDArray[np.float64],
    res: StftResolution,
    mag_floor: float = 1e-7,
) -> tuple[float, float]:
    """单一分辨率下的 (谱收敛, 对数幅度) 两项"""
    ref_mag = _magnitude(reference, res, mag_floor)
    cand_mag = _magnitude(candidate, res, mag_floor)
    sc = float(np.linalg.norm(ref_mag - cand_mag) / np.linalg.norm(ref_mag))
    lm = float(np.mean(np.abs(np.log(ref_mag) - np.log(cand_mag))))
    return sc, lm


def stft_distance(
    reference: NDArray[np.float64],
    candidate: NDArray[np.float64],
    res: StftResolution,
    mag_floor: float = 1e-7,
) -> float:
    """单一分辨率 STFT 距离（SC + LM）"""
    sc, lm = stft_terms(reference, candidate, res, mag_floor)
    return sc + lm


def mrstft_channel_distance(
    reference: NDArray[np.float64],
    candidate: NDArray[np.float64],
    config: MrstftConfig | None = None,
) -> float:
    """单通道多分辨率 STFT 距离"""
    cfg = config or MrstftConfig()
    ref = np.asarray(reference, dtype=np.float64)
    cand = np.asarray(candidate, dtype=np.float64)
    if ref.shape != cand.shape:
        raise MetricError(f"length mismatch: {ref.shape[0]} vs {cand.shape[0]}")
    return sum(stft_distance(ref, cand, res, cfg.mag_floor) for res in cfg.resolutions)


def mrstft_distance(
    reference: FoaSignal,
    candidate: FoaSignal,
    config: MrstftConfig | None = None,
) -> MrstftReport:
    """FOA 逐通道多分辨率 STFT 距离及四通道均值"""
    cfg = config or MrstftConfig()
    if len(reference) != len(candidate):
        raise MetricError(f"length mismatch: {len(reference)} vs {len(candidate)}")

    per_channel: dict[str, float] = {}
    per_resolution: dict[str, dict[str, float]] = {}
    for name in FOA_CHANNELS:
        ref = reference.channel(name)
        cand = candidate.channel(name)
        total = 0.0
        for res in cfg.resolutions:
            d = stft_distance(ref, cand, res, cfg.mag_floor)
            per_resolution.setdefault(str(res.fft_size), {})[name.upper()] = d
            total += d
        per_channel[name.upper()] = total

    return MrstftReport(
        per_channel=per_channel,
        mean=float(np.mean(list(per_channel.values()))),
        per_resolution=per_resolution,
    )
