"""
声强向量 DoA 估计与角度误差

声强向量（逐采样点）：
    I_x = W·X,  I_y = W·Y,  I_z = W·Z

每个分析帧内对声强向量求和后估计方向：
    θ = atan2(ΣI_y, ΣI_x)
    φ = atan2(ΣI_z, √((ΣI_x)² + (ΣI_y)²))

方位角使用四象限反正切以区分前后；俯仰角分母取水平分量的模（而不是平方和），
只有这样才能对 FOA 编码结果精确还原 φ。

帧能量（mean W²）低于全局最大帧能量 × gate 的帧标记为无效，不输出角度。
frame_len=1, hop=1 时退化为逐采样点估计。
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view
from numpy.typing import ArrayLike, NDArray

from app.exceptions import MetricError
from app.models import FoaSignal, SphericalPosition, circular_distance_deg, wrap_azimuth_array

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class DoaTrack:
    """
    逐帧 DoA 估计结果

    无效帧的 azimuth_deg / elevation_deg 为 NaN。
    """
    azimuth_deg: NDArray[np.float64]
    elevation_deg: NDArray[np.float64]
    frame_energy: NDArray[np.float64]
    valid: NDArray[np.bool_]
    frame_len: int
    hop: int
    sample_rate: int

    def __len__(self) -> int:
        return int(self.valid.shape[0])

    @property
    def frame_times_s(self) -> NDArray[np.float64]:
        """帧中心时间（秒）"""
        starts = np.arange(len(self)) * self.hop
        return (starts + (self.frame_len - 1) / 2.0) / self.sample_rate

    @property
    def valid_fraction(self) -> float:
        return float(self.valid.mean()) if len(self) else 0.0

    def to_rows(self) -> list[dict[str, float | bool | None]]:
        """逐帧字典，无效帧角度为 None"""
        rows = []
        for t, az, el, e, v in zip(
            self.frame_times_s, self.azimuth_deg, self.elevation_deg, self.frame_energy, self.valid
        ):
            rows.append({
                "time_s": float(t),
                "azimuth_deg": float(az) if v else None,
                "elevation_deg": float(el) if v else None,
                "energy": float(e),
                "valid": bool(v),
            })
        return rows


def intensity_vectors(foa: FoaSignal) -> NDArray[np.float64]:
    """
    逐采样点声强向量

    Returns:
        形状 (3, N)：I_x, I_y, I_z
    """
    return np.stack([foa.w * foa.x, foa.w * foa.y, foa.w * foa.z])


def _frame_sums(values: NDArray[np.float64], frame_len: int, hop: int) -> NDArray[np.float64]:
    """对最后一维按帧求和；信号短于帧长时整段作为一帧"""
    n = values.shape[-1]
    if n < frame_len:
        return values.sum(axis=-1, keepdims=True)
    windows = sliding_window_view(values, frame_len, axis=-1)[..., ::hop, :]
    return windows.sum(axis=-1)


def estimate_doa(
    foa: FoaSignal,
    frame_len: int = 512,
    hop: int = 256,
    gate: float = 1e-6,
) -> DoaTrack:
    """
    逐帧估计方位角 / 俯仰角

    Args:
        frame_len: 帧长（采样点），≥ 1
        hop: 帧移（采样点），≥ 1
        gate: 能量门限（相对全局最大帧能量）
    """
    if frame_len < 1 or hop < 1:
        raise MetricError(f"frame_len and hop must be >= 1, got {frame_len}, {hop}")

    intensity = _frame_sums(intensity_vectors(foa), frame_len, hop)
    energy = _frame_sums(foa.w * foa.w, frame_len, hop) / min(frame_len, max(len(foa), 1))

    peak = float(energy.max()) if energy.size else 0.0
    valid = (energy > 0.0) & (energy >= gate * peak) if peak > 0.0 else np.zeros(energy.shape, dtype=bool)

    ix, iy, iz = intensity
    with np.errstate(invalid="ignore"):
        azimuth = wrap_azimuth_array(np.rad2deg(np.arctan2(iy, ix)))
        elevation = np.rad2deg(np.arctan2(iz, np.hypot(ix, iy)))
    azimuth = np.where(valid, azimuth, np.nan)
    elevation = np.where(valid, elevation, np.nan)

    logger.debug(
        "doa estimated",
        extra={"frames": int(valid.size), "valid_frames": int(valid.sum())},
    )
    return DoaTrack(
        azimuth_deg=azimuth,
        elevation_deg=elevation,
        frame_energy=energy,
        valid=valid,
        frame_len=frame_len,
        hop=hop,
        sample_rate=foa.sample_rate,
    )


def _mutual(a: ArrayLike, b: ArrayLike) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
    a_arr = np.asarray(a, dtype=np.float64)
    b_arr = np.asarray(b, dtype=np.float64)
    if a_arr.shape != b_arr.shape:
        raise MetricError(f"length mismatch: {a_arr.shape} vs {b_arr.shape}")
    mask = np.isfinite(a_arr) & np.isfinite(b_arr)
    if not mask.any():
        raise MetricError("no mutually valid frames")
    return a_arr[mask], b_arr[mask]


def circular_l1(a_deg: ArrayLike, b_deg: ArrayLike) -> float:
    """方位角圆周差的平均绝对值（度，范围 [0, 180]）；NaN 帧视为无效"""
    a, b = _mutual(a_deg, b_deg)
    return float(np.mean(circular_distance_deg(a, b)))


def linear_l1(a_deg: ArrayLike, b_deg: ArrayLike) -> float:
    """俯仰角线性差的平均绝对值（度）"""
    a, b = _mutual(a_deg, b_deg)
    return float(np.mean(np.abs(a - b)))


def spatial_angle_deg(
    az1_deg: ArrayLike,
    el1_deg: ArrayLike,
    az2_deg: ArrayLike,
    el2_deg: ArrayLike,
) -> NDArray[np.float64]:
    """
    半正矢公式计算两方向的大圆夹角（度），支持数组

        a = sin²(Δφ/2) + cosφ₁·cosφ₂·sin²(Δθ/2)
        Δ = 2·atan2(√a, √(1−a))
    """
    az1, el1, az2, el2 = (np.deg2rad(np.asarray(v, dtype=np.float64)) for v in (az1_deg, el1_deg, az2_deg, el2_deg))
    a = np.sin((el2 - el1) / 2.0) ** 2 + np.cos(el1) * np.cos(el2) * np.sin((az2 - az1) / 2.0) ** 2
    a = np.clip(a, 0.0, 1.0)
    return np.rad2deg(2.0 * np.arctan2(np.sqrt(a), np.sqrt(1.0 - a)))


def spatial_angle(a: SphericalPosition, b: SphericalPosition) -> float:
    """两个方向之间的大圆夹角（度，范围 [0, 180]）"""
    return float(spatial_angle_deg(a.azimuth_deg, a.elevation_deg, b.azimuth_deg, b.elevation_deg))
