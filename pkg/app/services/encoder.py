"""
FOA 编码服务

把单声道声压信号 p 编码为一阶 B-format：

    W = p / √2
    X = p · cosθ · cosφ
    Y = p · sinθ · cosφ
    Z = p · sinφ

其中 θ 为方位角（逆时针为正），φ 为俯仰角（向上为正）。
W 采用标准 B-format 的 p/√2 增益，保证 W 是声压的线性函数，
对任意编码输出逐点满足 X² + Y² + Z² = p² = 2·W²。

静态编码使用一次预计算的增益向量；运动编码逐采样点重新计算增益，
不做分块恒定声像，避免轨迹上的台阶伪影。
"""

import logging

import numpy as np
from numpy.typing import NDArray

from app.exceptions import TrajectoryError
from app.models import FoaSignal, MonoSignal, SphericalPosition, Trajectory

logger = logging.getLogger(__name__)

INV_SQRT2 = 1.0 / np.sqrt(2.0)


def foa_gains(
    azimuth_rad: NDArray[np.float64] | float,
    elevation_rad: NDArray[np.float64] | float,
) -> NDArray[np.float64]:
    """
    计算 W, X, Y, Z 增益

    Returns:
        形状 (4,) 或 (4, N) 的增益数组
    """
    cos_el = np.cos(elevation_rad)
    w = np.full_like(cos_el, INV_SQRT2, dtype=np.float64)
    return np.stack([
        w,
        np.cos(azimuth_rad) * cos_el,
        np.sin(azimuth_rad) * cos_el,
        np.sin(elevation_rad) * np.ones_like(cos_el),
    ])


def encode_static(mono: MonoSignal, pos: SphericalPosition) -> FoaSignal:
    """将单声道信号编码到固定方向"""
    mono.require_non_empty()
    gains = foa_gains(pos.azimuth_rad, pos.elevation_rad)
    return FoaSignal.from_array(gains[:, None] * mono.samples[None, :], mono.sample_rate)


def encode_moving(mono: MonoSignal, traj: Trajectory) -> FoaSignal:
    """
    按轨迹逐采样点编码

    信号时长必须等于轨迹片段时长（允许 ±1 个采样点）。
    起止方向相同的轨迹直接走静态编码，输出与 encode_static 逐位一致。
    """
    mono.require_non_empty()
    expected = traj.clip_duration_s * mono.sample_rate
    if abs(len(mono) - expected) > 1.0:
        raise TrajectoryError(
            f"signal has {len(mono)} samples but trajectory clip is "
            f"{traj.clip_duration_s}s ({expected:.1f} samples at {mono.sample_rate} Hz)"
        )

    if traj.is_static:
        return encode_static(mono, traj.start)

    times = np.minimum(np.arange(len(mono)) / mono.sample_rate, traj.clip_duration_s)
    azimuth_deg, elevation_deg = traj.angles_at(times)
    gains = foa_gains(np.deg2rad(azimuth_deg), np.deg2rad(elevation_deg))
    logger.debug(
        "moving encode",
        extra={
            "samples": len(mono),
            "azimuth_delta_deg": traj.azimuth_delta_deg,
            "elevation_delta_deg": traj.elevation_delta_deg,
        },
    )
    return FoaSignal.from_array(gains * mono.samples[None, :], mono.sample_rate)


def omni_channel(foa: FoaSignal) -> MonoSignal:
    """
    提取全向 W 通道并还原为声压（乘以 √2）

    用于只接受单声道输入的外部语义评估（CLAP / FAD 等）。
    """
    return MonoSignal(foa.w * np.sqrt(2.0), foa.sample_rate)
