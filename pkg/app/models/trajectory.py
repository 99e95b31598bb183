"""
声源轨迹

描述一个片段内声源方向随时间的变化：起止方向、顺/逆时针标志、运动窗口。

插值规则：
- t ≤ move_start_s：位于起点
- t ≥ move_end_s  ：位于终点
- 运动窗口内：按 (t - move_start_s) / (move_end_s - move_start_s) 线性插值
  方位角沿 clockwise 标志选定的有向路径插值后折叠到 (-180°, 180°]，俯仰角直接线性插值

"顺时针"定义为方位角递减（本工具包方位角逆时针为正）。
起止方位角相同（模 360）时路径长度为 0，不做整圈旋转。
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numpy.typing import ArrayLike, NDArray

from app.exceptions import TrajectoryError
from app.models.signal import SphericalPosition, wrap_azimuth, wrap_azimuth_array


def signed_azimuth_delta(start_deg: float, end_deg: float, clockwise: bool) -> float:
    """
    起点到终点的有向方位角变化量

    Returns:
        逆时针：[0, 360) 内的正向增量
        顺时针：(-360, 0] 内的负向增量
    """
    if clockwise:
        delta = (start_deg - end_deg) % 360.0
        sign = -1.0
    else:
        delta = (end_deg - start_deg) % 360.0
        sign = 1.0
    # 浮点取模可能返回 360.0（输入为极小负数时）
    if delta >= 360.0:
        delta = 0.0
    return sign * delta if delta else 0.0


@dataclass(frozen=True)
class Trajectory:
    """声源轨迹"""

    start: SphericalPosition
    end: SphericalPosition
    clockwise: bool
    move_start_s: float
    move_end_s: float
    clip_duration_s: float

    def __post_init__(self) -> None:
        values = (self.move_start_s, self.move_end_s, self.clip_duration_s)
        if not all(math.isfinite(v) for v in values):
            raise TrajectoryError(f"non-finite trajectory times: {values}")
        if not (0.0 <= self.move_start_s < self.move_end_s <= self.clip_duration_s):
            raise TrajectoryError(
                "movement window must satisfy 0 <= move_start < move_end <= clip_duration, "
                f"got [{self.move_start_s}, {self.move_end_s}] in {self.clip_duration_s}"
            )

    @classmethod
    def static(cls, position: SphericalPosition, clip_duration_s: float) -> Trajectory:
        """起止相同的退化轨迹，运动窗口覆盖整个片段"""
        return cls(
            start=position,
            end=position,
            clockwise=False,
            move_start_s=0.0,
            move_end_s=clip_duration_s,
            clip_duration_s=clip_duration_s,
        )

    @property
    def is_static(self) -> bool:
        return self.start == self.end

    @property
    def azimuth_delta_deg(self) -> float:
        return signed_azimuth_delta(self.start.azimuth_deg, self.end.azimuth_deg, self.clockwise)

    @property
    def elevation_delta_deg(self) -> float:
        return self.end.elevation_deg - self.start.elevation_deg

    @property
    def move_duration_s(self) -> float:
        return self.move_end_s - self.move_start_s

    def _check_time(self, t: float) -> None:
        if not (0.0 <= t <= self.clip_duration_s):
            raise TrajectoryError(f"t={t} outside [0, {self.clip_duration_s}]")

    def position_at(self, t: float) -> SphericalPosition:
        """时刻 t（秒）的声源方向"""
        self._check_time(t)
        if t <= self.move_start_s:
            return self.start
        if t >= self.move_end_s:
            return self.end
        frac = (t - self.move_start_s) / self.move_duration_s
        azimuth = self.start.azimuth_deg + frac * self.azimuth_delta_deg
        elevation = self._lerp_elevation(frac)
        return SphericalPosition(wrap_azimuth(azimuth), float(elevation))

    def angles_at(self, t: ArrayLike) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
        """
        position_at 的向量化版本

        Returns:
            (azimuth_deg, elevation_deg) 两个与 t 同形状的数组
        """
        times = np.asarray(t, dtype=np.float64)
        if times.size and (times.min() < 0.0 or times.max() > self.clip_duration_s):
            raise TrajectoryError(f"times outside [0, {self.clip_duration_s}]")
        frac = np.clip((times - self.move_start_s) / self.move_duration_s, 0.0, 1.0)

        azimuth = wrap_azimuth_array(self.start.azimuth_deg + frac * self.azimuth_delta_deg)
        elevation = self._lerp_elevation(frac)

        # 窗口外保持端点精确值
        before = times <= self.move_start_s
        after = times >= self.move_end_s
        azimuth = np.where(before, self.start.azimuth_deg, azimuth)
        azimuth = np.where(after, self.end.azimuth_deg, azimuth)
        elevation = np.where(before, self.start.elevation_deg, elevation)
        elevation = np.where(after, self.end.elevation_deg, elevation)
        return azimuth, elevation

    def _lerp_elevation(self, frac: float | NDArray[np.float64]) -> float | NDArray[np.float64]:
        lo = min(self.start.elevation_deg, self.end.elevation_deg)
        hi = max(self.start.elevation_deg, self.end.elevation_deg)
        return np.clip(self.start.elevation_deg + frac * self.elevation_delta_deg, lo, hi)
