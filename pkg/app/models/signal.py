"""
信号与方向的值类型

- MonoSignal        : 单声道声压信号 p
- FoaSignal         : 一阶 Ambisonics B-format 四通道信号（W, X, Y, Z）
- SphericalPosition : 方位角 / 俯仰角

约定：
- 方位角从正前方逆时针为正（+90° 为左侧，与 Y = p·sinθ 一致），存储时折叠到 (-180°, 180°]
- 俯仰角向上为正，范围 [-90°, 90°]，越界直接报错而不是截断
- 内部采样统一使用 float64，只在文件读写时转换为 float32

所有值构造后不可变（numpy 数组设置为只读），可以在线程间安全共享。
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numpy.typing import ArrayLike, NDArray

from app.exceptions import PositionError, SignalError

FOA_CHANNELS = ("w", "x", "y", "z")


def wrap_azimuth(azimuth_deg: float) -> float:
    """将方位角折叠到 (-180, 180]"""
    wrapped = azimuth_deg % 360.0
    if wrapped > 180.0:
        wrapped -= 360.0
    return float(wrapped)


def wrap_azimuth_array(azimuth_deg: NDArray[np.float64]) -> NDArray[np.float64]:
    """wrap_azimuth 的向量化版本"""
    wrapped = np.mod(azimuth_deg, 360.0)
    return np.where(wrapped > 180.0, wrapped - 360.0, wrapped)


def circular_distance_deg(a: ArrayLike, b: ArrayLike) -> NDArray[np.float64]:
    """两个方位角之间的圆周距离，范围 [0, 180]"""
    diff = np.mod(np.abs(np.asarray(a, dtype=np.float64) - np.asarray(b, dtype=np.float64)), 360.0)
    return np.minimum(diff, 360.0 - diff)


def _frozen_samples(samples: ArrayLike, name: str) -> NDArray[np.float64]:
    arr = np.array(samples, dtype=np.float64, copy=True)
    if arr.ndim != 1:
        raise SignalError(f"{name} must be one-dimensional, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise SignalError(f"{name} contains non-finite samples")
    arr.flags.writeable = False
    return arr


def _check_rate(sample_rate: int) -> int:
    if int(sample_rate) != sample_rate or sample_rate <= 0:
        raise SignalError(f"sample_rate must be a positive integer, got {sample_rate}")
    return int(sample_rate)


@dataclass(frozen=True, eq=False, init=False)
class MonoSignal:
    """单声道信号"""

    samples: NDArray[np.float64]
    sample_rate: int

    def __init__(self, samples: ArrayLike, sample_rate: int) -> None:
        object.__setattr__(self, "sample_rate", _check_rate(sample_rate))
        object.__setattr__(self, "samples", _frozen_samples(samples, "samples"))

    def __len__(self) -> int:
        return int(self.samples.shape[0])

    @property
    def duration_s(self) -> float:
        return len(self) / self.sample_rate

    def require_non_empty(self) -> None:
        if len(self) == 0:
            raise SignalError("signal is empty")


@dataclass(frozen=True, eq=False, init=False)
class FoaSignal:
    """
    一阶 Ambisonics B-format 信号

    通道顺序固定为 W, X, Y, Z（FuMa 风格排列，非 ACN）。
    """

    w: NDArray[np.float64]
    x: NDArray[np.float64]
    y: NDArray[np.float64]
    z: NDArray[np.float64]
    sample_rate: int

    def __init__(
        self,
        w: ArrayLike,
        x: ArrayLike,
        y: ArrayLike,
        z: ArrayLike,
        sample_rate: int,
    ) -> None:
        object.__setattr__(self, "sample_rate", _check_rate(sample_rate))
        channels = [_frozen_samples(c, name) for c, name in zip((w, x, y, z), FOA_CHANNELS)]
        lengths = {c.shape[0] for c in channels}
        if len(lengths) != 1:
            raise SignalError(f"FOA channels differ in length: {sorted(lengths)}")
        for name, arr in zip(FOA_CHANNELS, channels):
            object.__setattr__(self, name, arr)

    @classmethod
    def from_array(cls, data: ArrayLike, sample_rate: int) -> FoaSignal:
        """从 (4, N) 数组构造，行顺序 W, X, Y, Z"""
        arr = np.asarray(data, dtype=np.float64)
        if arr.ndim != 2 or arr.shape[0] != 4:
            raise SignalError(f"expected array of shape (4, N), got {arr.shape}")
        return cls(arr[0], arr[1], arr[2], arr[3], sample_rate)

    def as_array(self) -> NDArray[np.float64]:
        """返回 (4, N) 数组副本"""
        return np.stack([self.w, self.x, self.y, self.z])

    def channel(self, name: str) -> NDArray[np.float64]:
        key = name.lower()
        if key not in FOA_CHANNELS:
            raise SignalError(f"unknown FOA channel: {name}")
        return getattr(self, key)

    def __len__(self) -> int:
        return int(self.w.shape[0])

    @property
    def duration_s(self) -> float:
        return len(self) / self.sample_rate


@dataclass(frozen=True)
class SphericalPosition:
    """方位角 / 俯仰角（度）"""

    azimuth_deg: float
    elevation_deg: float

    def __post_init__(self) -> None:
        az = float(self.azimuth_deg)
        el = float(self.elevation_deg)
        if not (math.isfinite(az) and math.isfinite(el)):
            raise PositionError(f"non-finite position: ({az}, {el})")
        if el < -90.0 or el > 90.0:
            raise PositionError(f"elevation {el} outside [-90, 90]")
        object.__setattr__(self, "azimuth_deg", wrap_azimuth(az))
        object.__setattr__(self, "elevation_deg", el)

    @property
    def azimuth_rad(self) -> float:
        return math.radians(self.azimuth_deg)

    @property
    def elevation_rad(self) -> float:
        return math.radians(self.elevation_deg)
