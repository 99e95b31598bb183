"""
位置状态矩阵（Position Conditioner）

对每个帧中心时刻 t 取轨迹方向 μ(t)，量化到角度分箱，在 (bins, frames) 零矩阵的对应格置 1：

    S(l, k) = 1  当 l = floor((μ(t_k) − axis_min) / bin_width)（截断到 [0, bins−1]）
    t_k     = (k + 0.5) · clip_duration / frames

- 方位角轴：(-180°, 180°]，bin 0 从 -180° 开始，默认 72 × 5°
- 俯仰角轴：[-35°, 35°]，默认 14 × 5°
- 方位角矩阵与俯仰角矩阵按行拼接（方位角在前）

序列化格式 `.smx`：一行 UTF-8 JSON 头 + 换行，随后是小端 float32 行优先数据。
"""

from __future__ import annotations

import json
import logging
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Literal

import numpy as np
from numpy.typing import NDArray

from app.config import Settings, get_settings
from app.exceptions import ConditionerError
from app.models import Trajectory

logger = logging.getLogger(__name__)

Axis = Literal["azimuth", "elevation"]

SMX_DTYPE = "<f4"


@dataclass(frozen=True)
class AxisSpec:
    axis: Axis
    minimum: float
    span: float

    def bin_width(self, bins: int) -> float:
        return self.span / bins


def axis_spec(axis: Axis, elevation_range_deg: float = 35.0) -> AxisSpec:
    if axis == "azimuth":
        return AxisSpec("azimuth", -180.0, 360.0)
    if axis == "elevation":
        return AxisSpec("elevation", -elevation_range_deg, 2.0 * elevation_range_deg)
    raise ConditionerError(f"unknown axis: {axis}")


@dataclass(frozen=True, eq=False)
class StateMatrix:
    """单轴 one-hot 状态矩阵，形状 (bins, frames)"""
    values: NDArray[np.uint8]
    axis: Axis
    bin_width_deg: float
    frame_rate_hz: float
    axis_min_deg: float

    @property
    def bins(self) -> int:
        return int(self.values.shape[0])

    @property
    def frames(self) -> int:
        return int(self.values.shape[1])

    def occupied_bins(self) -> NDArray[np.int64]:
        """每帧被占用的分箱下标"""
        return np.argmax(self.values, axis=0)


def frame_times(clip_duration_s: float, frames: int) -> NDArray[np.float64]:
    """帧中心时刻"""
    return (np.arange(frames) + 0.5) * (clip_duration_s / frames)


def quantize(values: NDArray[np.float64], spec: AxisSpec, bins: int) -> NDArray[np.int64]:
    idx = np.floor((values - spec.minimum) / spec.bin_width(bins)).astype(np.int64)
    return np.clip(idx, 0, bins - 1)


def build_state_matrix(
    traj: Trajectory,
    axis: Axis,
    bins: int,
    frames: int,
    elevation_range_deg: float = 35.0,
) -> StateMatrix:
    """
    构建单轴状态矩阵

    Raises:
        ConditionerError: bins < 2 或 frames < 1
    """
    if bins < 2:
        raise ConditionerError(f"bins must be >= 2, got {bins}")
    if frames < 1:
        raise ConditionerError(f"frames must be >= 1, got {frames}")

    spec = axis_spec(axis, elevation_range_deg)
    azimuth, elevation = traj.angles_at(frame_times(traj.clip_duration_s, frames))
    index = quantize(azimuth if axis == "azimuth" else elevation, spec, bins)

    values = np.zeros((bins, frames), dtype=np.uint8)
    values[index, np.arange(frames)] = 1
    values.flags.writeable = False
    return StateMatrix(
        values=values,
        axis=axis,
        bin_width_deg=spec.bin_width(bins),
        frame_rate_hz=frames / traj.clip_duration_s,
        axis_min_deg=spec.minimum,
    )


@dataclass(frozen=True)
class TemporalConditions:
    move_start_s: float
    total_move_s: float


def temporal_conditions(traj: Trajectory) -> TemporalConditions:
    """运动起始时间与运动总时长；静态轨迹返回 (0, 0)"""
    if traj.is_static:
        return TemporalConditions(0.0, 0.0)
    return TemporalConditions(traj.move_start_s, traj.move_duration_s)


@dataclass(frozen=True, eq=False)
class ConditioningTensor:
    """方位角 + 俯仰角拼接后的条件矩阵，形状 (az_bins + el_bins, frames)"""
    values: NDArray[np.uint8]
    azimuth: StateMatrix
    elevation: StateMatrix
    temporal: TemporalConditions
    elevation_range_deg: float = 35.0

    @property
    def shape(self) -> tuple[int, int]:
        return int(self.values.shape[0]), int(self.values.shape[1])

    def header(self) -> dict:
        return {
            "shape": list(self.shape),
            "axes": ["azimuth", "elevation"],
            "rows": {"azimuth": self.azimuth.bins, "elevation": self.elevation.bins},
            "bin_width_deg": {
                "azimuth": self.azimuth.bin_width_deg,
                "elevation": self.elevation.bin_width_deg,
            },
            "frame_rate_hz": self.azimuth.frame_rate_hz,
            "ranges": {
                "azimuth": [-180.0, 180.0],
                "elevation": [-self.elevation_range_deg, self.elevation_range_deg],
            },
            "temporal": {
                "move_start_s": self.temporal.move_start_s,
                "total_move_s": self.temporal.total_move_s,
            },
            "dtype": "float32-le",
        }


@dataclass(frozen=True)
class ConditionerConfig:
    az_bins: int = 72
    el_bins: int = 14
    frames: int = 100
    elevation_range_deg: float = 35.0

    @classmethod
    def from_settings(cls, settings: Settings | None = None) -> ConditionerConfig:
        s = settings or get_settings()
        return cls(
            az_bins=s.conditioner_az_bins,
            el_bins=s.conditioner_el_bins,
            frames=s.conditioner_frames,
            elevation_range_deg=s.conditioner_el_range_deg,
        )


def build_conditioning_tensor(
    traj: Trajectory,
    az_bins: int = 72,
    el_bins: int = 14,
    frames: int = 100,
    elevation_range_deg: float = 35.0,
) -> ConditioningTensor:
    """构建方位角 / 俯仰角状态矩阵并按行拼接（方位角在前）"""
    az = build_state_matrix(traj, "azimuth", az_bins, frames, elevation_range_deg)
    el = build_state_matrix(traj, "elevation", el_bins, frames, elevation_range_deg)
    values = np.vstack([az.values, el.values])
    values.flags.writeable = False
    return ConditioningTensor(
        values=values,
        azimuth=az,
        elevation=el,
        temporal=temporal_conditions(traj),
        elevation_range_deg=elevation_range_deg,
    )


def write_state_matrix(tensor: ConditioningTensor, path: str | Path) -> Path:
    """写出 `.smx`：JSON 头一行 + 小端 float32 行优先数据"""
    p = Path(path)
    p.parent.mkdir(parents=True, exist_ok=True)
    header = json.dumps(tensor.header(), sort_keys=True, ensure_ascii=False)
    with p.open("wb") as fh:
        fh.write(header.encode("utf-8") + b"\n")
        fh.write(np.ascontiguousarray(tensor.values, dtype=SMX_DTYPE).tobytes(order="C"))
    return p


def read_state_matrix(path: str | Path) -> tuple[dict, NDArray[np.float32]]:
    """
    读取 `.smx`

    Returns:
        (header, values)，values 形状为 header["shape"]
    """
    p = Path(path)
    try:
        with p.open("rb") as fh:
            header = json.loads(fh.readline().decode("utf-8"))
            payload = fh.read()
    except FileNotFoundError:
        raise ConditionerError(f"state matrix not found: {p}") from None
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise ConditionerError(f"invalid .smx header in {p}: {exc}") from exc

    shape = tuple(int(v) for v in header.get("shape", ()))
    expected = math.prod(shape) * np.dtype(SMX_DTYPE).itemsize
    if len(shape) != 2 or len(payload) != expected:
        raise ConditionerError(f"{p}: payload of {len(payload)} bytes does not match shape {shape}")
    return header, np.frombuffer(payload, dtype=SMX_DTYPE).reshape(shape)
