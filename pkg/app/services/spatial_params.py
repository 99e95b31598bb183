"""
空间参数采样与语言映射

负责数据增强中与"参数"相关的部分：
- 静态样本：随机起始方位角 / 俯仰角
- 动态样本：随机选择变化维度（仅方位角 / 仅俯仰角 / 两者），满足最小变化量约束，
  随机速度类别、运动时长、运动起点和顺/逆时针标志
- 参数 → 自然语言短语（方向词、上/下、快/中/慢）

分箱表（BinTable）：

    方位角（逆时针为正，区间左闭右开，back 两段合并覆盖 ±180°）
        [-22.5,   22.5)  front
        [ 22.5,   67.5)  front-left
        [ 67.5,  112.5)  left
        [112.5,  157.5)  back-left
        [157.5,  180.0]  back
        (-180.0, -157.5) back
        [-157.5, -112.5) back-right
        [-112.5,  -67.5) right
        [ -67.5,  -22.5) front-right

    俯仰角：(30, 35] → up，[-35, -30) → down，其余不产生词
    速度（运动时长）：[1, 3] fast，[3.5, 6.5] moderate，[7, 10] slow

采样只会落在速度分箱内部；对外部数据分类时，分箱之间的空隙归入最近的分箱（距离相等时归入较快的一档）。
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from app.config import Settings, get_settings
from app.models import SphericalPosition, Trajectory, circular_distance_deg, wrap_azimuth

logger = logging.getLogger(__name__)


class SpeedClass(str, Enum):
    FAST = "fast"
    MODERATE = "moderate"
    SLOW = "slow"
    NONE = "none"  # 静态样本


class ChangeMode(str, Enum):
    AZIMUTH = "azimuth"
    ELEVATION = "elevation"
    BOTH = "both"


@dataclass(frozen=True)
class AngleBin:
    """一个角度分箱，lo/hi 的开闭由标志控制"""
    lo: float
    hi: float
    word: str
    lo_closed: bool = True
    hi_closed: bool = False

    def contains(self, value: float) -> bool:
        above = value >= self.lo if self.lo_closed else value > self.lo
        below = value <= self.hi if self.hi_closed else value < self.hi
        return above and below


@dataclass(frozen=True)
class BinTable:
    """空间参数 → 语言的分箱表"""

    azimuth: tuple[AngleBin, ...] = (
        AngleBin(-22.5, 22.5, "front"),
        AngleBin(22.5, 67.5, "front-left"),
        AngleBin(67.5, 112.5, "left"),
        AngleBin(112.5, 157.5, "back-left"),
        AngleBin(157.5, 180.0, "back", hi_closed=True),
        AngleBin(-180.0, -157.5, "back", lo_closed=False),
        AngleBin(-157.5, -112.5, "back-right"),
        AngleBin(-112.5, -67.5, "right"),
        AngleBin(-67.5, -22.5, "front-right"),
    )
    elevation: tuple[AngleBin, ...] = (
        AngleBin(-35.0, -30.0, "down"),
        AngleBin(30.0, 35.0, "up", lo_closed=False, hi_closed=True),
    )
    speed: tuple[tuple[float, float, SpeedClass], ...] = (
        (1.0, 3.0, SpeedClass.FAST),
        (3.5, 6.5, SpeedClass.MODERATE),
        (7.0, 10.0, SpeedClass.SLOW),
    )
    elevation_range_deg: float = 35.0

    def speed_bin(self, speed: SpeedClass) -> tuple[float, float]:
        for lo, hi, cls in self.speed:
            if cls == speed:
                return lo, hi
        raise KeyError(speed)


DEFAULT_BINS = BinTable()


def azimuth_word(azimuth_deg: float, table: BinTable = DEFAULT_BINS) -> str:
    az = wrap_azimuth(azimuth_deg)
    for b in table.azimuth:
        if b.contains(az):
            return b.word
    raise AssertionError(f"azimuth bins do not cover {az}")  # 分箱表完整覆盖 (-180, 180]


def elevation_word(elevation_deg: float, table: BinTable = DEFAULT_BINS) -> str | None:
    """
    俯仰角方向词

    只在 ±(30°, 35°] 的极端带内产生 up/down；超出 ±35° 的外部数据同样视为 up/down。
    """
    for b in table.elevation:
        if b.contains(elevation_deg):
            return b.word
    if elevation_deg > table.elevation_range_deg:
        return "up"
    if elevation_deg < -table.elevation_range_deg:
        return "down"
    return None


def classify_speed(duration_s: float, table: BinTable = DEFAULT_BINS) -> SpeedClass:
    """运动时长 → 速度类别；空隙和越界时长归入最近分箱"""
    best: tuple[float, SpeedClass] | None = None
    for lo, hi, cls in table.speed:
        if lo <= duration_s <= hi:
            return cls
        gap = lo - duration_s if duration_s < lo else duration_s - hi
        if best is None or gap < best[0]:
            best = (gap, cls)
    assert best is not None
    return best[1]


@dataclass(frozen=True)
class SpatialPhrases:
    """
    一个样本的空间短语集合

    同时写入样本元数据，便于外部 LLM 离线改写字幕。
    """
    start_direction: str
    end_direction: str | None = None
    start_elevation: str | None = None
    end_elevation: str | None = None
    speed: str | None = None
    elevation_motion: str | None = None  # "up" / "down"：俯仰角变化方向
    clockwise: bool | None = None

    @property
    def is_dynamic(self) -> bool:
        return self.speed is not None

    def as_dict(self) -> dict[str, str | bool | None]:
        return {
            "start_direction": self.start_direction,
            "end_direction": self.end_direction,
            "start_elevation": self.start_elevation,
            "end_elevation": self.end_elevation,
            "speed": self.speed,
            "elevation_motion": self.elevation_motion,
            "clockwise": self.clockwise,
        }


def map_to_language(traj: Trajectory | SphericalPosition, table: BinTable = DEFAULT_BINS) -> SpatialPhrases:
    """
    空间参数 → 短语集合

    Args:
        traj: 静态方向（SphericalPosition / 静态轨迹）或动态轨迹
    """
    if isinstance(traj, SphericalPosition):
        return SpatialPhrases(
            start_direction=azimuth_word(traj.azimuth_deg, table),
            start_elevation=elevation_word(traj.elevation_deg, table),
        )
    if traj.is_static:
        return map_to_language(traj.start, table)

    azimuth_moves = traj.azimuth_delta_deg != 0.0
    elevation_delta = traj.elevation_delta_deg
    elevation_motion = None
    if elevation_delta > 0:
        elevation_motion = "up"
    elif elevation_delta < 0:
        elevation_motion = "down"
    return SpatialPhrases(
        start_direction=azimuth_word(traj.start.azimuth_deg, table),
        end_direction=azimuth_word(traj.end.azimuth_deg, table),
        start_elevation=elevation_word(traj.start.elevation_deg, table),
        end_elevation=elevation_word(traj.end.elevation_deg, table),
        speed=classify_speed(traj.move_duration_s, table).value,
        elevation_motion=elevation_motion,
        clockwise=traj.clockwise if azimuth_moves else None,
    )


@dataclass(frozen=True)
class SamplingConfig:
    """随机采样参数"""
    clip_duration_s: float = 10.0
    elevation_limit_deg: float = 35.0
    min_azimuth_change_deg: float = 45.0
    min_elevation_change_deg: float = 30.0
    bins: BinTable = field(default_factory=BinTable)

    @classmethod
    def from_settings(cls, settings: Settings | None = None) -> SamplingConfig:
        s = settings or get_settings()
        return cls(
            clip_duration_s=s.clip_duration_s,
            elevation_limit_deg=s.static_elevation_limit_deg,
            min_azimuth_change_deg=s.min_azimuth_change_deg,
            min_elevation_change_deg=s.min_elevation_change_deg,
        )


def _uniform_azimuth(rng: np.random.Generator) -> float:
    # [-180, 180) 折叠后为 (-180, 180]
    return wrap_azimuth(float(rng.uniform(-180.0, 180.0)))


def sample_static_params(rng: np.random.Generator, config: SamplingConfig | None = None) -> SphericalPosition:
    """均匀采样方位角 (-180, 180] 与俯仰角 [-limit, limit]"""
    cfg = config or SamplingConfig()
    azimuth = _uniform_azimuth(rng)
    elevation = float(rng.uniform(-cfg.elevation_limit_deg, cfg.elevation_limit_deg))
    return SphericalPosition(azimuth, elevation)


@dataclass(frozen=True)
class DynamicParams:
    """动态样本参数"""
    trajectory: Trajectory
    speed_class: SpeedClass
    change_mode: ChangeMode


def sample_dynamic_params(rng: np.random.Generator, config: SamplingConfig | None = None) -> DynamicParams:
    """
    采样动态轨迹

    - 三种变化模式等概率
    - 方位角变化时终点圆周距离 ≥ min_azimuth_change_deg（拒绝采样），顺/逆时针等概率
    - 俯仰角变化时 |Δ| ≥ min_elevation_change_deg（拒绝采样）
    - 速度类别等概率，时长在对应分箱内均匀，起点在 [0, clip - 时长] 内均匀
    - 方位角和俯仰角共用一个运动窗口
    """
    cfg = config or SamplingConfig()
    modes = list(ChangeMode)
    mode = modes[int(rng.integers(len(modes)))]
    start = sample_static_params(rng, cfg)

    end_azimuth = start.azimuth_deg
    clockwise = False
    if mode in (ChangeMode.AZIMUTH, ChangeMode.BOTH):
        while True:
            candidate = _uniform_azimuth(rng)
            if circular_distance_deg(start.azimuth_deg, candidate) >= cfg.min_azimuth_change_deg:
                break
        end_azimuth = candidate
        clockwise = bool(rng.random() < 0.5)

    end_elevation = start.elevation_deg
    if mode in (ChangeMode.ELEVATION, ChangeMode.BOTH):
        limit = cfg.elevation_limit_deg
        while True:
            candidate = float(rng.uniform(-limit, limit))
            if abs(candidate - start.elevation_deg) >= cfg.min_elevation_change_deg:
                break
        end_elevation = candidate

    speed_classes = [SpeedClass.FAST, SpeedClass.MODERATE, SpeedClass.SLOW]
    speed = speed_classes[int(rng.integers(len(speed_classes)))]
    lo, hi = cfg.bins.speed_bin(speed)
    hi = min(hi, cfg.clip_duration_s)
    duration = float(rng.uniform(lo, hi))
    move_start = float(rng.uniform(0.0, cfg.clip_duration_s - duration))
    move_end = min(move_start + duration, cfg.clip_duration_s)

    traj = Trajectory(
        start=start,
        end=SphericalPosition(end_azimuth, end_elevation),
        clockwise=clockwise,
        move_start_s=move_start,
        move_end_s=move_end,
        clip_duration_s=cfg.clip_duration_s,
    )
    return DynamicParams(trajectory=traj, speed_class=speed, change_mode=mode)
