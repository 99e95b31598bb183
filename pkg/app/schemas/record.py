"""数据集清单与样本元数据模型"""

from typing import Literal

from pydantic import BaseModel, Field, model_validator

from app.models import SphericalPosition, Trajectory

SampleKind = Literal["static", "dynamic"]
SpeedLabel = Literal["fast", "moderate", "slow", "none"]

AZIMUTH_CONVENTION = "ccw-positive-from-front; clockwise=decreasing-azimuth"


class ManifestItem(BaseModel):
    """输入清单的一行（JSON Lines）"""
    source_id: str = Field(..., min_length=1, description="源音频 ID，在清单内唯一")
    audio_path: str = Field(..., min_length=1, description="音频路径，相对路径以清单所在目录为基准")
    caption: str = Field(..., min_length=1, description="原始（非空间）字幕")


class SpatialSampleRecord(BaseModel):
    """
    增强样本的完整元数据

    同时作为 sidecar `.json` 和输出清单的一行。
    方位角逆时针为正，顺时针表示方位角递减；通道顺序 W, X, Y, Z。
    """
    sample_id: str
    source_id: str
    kind: SampleKind
    audio_path: str = Field(description="FOA 文件路径（相对输出目录）")
    start_azimuth_deg: float
    start_elevation_deg: float
    end_azimuth_deg: float
    end_elevation_deg: float
    clockwise: bool = False
    speed_class: SpeedLabel = "none"
    move_start_s: float | None = None
    move_end_s: float | None = None
    clip_duration_s: float
    sample_rate: int
    original_caption: str = ""
    spatial_caption: str = ""
    spatial_phrases: dict[str, str | bool | None] = Field(default_factory=dict)
    rng_seed: int = Field(default=0, ge=0, lt=2**64)
    channel_order: Literal["WXYZ"] = "WXYZ"
    azimuth_convention: str = AZIMUTH_CONVENTION

    @model_validator(mode="after")
    def check_kind_fields(self):
        if self.kind == "dynamic":
            if self.move_start_s is None or self.move_end_s is None:
                raise ValueError("dynamic 样本必须包含 move_start_s / move_end_s")
        elif self.move_start_s is not None or self.move_end_s is not None:
            raise ValueError("static 样本不应包含运动时间")
        return self

    def to_trajectory(self) -> Trajectory:
        """还原轨迹；静态样本返回覆盖整个片段的退化轨迹"""
        start = SphericalPosition(self.start_azimuth_deg, self.start_elevation_deg)
        if self.kind == "static":
            return Trajectory.static(start, self.clip_duration_s)
        assert self.move_start_s is not None and self.move_end_s is not None
        return Trajectory(
            start=start,
            end=SphericalPosition(self.end_azimuth_deg, self.end_elevation_deg),
            clockwise=self.clockwise,
            move_start_s=self.move_start_s,
            move_end_s=self.move_end_s,
            clip_duration_s=self.clip_duration_s,
        )


class ItemFailure(BaseModel):
    """批处理中单个条目的失败记录"""
    source_id: str
    kind: SampleKind | None = None
    error_code: str
    message: str
