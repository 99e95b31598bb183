"""评估报告模型"""

from pydantic import BaseModel, Field


class SpatialErrorReport(BaseModel):
    """空间误差报告（逐帧计算后取平均）"""
    l1_azimuth_deg: float = Field(ge=0.0, description="方位角圆周差 L1，不超过 180")
    l1_elevation_deg: float = Field(ge=0.0, description="俯仰角线性差 L1")
    mean_spatial_angle_deg: float = Field(ge=0.0, description="逐帧大圆夹角均值，不超过 180")
    valid_frame_fraction: float = Field(ge=0.0, le=1.0, description="双方均有效的帧占比")
    frames: int = Field(ge=0, description="总帧数")


class MrstftReport(BaseModel):
    """多分辨率 STFT 距离"""
    per_channel: dict[str, float] = Field(description="W/X/Y/Z 各通道距离")
    mean: float = Field(description="四通道等权平均")
    per_resolution: dict[str, dict[str, float]] = Field(
        default_factory=dict,
        description="FFT 长度 → 各通道单分辨率距离",
    )


class PairEvaluation(BaseModel):
    """一对参考/候选文件的评估结果"""
    reference: str
    candidate: str
    spatial: SpatialErrorReport | None = None
    mrstft: MrstftReport | None = None
    error: str | None = None


class EvaluationSummary(BaseModel):
    """批量评估汇总：各字段在成功样本上的均值"""
    pairs: int
    failed: int
    l1_azimuth_deg: float | None = None
    l1_elevation_deg: float | None = None
    mean_spatial_angle_deg: float | None = None
    valid_frame_fraction: float | None = None
    mrstft_mean: float | None = None
