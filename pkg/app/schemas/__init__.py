"""
数据模式层 (Schemas)

使用 Pydantic 定义对外交换的数据模型：
- 自动数据验证
- 类型安全的 JSON 序列化/反序列化（清单、sidecar、评估报告）
"""

from app.schemas.record import (
    AZIMUTH_CONVENTION,
    ItemFailure,
    ManifestItem,
    SpatialSampleRecord,
)
from app.schemas.report import (
    EvaluationSummary,
    MrstftReport,
    PairEvaluation,
    SpatialErrorReport,
)

__all__ = [
    "AZIMUTH_CONVENTION",
    "EvaluationSummary",
    "ItemFailure",
    "ManifestItem",
    "MrstftReport",
    "PairEvaluation",
    "SpatialErrorReport",
    "SpatialSampleRecord",
]
