"""
成对评估服务

对参考 / 候选 FOA 信号分别做 DoA 估计，在双方均有效的帧上计算：
- 方位角圆周差 L1
- 俯仰角线性差 L1
- 逐帧大圆夹角均值

批量模式按文件对并行，输出顺序与输入一致。
"""

from __future__ import annotations

import logging
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from app.config import Settings, get_settings
from app.exceptions import AmbioError, MetricError
from app.infra.audio_io import read_foa
from app.models import FoaSignal
from app.schemas.report import EvaluationSummary, PairEvaluation, SpatialErrorReport
from app.services.doa import circular_l1, estimate_doa, linear_l1, spatial_angle_deg
from app.services.spectral import MrstftConfig, mrstft_distance

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class DoaConfig:
    frame_len: int = 512
    hop: int = 256
    gate: float = 1e-6

    @classmethod
    def from_settings(cls, settings: Settings | None = None) -> DoaConfig:
        s = settings or get_settings()
        return cls(frame_len=s.doa_frame_len, hop=s.doa_hop, gate=s.doa_energy_gate)


def evaluate_pair(
    reference: FoaSignal,
    candidate: FoaSignal,
    config: DoaConfig | None = None,
) -> SpatialErrorReport:
    """
    计算空间误差报告

    Raises:
        MetricError: 时长或采样率不一致；没有双方均有效的帧
    """
    cfg = config or DoaConfig()
    if reference.sample_rate != candidate.sample_rate:
        raise MetricError(f"sample rate mismatch: {reference.sample_rate} vs {candidate.sample_rate}")
    if len(reference) != len(candidate):
        raise MetricError(f"duration mismatch: {len(reference)} vs {len(candidate)} samples")

    ref_track = estimate_doa(reference, cfg.frame_len, cfg.hop, cfg.gate)
    cand_track = estimate_doa(candidate, cfg.frame_len, cfg.hop, cfg.gate)
    mutual = ref_track.valid & cand_track.valid
    if not mutual.any():
        raise MetricError("no mutually valid frames")

    angles = spatial_angle_deg(
        ref_track.azimuth_deg[mutual],
        ref_track.elevation_deg[mutual],
        cand_track.azimuth_deg[mutual],
        cand_track.elevation_deg[mutual],
    )
    return SpatialErrorReport(
        l1_azimuth_deg=circular_l1(ref_track.azimuth_deg[mutual], cand_track.azimuth_deg[mutual]),
        l1_elevation_deg=linear_l1(ref_track.elevation_deg[mutual], cand_track.elevation_deg[mutual]),
        mean_spatial_angle_deg=float(np.mean(angles)),
        valid_frame_fraction=float(mutual.mean()),
        frames=len(ref_track),
    )


def evaluate_files(
    reference: Path,
    candidate: Path,
    doa_config: DoaConfig | None = None,
    mrstft_config: MrstftConfig | None = None,
    channel_order: str = "wxyz",
) -> PairEvaluation:
    """读取两个 FOA 文件并评估；失败记录在结果里而不是抛出"""
    try:
        ref = read_foa(reference, channel_order=channel_order)
        cand = read_foa(candidate, channel_order=channel_order)
        return PairEvaluation(
            reference=str(reference),
            candidate=str(candidate),
            spatial=evaluate_pair(ref, cand, doa_config),
            mrstft=mrstft_distance(ref, cand, mrstft_config),
        )
    except AmbioError as exc:
        logger.warning("evaluation failed", extra={"reference": str(reference), "error": str(exc)})
        return PairEvaluation(
            reference=str(reference),
            candidate=str(candidate),
            error=f"{exc.code}: {exc}",
        )


def evaluate_batch(
    pairs: list[tuple[Path, Path]],
    jobs: int | None = None,
    doa_config: DoaConfig | None = None,
    mrstft_config: MrstftConfig | None = None,
    channel_order: str = "wxyz",
) -> list[PairEvaluation]:
    """并行评估多个文件对，结果顺序与输入一致"""
    workers = max(1, jobs or os.cpu_count() or 1)
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(
            lambda p: evaluate_files(p[0], p[1], doa_config, mrstft_config, channel_order),
            pairs,
        ))


def summarize(results: list[PairEvaluation]) -> EvaluationSummary:
    """对成功样本的各字段取均值"""
    ok = [r for r in results if r.spatial is not None]

    def _mean(values: list[float]) -> float | None:
        return float(np.mean(values)) if values else None

    return EvaluationSummary(
        pairs=len(results),
        failed=len(results) - len(ok),
        l1_azimuth_deg=_mean([r.spatial.l1_azimuth_deg for r in ok if r.spatial]),
        l1_elevation_deg=_mean([r.spatial.l1_elevation_deg for r in ok if r.spatial]),
        mean_spatial_angle_deg=_mean([r.spatial.mean_spatial_angle_deg for r in ok if r.spatial]),
        valid_frame_fraction=_mean([r.spatial.valid_frame_fraction for r in ok if r.spatial]),
        mrstft_mean=_mean([r.mrstft.mean for r in ok if r.mrstft]),
    )
