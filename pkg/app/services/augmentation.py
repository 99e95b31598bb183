"""
数据集空间增强服务

对输入清单中的每个源音频：
1. 读取并预处理（16 kHz、去首尾静音、循环/截断到 10 秒）
2. 生成一个静态样本和一个动态样本：随机空间参数 → FOA 编码 → 写出 WAV
3. 参数映射为语言短语，合成空间字幕
4. 写出 sidecar `.json`，并按输入顺序汇总为输出清单

每个样本使用独立随机流，种子由 (seed, source_id, kind) 哈希得到，
因此任意子集重新生成的结果都与完整批次一致。
单个条目失败只记录和跳过，不中断整个批次。
"""

from __future__ import annotations

import hashlib
import logging
import os
import re
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from app.config import Settings, get_settings
from app.exceptions import AmbioError, ManifestError
from app.infra.audio_io import read_mono, write_foa
from app.infra.logging import StageTimer, sample_context
from app.infra.manifest import read_manifest, write_jsonl, write_record
from app.models import MonoSignal, Trajectory
from app.pipeline.base import BaseCaptionComposer
from app.schemas.record import ItemFailure, ManifestItem, SampleKind, SpatialSampleRecord
from app.services.captions import compose_caption, get_caption_composer
from app.services.encoder import encode_moving, encode_static
from app.services.preprocess import PreprocessConfig, preprocess
from app.services.spatial_params import (
    SamplingConfig,
    SpeedClass,
    map_to_language,
    sample_dynamic_params,
    sample_static_params,
)

logger = logging.getLogger(__name__)

MANIFEST_NAME = "manifest.jsonl"
FAILURES_NAME = "failures.jsonl"

_UNSAFE_CHARS = re.compile(r"[^A-Za-z0-9._-]+")


def derive_seed(seed: int, source_id: str, kind: str) -> int:
    """(seed, source_id, kind) → 64 位无符号种子，与进程哈希随机化无关"""
    digest = hashlib.sha256(f"{seed}:{source_id}:{kind}".encode("utf-8")).digest()
    return int.from_bytes(digest[:8], "little")


def sample_file_stem(source_id: str, kind: str) -> str:
    return f"{_UNSAFE_CHARS.sub('_', source_id)}_{kind}"


def check_file_stems(items: list[ManifestItem], manifest_path: Path) -> None:
    """不同 source_id 清洗后不能落到同一个文件名（大小写不敏感的文件系统也算冲突）"""
    owners: dict[str, str] = {}
    for item in items:
        key = _UNSAFE_CHARS.sub("_", item.source_id).casefold()
        other = owners.setdefault(key, item.source_id)
        if other != item.source_id:
            raise ManifestError(
                f"source_id {item.source_id!r} and {other!r} in {manifest_path} map to the same file name"
            )


@dataclass(frozen=True)
class AugmentConfig:
    """增强批处理参数"""
    preprocess: PreprocessConfig = field(default_factory=PreprocessConfig)
    sampling: SamplingConfig = field(default_factory=SamplingConfig)
    captioner: str = "template"
    jobs: int | None = None

    @classmethod
    def from_settings(cls, settings: Settings | None = None) -> AugmentConfig:
        s = settings or get_settings()
        return cls(
            preprocess=PreprocessConfig.from_settings(s),
            sampling=SamplingConfig.from_settings(s),
            captioner=s.caption_composer,
            jobs=s.augment_jobs,
        )


@dataclass
class AugmentResult:
    """批处理结果；records 与输入顺序一致（每个源依次为 static、dynamic）"""
    records: list[SpatialSampleRecord]
    failures: list[ItemFailure]
    manifest_path: Path


def render_sample(
    mono: MonoSignal,
    item: ManifestItem,
    kind: SampleKind,
    seed: int,
    out_dir: Path,
    config: AugmentConfig,
    composer: BaseCaptionComposer,
) -> SpatialSampleRecord:
    """生成单个静态或动态样本，写出 WAV 与 sidecar"""
    sample_seed = derive_seed(seed, item.source_id, kind)
    rng = np.random.default_rng(sample_seed)
    clip = config.sampling.clip_duration_s

    if kind == "static":
        position = sample_static_params(rng, config.sampling)
        traj = Trajectory.static(position, clip)
        foa = encode_static(mono, position)
        speed = SpeedClass.NONE
    else:
        params = sample_dynamic_params(rng, config.sampling)
        traj = params.trajectory
        foa = encode_moving(mono, traj)
        speed = params.speed_class

    phrases = map_to_language(traj)
    stem = sample_file_stem(item.source_id, kind)
    audio_name = f"{stem}.wav"
    write_foa(foa, out_dir / audio_name)

    record = SpatialSampleRecord(
        sample_id=stem,
        source_id=item.source_id,
        kind=kind,
        audio_path=audio_name,
        start_azimuth_deg=traj.start.azimuth_deg,
        start_elevation_deg=traj.start.elevation_deg,
        end_azimuth_deg=traj.end.azimuth_deg,
        end_elevation_deg=traj.end.elevation_deg,
        clockwise=traj.clockwise,
        speed_class=speed.value,
        move_start_s=None if kind == "static" else traj.move_start_s,
        move_end_s=None if kind == "static" else traj.move_end_s,
        clip_duration_s=clip,
        sample_rate=foa.sample_rate,
        original_caption=item.caption,
        spatial_caption=compose_caption(item.caption, phrases, kind, composer),
        spatial_phrases=phrases.as_dict(),
        rng_seed=sample_seed,
    )
    write_record(record, out_dir / f"{stem}.json")
    return record


def augment_item(
    item: ManifestItem,
    base_dir: Path,
    out_dir: Path,
    seed: int,
    config: AugmentConfig,
    composer: BaseCaptionComposer,
) -> tuple[list[SpatialSampleRecord], list[ItemFailure]]:
    """处理一个源音频，返回 (成功记录, 失败记录)"""
    records: list[SpatialSampleRecord] = []
    failures: list[ItemFailure] = []

    with sample_context(item.source_id):
        timer = StageTimer()
        audio_path = Path(item.audio_path)
        if not audio_path.is_absolute():
            audio_path = base_dir / audio_path
        try:
            mono = preprocess(read_mono(audio_path), config.preprocess)
        except AmbioError as exc:
            logger.warning("source skipped: %s", exc, extra={"error_code": exc.code})
            return records, [ItemFailure(source_id=item.source_id, error_code=exc.code, message=str(exc))]
        timer.mark("preprocess")

    for kind in ("static", "dynamic"):
        with sample_context(item.source_id, kind):
            try:
                records.append(render_sample(mono, item, kind, seed, out_dir, config, composer))
                timer.mark(kind)
            except AmbioError as exc:
                logger.warning("sample failed: %s", exc, extra={"error_code": exc.code})
                failures.append(ItemFailure(
                    source_id=item.source_id, kind=kind, error_code=exc.code, message=str(exc),
                ))
            except Exception as exc:  # noqa: BLE001 - 单个条目异常不能中断批次
                logger.exception("sample failed unexpectedly")
                failures.append(ItemFailure(
                    source_id=item.source_id, kind=kind, error_code="internal", message=repr(exc),
                ))

    logger.debug("source done", extra=timer.get_metrics())
    return records, failures


def augment_corpus(
    manifest_in: str | Path,
    out_dir: str | Path,
    seed: int,
    config: AugmentConfig | None = None,
) -> AugmentResult:
    """
    对整个清单做空间增强

    Args:
        manifest_in: 输入清单（JSON Lines）
        out_dir: 输出目录（WAV、sidecar、manifest.jsonl）
        seed: 批次种子

    Returns:
        AugmentResult：按输入顺序排列的记录和失败列表
    """
    cfg = config or AugmentConfig.from_settings()
    manifest_path = Path(manifest_in)
    items = read_manifest(manifest_path)
    check_file_stems(items, manifest_path)
    base_dir = manifest_path.parent
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    composer = get_caption_composer(cfg.captioner)

    timer = StageTimer()
    workers = max(1, cfg.jobs or os.cpu_count() or 1)
    logger.info(
        "augmentation started",
        extra={"items": len(items), "jobs": workers, "seed": seed, "out_dir": str(out)},
    )

    # pool.map 保持输入顺序，与完成顺序无关
    with ThreadPoolExecutor(max_workers=workers) as pool:
        results = list(pool.map(
            lambda it: augment_item(it, base_dir, out, seed, cfg, composer),
            items,
        ))

    records = [r for item_records, _ in results for r in item_records]
    failures = [f for _, item_failures in results for f in item_failures]

    manifest_out = write_jsonl(records, out / MANIFEST_NAME)
    failures_path = out / FAILURES_NAME
    if failures:
        write_jsonl(failures, failures_path)
    elif failures_path.exists():
        failures_path.unlink()

    timer.mark("batch")
    logger.info(
        "augmentation finished",
        extra={"records": len(records), "failures": len(failures), **timer.get_metrics()},
    )
    return AugmentResult(records=records, failures=failures, manifest_path=manifest_out)
