"""
JSON Lines 清单读写

- 输入清单：每行一个 {source_id, audio_path, caption}
- 输出清单 / sidecar：SpatialSampleRecord 的 JSON
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Iterable, TypeVar

from pydantic import BaseModel, ValidationError

from app.exceptions import ManifestError
from app.schemas.record import ManifestItem, SpatialSampleRecord

ModelT = TypeVar("ModelT", bound=BaseModel)


def _read_jsonl(path: str | Path, model: type[ModelT]) -> list[ModelT]:
    p = Path(path)
    if not p.is_file():
        raise ManifestError(f"manifest not found: {p}")
    items: list[ModelT] = []
    with p.open("r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                items.append(model.model_validate(json.loads(line)))
            except (json.JSONDecodeError, ValidationError) as exc:
                raise ManifestError(f"{p}:{lineno}: invalid entry: {exc}") from exc
    return items


def read_manifest(path: str | Path) -> list[ManifestItem]:
    """读取输入清单，source_id 必须唯一"""
    items = _read_jsonl(path, ManifestItem)
    seen: set[str] = set()
    for item in items:
        if item.source_id in seen:
            raise ManifestError(f"duplicate source_id in {path}: {item.source_id}")
        seen.add(item.source_id)
    return items


def read_records(path: str | Path) -> list[SpatialSampleRecord]:
    """读取输出清单（样本元数据）"""
    return _read_jsonl(path, SpatialSampleRecord)


def read_record(path: str | Path) -> SpatialSampleRecord:
    """读取单个 sidecar `.json`"""
    p = Path(path)
    try:
        return SpatialSampleRecord.model_validate_json(p.read_text(encoding="utf-8"))
    except FileNotFoundError:
        raise ManifestError(f"record not found: {p}") from None
    except ValidationError as exc:
        raise ManifestError(f"invalid record {p}: {exc}") from exc


def write_record(record: SpatialSampleRecord, path: str | Path) -> Path:
    p = Path(path)
    p.parent.mkdir(parents=True, exist_ok=True)
    p.write_text(record.model_dump_json(indent=2) + "\n", encoding="utf-8")
    return p


def write_jsonl(models: Iterable[BaseModel], path: str | Path) -> Path:
    """按给定顺序逐行写出"""
    p = Path(path)
    p.parent.mkdir(parents=True, exist_ok=True)
    with p.open("w", encoding="utf-8") as fh:
        for m in models:
            fh.write(m.model_dump_json() + "\n")
    return p
