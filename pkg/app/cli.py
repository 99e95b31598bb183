"""
ambio 命令行入口

子命令：
    encode    单声道 WAV + 轨迹参数 → FOA WAV + sidecar 元数据
    augment   清单 → 空间增强数据集（每个源一个静态样本、一个动态样本）
    analyze   FOA WAV → 逐帧 DoA 轨迹（JSON / CSV）
    evaluate  参考 / 候选（文件或清单）→ 空间误差 + MRSTFT 距离
    condition sidecar 元数据 → `.smx` 位置状态矩阵

用法示例：
    ambio encode dog.wav --out dog_foa.wav --az-start 0 --az-end 90 --move-start 2 --move-end 8
    ambio augment --manifest clotho.jsonl --out-dir out/ --seed 7 --jobs 8
    ambio analyze dog_foa.wav --format csv
    ambio evaluate --ref ref/manifest.jsonl --cand gen/manifest.jsonl
    ambio condition out/clotho_0001_dynamic.json --frames 100

数据输出写到 stdout（或 --out），日志写到 stderr。
失败时 stderr 输出一行 `error: <code>: <message>`，参数错误退出码 2，运行错误退出码 1。
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
from pathlib import Path
from typing import Any, NoReturn, Sequence

from app.config import Settings, get_settings
from app.exceptions import AmbioError, CliUsageError, ManifestError, MetricError
from app.infra.audio_io import CHANNEL_ORDERS, read_foa, read_mono, write_foa, write_mono
from app.infra.logging import setup_logging
from app.infra.manifest import read_record, read_records, write_record
from app.models import SphericalPosition, Trajectory, wrap_azimuth
from app.schemas.record import SpatialSampleRecord
from app.schemas.report import PairEvaluation
from app.services.augmentation import AugmentConfig, augment_corpus
from app.services.captions import compose_caption, get_caption_composer
from app.services.conditioner import ConditionerConfig, build_conditioning_tensor, write_state_matrix
from app.services.config_validation import validate_settings
from app.services.doa import estimate_doa
from app.services.encoder import encode_moving, encode_static, omni_channel
from app.services.evaluation import DoaConfig, evaluate_batch, evaluate_pair, summarize
from app.services.preprocess import PreprocessConfig, preprocess
from app.services.spatial_params import SpeedClass, classify_speed, map_to_language
from app.services.spectral import MrstftConfig, mrstft_distance

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_RUNTIME = 1
EXIT_USAGE = 2


class _ArgumentParser(argparse.ArgumentParser):
    """参数错误改为抛出 CliUsageError，由 main 统一输出单行错误"""

    def error(self, message: str) -> NoReturn:
        raise CliUsageError(message)


# ==================== 输出 ====================

def _emit(text: str, out: str | None) -> None:
    if not text.endswith("\n"):
        text += "\n"
    if out:
        p = Path(out)
        p.parent.mkdir(parents=True, exist_ok=True)
        p.write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _dumps(data: Any) -> str:
    return json.dumps(data, ensure_ascii=False, indent=2)


# ==================== encode ====================

def _encode_trajectory(args: argparse.Namespace, clip_duration_s: float) -> Trajectory:
    """由 encode 的角度 / 时间参数构造轨迹，检查互相矛盾的参数组合"""
    start = SphericalPosition(args.az_start, args.el_start)
    end_az = args.az_end if args.az_end is not None else args.az_start
    end_el = args.el_end if args.el_end is not None else args.el_start
    azimuth_moves = wrap_azimuth(end_az) != start.azimuth_deg
    elevation_moves = end_el != start.elevation_deg

    if args.clockwise and not azimuth_moves:
        raise CliUsageError("--clockwise requires --az-end to differ from --az-start")
    if not (azimuth_moves or elevation_moves):
        if args.move_start is not None or args.move_end is not None:
            raise CliUsageError("--move-start/--move-end require --az-end or --el-end to differ from the start")
        return Trajectory.static(start, clip_duration_s)

    move_start = 0.0 if args.move_start is None else args.move_start
    move_end = clip_duration_s if args.move_end is None else args.move_end
    if not 0.0 <= move_start < move_end <= clip_duration_s:
        raise CliUsageError(
            f"movement window [{move_start}, {move_end}] must satisfy 0 <= start < end <= {clip_duration_s:g} s"
        )
    return Trajectory(
        start=start,
        end=SphericalPosition(end_az, end_el),
        clockwise=args.clockwise,
        move_start_s=move_start,
        move_end_s=move_end,
        clip_duration_s=clip_duration_s,
    )


def default_encode_output(input_path: str | Path) -> Path:
    """未指定 --out 时写到输入旁边：<input>_foa.wav"""
    p = Path(input_path)
    return p.with_name(f"{p.stem}_foa.wav")


def cmd_encode(args: argparse.Namespace, settings: Settings) -> int:
    mono = read_mono(args.input)
    if args.preprocess:
        mono = preprocess(mono, PreprocessConfig.from_settings(settings))
    mono.require_non_empty()

    traj = _encode_trajectory(args, mono.duration_s)
    static = traj.is_static
    foa = encode_static(mono, traj.start) if static else encode_moving(mono, traj)

    out = Path(args.out) if args.out else default_encode_output(args.input)
    write_foa(foa, out)

    phrases = map_to_language(traj)
    kind = "static" if static else "dynamic"
    caption = args.caption or ""
    spatial_caption = ""
    if caption:
        composer = get_caption_composer(settings.caption_composer)
        spatial_caption = compose_caption(caption, phrases, kind, composer)

    record = SpatialSampleRecord(
        sample_id=out.stem,
        source_id=Path(args.input).stem,
        kind=kind,
        audio_path=out.name,
        start_azimuth_deg=traj.start.azimuth_deg,
        start_elevation_deg=traj.start.elevation_deg,
        end_azimuth_deg=traj.end.azimuth_deg,
        end_elevation_deg=traj.end.elevation_deg,
        clockwise=traj.clockwise,
        speed_class=SpeedClass.NONE.value if static else classify_speed(traj.move_duration_s).value,
        move_start_s=None if static else traj.move_start_s,
        move_end_s=None if static else traj.move_end_s,
        clip_duration_s=traj.clip_duration_s,
        sample_rate=foa.sample_rate,
        original_caption=caption,
        spatial_caption=spatial_caption,
        spatial_phrases=phrases.as_dict(),
    )
    record_path = Path(args.record) if args.record else out.with_suffix(".json")
    write_record(record, record_path)
    logger.info("encoded", extra={"out": str(out), "kind": kind, "samples": len(foa)})

    _emit(_dumps({"audio": str(out), "record": str(record_path), "spatial_caption": spatial_caption}), None)
    return EXIT_OK


# ==================== augment ====================

def cmd_augment(args: argparse.Namespace, settings: Settings) -> int:
    result = augment_corpus(
        args.manifest,
        args.out_dir,
        seed=args.seed,
        config=AugmentConfig.from_settings(settings),
    )
    _emit(_dumps({
        "manifest": str(result.manifest_path),
        "records": len(result.records),
        "failures": len(result.failures),
    }), None)
    return EXIT_OK


# ==================== analyze ====================

_CSV_FIELDS = ("time_s", "azimuth_deg", "elevation_deg", "energy", "valid")


def cmd_analyze(args: argparse.Namespace, settings: Settings) -> int:
    foa = read_foa(args.input, channel_order=args.channel_order)
    cfg = DoaConfig.from_settings(settings)
    track = estimate_doa(foa, cfg.frame_len, cfg.hop, cfg.gate)

    if args.export_omni:
        write_mono(omni_channel(foa), args.export_omni)

    rows = track.to_rows()
    if args.format == "csv":
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=_CSV_FIELDS, lineterminator="\n")
        writer.writeheader()
        for row in rows:
            writer.writerow({k: "" if v is None else v for k, v in row.items()})
        _emit(buf.getvalue(), args.out)
    else:
        _emit(_dumps({
            "file": str(args.input),
            "sample_rate": foa.sample_rate,
            "frame_len": track.frame_len,
            "hop": track.hop,
            "valid_fraction": track.valid_fraction,
            "frames": rows,
        }), args.out)
    return EXIT_OK


# ==================== evaluate ====================

def _is_manifest(path: str) -> bool:
    return Path(path).suffix.lower() == ".jsonl"


def _manifest_pairs(ref_manifest: Path, cand_manifest: Path) -> tuple[list[tuple[Path, Path]], list[str]]:
    """按 sample_id 配对两个输出清单，返回 (文件对, 候选中缺失的 sample_id)"""
    cand_by_id = {r.sample_id: r for r in read_records(cand_manifest)}
    pairs: list[tuple[Path, Path]] = []
    missing: list[str] = []
    for ref in read_records(ref_manifest):
        cand = cand_by_id.get(ref.sample_id)
        if cand is None:
            missing.append(ref.sample_id)
            continue
        pairs.append((ref_manifest.parent / ref.audio_path, cand_manifest.parent / cand.audio_path))
    return pairs, missing


def cmd_evaluate(args: argparse.Namespace, settings: Settings) -> int:
    doa_cfg = DoaConfig.from_settings(settings)
    mrstft_cfg = MrstftConfig.from_settings(settings)

    ref_is_manifest, cand_is_manifest = _is_manifest(args.ref), _is_manifest(args.cand)
    if ref_is_manifest != cand_is_manifest:
        raise CliUsageError("--ref and --cand must both be WAV files or both be .jsonl manifests")

    if not ref_is_manifest:
        ref = read_foa(args.ref, channel_order=args.channel_order)
        cand = read_foa(args.cand, channel_order=args.channel_order)
        result = PairEvaluation(
            reference=args.ref,
            candidate=args.cand,
            spatial=evaluate_pair(ref, cand, doa_cfg),
            mrstft=mrstft_distance(ref, cand, mrstft_cfg),
        )
        _emit(result.model_dump_json(indent=2), args.out)
        return EXIT_OK

    pairs, missing = _manifest_pairs(Path(args.ref), Path(args.cand))
    if not pairs and not missing:
        raise ManifestError(f"no records in {args.ref}")
    results = evaluate_batch(pairs, args.jobs, doa_cfg, mrstft_cfg, args.channel_order)
    results += [
        PairEvaluation(reference=sample_id, candidate="", error=f"manifest: no candidate for {sample_id}")
        for sample_id in missing
    ]
    summary = summarize(results)

    lines = [r.model_dump_json() for r in results]
    lines.append(json.dumps({"summary": summary.model_dump()}, ensure_ascii=False))
    _emit("\n".join(lines), args.out)

    if summary.failed:
        raise MetricError(f"{summary.failed} of {summary.pairs} pairs failed")
    return EXIT_OK


# ==================== condition ====================

def cmd_condition(args: argparse.Namespace, settings: Settings) -> int:
    record = read_record(args.record)
    cfg = ConditionerConfig.from_settings(settings)
    tensor = build_conditioning_tensor(
        record.to_trajectory(),
        az_bins=cfg.az_bins,
        el_bins=cfg.el_bins,
        frames=cfg.frames,
        elevation_range_deg=cfg.elevation_range_deg,
    )
    out = Path(args.out) if args.out else Path(args.record).with_suffix(".smx")
    write_state_matrix(tensor, out)
    _emit(_dumps({"smx": str(out), **tensor.header()}), None)
    return EXIT_OK


# ==================== 参数解析 ====================

def build_parser() -> argparse.ArgumentParser:
    parser = _ArgumentParser(prog="ambio", description="FOA spatial audio toolkit")
    parser.add_argument("--log-level", default=None, help="DEBUG/INFO/WARNING/ERROR (default: AMBIO_LOG)")
    parser.add_argument("--log-json", action="store_true", default=None, help="JSON log lines on stderr")
    subparsers = parser.add_subparsers(dest="cmd", required=True)

    p_enc = subparsers.add_parser("encode", help="Encode a mono WAV along a trajectory")
    p_enc.add_argument("input", help="Mono (or stereo, downmixed) source audio")
    p_enc.add_argument("--out", default=None, help="Output FOA WAV path (default: <input>_foa.wav next to the input)")
    p_enc.add_argument("--record", default=None, help="Sidecar JSON path (default: <out>.json)")
    p_enc.add_argument("--az-start", type=float, default=0.0, help="Start azimuth, degrees, counter-clockwise positive")
    p_enc.add_argument("--az-end", type=float, default=None)
    p_enc.add_argument("--el-start", type=float, default=0.0, help="Start elevation, degrees")
    p_enc.add_argument("--el-end", type=float, default=None)
    p_enc.add_argument("--clockwise", action="store_true", help="Rotate with decreasing azimuth")
    p_enc.add_argument("--move-start", type=float, default=None, help="Movement start, seconds (default 0)")
    p_enc.add_argument("--move-end", type=float, default=None, help="Movement end, seconds (default: clip end)")
    p_enc.add_argument("--caption", default=None, help="Original caption to spatialize")
    p_enc.add_argument("--preprocess", action="store_true", help="Resample, trim silence and fit to the clip length first")
    p_enc.add_argument("--captioner", dest="caption_composer", default=None)
    p_enc.set_defaults(handler=cmd_encode)

    p_aug = subparsers.add_parser("augment", help="Build a spatial dataset from a caption manifest")
    p_aug.add_argument("--manifest", required=True, help="JSON-lines {source_id, audio_path, caption}")
    p_aug.add_argument("--out-dir", required=True)
    p_aug.add_argument("--seed", type=int, default=0)
    p_aug.add_argument("--jobs", dest="augment_jobs", type=int, default=None)
    p_aug.add_argument("--captioner", dest="caption_composer", default=None)
    p_aug.set_defaults(handler=cmd_augment)

    p_ana = subparsers.add_parser("analyze", help="Estimate a DoA track from an FOA WAV")
    p_ana.add_argument("input")
    p_ana.add_argument("--format", choices=("json", "csv"), default="json")
    p_ana.add_argument("--frame-len", dest="doa_frame_len", type=int, default=None)
    p_ana.add_argument("--hop", dest="doa_hop", type=int, default=None)
    p_ana.add_argument("--gate", dest="doa_energy_gate", type=float, default=None)
    p_ana.add_argument("--channel-order", choices=sorted(CHANNEL_ORDERS), default="wxyz")
    p_ana.add_argument("--export-omni", default=None, help="Also write the omnidirectional channel as mono WAV")
    p_ana.add_argument("--out", default=None, help="Write the track here instead of stdout")
    p_ana.set_defaults(handler=cmd_analyze)

    p_eva = subparsers.add_parser("evaluate", help="Compare reference and candidate FOA audio")
    p_eva.add_argument("--ref", required=True, help="FOA WAV or output manifest (.jsonl)")
    p_eva.add_argument("--cand", required=True, help="FOA WAV or output manifest (.jsonl)")
    p_eva.add_argument("--frame-len", dest="doa_frame_len", type=int, default=None)
    p_eva.add_argument("--hop", dest="doa_hop", type=int, default=None)
    p_eva.add_argument("--gate", dest="doa_energy_gate", type=float, default=None)
    p_eva.add_argument("--channel-order", choices=sorted(CHANNEL_ORDERS), default="wxyz")
    p_eva.add_argument("--jobs", type=int, default=None)
    p_eva.add_argument("--out", default=None)
    p_eva.set_defaults(handler=cmd_evaluate)

    p_con = subparsers.add_parser("condition", help="Build a position state matrix from a sidecar record")
    p_con.add_argument("record", help="Sidecar .json written by encode/augment")
    p_con.add_argument("--az-bins", dest="conditioner_az_bins", type=int, default=None)
    p_con.add_argument("--el-bins", dest="conditioner_el_bins", type=int, default=None)
    p_con.add_argument("--frames", dest="conditioner_frames", type=int, default=None)
    p_con.add_argument("--out", default=None, help="Output .smx path (default: <record>.smx)")
    p_con.set_defaults(handler=cmd_condition)

    return parser


def resolve_settings(args: argparse.Namespace, base: Settings | None = None) -> Settings:
    """
    CLI 参数覆盖配置（只影响本次调用），并做一致性校验

    参数的 dest 与 Settings 字段同名时自动覆盖，例如 --frame-len → doa_frame_len。
    """
    settings = base or get_settings()
    overrides = {
        name: getattr(args, name)
        for name in Settings.model_fields
        if getattr(args, name, None) is not None
    }
    resolved = settings.model_copy(update=overrides)
    validate_settings(resolved)
    return resolved


def main(argv: Sequence[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        settings = resolve_settings(args)
        setup_logging(settings.log_level, settings.log_json)
        return args.handler(args, settings)
    except CliUsageError as exc:
        print(f"error: {exc.code}: {_one_line(exc)}", file=sys.stderr)
        return EXIT_USAGE
    except AmbioError as exc:
        print(f"error: {exc.code}: {_one_line(exc)}", file=sys.stderr)
        return EXIT_RUNTIME


def _one_line(exc: Exception) -> str:
    return " ".join(str(exc).split())


if __name__ == "__main__":
    sys.exit(main())
