"""
音频文件读写

FOA 文件规格：
- 容器：RIFF/WAV
- 编码：IEEE float 32-bit
- 声道：4，顺序 W, X, Y, Z（可选按 ACN 顺序 W, Y, Z, X 读写）
- 采样率：与信号一致（默认 16 kHz）

FOA 读写使用 scipy.io.wavfile：输出字节完全由数据决定（不写入时间戳块），
同一信号重复写出得到逐字节相同的文件。
源音频（单声道/立体声，任意 libsndfile 支持的格式）用 soundfile 读取，多声道取平均下混。
"""

from __future__ import annotations

import logging
from pathlib import Path

import numpy as np
import soundfile as sf
from numpy.typing import NDArray
from scipy.io import wavfile

from app.exceptions import AudioFileError, FoaFormatError, SignalError
from app.models import FoaSignal, MonoSignal

logger = logging.getLogger(__name__)

# 文件列 → W, X, Y, Z 的索引
CHANNEL_ORDERS: dict[str, tuple[int, int, int, int]] = {
    "wxyz": (0, 1, 2, 3),
    "acn": (0, 3, 1, 2),  # 文件中为 W, Y, Z, X
}


def _channel_index(channel_order: str) -> tuple[int, int, int, int]:
    try:
        return CHANNEL_ORDERS[channel_order.lower()]
    except KeyError:
        raise FoaFormatError(
            f"unknown channel order: {channel_order}, expected one of {sorted(CHANNEL_ORDERS)}"
        ) from None


def pcm_to_float(data: NDArray) -> NDArray[np.float64]:
    """整数 PCM 缩放到 [-1, 1]，浮点数据原样转为 float64"""
    kind = data.dtype.kind
    if kind == "f":
        return data.astype(np.float64)
    if kind == "u" and data.dtype.itemsize == 1:
        return (data.astype(np.float64) - 128.0) / 128.0
    if kind == "i":
        return data.astype(np.float64) / float(2 ** (8 * data.dtype.itemsize - 1))
    raise FoaFormatError(f"unsupported sample type: {data.dtype}")


def read_foa(path: str | Path, channel_order: str = "wxyz") -> FoaSignal:
    """
    读取 4 声道 FOA WAV 文件

    Raises:
        AudioFileError: 文件不存在
        FoaFormatError: RIFF 结构错误、声道数不是 4
    """
    p = Path(path)
    if not p.is_file():
        raise AudioFileError(f"file not found: {p}")
    index = _channel_index(channel_order)
    try:
        rate, data = wavfile.read(p)
    except (ValueError, EOFError) as exc:
        raise FoaFormatError(f"malformed RIFF/WAV file {p}: {exc}") from exc

    channels = 1 if data.ndim == 1 else data.shape[1]
    if channels != 4:
        raise FoaFormatError(f"expected 4 channels (W, X, Y, Z), got {channels} in {p}")

    samples = pcm_to_float(data)
    return FoaSignal(*(samples[:, i] for i in index), sample_rate=rate)


def write_foa(signal: FoaSignal, path: str | Path, channel_order: str = "wxyz") -> Path:
    """
    写出 32-bit float 4 声道 WAV

    Raises:
        SignalError: 空信号
        AudioFileError: 写入失败
    """
    if len(signal) == 0:
        raise SignalError("cannot write an empty FOA signal")
    index = _channel_index(channel_order)
    columns = signal.as_array()
    data = np.empty((len(signal), 4), dtype="<f4")
    for foa_idx, file_col in enumerate(index):
        data[:, file_col] = columns[foa_idx]

    p = Path(path)
    try:
        p.parent.mkdir(parents=True, exist_ok=True)
        wavfile.write(p, signal.sample_rate, data)
    except OSError as exc:
        raise AudioFileError(f"failed to write {p}: {exc}") from exc
    return p


def read_mono(path: str | Path) -> MonoSignal:
    """
    读取源音频并下混为单声道

    Raises:
        AudioFileError: 文件不存在或无法解码
    """
    p = Path(path)
    if not p.is_file():
        raise AudioFileError(f"file not found: {p}")
    try:
        data, rate = sf.read(p, dtype="float64", always_2d=True)
    except (RuntimeError, sf.SoundFileError) as exc:
        raise AudioFileError(f"cannot decode {p}: {exc}") from exc
    return MonoSignal(data.mean(axis=1), int(rate))


def write_mono(signal: MonoSignal, path: str | Path) -> Path:
    """写出 32-bit float 单声道 WAV"""
    if len(signal) == 0:
        raise SignalError("cannot write an empty signal")
    p = Path(path)
    try:
        p.parent.mkdir(parents=True, exist_ok=True)
        wavfile.write(p, signal.sample_rate, signal.samples.astype("<f4"))
    except OSError as exc:
        raise AudioFileError(f"failed to write {p}: {exc}") from exc
    return p
