class AmbioError(Exception):
    """工具包错误基类"""

    code: str = "ambio_error"


class SignalError(AmbioError, ValueError):
    """信号无效（空信号、非有限值、长度不一致）"""

    code = "invalid_signal"


class SilentSignalError(SignalError):
    """信号全部为静音，无法裁剪"""

    code = "silent_signal"


class PositionError(AmbioError, ValueError):
    """球面坐标越界或非有限"""

    code = "invalid_position"


class TrajectoryError(AmbioError, ValueError):
    """轨迹参数无效或与信号时长不匹配"""

    code = "invalid_trajectory"


class AudioFileError(AmbioError):
    """音频文件读写错误"""

    code = "audio_io"


class FoaFormatError(AudioFileError):
    """FOA 文件格式错误（声道数、RIFF 结构）"""

    code = "foa_format"


class ManifestError(AmbioError):
    """清单文件错误"""

    code = "manifest"


class ConditionerError(AmbioError, ValueError):
    """状态矩阵参数错误"""

    code = "conditioner"


class MetricError(AmbioError, ValueError):
    """评估指标无法计算"""

    code = "metric"


class ConfigValidationError(AmbioError, ValueError):
    """配置校验错误"""

    code = "config"


class CliUsageError(AmbioError):
    """命令行参数错误"""

    code = "usage"


class CaptionError(AmbioError, ValueError):
    """字幕输入无效"""

    code = "caption"
