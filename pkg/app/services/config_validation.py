from app.config import Settings
from app.exceptions import ConfigValidationError
from app.pipeline.registry import operator_registry


def validate_settings(settings: Settings) -> None:
    """
    校验运行参数。

    Args:
        settings: 合并了环境变量与 CLI 覆盖后的配置

    Raises:
        ConfigValidationError: 配置无效时抛出
    """
    operator_registry.require("captioner", settings.caption_composer)

    if settings.target_sample_rate <= 0:
        raise ConfigValidationError("target_sample_rate 必须是正整数")
    if settings.clip_duration_s <= 0:
        raise ConfigValidationError("clip_duration_s 必须大于 0")
    if settings.silence_window_ms <= 0:
        raise ConfigValidationError("silence_window_ms 必须大于 0")
    if not 0 < settings.static_elevation_limit_deg <= 90:
        raise ConfigValidationError("static_elevation_limit_deg 必须在 (0, 90] 内")
    if not 0 <= settings.min_azimuth_change_deg < 180:
        raise ConfigValidationError("min_azimuth_change_deg 必须在 [0, 180) 内")
    if not 0 <= settings.min_elevation_change_deg < settings.static_elevation_limit_deg:
        # 起点为 0 时至少要能找到一个满足约束的终点
        raise ConfigValidationError("min_elevation_change_deg 必须小于 static_elevation_limit_deg")
    if settings.augment_jobs is not None and settings.augment_jobs < 1:
        raise ConfigValidationError("augment_jobs 必须 >= 1")

    _validate_doa(settings)
    _validate_mrstft(settings)
    _validate_conditioner(settings)


def _validate_doa(settings: Settings) -> None:
    if settings.doa_frame_len < 1 or settings.doa_hop < 1:
        raise ConfigValidationError("doa_frame_len / doa_hop 必须 >= 1")
    if not 0 <= settings.doa_energy_gate < 1:
        raise ConfigValidationError("doa_energy_gate 必须在 [0, 1) 内")


def _validate_mrstft(settings: Settings) -> None:
    if not settings.mrstft_fft_sizes:
        raise ConfigValidationError("mrstft_fft_sizes 不能为空")
    for n in settings.mrstft_fft_sizes:
        if n < 2:
            raise ConfigValidationError(f"FFT 长度必须 >= 2: {n}")
    if not 0 < settings.mrstft_hop_ratio <= 1:
        raise ConfigValidationError("mrstft_hop_ratio 必须在 (0, 1] 内")
    if settings.mrstft_mag_floor <= 0:
        raise ConfigValidationError("mrstft_mag_floor 必须大于 0")


def _validate_conditioner(settings: Settings) -> None:
    if settings.conditioner_az_bins < 2 or settings.conditioner_el_bins < 2:
        raise ConfigValidationError("条件矩阵分箱数必须 >= 2")
    if settings.conditioner_frames < 1:
        raise ConfigValidationError("条件矩阵帧数必须 >= 1")
    if not 0 < settings.conditioner_el_range_deg <= 90:
        raise ConfigValidationError("conditioner_el_range_deg 必须在 (0, 90] 内")
