"""
配置校验服务单元测试

测试 app/services/config_validation.py 的功能：
- validate_settings 默认配置
- captioner 名称校验
- 预处理 / 增强 / DoA / MRSTFT / 条件矩阵参数范围
- 环境变量加载
"""

import pytest

from app.config import Settings, get_settings
from app.exceptions import ConfigValidationError
from app.services.config_validation import validate_settings


def _invalid(**overrides) -> str:
    with pytest.raises(ConfigValidationError) as exc_info:
        validate_settings(Settings(**overrides))
    return str(exc_info.value)


class TestValidateSettings:
    """测试 validate_settings 函数"""

    def test_defaults_valid(self):
        """默认配置开箱即用"""
        validate_settings(Settings())

    def test_unknown_captioner(self):
        assert "未知 captioner" in _invalid(caption_composer="gpt-poet")

    def test_error_code(self):
        with pytest.raises(ConfigValidationError) as exc_info:
            validate_settings(Settings(target_sample_rate=0))
        assert exc_info.value.code == "config"

    @pytest.mark.parametrize("overrides", [
        {"target_sample_rate": 0},
        {"clip_duration_s": 0.0},
        {"silence_window_ms": -1.0},
        {"static_elevation_limit_deg": 95.0},
        {"min_azimuth_change_deg": 180.0},
        {"min_azimuth_change_deg": -1.0},
        {"augment_jobs": 0},
    ])
    def test_augmentation_ranges(self, overrides):
        _invalid(**overrides)

    def test_elevation_change_at_limit(self):
        """最小俯仰变化不小于采样范围时无法生成动态样本"""
        assert "min_elevation_change_deg" in _invalid(min_elevation_change_deg=35.0)
        validate_settings(Settings(min_elevation_change_deg=34.0))


class TestSectionRanges:
    """测试各分组参数范围"""

    @pytest.mark.parametrize("overrides", [
        {"doa_frame_len": 0},
        {"doa_hop": 0},
        {"doa_energy_gate": 1.0},
        {"doa_energy_gate": -0.1},
    ])
    def test_doa(self, overrides):
        _invalid(**overrides)

    def test_mrstft_empty(self):
        assert "不能为空" in _invalid(mrstft_fft_sizes=[])

    @pytest.mark.parametrize("overrides", [
        {"mrstft_fft_sizes": [1024, 1]},
        {"mrstft_hop_ratio": 0.0},
        {"mrstft_hop_ratio": 1.5},
        {"mrstft_mag_floor": 0.0},
    ])
    def test_mrstft(self, overrides):
        _invalid(**overrides)

    def test_conditioner_frames(self):
        assert "帧数" in _invalid(conditioner_frames=0)

    @pytest.mark.parametrize("overrides", [
        {"conditioner_az_bins": 1},
        {"conditioner_el_bins": 1},
        {"conditioner_el_range_deg": 0.0},
    ])
    def test_conditioner(self, overrides):
        _invalid(**overrides)


class TestEnvironment:
    """测试环境变量加载"""

    def test_env_override(self, monkeypatch):
        monkeypatch.setenv("AMBIO_DOA_HOP", "128")
        monkeypatch.setenv("AMBIO_LOG", "DEBUG")
        settings = get_settings()
        assert settings.doa_hop == 128
        assert settings.log_level == "DEBUG"

    def test_cached(self):
        assert get_settings() is get_settings()
