"""
音频预处理单元测试

测试 app/services/preprocess.py 的功能：
- 重采样
- 首尾静音裁剪
- 循环 / 截断到固定时长
"""

import numpy as np
import pytest

from app.exceptions import SilentSignalError
from app.models import MonoSignal
from app.services.preprocess import PreprocessConfig, fit_length, preprocess, resample, trim_silence
from conftest import make_noise


class TestFitLength:
    """测试 fit_length / preprocess 的时长处理"""

    def test_truncate_long_signal(self):
        """20 s 信号保留前 10 s"""
        mono = make_noise(20.0, seed=1)
        out = preprocess(mono, PreprocessConfig())
        assert len(out) == 160_000
        np.testing.assert_array_equal(out.samples, mono.samples[:160_000])

    def test_loop_short_signal(self):
        """4 s 信号循环为 4 + 4 + 2 s"""
        mono = make_noise(4.0, seed=2)
        out = preprocess(mono, PreprocessConfig())
        n = len(mono)
        assert len(out) == 160_000
        np.testing.assert_array_equal(out.samples[:n], mono.samples)
        np.testing.assert_array_equal(out.samples[n:2 * n], mono.samples)
        np.testing.assert_array_equal(out.samples[2 * n:], mono.samples[:32_000])

    def test_exact_length(self):
        samples = np.arange(10, dtype=np.float64)
        np.testing.assert_array_equal(fit_length(samples, 10), samples)


class TestResample:
    """测试重采样"""

    def test_sine_frequency_preserved(self):
        """44.1 kHz 的 1 kHz 正弦 → 16 kHz 后主频仍为 1 kHz（±1 bin）"""
        sr = 44_100
        t = np.arange(10 * sr) / sr
        mono = MonoSignal(0.5 * np.sin(2 * np.pi * 1000.0 * t), sr)
        out = preprocess(mono, PreprocessConfig())
        assert out.sample_rate == 16_000
        assert len(out) == 160_000

        spectrum = np.abs(np.fft.rfft(out.samples))
        freqs = np.fft.rfftfreq(len(out), d=1.0 / out.sample_rate)
        bin_width = freqs[1] - freqs[0]
        assert abs(freqs[int(np.argmax(spectrum))] - 1000.0) <= bin_width

    def test_same_rate_passthrough(self, noise):
        assert resample(noise, noise.sample_rate) is noise


class TestTrimSilence:
    """测试首尾静音裁剪"""

    def test_trims_leading_and_trailing(self):
        """前后各 0.5 s 静音被去除"""
        body = make_noise(1.0, seed=4).samples
        padded = np.concatenate([np.zeros(8_000), body, np.zeros(8_000)])
        out = trim_silence(MonoSignal(padded, 16_000))
        assert len(out) == len(body)
        np.testing.assert_array_equal(out.samples, body)

    def test_quiet_but_audible_kept(self):
        """-30 dBFS 的信号不视为静音"""
        mono = MonoSignal(np.full(1_600, 10 ** (-30 / 20)), 16_000)
        assert len(trim_silence(mono)) == 1_600

    def test_all_silent(self):
        """全静音报错"""
        with pytest.raises(SilentSignalError):
            trim_silence(MonoSignal(np.full(16_000, 1e-4), 16_000))

    def test_preprocess_silent(self):
        with pytest.raises(SilentSignalError):
            preprocess(MonoSignal(np.zeros(16_000), 16_000), PreprocessConfig())
