"""
FOA 编码单元测试

测试 app/services/encoder.py 的功能：
- 静态编码增益
- 运动编码（逐采样点增益）
- 能量关系与线性
- 全向通道导出
"""

import math

import numpy as np
import pytest

from app.exceptions import SignalError, TrajectoryError
from app.models import MonoSignal, SphericalPosition, Trajectory
from app.services.doa import estimate_doa
from app.services.encoder import INV_SQRT2, encode_moving, encode_static, foa_gains, omni_channel
from conftest import make_noise


class TestEncodeStatic:
    """测试 encode_static"""

    def test_front(self):
        """θ=0°, φ=0° 单位脉冲"""
        foa = encode_static(MonoSignal([1.0], 16_000), SphericalPosition(0.0, 0.0))
        assert foa.w[0] == pytest.approx(0.70711, abs=1e-5)
        assert foa.x[0] == pytest.approx(1.0)
        assert foa.y[0] == pytest.approx(0.0, abs=1e-12)
        assert foa.z[0] == pytest.approx(0.0, abs=1e-12)

    def test_left(self):
        """θ=90° 指向 +Y"""
        foa = encode_static(MonoSignal([1.0], 16_000), SphericalPosition(90.0, 0.0))
        assert foa.x[0] == pytest.approx(0.0, abs=1e-12)
        assert foa.y[0] == pytest.approx(1.0)
        assert foa.z[0] == pytest.approx(0.0, abs=1e-12)

    def test_oblique(self):
        """θ=45°, φ=30°, p=0.5"""
        foa = encode_static(MonoSignal([0.5], 16_000), SphericalPosition(45.0, 30.0))
        expected = 0.5 * math.cos(math.radians(45)) * math.cos(math.radians(30))
        assert foa.x[0] == pytest.approx(expected, abs=1e-12)
        assert foa.y[0] == pytest.approx(expected, abs=1e-12)
        assert foa.x[0] == pytest.approx(0.30619, abs=1e-5)
        assert foa.z[0] == pytest.approx(0.25, abs=1e-12)

    def test_gains_shape(self):
        """标量角度得到 (4,) 增益，数组角度得到 (4, N)"""
        assert foa_gains(0.0, 0.0).shape == (4,)
        assert foa_gains(np.zeros(5), np.zeros(5)).shape == (4, 5)
        assert foa_gains(0.0, 0.0)[0] == pytest.approx(INV_SQRT2)

    def test_empty_signal(self):
        """空信号报错"""
        with pytest.raises(SignalError):
            encode_static(MonoSignal([], 16_000), SphericalPosition(0.0, 0.0))

    def test_energy_relation(self, noise):
        """x²+y²+z² = p² = 2·w²"""
        foa = encode_static(noise, SphericalPosition(-123.0, 17.0))
        p2 = noise.samples ** 2
        xyz = foa.x ** 2 + foa.y ** 2 + foa.z ** 2
        np.testing.assert_allclose(xyz, p2, rtol=1e-9, atol=1e-15)
        np.testing.assert_allclose(xyz, 2.0 * foa.w ** 2, rtol=1e-9, atol=1e-15)

    def test_linearity(self, rng):
        """编码对输入信号线性"""
        a = MonoSignal(rng.standard_normal(100), 16_000)
        b = MonoSignal(rng.standard_normal(100), 16_000)
        pos = SphericalPosition(33.0, -12.0)
        mixed = encode_static(MonoSignal(2.0 * a.samples - 0.5 * b.samples, 16_000), pos)
        fa, fb = encode_static(a, pos), encode_static(b, pos)
        np.testing.assert_allclose(mixed.as_array(), 2.0 * fa.as_array() - 0.5 * fb.as_array(), atol=1e-12)

    def test_azimuth_wrap_equivalent(self, noise):
        """θ=270° 与 θ=-90° 编码结果相同"""
        a = encode_static(noise, SphericalPosition(270.0, 0.0))
        b = encode_static(noise, SphericalPosition(-90.0, 0.0))
        np.testing.assert_array_equal(a.as_array(), b.as_array())


class TestEncodeMoving:
    """测试 encode_moving"""

    def test_degenerate_trajectory_bit_exact(self, noise):
        """起止相同的轨迹与静态编码逐位一致"""
        pos = SphericalPosition(60.0, 10.0)
        traj = Trajectory(
            start=pos, end=SphericalPosition(60.0, 10.0), clockwise=False,
            move_start_s=0.2, move_end_s=0.7, clip_duration_s=1.0,
        )
        moving = encode_moving(noise, traj)
        static = encode_static(noise, pos)
        assert np.array_equal(moving.as_array(), static.as_array())

    def test_midpoint_sign_transition(self):
        """-90° → 90° 逆时针，T/2 处 θ=0：y 分量由负变正"""
        sr, clip = 1_000, 10.0
        impulses = np.zeros(int(sr * clip))
        impulses[::250] = 1.0
        traj = Trajectory(
            start=SphericalPosition(-90.0, 0.0), end=SphericalPosition(90.0, 0.0), clockwise=False,
            move_start_s=0.0, move_end_s=clip, clip_duration_s=clip,
        )
        foa = encode_moving(MonoSignal(impulses, sr), traj)
        mid = int(sr * clip / 2)
        assert foa.y[mid] == pytest.approx(0.0, abs=1e-12)
        assert foa.x[mid] == pytest.approx(1.0)
        assert foa.y[mid - 250] < 0.0
        assert foa.y[mid + 250] > 0.0

    def test_energy_relation_moving(self):
        """运动编码同样满足逐点能量关系"""
        mono = make_noise(2.0, seed=3)
        traj = Trajectory(
            start=SphericalPosition(170.0, -20.0), end=SphericalPosition(-100.0, 30.0), clockwise=True,
            move_start_s=0.3, move_end_s=1.6, clip_duration_s=2.0,
        )
        foa = encode_moving(mono, traj)
        xyz = foa.x ** 2 + foa.y ** 2 + foa.z ** 2
        np.testing.assert_allclose(xyz, mono.samples ** 2, rtol=1e-9, atol=1e-15)
        np.testing.assert_allclose(xyz, 2.0 * foa.w ** 2, rtol=1e-9, atol=1e-15)

    def test_ramp_tracked_by_doa(self):
        """0° → 90° 白噪声：逐帧 DoA 跟随线性轨迹，RMS 误差 < 2°"""
        mono = make_noise(10.0, seed=11)
        traj = Trajectory(
            start=SphericalPosition(0.0, 0.0), end=SphericalPosition(90.0, 0.0), clockwise=False,
            move_start_s=0.0, move_end_s=10.0, clip_duration_s=10.0,
        )
        track = estimate_doa(encode_moving(mono, traj), 512, 256)
        expected, _ = traj.angles_at(track.frame_times_s)
        err = track.azimuth_deg[track.valid] - expected[track.valid]
        assert np.sqrt(np.mean(err ** 2)) < 2.0

    def test_length_mismatch(self, noise):
        """信号时长与轨迹片段时长不一致时报错"""
        traj = Trajectory.static(SphericalPosition(0.0, 0.0), 2.0)
        with pytest.raises(TrajectoryError):
            encode_moving(noise, traj)

    def test_one_sample_tolerance(self):
        """允许 ±1 个采样点误差"""
        mono = MonoSignal(np.ones(16_001), 16_000)
        traj = Trajectory(
            start=SphericalPosition(0.0, 0.0), end=SphericalPosition(45.0, 0.0), clockwise=False,
            move_start_s=0.0, move_end_s=1.0, clip_duration_s=1.0,
        )
        assert len(encode_moving(mono, traj)) == 16_001


class TestOmniChannel:
    """测试全向通道导出"""

    def test_recovers_pressure(self, noise):
        """W·√2 还原声压信号"""
        foa = encode_static(noise, SphericalPosition(12.0, 34.0))
        omni = omni_channel(foa)
        assert omni.sample_rate == noise.sample_rate
        np.testing.assert_allclose(omni.samples, noise.samples, atol=1e-12)
