"""
球面坐标与轨迹单元测试

测试 app/models 的功能：
- SphericalPosition 方位角折叠与越界检查
- signed_azimuth_delta 顺/逆时针带符号角度差
- Trajectory.position_at / angles_at 插值
"""

import math

import numpy as np
import pytest

from app.exceptions import PositionError, TrajectoryError
from app.models import SphericalPosition, Trajectory, circular_distance_deg, wrap_azimuth
from app.models.trajectory import signed_azimuth_delta


def _traj(az0, az1, clockwise=False, el0=0.0, el1=0.0, start=0.0, end=10.0, clip=10.0):
    return Trajectory(
        start=SphericalPosition(az0, el0),
        end=SphericalPosition(az1, el1),
        clockwise=clockwise,
        move_start_s=start,
        move_end_s=end,
        clip_duration_s=clip,
    )


class TestSphericalPosition:
    """测试 SphericalPosition"""

    @pytest.mark.parametrize(
        "raw, wrapped",
        [(0.0, 0.0), (180.0, 180.0), (-180.0, 180.0), (190.0, -170.0), (540.0, 180.0), (-190.0, 170.0)],
    )
    def test_wrap(self, raw, wrapped):
        """方位角折叠到 (-180, 180]"""
        assert SphericalPosition(raw, 0.0).azimuth_deg == pytest.approx(wrapped)
        assert wrap_azimuth(raw) == pytest.approx(wrapped)

    def test_elevation_out_of_range(self):
        """俯仰角越界直接报错，不做截断"""
        with pytest.raises(PositionError):
            SphericalPosition(0.0, 90.5)
        with pytest.raises(PositionError):
            SphericalPosition(0.0, -91.0)

    def test_non_finite(self):
        """非有限值报错"""
        with pytest.raises(PositionError):
            SphericalPosition(math.nan, 0.0)
        with pytest.raises(PositionError):
            SphericalPosition(0.0, math.inf)

    def test_circular_distance(self):
        """圆周距离取短弧"""
        assert float(circular_distance_deg(170.0, -170.0)) == pytest.approx(20.0)
        assert float(circular_distance_deg(0.0, 180.0)) == pytest.approx(180.0)


class TestSignedAzimuthDelta:
    """测试带符号方位角差"""

    def test_ccw_quarter(self):
        assert signed_azimuth_delta(0.0, 90.0, clockwise=False) == pytest.approx(90.0)

    def test_cw_long_way(self):
        """顺时针从 0° 到 90° 走 270°"""
        assert signed_azimuth_delta(0.0, 90.0, clockwise=True) == pytest.approx(-270.0)

    def test_identical_endpoints(self):
        assert signed_azimuth_delta(45.0, 45.0, clockwise=True) == 0.0

    @pytest.mark.parametrize("start, end", [(0, 90), (170, -170), (-45, 10), (120, 119), (-180, 180)])
    def test_matches_step_walk(self, start, end):
        """逐 1° 行走计数作为参照"""
        for clockwise in (False, True):
            step = -1 if clockwise else 1
            steps, az = 0, start
            while wrap_azimuth(az) != wrap_azimuth(end):
                az += step
                steps += 1
            assert signed_azimuth_delta(start, end, clockwise) == pytest.approx(step * steps)


class TestTrajectory:
    """测试 Trajectory"""

    def test_midpoint(self):
        """-90° → 90° 逆时针，t=5 时 θ=0°"""
        assert _traj(-90.0, 90.0).position_at(5.0).azimuth_deg == pytest.approx(0.0, abs=1e-12)

    def test_wrap_through_back(self):
        """170° → -170° 逆时针经过后方，中点 180°"""
        pos = _traj(170.0, -170.0).position_at(5.0)
        assert pos.azimuth_deg == pytest.approx(180.0)

    def test_wrap_clockwise_through_front(self):
        """170° → -170° 顺时针走 -340°，中点 0°"""
        traj = _traj(170.0, -170.0, clockwise=True)
        assert traj.azimuth_delta_deg == pytest.approx(-340.0)
        assert traj.position_at(5.0).azimuth_deg == pytest.approx(0.0, abs=1e-9)

    def test_endpoints_outside_window(self):
        """窗口外保持精确端点"""
        traj = _traj(10.0, 80.0, el0=-5.0, el1=25.0, start=2.0, end=6.0)
        assert traj.position_at(0.0) == traj.start
        assert traj.position_at(2.0) == traj.start
        assert traj.position_at(6.0) == traj.end
        assert traj.position_at(10.0) == traj.end

    def test_elevation_linear(self):
        traj = _traj(0.0, 0.0, el0=-30.0, el1=30.0, start=0.0, end=4.0)
        assert traj.position_at(1.0).elevation_deg == pytest.approx(-15.0)
        assert traj.elevation_delta_deg == pytest.approx(60.0)

    def test_time_out_of_range(self):
        traj = _traj(0.0, 90.0)
        with pytest.raises(TrajectoryError):
            traj.position_at(-0.1)
        with pytest.raises(TrajectoryError):
            traj.position_at(10.1)
        with pytest.raises(TrajectoryError):
            traj.angles_at([0.0, 11.0])

    @pytest.mark.parametrize("start, end", [(5.0, 5.0), (6.0, 2.0), (-1.0, 3.0), (0.0, 10.5)])
    def test_invalid_window(self, start, end):
        """0 ≤ move_start < move_end ≤ clip"""
        with pytest.raises(TrajectoryError):
            _traj(0.0, 90.0, start=start, end=end)

    def test_static(self):
        pos = SphericalPosition(30.0, 5.0)
        traj = Trajectory.static(pos, 10.0)
        assert traj.is_static
        assert traj.azimuth_delta_deg == 0.0
        assert traj.position_at(3.3) == pos

    def test_angles_at_matches_position_at(self):
        """向量化版本与逐点版本一致"""
        traj = _traj(170.0, -100.0, clockwise=True, el0=20.0, el1=-10.0, start=1.5, end=8.5)
        times = np.linspace(0.0, 10.0, 101)
        az, el = traj.angles_at(times)
        for t, a, e in zip(times, az, el):
            pos = traj.position_at(float(t))
            assert float(circular_distance_deg(a, pos.azimuth_deg)) == pytest.approx(0.0, abs=1e-9)
            assert e == pytest.approx(pos.elevation_deg, abs=1e-9)
        assert np.all((az > -180.0) & (az <= 180.0))
