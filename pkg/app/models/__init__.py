"""
领域值类型

- signal.py     : MonoSignal / FoaSignal / SphericalPosition
- trajectory.py : Trajectory（运动窗口内的方向插值）
"""

from app.models.signal import (
    FOA_CHANNELS,
    FoaSignal,
    MonoSignal,
    circular_distance_deg,
    SphericalPosition,
    wrap_azimuth,
    wrap_azimuth_array,
)
from app.models.trajectory import Trajectory, signed_azimuth_delta

__all__ = [
    "FOA_CHANNELS",
    "FoaSignal",
    "MonoSignal",
    "SphericalPosition",
    "Trajectory",
    "circular_distance_deg",
    "signed_azimuth_delta",
    "wrap_azimuth",
    "wrap_azimuth_array",
]
