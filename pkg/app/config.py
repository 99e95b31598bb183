"""
应用配置管理

使用 pydantic-settings 实现类型安全的配置管理：
- 支持从环境变量读取配置（前缀 AMBIO_）
- 支持从 .env 文件读取配置
- 提供默认值，确保开箱即用
- CLI 参数只覆盖单次调用，不修改全局配置

配置优先级（从高到低）：
    1. CLI 参数（仅对当前命令生效）
    2. 环境变量
    3. .env 文件
    4. 代码中的默认值

使用示例：
    from app.config import get_settings
    settings = get_settings()
    print(settings.target_sample_rate)
"""

from functools import lru_cache

from pydantic import AliasChoices, Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """
    全局配置类

    所有配置项都可以通过环境变量覆盖，环境变量名为 AMBIO_ + 字段名（不区分大小写）。
    例如：AMBIO_TARGET_SAMPLE_RATE 会覆盖 target_sample_rate 字段。
    日志级别例外：使用 AMBIO_LOG。
    """

    model_config = SettingsConfigDict(
        env_prefix="AMBIO_",
        env_file=".env",  # 从 .env 文件加载配置
        env_file_encoding="utf-8",
        extra="ignore",
    )

    # ==================== 基础配置 ====================
    environment: str = "dev"  # 运行环境：dev/test/prod
    log_level: str = Field(
        default="INFO",
        validation_alias=AliasChoices("AMBIO_LOG", "AMBIO_LOG_LEVEL"),
    )  # 日志级别：DEBUG/INFO/WARNING/ERROR
    log_json: bool | None = None  # 日志格式：True=JSON，None=自动（prod 用 JSON）

    # ==================== 音频预处理 ====================
    target_sample_rate: int = 16_000  # 统一采样率（Hz）
    clip_duration_s: float = 10.0  # 统一片段时长（秒）
    silence_threshold_dbfs: float = -40.0  # 静音判定阈值（dBFS，相对满幅 1.0）
    silence_window_ms: float = 10.0  # 静音检测窗口（毫秒）
    resample_kaiser_beta: float = 8.6  # Kaiser 窗 β，约 85 dB 阻带衰减

    # ==================== 数据增强 ====================
    static_elevation_limit_deg: float = 35.0  # 采样俯仰角范围 [-limit, limit]
    min_azimuth_change_deg: float = 45.0  # 动态样本方位角最小变化
    min_elevation_change_deg: float = 30.0  # 动态样本俯仰角最小变化
    caption_composer: str = "template"  # 字幕生成器名称（见 pipeline.captioners）
    augment_jobs: int | None = None  # 并行度，None=CPU 核数

    # ==================== DoA 估计 ====================
    doa_frame_len: int = 512  # 分析帧长（采样点）
    doa_hop: int = 256  # 帧移（采样点）
    doa_energy_gate: float = 1e-6  # 帧能量门限（相对全局最大帧能量）

    # ==================== MRSTFT 距离 ====================
    mrstft_fft_sizes: list[int] = Field(default_factory=lambda: [2048, 1024, 512])
    mrstft_hop_ratio: float = 0.25  # hop = fft_size * ratio
    mrstft_mag_floor: float = 1e-7  # 幅度平方下限，避免 log(0)

    # ==================== 位置条件矩阵 ====================
    conditioner_az_bins: int = 72  # 方位角 72 × 5°
    conditioner_el_bins: int = 14  # 俯仰角 14 × 5°，覆盖 [-35°, 35°]
    conditioner_frames: int = 100  # 10 s @ 10 Hz
    conditioner_el_range_deg: float = 35.0


@lru_cache(maxsize=1)
def get_settings() -> Settings:
    """
    获取配置单例

    使用 @lru_cache 装饰器缓存配置实例，确保整个进程只创建一次 Settings 对象。
    测试中可调用 get_settings.cache_clear() 重新加载。
    """
    return Settings()
