"""
Pipeline 可插拔组件模块

- captioners/ : 空间字幕生成器（确定性模板；可注册外部改写实现）
- registry.py : 组件注册表，支持按名称动态获取组件

使用示例：
    from app.pipeline import operator_registry

    composer = operator_registry.get("captioner", "template")()
    caption = composer.compose("a dog barks", phrases, "static")
"""

from app.pipeline import captioners  # noqa: F401
from app.pipeline.registry import operator_registry

__all__ = ["operator_registry"]
