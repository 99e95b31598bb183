"""
Pipeline 基础类型定义

定义可插拔组件的抽象接口，所有字幕生成器都需实现对应的 Protocol。

设计理念：
- 使用 Protocol 而非抽象基类，提供结构化类型检查
- 统一的 name/kind 属性，便于注册和发现
"""

from __future__ import annotations

from typing import TYPE_CHECKING, Protocol

if TYPE_CHECKING:
    from app.services.spatial_params import SpatialPhrases


class BaseOperator(Protocol):
    """组件基础协议"""
    name: str  # 组件名称，如 "template"
    kind: str  # 组件类型，如 "captioner"


class BaseCaptionComposer(BaseOperator, Protocol):
    """
    字幕生成器协议

    把原始字幕和空间短语合成为空间字幕。内置实现是确定性模板；
    外部可注册其他实现（例如调用 LLM 改写），通过名称选择。
    """
    kind: str = "captioner"

    def compose(self, original_caption: str, phrases: SpatialPhrases, kind: str) -> str:
        """
        生成空间字幕

        Args:
            original_caption: 原始（非空间）字幕
            phrases: 空间短语集合
            kind: 样本类型 static / dynamic

        Returns:
            str: 空间字幕
        """
        ...
