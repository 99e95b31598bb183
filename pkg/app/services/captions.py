"""
空间字幕合成

按名称从注册表取字幕生成器，默认使用确定性模板（见 pipeline.captioners）。
"""

from app.exceptions import CaptionError
from app.pipeline import operator_registry
from app.pipeline.base import BaseCaptionComposer
from app.services.spatial_params import SpatialPhrases


def get_caption_composer(name: str = "template") -> BaseCaptionComposer:
    return operator_registry.require("captioner", name)()


def compose_caption(
    original_caption: str,
    phrases: SpatialPhrases,
    kind: str,
    composer: BaseCaptionComposer | None = None,
) -> str:
    """原始字幕 + 空间短语 → 空间字幕"""
    if not original_caption or not original_caption.strip():
        raise CaptionError("original caption must be non-empty")
    return (composer or get_caption_composer()).compose(original_caption, phrases, kind)
