"""
空间字幕生成器

- TemplateCaptionComposer : 确定性模板，嵌入方向词、运动动词和速度词
"""

from app.pipeline.captioners.template import TemplateCaptionComposer  # noqa: F401

__all__ = ["TemplateCaptionComposer"]
