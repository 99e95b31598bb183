"""
模板字幕生成器

静态样本：
    "<原字幕>, coming from the <方向>"
    "<原字幕>, coming from the <方向> above"          （俯仰角在 up 带内）
动态样本：
    "<原字幕>, moving <速度> from the <方向1> to the <方向2>"
    "<原字幕>, moving <速度> from the <方向1> to the <方向2>, going upward"   （俯仰角同时变化）
    "<原字幕>, moving <速度> upward, coming from the <方向>"              （仅俯仰角变化）
"""

from app.exceptions import CaptionError
from app.pipeline.base import BaseCaptionComposer
from app.pipeline.registry import register_operator
from app.services.spatial_params import SpatialPhrases

_STATIC_ELEVATION = {"up": "above", "down": "below"}
_MOTION = {"up": "upward", "down": "downward"}


@register_operator("captioner", "template")
class TemplateCaptionComposer(BaseCaptionComposer):
    """确定性模板字幕，相同输入总是得到相同输出"""
    name = "template"
    kind = "captioner"

    def compose(self, original_caption: str, phrases: SpatialPhrases, kind: str) -> str:
        base = original_caption.strip().rstrip(".").rstrip()
        if kind == "static" or not phrases.is_dynamic:
            text = f"{base}, coming from the {phrases.start_direction}"
            if phrases.start_elevation:
                text += f" {_STATIC_ELEVATION[phrases.start_elevation]}"
            return text

        if phrases.clockwise is not None:
            text = (
                f"{base}, moving {phrases.speed} from the {phrases.start_direction} "
                f"to the {phrases.end_direction}"
            )
            if phrases.elevation_motion:
                text += f", going {_MOTION[phrases.elevation_motion]}"
            return text

        # 仅俯仰角变化
        if phrases.elevation_motion is None:
            raise CaptionError("dynamic phrases carry neither an azimuth nor an elevation change")
        return (
            f"{base}, moving {phrases.speed} {_MOTION[phrases.elevation_motion]}, "
            f"coming from the {phrases.start_direction}"
        )
