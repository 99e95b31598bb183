"""
组件注册表

字幕生成器等可插拔组件按 (kind, name) 注册，CLI / 配置只传名称。

使用方式：
1. 通过装饰器注册：
   @register_operator("captioner", "my_captioner")
   class MyCaptioner: ...

2. 通过注册表获取：
   composer = operator_registry.require("captioner", "my_captioner")()
"""

from __future__ import annotations

from collections import defaultdict
from typing import Any, Callable

from app.exceptions import ConfigValidationError


class OperatorRegistry:
    """按 kind → name 两级索引的组件表"""

    def __init__(self) -> None:
        self._operators: dict[str, dict[str, Any]] = defaultdict(dict)

    def register(self, kind: str, name: str, op: Any) -> None:
        existing = self._operators[kind].get(name)
        if existing is not None and existing is not op:
            raise ConfigValidationError(f"{kind} 名称已被占用: {name}")
        self._operators[kind][name] = op

    def unregister(self, kind: str, name: str) -> None:
        self._operators.get(kind, {}).pop(name, None)

    def get(self, kind: str, name: str) -> Any:
        """获取组件类，未注册时返回 None"""
        return self._operators.get(kind, {}).get(name)

    def require(self, kind: str, name: str) -> Any:
        """
        获取组件类，未注册时抛出 ConfigValidationError

        错误信息列出该类型下的全部有效名称。
        """
        op = self.get(kind, name)
        if op is None:
            raise ConfigValidationError(f"未知 {kind}: {name}，有效值: {', '.join(self.list(kind))}")
        return op

    def list(self, kind: str) -> list[str]:
        """某类型下已注册的名称（排序）"""
        return sorted(self._operators.get(kind, {}))


operator_registry = OperatorRegistry()


def register_operator(kind: str, name: str) -> Callable[[Any], Any]:
    """注册到全局 operator_registry 的装饰器"""
    def wrapper(cls_or_fn: Any) -> Any:
        operator_registry.register(kind, name, cls_or_fn)
        return cls_or_fn

    return wrapper
