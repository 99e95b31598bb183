"""
ambio - FOA 空间音频工具包

包含以下子模块：
- models/   : 信号、球面坐标、轨迹等核心数据类型
- schemas/  : 样本元数据与评估报告（Pydantic）
- services/ : 编码、增强、DoA 评估、条件矩阵等业务逻辑
- pipeline/ : 可插拔算子注册表（字幕生成器）
- infra/    : 音频 / 清单文件读写、日志
- cli.py    : 命令行入口

项目架构遵循分层设计：
    CLI → 服务层 → 数据模型 → 基础设施层
"""
