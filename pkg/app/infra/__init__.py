"""
基础设施层

封装文件格式和底层技术实现：
- audio_io.py : FOA / 单声道 WAV 读写
- manifest.py : JSON Lines 清单与 sidecar 读写
- logging.py  : 结构化日志
"""
