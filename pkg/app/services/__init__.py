"""
业务服务层

- encoder.py         : FOA 编码（静态 / 运动声源）
- preprocess.py      : 重采样、去静音、循环/截断
- spatial_params.py  : 空间参数采样、分箱表与语言映射
- captions.py        : 空间字幕合成
- augmentation.py    : 数据集增强批处理
- conditioner.py     : 位置状态矩阵
- doa.py             : 声强向量 DoA 估计与角度误差
- spectral.py        : 多分辨率 STFT 距离
- evaluation.py      : 成对评估与批量汇总
- config_validation.py : 运行参数校验
"""
