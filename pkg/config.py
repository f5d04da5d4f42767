# -*- coding: utf-8 -*-
# config.py
from fractions import Fraction

# 截断与精确重建配置
TRUNCATION_CONFIG = {
    "default_order": Fraction(12),       # 默认截断阶（公共格上的总次数）
    "max_order": Fraction(48),           # 分离失败时加倍的上限
    "max_lattice": 720,                  # 允许的最大分母格
    "max_reconstruction_denominator": 10 ** 6,  # 数值候选根的有理重建分母上限
    "power_grid": 8,                     # 常数向上取整到 1/8 网格上的有理幂
    "newton_iterations": 12,             # 单根牛顿迭代次数上限
    "numeric_tolerance": 1e-9            # 数值首项视为相消的相对阈值
}

# 单位认证配置
UNIT_CONFIG = {
    "default_eps": Fraction(1, 2),       # 初始定义域尺度 ε
    "max_shrinks": 20,                   # ε 折半次数上限
    "subdivision_depth": 12,             # 区间细分的最大深度
    "sample_points": 200                 # 数值抽样检查点数
}

# 区域分带配置
BAND_CONFIG = {
    "lower_factor": Fraction(1, 2),      # 比较单项式下侧因子
    "upper_factor": Fraction(3, 2),      # 比较单项式上侧因子
    "child_fraction": Fraction(1),       # 子节点占到相邻根中点（或带边界）的比例，1 时不留带状余块
    "max_depth": 8                       # 递归节点深度上限
}

# 数值验证配置
VERIFY_CONFIG = {
    "samples": 1_000_000,                # 蒙特卡洛样本数
    "strata_per_dim": 4,                 # 每维分层数
    "eps_schedule": (4, 12),             # ε = 2^-a ... 2^-b
    "lambda_schedule": (6, 14),          # λ = 2^a ... 2^b
    "box_radius": Fraction(1, 2),        # 采样盒半径
    "residual_threshold": 0.02,          # 对数修正检测阈值
    "trim_extremes": True,               # 拟合时去掉两端尺度
    "quadrature_nodes": 16,              # 每个面板的 Gauss-Legendre 节点数
    "panel_tolerance": 1e-4,             # 面板加倍一致性阈值
    "bump_radius": 1.0,                  # 截断函数半径
    "max_grid_points": 4_000_000,        # 张量求积点数上限
    "ratio_margin": 0.05,                # 积分性扫描判定余量（log2 比值）
    "coverage_samples": 10_000,          # 覆盖性抽样点数
    "fnc_tolerance": (0.5, 2.0)          # |F∘φ| / (单位·单项式) 的允许范围
}

# 线性规划下界配置
LP_CONFIG = {
    "log_parameter": Fraction(4),        # 立方体引理中 log(Cd/ε) 的有理替代值
}

# 输出配置
OUTPUT_CONFIG = {
    "log_file": "analysis.log",
    "report_file": "output/report.json",
    "indent": 2
}
