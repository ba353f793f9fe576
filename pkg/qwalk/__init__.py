"""
Disordered quantum walk metrology toolkit

这个包包含了模拟与分析的全部核心功能：
- 态空间与内积 (hilbert.py)
- 硬币/平移/相位算符 (operators.py)
- 无序相位图 (disorder.py)
- 量子Fisher信息 (metrology.py)
- 位置分布与方差 (observables.py)
- 系综平均 (ensemble.py)
- 幂律拟合 (analysis.py)
- 双粒子实验 (twoparticle.py)
- 图像预设 (presets.py, figure_presets/)
- 结果导出与绘图 (exporter.py, plotting.py)
- 命令行入口 (cli.py)
"""

__version__ = "0.1.0"
