"""
扭曲系数Floer同调计算工具
Twisted Floer Calculus Toolkit

圆丛Floer同调、分级格运算、Alexander多项式拆接与手术不变量的精确计算
"""

__version__ = "1.0.0"
