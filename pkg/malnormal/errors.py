#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
异常类型定义。
"""

from typing import Any, Optional


class MalnormalError(Exception):
    """本库所有异常的基类。"""


class DimensionError(MalnormalError, ValueError):
    """矩阵或向量的形状不匹配。"""


class InputError(MalnormalError, ValueError):
    """输入不满足前置条件（对称性、酉性、取值范围等）。"""


class ConvergenceError(MalnormalError, ArithmeticError):
    """迭代在上限内未收敛。best 保存最后（或最好）的迭代结果。"""

    def __init__(self, message: str, best: Optional[Any] = None, iterations: int = 0):
        super().__init__(message)
        self.best = best
        self.iterations = iterations


class SingularityError(MalnormalError, ArithmeticError):
    """矩阵（数值上）奇异。"""
