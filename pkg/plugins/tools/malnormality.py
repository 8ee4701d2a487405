#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
恶正规常数工具插件：计算给定矩阵的 mal(X)，以及移位矩阵扫描。
"""

import logging

import numpy as np

from malnormal.malnormality import mal, shift_scan

logger = logging.getLogger("malnormality_tool")


def _to_matrix(matrix, imag=None) -> np.ndarray:
    """嵌套列表转换为矩阵，imag 为可选的虚部。"""
    real = np.asarray(matrix, dtype=np.float64)
    if imag is None:
        return real
    return real + 1j * np.asarray(imag, dtype=np.float64)


def setup(mcp):
    """
    设置恶正规常数工具插件。

    Args:
        mcp: MCP服务器实例
    """
    logger.info("恶正规常数工具插件初始化")

    @mcp.tool()
    def malnormality(matrix, imag=None, solver="auto", flavor=None, tol=None, seed=0, include_minimizer=False):
        """
        计算 mal(X) = min ‖[X, B]‖₂，B 取遍单位 HS 范数的无迹自伴矩阵。

        Args:
            matrix: n×n 实部，嵌套列表
            imag: 可选的虚部，嵌套列表
            solver: "auto"、"dense"、"lanczos" 或 "local-opt"
            flavor: "real-symmetric" 或 "complex-hermitian"，默认按矩阵类型
            tol: 求解器容差
            seed: 起始向量种子
            include_minimizer: 是否返回极小点坐标

        Returns:
            MalResult 字典或错误消息
        """
        logger.debug(f"计算 mal(X): solver = {solver}, flavor = {flavor}")
        try:
            x = _to_matrix(matrix, imag)
            result = mal(x, solver=solver, flavor=flavor, tol=tol, seed=int(seed))
            return result.to_dict(include_minimizer=bool(include_minimizer))
        except Exception as e:
            logger.error(f"计算 mal(X) 失败: {str(e)}")
            return {"error": f"计算失败: {str(e)}"}

    @mcp.tool()
    def shift_matrix_scan(n_values, solver="dense"):
        """
        计算移位矩阵 S_n 的 mal(S_n)，并给出 mal·√n、mal·n 与上界 2sin(π/2n)。

        Args:
            n_values: n 的列表，每个 n ≥ 2
            solver: mal 求解器

        Returns:
            每个 n 一行的表格或错误消息
        """
        try:
            return {"rows": shift_scan([int(n) for n in n_values], solver=solver)}
        except Exception as e:
            logger.error(f"移位矩阵扫描失败: {str(e)}")
            return {"error": f"扫描失败: {str(e)}"}


def teardown():
    """清理插件资源。"""
    logger.info("恶正规常数工具插件已卸载")
