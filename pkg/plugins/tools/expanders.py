#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
量子扩张子工具插件：带种子的 Haar 元组扩张子报告，以及 3n×3n 构造的证书。
"""

import logging

from malnormal.construction import certify_sampled
from malnormal.ensembles import SeededStream, haar_tuple
from malnormal.expanders import expander_report

logger = logging.getLogger("expanders_tool")


def setup(mcp):
    """
    设置量子扩张子工具插件。

    Args:
        mcp: MCP服务器实例
    """
    logger.info("量子扩张子工具插件初始化")

    @mcp.tool()
    def haar_expander_report(n, k=2, seed=0, real=False, flavor="complex-hermitian", tol=None):
        """
        对种子确定的 k 个 Haar 矩阵计算边扩张常数、‖E_U‖、‖E^h‖ 与 Hastings 阈值。

        Args:
            n: 矩阵维数
            k: 元组大小
            seed: 基础种子
            real: 是否采样实正交矩阵
            flavor: 基类型
            tol: Lanczos 容差

        Returns:
            ExpanderReport 字典或错误消息
        """
        logger.debug(f"扩张子报告: n = {n}, k = {k}, seed = {seed}")
        try:
            mats = haar_tuple(int(n), int(k), SeededStream(int(seed), 0), real=bool(real))
            data = expander_report(mats, flavor=flavor, tol=tol).to_dict()
            data["seed"] = int(seed)
            return data
        except Exception as e:
            logger.error(f"扩张子报告失败: {str(e)}")
            return {"error": f"计算失败: {str(e)}"}

    @mcp.tool()
    def construction_certificate(n, seed=0, flavor="complex-hermitian", tol=None, solver="lanczos"):
        """
        采样 Haar 酉对 (U, V)，构造 3n×3n 矩阵并验证其恶正规性。

        Args:
            n: 分块维数
            seed: 基础种子
            flavor: 基类型（实对称时采样正交对）
            tol: 求解器容差
            solver: mal 求解器

        Returns:
            证书字典（status 为 PASS 或 FAIL）或错误消息
        """
        try:
            return certify_sampled(int(n), int(seed), flavor=flavor, tol=tol, solver=solver).to_dict()
        except Exception as e:
            logger.error(f"构造证书失败: {str(e)}")
            return {"error": f"计算失败: {str(e)}"}


def teardown():
    """清理插件资源。"""
    logger.info("量子扩张子工具插件已卸载")
