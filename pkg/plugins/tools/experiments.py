#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
实验统计工具插件：对数据目录中的 JSON-lines 记录文件做汇总和幂律回归。
"""

import logging
import os

from core.config import config_manager
from malnormal.experiments import fit_campaign, read_records, summarize_all

logger = logging.getLogger("experiments_tool")


def setup(mcp):
    """
    设置实验统计工具插件。

    Args:
        mcp: MCP服务器实例
    """
    logger.info("实验统计工具插件初始化")

    config = getattr(mcp, "config", {}).get("tool_configs", {}).get("records", {})
    base_dir = config_manager.resolve_path(config.get("base_dir", "./data"))
    logger.info(f"记录文件目录: {base_dir}")

    def resolve(name):
        # 防止路径遍历
        if ".." in name or name.startswith("/"):
            raise ValueError(f"无效的文件名: {name}")
        path = os.path.normpath(os.path.join(base_dir, name))
        if not path.startswith(base_dir):
            raise ValueError(f"文件必须在记录目录内: {name}")
        if not os.path.isfile(path):
            raise ValueError(f"记录文件不存在: {name}")
        return path

    @mcp.tool()
    def campaign_summary(records_file):
        """
        按 n 汇总记录文件中已收敛样本的均值、中位数和无偏方差。

        Args:
            records_file: 记录目录下的 JSON-lines 文件名

        Returns:
            每个 n 一项的汇总或错误消息
        """
        try:
            records = read_records(resolve(records_file))
            return {
                "records_file": records_file,
                "records": len(records),
                "summaries": [s.to_dict() for s in summarize_all(records)],
            }
        except Exception as e:
            logger.error(f"汇总失败: {str(e)}")
            return {"error": f"汇总失败: {str(e)}"}

    @mcp.tool()
    def power_fit(records_file, target="mean", min_n=None):
        """
        对各 n 的均值或方差拟合 αn^β + γ。

        Args:
            records_file: 记录目录下的 JSON-lines 文件名
            target: "mean" 或 "variance"
            min_n: 参与回归的最小 n，默认 6

        Returns:
            PowerFit 字典或错误消息
        """
        try:
            records = read_records(resolve(records_file))
            fit = fit_campaign(records, target=target, min_n=None if min_n is None else int(min_n))
            data = fit.to_dict()
            data["target"] = target
            return data
        except Exception as e:
            logger.error(f"幂律回归失败: {str(e)}")
            return {"error": f"回归失败: {str(e)}"}


def teardown():
    """清理插件资源。"""
    logger.info("实验统计工具插件已卸载")
