#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
实验记录资源插件，以 records://{name} 提供数据目录中的 JSON-lines 记录文件。
"""

import json
import logging
import os

from core.config import config_manager
from malnormal.experiments import read_records

logger = logging.getLogger("records_resource")

RECORD_EXTENSIONS = (".jsonl", ".ndjson")


def setup(mcp):
    """
    设置实验记录资源插件。

    Args:
        mcp: MCP服务器实例
    """
    logger.info("实验记录资源插件初始化")

    config = getattr(mcp, "config", {}).get("tool_configs", {}).get("records", {})
    base_dir = config_manager.resolve_path(config.get("base_dir", "./data"))
    os.makedirs(base_dir, exist_ok=True)

    logger.info(f"记录文件目录: {base_dir}")

    @mcp.resource("records://{name}")
    async def records_resource(name):
        """
        读取一个记录文件。

        Args:
            name: 文件名，相对于记录目录，扩展名为 .jsonl 或 .ndjson

        Returns:
            文件文本及解析出的记录数

        Raises:
            ValueError: 文件名无效或文件不存在
        """
        # 安全检查：防止路径遍历攻击
        if ".." in name or name.startswith("/"):
            raise ValueError(f"无效的文件名: {name}")
        if not name.lower().endswith(RECORD_EXTENSIONS):
            raise ValueError(f"不支持的文件类型: {name}")

        file_path = os.path.normpath(os.path.join(base_dir, name))
        if not file_path.startswith(base_dir):
            raise ValueError(f"文件路径必须在记录目录内: {name}")
        if not os.path.isfile(file_path):
            raise ValueError(f"记录文件不存在: {name}")

        try:
            with open(file_path, "r", encoding="utf-8") as f:
                content = f.read()
            records = read_records(file_path)
        except OSError as e:
            logger.error(f"读取记录文件出错 {file_path}: {str(e)}")
            raise ValueError(f"读取记录文件出错: {str(e)}")

        kinds = sorted({r.ensemble_kind for r in records})
        return {
            "uri": f"records://{name}",
            "mimeType": "application/x-ndjson",
            "text": content,
            "summary": json.dumps(
                {
                    "records": len(records),
                    "converged": sum(1 for r in records if r.converged),
                    "ensembles": kinds,
                    "n_values": sorted({r.n for r in records}),
                },
                sort_keys=True,
            ),
        }


def teardown():
    """清理插件资源。"""
    logger.info("实验记录资源插件已卸载")
