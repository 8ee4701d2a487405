#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
日志设置模块，支持普通文本和 JSON 结构化两种输出格式。
"""

import logging
import sys

from pythonjsonlogger import jsonlogger

TEXT_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"
JSON_FORMAT = "%(asctime)s %(name)s %(levelname)s %(message)s"

# 由本模块安装的处理器，重复调用时替换而不是叠加
_HANDLER_NAME = "malnormal-stderr"


class StderrHandler(logging.StreamHandler):
    """总是写到当前的 sys.stderr（测试或调用方替换后也跟随）。"""

    @property
    def stream(self):
        return sys.stderr

    @stream.setter
    def stream(self, value):
        pass


def setup_logging(level: str = "INFO", fmt: str = "text") -> logging.Handler:
    """
    配置根日志器。日志统一写到标准错误，标准输出留给 CLI 的结果。

    Args:
        level: 日志级别名称，如 "info"、"DEBUG"
        fmt: "text" 或 "json"

    Returns:
        安装的日志处理器
    """
    root = logging.getLogger()
    for handler in list(root.handlers):
        if handler.get_name() == _HANDLER_NAME:
            root.removeHandler(handler)

    handler = StderrHandler()
    handler.set_name(_HANDLER_NAME)
    if fmt.lower() == "json":
        handler.setFormatter(jsonlogger.JsonFormatter(JSON_FORMAT))
    else:
        handler.setFormatter(logging.Formatter(TEXT_FORMAT))

    root.addHandler(handler)
    root.setLevel(getattr(logging, level.upper(), logging.INFO))
    return handler
