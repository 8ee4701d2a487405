#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
命令行主入口：python main.py <子命令> ...

子命令见 malnormal.cli；MCP 服务器由 server.py 启动。
"""

import os
import sys

# 确保当前目录在Python路径中
sys.path.insert(0, os.path.abspath(os.path.dirname(__file__)))

from malnormal.cli import main

if __name__ == "__main__":
    sys.exit(main())
