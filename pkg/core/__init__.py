"""
核心模块包，提供配置、日志和插件加载等基础设施。

MCP服务器本身在 core.server 中，按需导入（依赖 MCP SDK）。
"""

from .config import config_manager, ConfigManager
from .log import setup_logging
from .plugin_loader import PluginLoader

__all__ = ["config_manager", "ConfigManager", "setup_logging", "PluginLoader"]
