#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
配置管理模块，负责加载和处理配置文件。

所有数值默认值（容差、迭代上限、回归截断等）都从这里读取，
调用方显式传入的参数优先。
"""

import copy
import json
import logging
import os
from typing import Any, Dict, Optional

from .log import setup_logging

logger = logging.getLogger("config")

# 仓库根目录下的默认配置文件
DEFAULT_CONFIG_PATH = os.path.join(
    os.path.dirname(os.path.dirname(os.path.abspath(__file__))), "config", "config.json"
)


class ConfigManager:
    """配置管理类，负责加载、处理和提供配置信息。"""

    def __init__(self, config_path: Optional[str] = None):
        """
        初始化配置管理器。

        Args:
            config_path: 配置文件路径，默认为仓库内的 config/config.json
        """
        self.config_path = config_path or DEFAULT_CONFIG_PATH
        self.config: Dict[str, Any] = {}
        self.load_config()

    def load_config(self) -> None:
        """加载配置文件。"""
        try:
            with open(self.config_path, "r", encoding="utf-8") as f:
                self.config = json.load(f)

            # 处理环境变量
            self._process_env_vars(self.config)
            self._configure_logging()
            logger.debug(f"配置已加载: {self.config_path}")
        except Exception as e:
            # 使用默认配置
            self.config = self._get_default_config()
            self._configure_logging()
            logger.error(f"加载配置失败，使用默认配置: {str(e)}")

    def _configure_logging(self) -> None:
        """按配置中的 logging 段设置根日志器。"""
        level = self.get("logging.level", self.get("server.log_level", "info"))
        fmt = self.get("logging.format", "text")
        setup_logging(str(level), str(fmt))

    def _process_env_vars(self, config_dict: Dict[str, Any]) -> None:
        """
        处理配置中的环境变量。

        Args:
            config_dict: 配置字典
        """
        for key, value in config_dict.items():
            if isinstance(value, dict):
                self._process_env_vars(value)
            elif isinstance(value, str) and value.startswith("${") and value.endswith("}"):
                env_var = value[2:-1]
                config_dict[key] = os.environ.get(env_var, "")
                logger.debug(f"环境变量 {env_var} 替换为: {config_dict[key]}")

    def _get_default_config(self) -> Dict[str, Any]:
        """
        获取默认配置。

        Returns:
            默认配置字典
        """
        return copy.deepcopy(DEFAULT_CONFIG)

    def get(self, key_path: str, default: Any = None) -> Any:
        """
        获取配置项。支持使用点号分隔的路径。

        Args:
            key_path: 配置项路径，如 "linalg.polar_tol"
            default: 默认值

        Returns:
            配置值
        """
        keys = key_path.split(".")
        value = self.config

        for key in keys:
            if isinstance(value, dict) and key in value:
                value = value[key]
            else:
                return default

        return value

    def set(self, key_path: str, value: Any) -> None:
        """
        设置配置项。支持使用点号分隔的路径。

        Args:
            key_path: 配置项路径，如 "malnormality.lanczos_tol"
            value: 配置值
        """
        keys = key_path.split(".")
        config = self.config

        # 导航到最后一个键的父级
        for key in keys[:-1]:
            if key not in config:
                config[key] = {}
            config = config[key]

        config[keys[-1]] = value

    def save(self) -> None:
        """保存配置到文件。"""
        try:
            with open(self.config_path, "w", encoding="utf-8") as f:
                json.dump(self.config, f, indent=2, ensure_ascii=False)
            logger.info(f"配置已保存: {self.config_path}")
        except Exception as e:
            logger.error(f"保存配置失败: {str(e)}")

    def reload(self, config_path: Optional[str] = None) -> None:
        """
        切换到另一个配置文件并重新加载（CLI 的 --config 选项）。

        Args:
            config_path: 新的配置文件路径
        """
        if config_path:
            self.config_path = config_path
        self.load_config()

    def get_plugin_directory(self, plugin_type: str) -> str:
        """
        获取插件目录路径。

        Args:
            plugin_type: 插件类型，如 "resources", "tools"

        Returns:
            插件目录路径（相对路径以仓库根目录为基准）
        """
        directory = self.get(f"plugins.directories.{plugin_type}", f"plugins/{plugin_type}")
        return self.resolve_path(directory)

    @staticmethod
    def resolve_path(path: str) -> str:
        """
        将相对路径解析到仓库根目录下。

        Args:
            path: 配置中的路径

        Returns:
            绝对路径
        """
        if os.path.isabs(path):
            return path
        root = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
        return os.path.normpath(os.path.join(root, path))

    def is_plugin_disabled(self, plugin_id: str) -> bool:
        """
        检查插件是否被禁用。

        Args:
            plugin_id: 插件ID

        Returns:
            是否禁用
        """
        disabled = self.get("plugins.disabled", [])
        return plugin_id in disabled

    def get_tool_config(self, tool_id: str) -> Dict[str, Any]:
        """
        获取工具配置。

        Args:
            tool_id: 工具ID

        Returns:
            工具配置字典
        """
        return self.get(f"tool_configs.{tool_id}", {})


DEFAULT_CONFIG: Dict[str, Any] = {
    "server": {
        "name": "malnormal-mcp",
        "transport": "stdio",
        "log_level": "info",
    },
    "logging": {
        "level": "WARNING",
        "format": "text",
    },
    "plugins": {
        "directories": {
            "resources": "plugins/resources",
            "tools": "plugins/tools",
        },
        "disabled": [],
    },
    "linalg": {
        "symmetry_tol": 1e-10,
        "unitary_tol": 1e-8,
        "operator_norm_tol": 1e-10,
        "operator_norm_max_iter": 20000,
        "polar_tol": 1e-12,
        "polar_max_iter": 100,
        "lanczos_seed": 0,
    },
    "malnormality": {
        "lanczos_tol": 1e-8,
        "lanczos_max_iter": None,
        "localopt_gtol": 1e-9,
        "localopt_max_iter": 200000,
        "armijo_step": 1.0,
        "armijo_shrink": 0.5,
        "armijo_slope": 1e-4,
    },
    "expanders": {
        "lanczos_tol": 1e-8,
        "lanczos_max_iter": 1500,
    },
    "ensembles": {
        "max_retries": 3,
    },
    "experiments": {
        "regression_min_n": 6,
        "kde_grid_points": 512,
        "ci_quantile": 1.96,
        "fit_max_evaluations": 5000,
    },
    "cli": {
        "seed": 0,
        "tolerance": 1e-8,
        "threads": None,
    },
    "tool_configs": {
        "records": {
            "base_dir": "./data",
        },
    },
}


# 单例模式
config_manager = ConfigManager()
