# -*- coding: utf-8 -*-

"""
测试公共设施：仓库根目录加入 sys.path，带种子的随机实例，以及模拟的 MCP 实例。
"""

import copy
import os
import sys

import numpy as np
import pytest

ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
if ROOT not in sys.path:
    sys.path.insert(0, ROOT)

from core.config import config_manager  # noqa: E402
from malnormal.ensembles import SeededStream, gaussian_matrix, haar_tuple  # noqa: E402


class FakeMCP:
    """记录 tool()/resource() 注册结果的替身，带 config 属性。"""

    def __init__(self, config=None):
        self.config = config if config is not None else config_manager.config
        self.tools = {}
        self.resources = {}

    def tool(self):
        def decorator(fn):
            self.tools[fn.__name__] = fn
            return fn

        return decorator

    def resource(self, uri):
        def decorator(fn):
            self.resources[uri] = fn
            return fn

        return decorator


@pytest.fixture(autouse=True)
def restore_config():
    """CLI 的 --config/--threads 会修改全局配置，每个测试后还原。"""
    path = config_manager.config_path
    snapshot = copy.deepcopy(config_manager.config)
    yield
    config_manager.config_path = path
    config_manager.config.clear()
    config_manager.config.update(snapshot)


@pytest.fixture
def fake_mcp():
    return FakeMCP()


@pytest.fixture
def records_mcp(tmp_path):
    """记录目录指向临时目录的 MCP 替身。"""
    config = copy.deepcopy(config_manager.config)
    config.setdefault("tool_configs", {})["records"] = {"base_dir": str(tmp_path)}
    return FakeMCP(config)


def random_matrix(n, seed, complex_entries=True):
    """带种子的标准高斯矩阵。"""
    return gaussian_matrix(n, "complex" if complex_entries else "real", SeededStream(seed))


def random_hermitian(n, seed):
    g = random_matrix(n, seed)
    return (g + g.conj().T) / 2


def haar_pair(n, seed, real=False):
    return haar_tuple(n, 2, SeededStream(seed), real=real)


def random_projection(n, rank, seed):
    """秩为 rank 的随机正交投影。"""
    q, _ = np.linalg.qr(random_matrix(n, seed))
    cols = q[:, :rank]
    return cols @ cols.conj().T
