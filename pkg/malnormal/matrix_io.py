#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
矩阵文本格式。

第一行 "rows cols flavor"（flavor 为 real 或 complex），之后按行主序给出元素，
空白分隔。复数元素写作 "a+bi"。浮点数用 repr 输出（最短往返表示），
读回后逐位相同。
"""

import logging
import math
import os
from typing import List

import numpy as np

from .errors import DimensionError, InputError
from .linalg import as_matrix, is_real

logger = logging.getLogger("matrix_io")

FLAVORS = ("real", "complex")


def _format_real(value: float) -> str:
    return repr(float(value))


def _format_complex(value: complex) -> str:
    re, im = float(value.real), float(value.imag)
    sign = "-" if math.copysign(1.0, im) < 0 else "+"
    return f"{repr(re)}{sign}{repr(abs(im))}i"


def _parse_complex(token: str) -> complex:
    if token.endswith("i"):
        return complex(token[:-1] + "j")
    return complex(float(token), 0.0)


def write_matrix(m) -> str:
    """
    把矩阵格式化为文本。

    Args:
        m: 二维数组

    Returns:
        以换行结尾的文本
    """
    m = as_matrix(m, "M")
    rows, cols = m.shape
    real = is_real(m)
    fmt = _format_real if real else _format_complex
    lines = [f"{rows} {cols} {'real' if real else 'complex'}"]
    for row in m:
        lines.append(" ".join(fmt(v) for v in row))
    return "\n".join(lines) + "\n"


def read_matrix(text: str) -> np.ndarray:
    """
    解析矩阵文本。

    Raises:
        InputError: 头部或元素无法解析
        DimensionError: 元素个数与头部不符
    """
    tokens = text.split()
    if len(tokens) < 3:
        raise InputError("矩阵文本缺少头部 'rows cols flavor'")
    try:
        rows, cols = int(tokens[0]), int(tokens[1])
    except ValueError:
        raise InputError(f"无法解析矩阵维数: {tokens[0]} {tokens[1]}") from None
    flavor = tokens[2].lower()
    if flavor not in FLAVORS:
        raise InputError(f"未知的矩阵类型: {tokens[2]}，可选: {', '.join(FLAVORS)}")
    if rows < 0 or cols < 0:
        raise InputError(f"矩阵维数不能为负: {rows} {cols}")

    entries = tokens[3:]
    if len(entries) != rows * cols:
        raise DimensionError(f"元素个数 {len(entries)} 与维数 {rows}×{cols} 不符")

    try:
        if flavor == "real":
            values = [float(t) for t in entries]
            return np.array(values, dtype=np.float64).reshape(rows, cols)
        values = [_parse_complex(t) for t in entries]
        return np.array(values, dtype=np.complex128).reshape(rows, cols)
    except ValueError as e:
        raise InputError(f"无法解析矩阵元素: {str(e)}") from e


def load_matrix(path: str) -> np.ndarray:
    """从文件读取矩阵。"""
    with open(path, "r", encoding="utf-8") as f:
        m = read_matrix(f.read())
    logger.debug(f"读取矩阵 {path}: {m.shape}")
    return m


def load_matrices(paths: List[str]) -> List[np.ndarray]:
    """依次读取多个矩阵文件。"""
    return [load_matrix(p) for p in paths]


def save_matrix(m, path: str) -> None:
    """把矩阵写入文件，必要时创建目录。"""
    directory = os.path.dirname(path)
    if directory:
        os.makedirs(directory, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write(write_matrix(m))
    logger.debug(f"矩阵已保存: {path}")
