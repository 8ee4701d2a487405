#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
无迹自伴矩阵空间 H_n^0 的正交基，实现等距同构 φ: R^d(n) → H_n^0。

基元素的顺序固定（坐标向量、Hessian 和保存的极小点因此可复现）：
  1. 对称非对角对 (E_ij + E_ji)/√2，i<j 按字典序；
  2. 仅复类型：反对称对 i(E_ij − E_ji)/√2，i<j 按字典序；
  3. 无迹对角阶梯 d_k = (Σ_{i≤k} E_ii − k·E_{k+1,k+1})/√(k(k+1))，k = 1..n−1。
"""

import functools
import math
from enum import Enum
from typing import Union

import numpy as np

from .errors import DimensionError, InputError
from .linalg import as_square, is_real, traceless_part

SQRT2 = math.sqrt(2.0)


class Flavor(str, Enum):
    """基的类型：实对称或复 Hermite。"""

    REAL_SYMMETRIC = "real-symmetric"
    COMPLEX_HERMITIAN = "complex-hermitian"

    @classmethod
    def parse(cls, value: Union["Flavor", str]) -> "Flavor":
        """接受枚举值、完整名称或简写 "real"/"complex"。"""
        if isinstance(value, Flavor):
            return value
        aliases = {"real": cls.REAL_SYMMETRIC, "complex": cls.COMPLEX_HERMITIAN}
        text = str(value).strip().lower()
        if text in aliases:
            return aliases[text]
        try:
            return cls(text)
        except ValueError:
            raise InputError(f"未知的基类型: {value}") from None

    @classmethod
    def default_for(cls, x) -> "Flavor":
        """实矩阵默认实对称基，复矩阵默认复 Hermite 基。"""
        return cls.REAL_SYMMETRIC if is_real(np.asarray(x)) else cls.COMPLEX_HERMITIAN


def traceless_dimension(n: int, flavor: Union[Flavor, str]) -> int:
    """d(n)：实对称为 n(n+1)/2 − 1，复 Hermite 为 n² − 1。"""
    if Flavor.parse(flavor) is Flavor.REAL_SYMMETRIC:
        return n * (n + 1) // 2 - 1
    return n * n - 1


def _diagonal_ladder(n: int) -> np.ndarray:
    # 第 k−1 列是 d_k 的对角线
    ladder = np.zeros((n, n - 1))
    for k in range(1, n):
        norm = math.sqrt(k * (k + 1))
        ladder[:k, k - 1] = 1.0 / norm
        ladder[k, k - 1] = -k / norm
    return ladder


class TracelessHermitianBasis:
    """H_n^0 的有序正交基。构造后不可变，可在线程间共享。"""

    def __init__(self, n: int, flavor: Union[Flavor, str]):
        """
        Args:
            n: 矩阵维数，至少为 2
            flavor: 基类型
        """
        if int(n) != n or n < 2:
            raise InputError(f"基的维数 n 必须是不小于 2 的整数: {n}")
        self._n = int(n)
        self._flavor = Flavor.parse(flavor)
        self._rows, self._cols = np.triu_indices(self._n, 1)
        self._pairs = len(self._rows)
        self._ladder = _diagonal_ladder(self._n)
        self._dim = traceless_dimension(self._n, self._flavor)

    @property
    def n(self) -> int:
        return self._n

    @property
    def flavor(self) -> Flavor:
        return self._flavor

    @property
    def dim(self) -> int:
        return self._dim

    @property
    def is_complex(self) -> bool:
        return self._flavor is Flavor.COMPLEX_HERMITIAN

    @property
    def dtype(self):
        return np.complex128 if self.is_complex else np.float64

    @functools.cached_property
    def elements(self) -> np.ndarray:
        """稠密化的基元素，形状 (dim, n, n)。"""
        eye = np.eye(self._dim)
        return np.stack([self.phi(row) for row in eye])

    def __len__(self) -> int:
        return self._dim

    def __repr__(self) -> str:
        return f"TracelessHermitianBasis(n={self._n}, flavor={self._flavor.value!r}, dim={self._dim})"

    def _check_vector(self, b) -> np.ndarray:
        b = np.asarray(b, dtype=np.float64)
        if b.shape != (self._dim,):
            raise DimensionError(f"坐标向量长度应为 {self._dim}，实际形状: {b.shape}")
        return b

    def phi(self, b) -> np.ndarray:
        """
        φ(b) = Σ b_i·E_i，按下标直接组装，不物化基元素。

        Args:
            b: 长度为 dim 的实向量

        Returns:
            n×n 无迹自伴矩阵，‖φ(b)‖₂ = ‖b‖
        """
        b = self._check_vector(b)
        n, p = self._n, self._pairs
        m = np.zeros((n, n), dtype=self.dtype)
        sym = b[:p] / SQRT2
        m[self._rows, self._cols] = sym
        m[self._cols, self._rows] = sym
        offset = p
        if self.is_complex:
            anti = b[p : 2 * p] / SQRT2
            m[self._rows, self._cols] += 1j * anti
            m[self._cols, self._rows] -= 1j * anti
            offset = 2 * p
        m[np.diag_indices(n)] = self._ladder @ b[offset:]
        return m

    def coordinates(self, m) -> np.ndarray:
        """
        b_i = Re<M, E_i>，不做校验。

        对任意方阵 M 即为其在 H_n^0（实内积下）上的正交投影的坐标，
        矩阵无关算子直接使用这一压缩。
        """
        m = np.asarray(m)
        upper = m[self._rows, self._cols]
        lower = m[self._cols, self._rows]
        parts = [((upper + lower) / SQRT2).real]
        if self.is_complex:
            parts.append(((lower - upper) * 1j / SQRT2).real)
        parts.append(self._ladder.T @ np.diagonal(m).real)
        return np.concatenate(parts).astype(np.float64, copy=False)

    def phi_inv(self, m, tol: float = 1e-8) -> np.ndarray:
        """
        φ 的逆。

        Args:
            m: n×n 无迹自伴矩阵（实对称类型还要求为实矩阵）
            tol: 相对校验容差

        Raises:
            DimensionError: 形状不符
            InputError: 不是（该类型的）无迹自伴矩阵
        """
        m = as_square(m, "M")
        if m.shape != (self._n, self._n):
            raise DimensionError(f"矩阵形状应为 {(self._n, self._n)}，实际: {m.shape}")
        bound = tol * max(1.0, float(np.linalg.norm(m)))
        if np.linalg.norm(m - m.conj().T) > bound:
            raise InputError("矩阵不是自伴的")
        if abs(np.trace(m)) > bound:
            raise InputError(f"矩阵的迹不为零: {np.trace(m)}")
        if not self.is_complex and np.linalg.norm(np.imag(m)) > bound:
            raise InputError("实对称基不能表示带虚部的矩阵")
        return self.coordinates(m)


@functools.lru_cache(maxsize=64)
def _cached_basis(n: int, flavor: Flavor) -> TracelessHermitianBasis:
    return TracelessHermitianBasis(n, flavor)


def build_basis(n: int, flavor: Union[Flavor, str] = Flavor.REAL_SYMMETRIC) -> TracelessHermitianBasis:
    """
    构造（并缓存）H_n^0 的规范正交基。

    Args:
        n: 维数，n ≥ 2
        flavor: 实对称或复 Hermite

    Raises:
        InputError: n < 2
    """
    if int(n) != n or n < 2:
        raise InputError(f"基的维数 n 必须是不小于 2 的整数: {n}")
    return _cached_basis(int(n), Flavor.parse(flavor))


def phi(basis: TracelessHermitianBasis, b) -> np.ndarray:
    """φ(b)，见 TracelessHermitianBasis.phi。"""
    return basis.phi(b)


def phi_inv(basis: TracelessHermitianBasis, m, tol: float = 1e-8) -> np.ndarray:
    """φ⁻¹(M)，见 TracelessHermitianBasis.phi_inv。"""
    return basis.phi_inv(m, tol)


def project_traceless_hermitian(m, flavor: Union[Flavor, str] = Flavor.COMPLEX_HERMITIAN) -> np.ndarray:
    """
    到 H_n^0 的正交投影：(M + M*)/2 − τ(·)I，实对称类型再取实部。

    投影是幂等的，残差 M − P(M) 在实内积 Re<·,·> 下与每个基元素正交。
    """
    m = as_square(m, "M")
    h = (m + m.conj().T) / 2
    if Flavor.parse(flavor) is Flavor.REAL_SYMMETRIC:
        h = h.real
    return traceless_part(h)
