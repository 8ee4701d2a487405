#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
带完全重正交化的 Lanczos 迭代，求实对称线性算子（以函数形式给出）的最大特征对。

恶正规常数（作用于 σI − H）和扩张子诊断（作用于 E^h 等超算子）共用这一实现。
"""

import logging
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np
from scipy.linalg import eigh_tridiagonal

from core.config import config_manager

from .errors import ConvergenceError, InputError

logger = logging.getLogger("lanczos")


@dataclass(frozen=True)
class LanczosResult:
    """最大 Ritz 对及其收敛信息。"""

    value: float
    vector: np.ndarray
    residual: float
    iterations: int
    converged: bool


def _largest_ritz(alphas, betas):
    if len(alphas) == 1:
        return float(alphas[0]), np.ones(1)
    j = len(alphas) - 1
    values, vectors = eigh_tridiagonal(
        np.asarray(alphas), np.asarray(betas), select="i", select_range=(j, j)
    )
    return float(values[0]), vectors[:, 0]


def lanczos_largest(
    apply: Callable[[np.ndarray], np.ndarray],
    dim: int,
    tol: float,
    max_iter: Optional[int] = None,
    seed: Optional[int] = None,
    start: Optional[np.ndarray] = None,
) -> LanczosResult:
    """
    求对称算子的最大特征值及 Ritz 向量。

    每步对新 Lanczos 向量做两遍完全重正交化，并用三对角矩阵的最大 Ritz 对
    估计残差 β_j·|s_j|。残差不超过 tol，或 Krylov 子空间不变（β≈0）时返回。

    Args:
        apply: 线性算子 b ↦ Ab，A 实对称
        dim: 向量维数
        tol: 残差容差（绝对）
        max_iter: 迭代上限，默认为 dim
        seed: 随机起始向量的种子，默认读取 linalg.lanczos_seed
        start: 显式起始向量

    Raises:
        ConvergenceError: 达到上限仍未收敛，best 为最后的 LanczosResult
    """
    if dim < 1:
        raise InputError(f"维数必须为正: {dim}")
    if tol <= 0:
        raise InputError(f"容差必须为正: {tol}")
    cap = dim if max_iter is None else max(1, min(int(max_iter), dim))

    if start is None:
        seed = seed if seed is not None else config_manager.get("linalg.lanczos_seed", 0)
        start = np.random.default_rng(seed).standard_normal(dim)
    q = np.asarray(start, dtype=np.float64).copy()
    q /= np.linalg.norm(q)

    basis = np.empty((cap, dim))
    alphas = []
    betas = []
    q_prev = np.zeros(dim)
    beta_prev = 0.0
    theta, s, residual = 0.0, np.ones(1), np.inf

    for j in range(cap):
        basis[j] = q
        w = apply(q)
        alpha = float(q @ w)
        w = w - alpha * q - beta_prev * q_prev
        for _ in range(2):
            w -= basis[: j + 1].T @ (basis[: j + 1] @ w)
        beta = float(np.linalg.norm(w))
        alphas.append(alpha)

        theta, s = _largest_ritz(alphas, betas)
        residual = beta * abs(float(s[-1]))
        scale = max(1.0, abs(theta))
        invariant = beta <= 1e-12 * scale

        if residual <= tol or invariant or j + 1 == dim:
            vector = basis[: j + 1].T @ s
            vector /= np.linalg.norm(vector)
            logger.debug(f"Lanczos 收敛: {j + 1} 步, θ = {theta:.12g}, 残差 {residual:.2e}")
            return LanczosResult(theta, vector, residual, j + 1, True)

        betas.append(beta)
        q_prev, q = q, w / beta
        beta_prev = beta

    vector = basis[:cap].T @ s
    vector /= np.linalg.norm(vector)
    best = LanczosResult(theta, vector, residual, cap, False)
    raise ConvergenceError(
        f"Lanczos {cap} 步未收敛，残差 {residual:.2e} > {tol:.1e}", best=best, iterations=cap
    )
