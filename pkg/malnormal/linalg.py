#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
稠密实/复矩阵运算：Hilbert–Schmidt 几何、对易子、算子范数、
特征值分解和极分解。其余模块都建立在这里的函数之上。

矩阵就是 numpy 数组：float64 为实类型，complex128 为复类型。
"""

import logging
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
import scipy.linalg

from core.config import config_manager

from .errors import ConvergenceError, DimensionError, InputError, SingularityError

logger = logging.getLogger("linalg")


@dataclass(frozen=True)
class EigenResult:
    """
    特征值分解结果。

    对称输入：values 为升序实数，vectors 的列为正交特征向量（可选）。
    一般输入：values 为复数，顺序不作保证，vectors 为 None。
    """

    values: np.ndarray
    vectors: Optional[np.ndarray] = None


def as_matrix(a, name: str = "A") -> np.ndarray:
    """把输入转换为二维数组，整数提升为 float64。"""
    m = np.asarray(a)
    if m.ndim != 2:
        raise DimensionError(f"{name} 必须是二维矩阵，实际维数: {m.ndim}")
    if not np.issubdtype(m.dtype, np.inexact):
        m = m.astype(np.float64)
    return m


def as_square(a, name: str = "A") -> np.ndarray:
    """转换为方阵，形状不符时抛出 DimensionError。"""
    m = as_matrix(a, name)
    if m.shape[0] != m.shape[1]:
        raise DimensionError(f"{name} 必须是方阵，实际形状: {m.shape}")
    return m


def _same_shape(a: np.ndarray, b: np.ndarray) -> None:
    if a.shape != b.shape:
        raise DimensionError(f"矩阵形状不匹配: {a.shape} 与 {b.shape}")


def is_real(a: np.ndarray) -> bool:
    """数组是否为实类型。"""
    return not np.iscomplexobj(a)


def hs_inner(a, b) -> complex:
    """
    Hilbert–Schmidt 内积 <A, B> = tr(B*A) = Σ A_ij conj(B_ij)。

    Args:
        a: 方阵 A
        b: 与 A 同形状的方阵 B

    Returns:
        复数内积
    """
    a = as_square(a, "A")
    b = as_square(b, "B")
    _same_shape(a, b)
    return complex(np.vdot(b, a))


def hs_norm(a) -> float:
    """Hilbert–Schmidt（Frobenius）范数。"""
    return float(np.linalg.norm(as_matrix(a), "fro"))


def commutator(x, b) -> np.ndarray:
    """对易子 [X, B] = XB − BX。"""
    x = as_square(x, "X")
    b = as_square(b, "B")
    _same_shape(x, b)
    return x @ b - b @ x


def normalized_trace(a) -> complex:
    """归一化迹 τ(A) = tr(A)/n。"""
    a = as_square(a)
    return complex(np.trace(a)) / a.shape[0]


def traceless_part(b) -> np.ndarray:
    """无迹部分 Ḃ = B − τ(B)I。"""
    b = as_square(b, "B")
    n = b.shape[0]
    tau = np.trace(b) / n
    return b - tau * np.eye(n, dtype=b.dtype)


def unitarity_defect(u) -> float:
    """‖U*U − I‖₂（HS 范数），衡量与酉矩阵的偏离。"""
    u = as_square(u, "U")
    return hs_norm(u.conj().T @ u - np.eye(u.shape[0]))


def check_unitary(u, tol: Optional[float] = None, name: str = "U") -> np.ndarray:
    """
    校验酉性并返回数组。

    Raises:
        InputError: 偏离超过容差
    """
    tol = tol if tol is not None else config_manager.get("linalg.unitary_tol", 1e-8)
    u = as_square(u, name)
    defect = unitarity_defect(u)
    if defect > tol:
        raise InputError(f"{name} 不是酉矩阵: ‖U*U − I‖₂ = {defect:.3e} > {tol:.1e}")
    return u


def operator_norm(x, tol: Optional[float] = None, max_iter: Optional[int] = None) -> float:
    """
    用 X*X 的幂迭代计算最大奇异值。

    起始向量为归一化的全 1 向量；若迭代落入零空间则做确定性扰动。
    当 ‖X*Xv − ρv‖ ≤ tol·ρ 时停止，ρ 为 Rayleigh 商。

    Args:
        x: 矩阵
        tol: 相对容差，默认读取 linalg.operator_norm_tol
        max_iter: 迭代上限

    Returns:
        最大奇异值

    Raises:
        ConvergenceError: 达到迭代上限，best 为最后的估计
    """
    x = as_matrix(x, "X")
    tol = tol if tol is not None else config_manager.get("linalg.operator_norm_tol", 1e-10)
    max_iter = max_iter or config_manager.get("linalg.operator_norm_max_iter", 20000)
    if tol <= 0:
        raise InputError(f"容差必须为正: {tol}")
    if not np.any(x):
        return 0.0

    n = x.shape[1]
    v = np.ones(n, dtype=x.dtype) / math.sqrt(n)
    rho = 0.0
    for iteration in range(1, max_iter + 1):
        z = x.conj().T @ (x @ v)
        rho = float(np.vdot(v, z).real)
        z_norm = float(np.linalg.norm(z))
        if z_norm == 0.0:
            # 停滞：起始向量落在零空间
            v = v + 0.5 * np.cos(np.arange(n) * (iteration + 1.0))
            v = v / np.linalg.norm(v)
            continue
        if float(np.linalg.norm(z - rho * v)) <= tol * rho:
            logger.debug(f"幂迭代收敛: {iteration} 次, σ = {math.sqrt(rho):.12g}")
            return math.sqrt(rho)
        v = z / z_norm

    raise ConvergenceError(
        f"算子范数幂迭代 {max_iter} 次未收敛", best=math.sqrt(max(rho, 0.0)), iterations=max_iter
    )


def symmetric_eig(h, want_vectors: bool = False, tol: Optional[float] = None) -> EigenResult:
    """
    对称（Hermite）矩阵的全部特征值，升序排列。

    使用 LAPACK ?syev/?heev：Householder 三对角化加隐式位移 QL/QR。

    Args:
        h: 对称矩阵
        want_vectors: 是否返回特征向量
        tol: 对称性相对容差，默认读取 linalg.symmetry_tol

    Raises:
        InputError: 非对称程度超过容差
        ConvergenceError: LAPACK 未收敛
    """
    h = as_square(h, "H")
    tol = tol if tol is not None else config_manager.get("linalg.symmetry_tol", 1e-10)
    scale = float(np.linalg.norm(h, "fro"))
    asym = float(np.linalg.norm(h - h.conj().T, "fro"))
    if asym > tol * scale:
        raise InputError(f"矩阵不对称: ‖H − H*‖ = {asym:.3e}，相对容差 {tol:.1e}")

    sym = (h + h.conj().T) / 2
    try:
        if want_vectors:
            values, vectors = scipy.linalg.eigh(sym, driver="ev")
            return EigenResult(values=values, vectors=vectors)
        values = scipy.linalg.eigh(sym, eigvals_only=True, driver="ev")
        return EigenResult(values=values)
    except np.linalg.LinAlgError as e:
        raise ConvergenceError(f"对称特征值求解未收敛: {str(e)}") from e


def general_eigvals(a) -> EigenResult:
    """
    一般方阵的全部复特征值。

    使用 LAPACK ?geev：平衡、Hessenberg 约化，实矩阵用 Francis 双位移 QR，
    复矩阵用单位移 QR。实矩阵的复特征值成共轭对出现。

    Raises:
        ConvergenceError: QR 迭代未收敛
    """
    a = as_square(a, "A")
    try:
        values = scipy.linalg.eigvals(a)
    except np.linalg.LinAlgError as e:
        raise ConvergenceError(f"一般特征值 QR 迭代未收敛: {str(e)}") from e
    return EigenResult(values=np.asarray(values, dtype=np.complex128))


def polar_unitary(y, tol: Optional[float] = None, max_iter: Optional[int] = None) -> np.ndarray:
    """
    极分解 Y = U|Y| 的酉因子（实输入得到正交矩阵）。

    带 Frobenius 缩放的 Newton 迭代 U ← (ζU + ζ⁻¹U^{-*})/2，
    当 ‖U_{k+1} − U_k‖ < tol·√n 时停止；接近收敛后关闭缩放。

    Args:
        y: 数值满秩的方阵
        tol: 默认读取 linalg.polar_tol
        max_iter: 默认读取 linalg.polar_max_iter

    Raises:
        SingularityError: 矩阵（数值上）奇异
        ConvergenceError: 迭代上限内未收敛
    """
    y = as_square(y, "Y")
    tol = tol if tol is not None else config_manager.get("linalg.polar_tol", 1e-12)
    max_iter = max_iter or config_manager.get("linalg.polar_max_iter", 100)
    n = y.shape[0]

    try:
        inv = np.linalg.inv(y)
    except np.linalg.LinAlgError as e:
        raise SingularityError(f"极分解输入奇异: {str(e)}") from e
    # κ_F ≥ κ₂，κ_F ≤ n·κ₂
    cond_f = hs_norm(y) * hs_norm(inv)
    if not np.isfinite(cond_f) or cond_f > n * 1e12:
        raise SingularityError(f"极分解输入数值秩亏: κ_F = {cond_f:.3e}")

    u = y.copy()
    scaling = True
    previous = math.inf
    for iteration in range(1, max_iter + 1):
        inv_h = inv.conj().T
        if scaling:
            zeta = math.sqrt(hs_norm(inv) / hs_norm(u))
            new = 0.5 * (zeta * u + inv_h / zeta)
        else:
            new = 0.5 * (u + inv_h)
        diff = hs_norm(new - u)
        u = new
        if diff < tol * math.sqrt(n):
            logger.debug(f"极分解 Newton 迭代收敛: {iteration} 次")
            return u
        if not scaling and diff < 1e-8 and diff >= previous:
            # 已到舍入误差下限
            logger.debug(f"极分解 Newton 迭代在舍入下限停止: {iteration} 次, 步长 {diff:.2e}")
            return u
        if diff < 1e-2:
            scaling = False
        previous = diff
        try:
            inv = np.linalg.inv(u)
        except np.linalg.LinAlgError as e:
            raise SingularityError(f"极分解迭代第 {iteration} 次时矩阵奇异: {str(e)}") from e

    raise ConvergenceError(f"极分解 {max_iter} 次未收敛", best=u, iterations=max_iter)
