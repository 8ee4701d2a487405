#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
由酉矩阵对 (U, V) 构造 3n×3n 分块矩阵 𝒳 并数值验证其恶正规性：

        ⎡ 0   2U  0 ⎤
    𝒳 = ⎢ 0   0   V ⎥
        ⎣ 3I  2I  I ⎦

(U, V) 是 δ-扩张子（δ < 1）时 mal(𝒳) 有正的下界。证书直接求解 mal(𝒳)，
并用实测算子范数把 𝒳 归一化为压缩。
"""

import logging
import math
from dataclasses import asdict, dataclass
from typing import Any, Dict, Optional, Union

import numpy as np

from core.config import config_manager

from .basis import Flavor
from .ensembles import SeededStream, haar_tuple
from .errors import ConvergenceError, DimensionError
from .expanders import eh_norm
from .linalg import check_unitary, operator_norm
from .malnormality import mal

logger = logging.getLogger("construction")

PASS = "PASS"
FAIL = "FAIL"


@dataclass(frozen=True)
class ConstructionCertificate:
    """
    mal(𝒳) 的数值证书。

    Attributes:
        n: 分块维数
        delta: 酉对的 ‖E^h‖
        x_opnorm: ‖𝒳‖
        mal_X: mal(𝒳)
        mal_scaled: mal(𝒳/‖𝒳‖) = mal_X/x_opnorm
        solver: 求解器
        flavor: 基类型
        resolution: 求解器分辨率 √(tol/2)
        status: PASS 当且仅当 delta < 1 且 mal_X > resolution
        seed: 采样种子（采样得到的酉对才有）
    """

    n: int
    delta: float
    x_opnorm: float
    mal_X: float
    mal_scaled: float
    solver: str
    flavor: str
    resolution: float
    status: str
    seed: Optional[int] = None

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


def build_X(u, v) -> np.ndarray:
    """
    按分块行 [0, 2U, 0]、[0, 0, V]、[3I, 2I, I] 组装 𝒳。

    Raises:
        InputError: U 或 V 不是酉矩阵
        DimensionError: 维数不一致
    """
    u = check_unitary(u, name="U")
    v = check_unitary(v, name="V")
    if u.shape != v.shape:
        raise DimensionError(f"U 与 V 的形状不一致: {u.shape} 与 {v.shape}")
    n = u.shape[0]
    dtype = np.result_type(u, v)
    zero = np.zeros((n, n), dtype=dtype)
    eye = np.eye(n, dtype=dtype)
    return np.block(
        [
            [zero, 2 * u, zero],
            [zero, zero, v],
            [3 * eye, 2 * eye, eye],
        ]
    )


def certify(
    u,
    v,
    flavor: Union[Flavor, str, None] = None,
    tol: Optional[float] = None,
    solver: str = "lanczos",
    seed: Optional[int] = None,
) -> ConstructionCertificate:
    """
    为 (U, V) 计算 𝒳 的证书。FAIL 证书是合法的返回值，不是错误。

    Args:
        u, v: 同维数的酉矩阵
        flavor: mal(𝒳) 的基类型，默认按 𝒳 是否为实矩阵选择
        tol: 求解器容差，默认读取 malnormality.lanczos_tol
        solver: mal 求解器
        seed: 记录在证书中的采样种子
    """
    tol = tol if tol is not None else config_manager.get("malnormality.lanczos_tol", 1e-8)
    x = build_X(u, v)
    n = x.shape[0] // 3
    flavor = Flavor.default_for(x) if flavor is None else Flavor.parse(flavor)

    delta = eh_norm([u, v], flavor=Flavor.COMPLEX_HERMITIAN)
    try:
        x_opnorm = operator_norm(x)
    except ConvergenceError as e:
        logger.warning(f"‖𝒳‖ 幂迭代未完全收敛，使用最后估计: {str(e)}")
        x_opnorm = float(e.best)

    result = mal(x, solver=solver, flavor=flavor, tol=tol, seed=seed)
    resolution = math.sqrt(tol / 2)
    status = PASS if delta < 1.0 and result.value > resolution else FAIL
    certificate = ConstructionCertificate(
        n=n,
        delta=delta,
        x_opnorm=x_opnorm,
        mal_X=result.value,
        mal_scaled=result.value / x_opnorm,
        solver=result.solver,
        flavor=flavor.value,
        resolution=resolution,
        status=status,
        seed=seed,
    )
    log = logger.info if status == PASS else logger.warning
    log(f"构造证书 n = {n}: δ = {delta:.6f}, mal(𝒳) = {result.value:.6g}, {status}")
    return certificate


def certify_sampled(
    n: int,
    seed: int,
    flavor: Union[Flavor, str] = Flavor.COMPLEX_HERMITIAN,
    tol: Optional[float] = None,
    solver: str = "lanczos",
) -> ConstructionCertificate:
    """
    对种子确定的 Haar 酉对（实对称类型用正交对）计算证书。

    Args:
        n: 分块维数
        seed: 基础种子
        flavor: 基类型，同时决定采样实正交还是复酉矩阵
        tol: 求解器容差
        solver: mal 求解器
    """
    flavor = Flavor.parse(flavor)
    real = flavor is Flavor.REAL_SYMMETRIC
    u, v = haar_tuple(n, 2, SeededStream(seed, 0), real=real)
    return certify(u, v, flavor=flavor, tol=tol, solver=solver, seed=seed)
