#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
酉矩阵元组 U = (U_1, ..., U_k) 的超算子与量子（边）扩张子诊断。

    E_U(X)  = (1/k) Σ U_i* X U_i
    E_U†(X) = (1/k) Σ U_i X U_i*
    E^h     = (E_U + E_U†)/2

谱量都在 H_n^0 的基坐标下用无矩阵 Lanczos 计算；n 较小时可用
superoperator_matrix 得到稠密表示做交叉检验。
"""

import itertools
import logging
import math
from dataclasses import asdict, dataclass
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from core.config import config_manager

from .basis import Flavor, TracelessHermitianBasis, build_basis
from .ensembles import j_map, j_omega
from .errors import DimensionError, InputError
from .lanczos import lanczos_largest
from .linalg import as_square, check_unitary, commutator, hs_norm, traceless_part
from .malnormality import mal

logger = logging.getLogger("expanders")

SUPEROPERATORS = ("E", "E_dagger", "E_h")


@dataclass(frozen=True)
class ExpanderReport:
    """一个酉元组的全部扩张子诊断。k = 1 时 hastings_threshold 为 None。"""

    k: int
    n: int
    flavor: str
    edge_delta: float
    norm_E: float
    norm_Eh: float
    hastings_threshold: Optional[float]
    lambda_upper: float

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


@dataclass(frozen=True)
class EdgeMalBound:
    """J 的恶正规常数给出的边扩张常数上界 δ ≤ 1 − mal(J)²。"""

    mal_j: float
    delta_bound: float
    edge_delta: float

    @property
    def holds(self) -> bool:
        return self.edge_delta <= self.delta_bound + 1e-9

    def to_dict(self) -> Dict[str, Any]:
        data = asdict(self)
        data["holds"] = self.holds
        return data


class _UnitaryTuple:
    """校验过的酉元组，缓存伴随。"""

    def __init__(self, u_tuple: Sequence, tol: Optional[float] = None):
        if len(u_tuple) == 0:
            raise InputError("酉元组不能为空")
        self.mats = [check_unitary(u, tol, name=f"U_{i + 1}") for i, u in enumerate(u_tuple)]
        shape = self.mats[0].shape
        if any(m.shape != shape for m in self.mats):
            raise DimensionError("酉元组中的矩阵维数不一致")
        self.adjoints = [m.conj().T for m in self.mats]
        self.k = len(self.mats)
        self.n = shape[0]

    def check_operand(self, x, name: str = "X") -> np.ndarray:
        x = as_square(x, name)
        if x.shape[0] != self.n:
            raise DimensionError(f"{name} 的维数 {x.shape[0]} 与元组维数 {self.n} 不一致")
        return x

    def e(self, x: np.ndarray) -> np.ndarray:
        return sum(uh @ x @ u for u, uh in zip(self.mats, self.adjoints)) / self.k

    def e_dagger(self, x: np.ndarray) -> np.ndarray:
        return sum(u @ x @ uh for u, uh in zip(self.mats, self.adjoints)) / self.k

    def e_h(self, x: np.ndarray) -> np.ndarray:
        return (self.e(x) + self.e_dagger(x)) / 2

    def superoperator(self, which: str) -> Callable[[np.ndarray], np.ndarray]:
        if which == "E":
            return self.e
        if which == "E_dagger":
            return self.e_dagger
        if which == "E_h":
            return self.e_h
        raise InputError(f"未知的超算子: {which}，可选: {', '.join(SUPEROPERATORS)}")


def apply_E(u_tuple: Sequence, x) -> np.ndarray:
    """E_U(X) = (1/k) Σ U_i* X U_i。"""
    ut = _UnitaryTuple(u_tuple)
    return ut.e(ut.check_operand(x))


def apply_E_dagger(u_tuple: Sequence, x) -> np.ndarray:
    """E_U†(X) = (1/k) Σ U_i X U_i*。"""
    ut = _UnitaryTuple(u_tuple)
    return ut.e_dagger(ut.check_operand(x))


def apply_E_h(u_tuple: Sequence, x) -> np.ndarray:
    """E^h(X) = (E_U(X) + E_U†(X))/2。"""
    ut = _UnitaryTuple(u_tuple)
    return ut.e_h(ut.check_operand(x))


def _coordinate_map(ut: _UnitaryTuple, basis: TracelessHermitianBasis, which: str):
    op = ut.superoperator(which)

    def apply(b: np.ndarray) -> np.ndarray:
        return basis.coordinates(op(basis.phi(b)))

    return apply


def _lanczos_options(tol: Optional[float], max_iter: Optional[int]) -> Tuple[float, Optional[int]]:
    tol = tol if tol is not None else config_manager.get("expanders.lanczos_tol", 1e-8)
    max_iter = max_iter if max_iter is not None else config_manager.get("expanders.lanczos_max_iter")
    return tol, max_iter


def _largest(apply, dim: int, tol: float, max_iter: Optional[int]) -> float:
    return lanczos_largest(apply, dim, tol, max_iter=max_iter).value


def superoperator_matrix(
    u_tuple: Sequence, which: str = "E_h", flavor: Union[Flavor, str] = Flavor.COMPLEX_HERMITIAN
) -> np.ndarray:
    """
    超算子在 H_n^0 基坐标下的稠密矩阵（第 j 列为 coords(S(E_j))）。

    只适合小 n，用于交叉检验无矩阵结果。
    """
    ut = _UnitaryTuple(u_tuple)
    basis = build_basis(ut.n, flavor)
    apply = _coordinate_map(ut, basis, which)
    return np.column_stack([apply(row) for row in np.eye(basis.dim)])


def edge_constant(
    u_tuple: Sequence,
    flavor: Union[Flavor, str] = Flavor.COMPLEX_HERMITIAN,
    tol: Optional[float] = None,
    max_iter: Optional[int] = None,
) -> float:
    """
    最小的边扩张常数 δ = sup tr(E(Ḃ)Ḃ)/tr(Ḃ²)，即 E^h 在 H_n^0 上的最大特征值。

    返回带符号的原始谱值，可能为负；需要 δ ∈ [0, 1) 的调用方自行截断。

    Args:
        u_tuple: 酉矩阵元组
        flavor: 在复 Hermite 或实对称 B 上取上确界
        tol: Lanczos 残差容差，默认读取 expanders.lanczos_tol
        max_iter: Lanczos 迭代上限

    Raises:
        ConvergenceError: Lanczos 未收敛
    """
    ut = _UnitaryTuple(u_tuple)
    basis = build_basis(ut.n, flavor)
    tol, max_iter = _lanczos_options(tol, max_iter)
    value = _largest(_coordinate_map(ut, basis, "E_h"), basis.dim, tol, max_iter)
    logger.debug(f"边扩张常数: k = {ut.k}, n = {ut.n}, δ = {value:.10g}")
    return value


def eh_norm(
    u_tuple: Sequence,
    flavor: Union[Flavor, str] = Flavor.COMPLEX_HERMITIAN,
    tol: Optional[float] = None,
    max_iter: Optional[int] = None,
) -> float:
    """‖E^h: H_n^0 → H_n^0‖，即 E^h 限制的最大 |特征值|。"""
    ut = _UnitaryTuple(u_tuple)
    basis = build_basis(ut.n, flavor)
    tol, max_iter = _lanczos_options(tol, max_iter)
    apply = _coordinate_map(ut, basis, "E_h")
    top = _largest(apply, basis.dim, tol, max_iter)
    bottom = -_largest(lambda b: -apply(b), basis.dim, tol, max_iter)
    return max(abs(top), abs(bottom))


def expander_norm(
    u_tuple: Sequence,
    flavor: Union[Flavor, str] = Flavor.COMPLEX_HERMITIAN,
    tol: Optional[float] = None,
    max_iter: Optional[int] = None,
) -> float:
    """
    ‖E_U: H_n^0 → H_n^0‖，E_U 限制（实线性映射）的最大奇异值。

    在基坐标下对 E_U 与其伴随 E_U† 的复合求最大特征值后开方。
    """
    ut = _UnitaryTuple(u_tuple)
    basis = build_basis(ut.n, flavor)
    tol, max_iter = _lanczos_options(tol, max_iter)
    forward = _coordinate_map(ut, basis, "E")
    backward = _coordinate_map(ut, basis, "E_dagger")
    value = _largest(lambda b: backward(forward(b)), basis.dim, tol, max_iter)
    return math.sqrt(max(value, 0.0))


def hastings_threshold(k: int) -> float:
    """k 个独立 Haar 酉矩阵的渐近谱界 √(2k−1)/k。"""
    if k < 2:
        raise InputError(f"Hastings 界需要 k ≥ 2: {k}")
    return math.sqrt(2 * k - 1) / k


def lambda_from_delta(delta: float) -> float:
    """δ-边扩张子满足投影形式的条件，λ ≤ (1+δ)/2。"""
    if not -1.0 <= delta <= 1.0:
        raise InputError(f"δ 必须在 [−1, 1] 内: {delta}")
    return (1.0 + delta) / 2.0


def delta_bound_from_lambda(lam: float) -> float:
    """由 1 − λ ≤ √(2(1 − δ)) 得到 δ ≤ 1 − (1 − λ)²/2。"""
    if not 0.0 <= lam <= 1.0:
        raise InputError(f"λ 必须在 [0, 1] 内: {lam}")
    return 1.0 - (1.0 - lam) ** 2 / 2.0


def edge_projection_ratio(u_tuple: Sequence, p) -> float:
    """
    tr(E(P)P)/tr(P)，P 为秩不超过 n/2 的正交投影。

    Raises:
        InputError: P 不是投影，或秩为 0、超过 n/2
    """
    ut = _UnitaryTuple(u_tuple)
    p = ut.check_operand(p, "P")
    if hs_norm(p - p.conj().T) > 1e-8 or hs_norm(p @ p - p) > 1e-8:
        raise InputError("P 不是正交投影 (P = P* = P²)")
    trace = float(np.trace(p).real)
    rank = int(round(trace))
    if rank < 1:
        raise InputError("P 的秩为 0，比值没有定义")
    if rank > ut.n / 2:
        raise InputError(f"P 的秩 {rank} 超过 n/2 = {ut.n / 2}")
    return float(np.trace(ut.e(p) @ p).real) / trace


def commute_identity_residual(u_tuple: Sequence, b) -> float:
    """
    恒等式 (1/k)Σ‖[U_i, B]‖₂² = 2‖Ḃ‖₂² − 2tr(E(Ḃ)Ḃ) 两边之差的绝对值。

    Raises:
        InputError: B 不是 Hermite 矩阵
    """
    ut = _UnitaryTuple(u_tuple)
    b = ut.check_operand(b, "B")
    if hs_norm(b - b.conj().T) > 1e-8 * max(1.0, hs_norm(b)):
        raise InputError("B 必须是 Hermite 矩阵")
    lhs = sum(hs_norm(commutator(u, b)) ** 2 for u in ut.mats) / ut.k
    bd = traceless_part(b)
    rhs = 2.0 * hs_norm(bd) ** 2 - 2.0 * float(np.trace(ut.e(bd) @ bd).real)
    return abs(lhs - rhs)


def torus_average(u_tuple: Sequence, b) -> Tuple[float, float]:
    """
    在 ω ∈ {1, i, −1, −i}^k 的全部 4^k 个点上平均 ‖[J_ω, B]‖₂²。

    Returns:
        (网格平均, (1/2k)Σ‖[U_i, B]‖₂²)，两者应相等
    """
    ut = _UnitaryTuple(u_tuple)
    b = ut.check_operand(b, "B")
    roots = (1.0, 1j, -1.0, -1j)
    total = 0.0
    count = 0
    for omega in itertools.product(roots, repeat=ut.k):
        total += hs_norm(commutator(j_omega(ut.mats, omega), b)) ** 2
        count += 1
    expected = sum(hs_norm(commutator(u, b)) ** 2 for u in ut.mats) / (2 * ut.k)
    return total / count, expected


def edge_delta_from_mal(u, v, flavor: Union[Flavor, str, None] = None, tol: Optional[float] = None) -> EdgeMalBound:
    """
    比较 J = j_map(U, V) 的恶正规常数给出的上界 1 − mal(J)² 与实测的边扩张常数。

    两者使用同一种基类型：实对称时都在实对称 B 上取极值。
    """
    j = j_map(u, v)
    flavor = Flavor.default_for(j) if flavor is None else Flavor.parse(flavor)
    mal_j = mal(j, solver="auto", flavor=flavor, tol=tol).value
    bound = 1.0 - mal_j * mal_j
    edge = edge_constant([u, v], flavor=flavor, tol=tol)
    result = EdgeMalBound(mal_j=mal_j, delta_bound=bound, edge_delta=edge)
    if not result.holds:
        logger.error(f"边扩张不等式不成立: δ = {edge:.12g} > 1 − mal(J)² = {bound:.12g}")
    return result


def expander_report(
    u_tuple: Sequence,
    flavor: Union[Flavor, str] = Flavor.COMPLEX_HERMITIAN,
    tol: Optional[float] = None,
    max_iter: Optional[int] = None,
) -> ExpanderReport:
    """一次计算全部诊断量。"""
    ut = _UnitaryTuple(u_tuple)
    mats: List[np.ndarray] = ut.mats
    flavor = Flavor.parse(flavor)
    delta = edge_constant(mats, flavor, tol, max_iter)
    report = ExpanderReport(
        k=ut.k,
        n=ut.n,
        flavor=flavor.value,
        edge_delta=delta,
        norm_E=expander_norm(mats, flavor, tol, max_iter),
        norm_Eh=eh_norm(mats, flavor, tol, max_iter),
        hastings_threshold=hastings_threshold(ut.k) if ut.k >= 2 else None,
        lambda_upper=lambda_from_delta(min(max(delta, -1.0), 1.0)),
    )
    logger.info(f"扩张子报告: k = {ut.k}, n = {ut.n}, δ = {delta:.6f}, ‖E^h‖ = {report.norm_Eh:.6f}")
    return report
