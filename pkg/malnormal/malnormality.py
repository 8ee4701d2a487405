#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
恶正规常数 mal(X) = min{‖[X, B]‖₂ : B ∈ H_n^0, ‖B‖₂ = 1}。

在基坐标下 f(b) = ‖[X, φ(b)]‖₂² = ½ bᵀH(X)b，于是 mal(X) = √(λ₁/2)，
λ₁ 为 Hessian H(X) 的最小特征值。提供三种互相独立的求解器：

  - dense：物化 H(X) 后做对称特征值分解；
  - lanczos：在 σI − H 上做无矩阵 Lanczos，σ = 8‖X‖²；
  - local-opt：单位球面上的投影梯度法，在 span{b, g, 上一步} 上做 Rayleigh–Ritz 搜索。
"""

import logging
import math
import time
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Union

import numpy as np

from core.config import config_manager

from .basis import Flavor, TracelessHermitianBasis, build_basis
from .errors import ConvergenceError, DimensionError, InputError
from .lanczos import lanczos_largest
from .linalg import as_square, commutator, hs_norm, operator_norm, symmetric_eig

logger = logging.getLogger("malnormality")

SOLVERS = ("dense", "lanczos", "local-opt")

# auto 模式下稠密求解的维数上限
AUTO_DENSE_MAX_DIM = 600


@dataclass(frozen=True)
class MalResult:
    """一次 mal(X) 计算的结果。"""

    value: float
    minimizer: np.ndarray
    lambda1: float
    solver: str
    residual: float
    iterations: int
    n: int
    flavor: str
    converged: bool = True
    wall_time: float = field(default=0.0, compare=False)

    def witness(self, basis: Optional[TracelessHermitianBasis] = None) -> np.ndarray:
        """极小点对应的无迹自伴矩阵 B = φ(b)，‖B‖₂ = 1。"""
        basis = basis or build_basis(self.n, self.flavor)
        return basis.phi(self.minimizer)

    def to_dict(self, include_minimizer: bool = False) -> Dict[str, Any]:
        """转换为可 JSON 序列化的字典。"""
        data = {
            "value": self.value,
            "lambda1": self.lambda1,
            "solver": self.solver,
            "residual": self.residual,
            "iterations": self.iterations,
            "n": self.n,
            "flavor": self.flavor,
            "converged": self.converged,
        }
        if include_minimizer:
            data["minimizer"] = [float(v) for v in self.minimizer]
        return data


class HessianOperator:
    """
    H(X) 在基坐标下的作用。

    无矩阵作用 Hb = 2·coords([X*, [X, φ(b)]])；稠密矩阵在 build_hessian 时物化。
    构造后不可变。
    """

    def __init__(self, x, basis: TracelessHermitianBasis, dense: Optional[np.ndarray] = None):
        x = as_square(x, "X")
        if x.shape[0] != basis.n:
            raise InputError(f"X 的维数 {x.shape[0]} 与基的维数 {basis.n} 不一致")
        self._x = x
        self._x_h = x.conj().T
        self._basis = basis
        self._dense = dense

    @property
    def x(self) -> np.ndarray:
        return self._x

    @property
    def basis(self) -> TracelessHermitianBasis:
        return self._basis

    @property
    def dim(self) -> int:
        return self._basis.dim

    @property
    def dense(self) -> Optional[np.ndarray]:
        return self._dense

    def apply(self, b) -> np.ndarray:
        """Hb，不物化 H。"""
        m = self._basis.phi(b)
        c = self._x @ m - m @ self._x
        return 2.0 * self._basis.coordinates(self._x_h @ c - c @ self._x_h)

    __call__ = apply


def _resolve_flavor(x: np.ndarray, flavor) -> Flavor:
    return Flavor.default_for(x) if flavor is None else Flavor.parse(flavor)


def _operator(x, flavor) -> HessianOperator:
    x = as_square(x, "X")
    if x.shape[0] < 2:
        raise InputError(f"mal(X) 需要 n ≥ 2，实际 n = {x.shape[0]}")
    return HessianOperator(x, build_basis(x.shape[0], _resolve_flavor(x, flavor)))


def build_hessian(x, basis: TracelessHermitianBasis) -> HessianOperator:
    """
    物化 Hessian：H_ij = 2·Re<[X, E_i], [X, E_j]>。

    Args:
        x: n×n 矩阵
        basis: H_n^0 的基

    Returns:
        带稠密矩阵的 HessianOperator

    Raises:
        InputError: X 与基的维数不一致
    """
    x = as_square(x, "X")
    if x.shape[0] != basis.n:
        raise InputError(f"X 的维数 {x.shape[0]} 与基的维数 {basis.n} 不一致")
    elements = basis.elements
    c = np.matmul(x, elements) - np.matmul(elements, x)
    c = c.reshape(basis.dim, -1)
    h = 2.0 * np.real(c @ c.conj().T)
    h = (h + h.T) / 2
    return HessianOperator(x, basis, dense=h)


def apply_hessian(op: HessianOperator, b) -> np.ndarray:
    """无矩阵作用 Hb，见 HessianOperator.apply。"""
    b = np.asarray(b, dtype=np.float64)
    if b.shape != (op.dim,):
        raise DimensionError(f"坐标向量长度应为 {op.dim}，实际形状: {b.shape}")
    return op.apply(b)


def quadratic_form(x, b, basis: TracelessHermitianBasis) -> float:
    """f(b) = ‖[X, φ(b)]‖₂²。"""
    return hs_norm(commutator(x, basis.phi(b))) ** 2


def _mal_value(lambda1: float) -> float:
    # 舍入可能让 λ₁ 略小于 0
    return math.sqrt(max(lambda1, 0.0) / 2.0)


def mal_exact(x, flavor: Union[Flavor, str, None] = None) -> MalResult:
    """
    稠密求解：构造 H(X)，取最小特征值及其特征向量。

    Args:
        x: n×n 矩阵，n ≥ 2
        flavor: 基类型，默认实矩阵用实对称、复矩阵用复 Hermite

    Returns:
        MalResult，solver 为 "dense"
    """
    start = time.perf_counter()
    op = _operator(x, flavor)
    op = build_hessian(op.x, op.basis)
    eig = symmetric_eig(op.dense, want_vectors=True)
    lambda1 = float(eig.values[0])
    b = eig.vectors[:, 0]
    residual = float(np.linalg.norm(op.dense @ b - lambda1 * b))
    logger.debug(f"稠密求解: n = {op.basis.n}, d = {op.dim}, λ₁ = {lambda1:.12g}")
    return MalResult(
        value=_mal_value(lambda1),
        minimizer=b,
        lambda1=lambda1,
        solver="dense",
        residual=residual,
        iterations=1,
        n=op.basis.n,
        flavor=op.basis.flavor.value,
        wall_time=time.perf_counter() - start,
    )


def _shift(x: np.ndarray) -> float:
    try:
        norm = operator_norm(x, tol=1e-6)
    except ConvergenceError as e:
        # σ 只需大致覆盖 H 的谱
        norm = float(e.best)
    return 8.0 * norm * norm


def mal_iterative(
    x,
    flavor: Union[Flavor, str, None] = None,
    tol: Optional[float] = None,
    max_iter: Optional[int] = None,
    seed: Optional[int] = None,
) -> MalResult:
    """
    无矩阵 Lanczos 求解。

    对 σI − H 求最大特征对（σ = 8‖X‖² ≥ λ_max(H)），λ₁ 取为 Ritz 向量的
    Rayleigh 商。不物化 d(n)×d(n) 的 Hessian。

    Args:
        x: n×n 矩阵
        flavor: 基类型
        tol: Lanczos 残差容差，默认读取 malnormality.lanczos_tol
        max_iter: 迭代上限，默认为 d(n)
        seed: 起始向量种子

    Raises:
        ConvergenceError: 上限内未收敛，best 为未收敛的 MalResult
    """
    tol = tol if tol is not None else config_manager.get("malnormality.lanczos_tol", 1e-8)
    if tol <= 0:
        raise InputError(f"容差必须为正: {tol}")
    max_iter = max_iter if max_iter is not None else config_manager.get("malnormality.lanczos_max_iter")
    start = time.perf_counter()
    op = _operator(x, flavor)
    sigma = _shift(op.x)

    def shifted(b):
        return sigma * b - op.apply(b)

    threshold = max(tol, 1e-13 * sigma)
    try:
        ritz = lanczos_largest(shifted, op.dim, threshold, max_iter=max_iter, seed=seed)
    except ConvergenceError as e:
        best = e.best
        result = _finish_iterative(op, best.vector, best.iterations, False, start)
        logger.warning(f"Lanczos 未收敛: n = {op.basis.n}, 残差 {best.residual:.2e}")
        raise ConvergenceError(str(e), best=result, iterations=e.iterations) from e

    result = _finish_iterative(op, ritz.vector, ritz.iterations, True, start)
    logger.debug(f"Lanczos 求解: n = {op.basis.n}, {ritz.iterations} 步, λ₁ = {result.lambda1:.12g}")
    return result


def _finish_iterative(op: HessianOperator, b: np.ndarray, iterations: int, converged: bool, start: float) -> MalResult:
    hb = op.apply(b)
    lambda1 = float(b @ hb)
    return MalResult(
        value=_mal_value(lambda1),
        minimizer=b,
        lambda1=lambda1,
        solver="lanczos",
        residual=float(np.linalg.norm(hb - lambda1 * b)),
        iterations=iterations,
        n=op.basis.n,
        flavor=op.basis.flavor.value,
        converged=converged,
        wall_time=time.perf_counter() - start,
    )


def _unit(v: np.ndarray) -> np.ndarray:
    return v / np.linalg.norm(v)


def _backtrack(op: HessianOperator, b: np.ndarray, rho: float, g: np.ndarray, eta: float):
    """
    沿 −g 的回溯线搜索，直接在球面上检验真实的 f：
    接受 normalize(b − ηg) 当 f 下降至少 c·η‖g‖²。

    Returns:
        (b, Hb, ρ)，找不到下降步时返回 None
    """
    shrink = config_manager.get("malnormality.armijo_shrink", 0.5)
    slope = config_manager.get("malnormality.armijo_slope", 1e-4)
    gg = float(g @ g)
    while eta > 1e-300:
        trial = _unit(b - eta * g)
        h_trial = op.apply(trial)
        f_trial = float(trial @ h_trial)
        if f_trial <= rho - slope * eta * gg:
            return trial, h_trial, f_trial
        eta *= shrink
    return None


def mal_localopt(
    x,
    flavor: Union[Flavor, str, None] = None,
    seed: Optional[int] = None,
    gtol: Optional[float] = None,
    max_iter: Optional[int] = None,
) -> MalResult:
    """
    单位球面上的投影梯度法，g = Hb − (bᵀHb)b。

    每步在 span{b, g, p} 上做 Rayleigh–Ritz（p 为上一步的位移），取最小 Ritz 向量
    作为新的迭代点，即沿梯度和上一步方向的精确搜索；没有 p 时就是沿 −g 的精确线搜索。
    Ritz 步没有让 f 下降时（舍入），退回沿 −g 的回溯线搜索。
    每步重新计算 Hb 并把 b 归一化，ρ 与 g 总是对应当前的单位向量。
    球面上的局部极小即全局极小，因此收敛值与 mal_exact 一致。

    Args:
        x: n×n 矩阵
        flavor: 基类型
        seed: 随机单位起始向量的种子
        gtol: 梯度范数容差，默认读取 malnormality.localopt_gtol
        max_iter: 迭代上限

    Raises:
        ConvergenceError: 上限内未收敛，best 为当前 MalResult
    """
    gtol = gtol if gtol is not None else config_manager.get("malnormality.localopt_gtol", 1e-9)
    max_iter = max_iter or config_manager.get("malnormality.localopt_max_iter", 200000)
    step0 = config_manager.get("malnormality.armijo_step", 1.0)
    start = time.perf_counter()

    op = _operator(x, flavor)
    rng = np.random.default_rng(seed)
    b = _unit(rng.standard_normal(op.dim))
    hb = op.apply(b)
    p: Optional[np.ndarray] = None

    def result(converged: bool, iterations: int, rho: float, gnorm: float) -> MalResult:
        return MalResult(
            value=_mal_value(rho),
            minimizer=b.copy(),
            lambda1=rho,
            solver="local-opt",
            residual=gnorm,
            iterations=iterations,
            n=op.basis.n,
            flavor=op.basis.flavor.value,
            converged=converged,
            wall_time=time.perf_counter() - start,
        )

    rho, gnorm = float(b @ hb), math.inf
    for iteration in range(max_iter):
        rho = float(b @ hb)
        g = hb - rho * b
        gnorm = float(np.linalg.norm(g))
        if gnorm <= gtol:
            logger.debug(f"局部优化收敛: {iteration} 次, λ₁ = {rho:.12g}, ‖g‖ = {gnorm:.2e}")
            return result(True, iteration, rho, gnorm)

        # 搜索子空间的正交基，第一列就是 b
        columns = [b]
        for v in (g, p):
            if v is None:
                continue
            norm0 = float(np.linalg.norm(v))
            for q in columns:
                v = v - (q @ v) * q
            for q in columns:
                v = v - (q @ v) * q
            norm1 = float(np.linalg.norm(v))
            if norm1 > 1e-8 * norm0:
                columns.append(v / norm1)
        basis = np.column_stack(columns)
        h_basis = np.column_stack([hb] + [op.apply(q) for q in columns[1:]])
        t = basis.T @ h_basis
        ritz = symmetric_eig((t + t.T) / 2, want_vectors=True)
        c = ritz.vectors[:, 0]

        candidate = basis @ c
        scale = float(np.linalg.norm(candidate))
        candidate /= scale
        h_candidate = op.apply(candidate)
        f_candidate = float(candidate @ h_candidate)
        # 精确算术下 Ritz 值不超过 ρ；只拒绝超出舍入量级的上升
        slack = 1e-12 * max(abs(float(ritz.values[-1])), abs(rho), 1.0)
        if f_candidate <= rho + slack:
            p = basis[:, 1:] @ (c[1:] / scale)
            b, hb = candidate, h_candidate
            continue

        # Ritz 步没有下降：回溯并丢掉动量
        p = None
        eta = step0 / max(float(ritz.values[-1]) - rho, gnorm)
        step = _backtrack(op, b, rho, g, eta)
        if step is None:
            logger.warning(f"局部优化停滞: ‖g‖ = {gnorm:.2e}")
            break
        b, hb, _ = step

    rho = float(b @ hb)
    gnorm = float(np.linalg.norm(hb - rho * b))
    best = result(False, max_iter, rho, gnorm)
    raise ConvergenceError(
        f"局部优化未收敛: ‖g‖ = {gnorm:.2e} > {gtol:.1e}", best=best, iterations=best.iterations
    )


def mal(
    x,
    solver: str = "auto",
    flavor: Union[Flavor, str, None] = None,
    tol: Optional[float] = None,
    seed: Optional[int] = None,
) -> MalResult:
    """
    按名称分派求解器。

    Args:
        x: n×n 矩阵
        solver: "dense"、"lanczos"、"local-opt" 或 "auto"（d(n) ≤ 600 用稠密求解）
        flavor: 基类型
        tol: lanczos 的残差容差；local-opt 的梯度容差
        seed: 起始向量种子

    Raises:
        InputError: 未知求解器
    """
    if solver == "auto":
        x = as_square(x, "X")
        dim = build_basis(max(x.shape[0], 2), _resolve_flavor(x, flavor)).dim
        solver = "dense" if dim <= AUTO_DENSE_MAX_DIM else "lanczos"
    if solver == "dense":
        return mal_exact(x, flavor)
    if solver == "lanczos":
        return mal_iterative(x, flavor, tol=tol, seed=seed)
    if solver == "local-opt":
        return mal_localopt(x, flavor, seed=seed, gtol=tol)
    raise InputError(f"未知的求解器: {solver}，可选: {', '.join(SOLVERS)}")


def shift_matrix(n: int) -> np.ndarray:
    """移位矩阵 (S_n)_{ij} = δ_{i,j−1}。"""
    if n < 2:
        raise InputError(f"移位矩阵需要 n ≥ 2: {n}")
    return np.eye(n, k=1)


def shift_upper_bound(n: int) -> float:
    """对角余弦剖面给出的上界 mal(S_n) ≤ 2·sin(π/(2n))。"""
    return 2.0 * math.sin(math.pi / (2 * n))


def shift_scan(n_values: Sequence[int], solver: str = "dense", tol: Optional[float] = None) -> List[Dict[str, float]]:
    """
    计算一组移位矩阵的 mal(S_n)。

    Returns:
        每行 {n, mal, mal_sqrt_n, mal_n, upper_bound}
    """
    rows = []
    for n in n_values:
        value = mal(shift_matrix(int(n)), solver=solver, flavor=Flavor.REAL_SYMMETRIC, tol=tol).value
        rows.append(
            {
                "n": int(n),
                "mal": value,
                "mal_sqrt_n": value * math.sqrt(n),
                "mal_n": value * n,
                "upper_bound": shift_upper_bound(int(n)),
            }
        )
        logger.info(f"mal(S_{n}) = {value:.10g}")
    return rows
