#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
进程内自检：在小规模随机实例上验证恒等式和求解器之间的一致性。

CLI 的 selftest 子命令运行这里的全部检查，有失败项时退出码非零。
"""

import logging
import math
from dataclasses import asdict, dataclass
from typing import Any, Callable, Dict, List

import numpy as np

from .basis import Flavor, build_basis
from .ensembles import SeededStream, gaussian_matrix, haar_tuple, haar_unitary
from .expanders import (
    apply_E,
    apply_E_dagger,
    apply_E_h,
    commute_identity_residual,
    edge_delta_from_mal,
    torus_average,
)
from .linalg import commutator, hs_norm
from .malnormality import mal_exact, mal_iterative, mal_localopt, shift_matrix
from .matrix_io import read_matrix, write_matrix

logger = logging.getLogger("selftest")

INSTANCES = 10


@dataclass(frozen=True)
class CheckResult:
    """一项检查的结果：value 为最坏残差，通过条件为 value ≤ threshold。"""

    name: str
    value: float
    threshold: float

    @property
    def passed(self) -> bool:
        return bool(self.value <= self.threshold)

    def to_dict(self) -> Dict[str, Any]:
        data = asdict(self)
        data["passed"] = self.passed
        return data


def _hermitian(n: int, stream: SeededStream) -> np.ndarray:
    g = gaussian_matrix(n, "complex", stream)
    return (g + g.conj().T) / 2


def _unitary_invariance(seed: int) -> float:
    worst = 0.0
    for i in range(INSTANCES):
        a = gaussian_matrix(5, "complex", SeededStream(seed, i))
        u, v = haar_tuple(5, 2, SeededStream(seed, i, draw=1))
        worst = max(worst, abs(hs_norm(u @ a @ v) - hs_norm(a)), abs(hs_norm(a.conj().T) - hs_norm(a)))
    return worst


def _split_identity(seed: int) -> float:
    worst = 0.0
    for i in range(INSTANCES):
        x = gaussian_matrix(6, "complex", SeededStream(seed, i))
        b = _hermitian(6, SeededStream(seed, i, draw=1))
        re_x = (x + x.conj().T) / 2
        im_x = (x - x.conj().T) / 2j
        lhs = hs_norm(commutator(x, b)) ** 2
        rhs = hs_norm(commutator(re_x, b)) ** 2 + hs_norm(commutator(im_x, b)) ** 2
        worst = max(worst, abs(lhs - rhs))
    return worst


def _commute_identity(seed: int) -> float:
    worst = 0.0
    for i in range(INSTANCES):
        us = haar_tuple(5, 3, SeededStream(seed, i))
        b = _hermitian(5, SeededStream(seed, i, draw=9))
        worst = max(worst, commute_identity_residual(us, b))
    return worst


def _adjoint_duality(seed: int) -> float:
    worst = 0.0
    for i in range(INSTANCES):
        us = haar_tuple(5, 2, SeededStream(seed, i))
        x = gaussian_matrix(5, "complex", SeededStream(seed, i, draw=5))
        y = gaussian_matrix(5, "complex", SeededStream(seed, i, draw=6))
        lhs = np.trace(apply_E(us, x) @ y)
        rhs = np.trace(apply_E_dagger(us, y) @ x)
        worst = max(worst, abs(lhs - rhs))
    return worst


def _eh_equality(seed: int) -> float:
    worst = 0.0
    for i in range(INSTANCES):
        us = haar_tuple(5, 2, SeededStream(seed, i))
        b = _hermitian(5, SeededStream(seed, i, draw=7))
        values = [np.trace(f(us, b) @ b) for f in (apply_E, apply_E_h, apply_E_dagger)]
        worst = max(worst, abs(values[0] - values[1]), abs(values[0] - values[2]))
    return worst


def _torus_average(seed: int) -> float:
    worst = 0.0
    for i in range(INSTANCES):
        us = haar_tuple(4, 2, SeededStream(seed, i))
        b = _hermitian(4, SeededStream(seed, i, draw=8))
        average, expected = torus_average(us, b)
        worst = max(worst, abs(average - expected))
    return worst


def _basis_gram(seed: int) -> float:
    worst = 0.0
    for flavor in Flavor:
        basis = build_basis(5, flavor)
        flat = basis.elements.reshape(basis.dim, -1)
        gram = np.real(flat.conj() @ flat.T)
        worst = max(worst, float(np.abs(gram - np.eye(basis.dim)).max()))
    return worst


def _shift_two(seed: int) -> float:
    return abs(mal_exact(shift_matrix(2), Flavor.REAL_SYMMETRIC).value - 1.0)


def _solver_agreement(seed: int) -> float:
    worst = 0.0
    for i in range(3):
        x = gaussian_matrix(4, "real", SeededStream(seed, i))
        exact = mal_exact(x).value
        lanczos = mal_iterative(x, tol=1e-10).value
        local = mal_localopt(x, seed=seed + i).value
        worst = max(worst, abs(lanczos - exact) / exact, abs(local - exact) / exact)
    return worst


def _edge_inequality(seed: int) -> float:
    worst = -math.inf
    for i in range(3):
        u, v = haar_tuple(4, 2, SeededStream(seed, i))
        bound = edge_delta_from_mal(u, v)
        worst = max(worst, bound.edge_delta - bound.delta_bound)
    return max(worst, 0.0)


def _matrix_round_trip(seed: int) -> float:
    m = gaussian_matrix(3, "complex", SeededStream(seed, 0))
    u = haar_unitary(3, SeededStream(seed, 1), real=True)
    same = np.array_equal(read_matrix(write_matrix(m)), m) and np.array_equal(read_matrix(write_matrix(u)), u)
    return 0.0 if same else 1.0


CHECKS: List = [
    ("unitary-invariance", _unitary_invariance, 1e-10),
    ("split-identity", _split_identity, 1e-9),
    ("commute-identity", _commute_identity, 1e-9),
    ("adjoint-duality", _adjoint_duality, 1e-10),
    ("eh-equality", _eh_equality, 1e-10),
    ("torus-average", _torus_average, 1e-9),
    ("basis-gram", _basis_gram, 1e-12),
    ("shift-two", _shift_two, 1e-12),
    ("solver-agreement", _solver_agreement, 1e-6),
    ("edge-inequality", _edge_inequality, 1e-9),
    ("matrix-round-trip", _matrix_round_trip, 0.0),
]


def run_selftest(seed: int = 0) -> List[CheckResult]:
    """
    运行全部检查。单项检查抛出异常时记为失败（value 为无穷大）。

    Args:
        seed: 随机实例的基础种子
    """
    results = []
    for name, check, threshold in CHECKS:
        fn: Callable[[int], float] = check
        try:
            value = float(fn(seed))
        except Exception as e:
            logger.error(f"自检 {name} 出错: {str(e)}")
            value = math.inf
        result = CheckResult(name=name, value=value, threshold=threshold)
        if result.passed:
            logger.info(f"自检 {name}: 通过 ({value:.3e})")
        else:
            logger.error(f"自检 {name}: 失败 ({value:.3e} > {threshold:.1e})")
        results.append(result)
    return results
