#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
随机矩阵系综的带种子采样：Haar 正交/酉矩阵、Ginibre 矩阵以及由酉矩阵对
构造的 J 映射。

随机数来自计数器型生成器 Philox，由 (base_seed, index, draw, attempt)
经 SeedSequence 派生：相同的键得到逐位相同的样本，不同的键互相独立，
与线程调度无关。
"""

import logging
import math
from dataclasses import dataclass, replace
from enum import Enum
from typing import List, Sequence, Union

import numpy as np

from core.config import config_manager

from .basis import Flavor
from .errors import DimensionError, InputError, SingularityError
from .linalg import as_square, check_unitary, polar_unitary

logger = logging.getLogger("ensembles")

MatrixFlavor = Union[Flavor, str]


class EnsembleKind(str, Enum):
    """支持的系综。"""

    HAAR_ORTHOGONAL = "haar-orthogonal"
    HAAR_UNITARY = "haar-unitary"
    GINIBRE_REAL = "ginibre-real"
    GINIBRE_COMPLEX = "ginibre-complex"
    J_ORTHOGONAL = "j-orthogonal"
    J_UNITARY = "j-unitary"

    @property
    def is_real(self) -> bool:
        return self in (EnsembleKind.HAAR_ORTHOGONAL, EnsembleKind.GINIBRE_REAL, EnsembleKind.J_ORTHOGONAL)


def derive_seed(base_seed: int, *key: int) -> int:
    """由基础种子和整数键派生一个 64 位种子。"""
    state = np.random.SeedSequence(int(base_seed), spawn_key=tuple(int(k) for k in key)).generate_state(
        1, np.uint64
    )
    return int(state[0])


@dataclass(frozen=True)
class SeededStream:
    """
    一条可复现的随机流。

    Attributes:
        base_seed: 非负基础种子
        index: 样本序号
        draw: 同一样本内的第几次抽取（例如酉矩阵对中的第二个）
        attempt: 重试计数
    """

    base_seed: int
    index: int = 0
    draw: int = 0
    attempt: int = 0

    def __post_init__(self):
        if self.base_seed < 0 or self.index < 0 or self.draw < 0 or self.attempt < 0:
            raise InputError(f"随机流的键必须非负: {self}")

    def generator(self) -> np.random.Generator:
        """按键构造独立的 Philox 生成器。"""
        seq = np.random.SeedSequence(int(self.base_seed), spawn_key=(self.index, self.draw, self.attempt))
        return np.random.Generator(np.random.Philox(seq))

    def with_draw(self, draw: int) -> "SeededStream":
        return replace(self, draw=draw, attempt=0)

    def retry(self) -> "SeededStream":
        return replace(self, attempt=self.attempt + 1)


@dataclass(frozen=True)
class EnsembleSpec:
    """系综、维数和基础种子。"""

    kind: EnsembleKind
    n: int
    seed: int = 0

    def __post_init__(self):
        object.__setattr__(self, "kind", EnsembleKind(self.kind))
        if int(self.n) != self.n or self.n < 2:
            raise InputError(f"系综维数 n 必须是不小于 2 的整数: {self.n}")
        if self.seed < 0:
            raise InputError(f"种子必须非负: {self.seed}")


def _wants_real(flavor: MatrixFlavor) -> bool:
    return Flavor.parse(flavor) is Flavor.REAL_SYMMETRIC


def gaussian_matrix(n: int, flavor: MatrixFlavor, stream: SeededStream) -> np.ndarray:
    """
    独立标准正态元素的 n×n 矩阵。

    复类型的实部和虚部相互独立，方差各为 ½（元素模方的期望为 1）。

    Args:
        n: 维数，n ≥ 1
        flavor: "real" 或 "complex"
        stream: 随机流
    """
    if n < 1:
        raise InputError(f"维数必须为正: {n}")
    rng = stream.generator()
    if _wants_real(flavor):
        return rng.standard_normal((n, n))
    re = rng.standard_normal((n, n))
    im = rng.standard_normal((n, n))
    return (re + 1j * im) * math.sqrt(0.5)


def ginibre(n: int, flavor: MatrixFlavor, stream: SeededStream) -> np.ndarray:
    """Ginibre 矩阵 X_n = g/√n，每个元素方差 1/n。"""
    return gaussian_matrix(n, flavor, stream) / math.sqrt(n)


def haar_unitary(n: int, stream: SeededStream, real: bool = False) -> np.ndarray:
    """
    Haar 分布的酉矩阵（real=True 时为正交矩阵）：高斯矩阵极分解的酉因子。

    高斯矩阵数值奇异时在 attempt 计数上重试，最多 ensembles.max_retries 次。

    Raises:
        SingularityError: 重试用尽
    """
    if n < 2:
        raise InputError(f"Haar 采样需要 n ≥ 2: {n}")
    flavor = "real" if real else "complex"
    retries = config_manager.get("ensembles.max_retries", 3)
    current = stream
    for _ in range(retries + 1):
        try:
            return polar_unitary(gaussian_matrix(n, flavor, current))
        except SingularityError as e:
            logger.warning(f"高斯矩阵奇异，重试: {current}, {str(e)}")
            current = current.retry()
    raise SingularityError(f"Haar 采样重试 {retries} 次仍失败: {stream}")


def haar_orthogonal(n: int, stream: SeededStream) -> np.ndarray:
    """Haar 分布的实正交矩阵。"""
    return haar_unitary(n, stream, real=True)


def haar_unitary_qr(n: int, stream: SeededStream, real: bool = False) -> np.ndarray:
    """
    QR 分解加相位修正的 Haar 采样，作为极分解采样的交叉检验。

    Z = QR 后用 R 对角元的相位 d/|d| 修正 Q 的各列。
    """
    if n < 2:
        raise InputError(f"Haar 采样需要 n ≥ 2: {n}")
    z = gaussian_matrix(n, "real" if real else "complex", stream)
    q, r = np.linalg.qr(z)
    d = np.diag(r)
    return q * (d / np.abs(d))


def haar_tuple(n: int, k: int, stream: SeededStream, real: bool = False) -> List[np.ndarray]:
    """k 个独立的 Haar 矩阵，第 i 个使用 draw = i 的子流。"""
    if k < 1:
        raise InputError(f"元组大小必须为正: {k}")
    return [haar_unitary(n, stream.with_draw(stream.draw + i), real) for i in range(k)]


def j_map(u, v) -> np.ndarray:
    """
    J = (U + U* + V − V*)/4 = ½(Re U + i·Im V)，一个压缩。

    Raises:
        InputError: 输入不是酉矩阵
        DimensionError: 维数不一致
    """
    u = check_unitary(u, name="U")
    v = check_unitary(v, name="V")
    if u.shape != v.shape:
        raise DimensionError(f"U 与 V 的形状不一致: {u.shape} 与 {v.shape}")
    return (u + u.conj().T + v - v.conj().T) / 4


def j_omega(u_tuple: Sequence[np.ndarray], omega: Sequence[complex]) -> np.ndarray:
    """
    J_ω = (1/√(2k))·Σ ω_i U_i，|ω_i| = 1。

    Raises:
        InputError: 长度不一致或 ω 不是单位模
        DimensionError: 矩阵维数不一致
    """
    mats = [as_square(u, "U") for u in u_tuple]
    k = len(mats)
    if k == 0 or len(omega) != k:
        raise InputError(f"ω 的个数 {len(omega)} 必须等于元组大小 {k} 且为正")
    for w in omega:
        if abs(abs(w) - 1.0) > 1e-12:
            raise InputError(f"ω 必须是单位模复数: {w}")
    if any(m.shape != mats[0].shape for m in mats):
        raise DimensionError("元组中的矩阵维数不一致")
    total = sum(w * m for w, m in zip(omega, mats))
    return total / math.sqrt(2 * k)


def sample(spec: EnsembleSpec, index: int) -> np.ndarray:
    """
    按系综规格抽取第 index 个样本。

    J 系综抽取 (U, V) = haar_tuple(n, 2) 后返回 j_map(U, V)。
    """
    stream = SeededStream(spec.seed, index)
    kind = spec.kind
    if kind in (EnsembleKind.HAAR_ORTHOGONAL, EnsembleKind.HAAR_UNITARY):
        return haar_unitary(spec.n, stream, real=kind.is_real)
    if kind in (EnsembleKind.GINIBRE_REAL, EnsembleKind.GINIBRE_COMPLEX):
        return ginibre(spec.n, "real" if kind.is_real else "complex", stream)
    u, v = haar_tuple(spec.n, 2, stream, real=kind.is_real)
    return j_map(u, v)
