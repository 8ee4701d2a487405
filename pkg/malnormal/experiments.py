#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
蒙特卡洛实验：按系综抽样计算 mal、记录为 JSON-lines、汇总统计、
核密度估计、幂律回归 αn^β + γ，以及 J 系综的特征值云。

原始记录是唯一的数据来源，统计量和拟合都可以从记录文件重新推出。
"""

import configparser
import csv
import json
import logging
import math
import os
import time
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Any, Callable, Dict, Iterable, List, Optional, Sequence, Tuple, Union

import matplotlib
import numpy as np
import yaml
from matplotlib.backends.backend_agg import FigureCanvasAgg
from matplotlib.figure import Figure
from scipy.integrate import trapezoid
from scipy.optimize import OptimizeWarning, curve_fit
from scipy.stats import norm

from core.config import config_manager

from .basis import Flavor
from .ensembles import EnsembleKind, EnsembleSpec, derive_seed, sample
from .errors import ConvergenceError, InputError, MalnormalError, SingularityError
from .linalg import general_eigvals
from .malnormality import SOLVERS, mal

logger = logging.getLogger("experiments")


# ---------------------------------------------------------------------------
# 配置与记录
# ---------------------------------------------------------------------------


@dataclass
class CampaignConfig:
    """
    一次实验的配置。

    Attributes:
        kind: 系综
        n_values: 升序的维数列表
        samples_per_n: 每个维数的样本数
        output: JSON-lines 记录文件路径
        base_seed: 基础种子
        solver: mal 求解器（auto、dense、lanczos、local-opt）
        tolerance: 求解器容差，None 时使用配置默认值
        flavor: 基类型，None 时按矩阵是否为实矩阵选择
        threads: 工作线程数，None 时读取 cli.threads 或 CPU 数
        record_wall_time: 是否记录耗时（唯一不可复现的字段）
    """

    kind: EnsembleKind
    n_values: List[int]
    samples_per_n: int
    output: str
    base_seed: int = 0
    solver: str = "auto"
    tolerance: Optional[float] = None
    flavor: Optional[str] = None
    threads: Optional[int] = None
    record_wall_time: bool = True

    def __post_init__(self):
        self.kind = EnsembleKind(self.kind)
        self.n_values = [int(n) for n in self.n_values]
        if not self.n_values:
            raise InputError("n_values 不能为空")
        if any(n < 2 for n in self.n_values):
            raise InputError(f"每个 n 都必须不小于 2: {self.n_values}")
        if self.n_values != sorted(set(self.n_values)):
            raise InputError(f"n_values 必须严格升序: {self.n_values}")
        if int(self.samples_per_n) < 1:
            raise InputError(f"samples_per_n 必须不小于 1: {self.samples_per_n}")
        self.samples_per_n = int(self.samples_per_n)
        if self.solver != "auto" and self.solver not in SOLVERS:
            raise InputError(f"未知的求解器: {self.solver}")
        if self.tolerance is not None and self.tolerance <= 0:
            raise InputError(f"容差必须为正: {self.tolerance}")
        if self.flavor is not None:
            self.flavor = Flavor.parse(self.flavor).value
        if self.base_seed < 0:
            raise InputError(f"种子必须非负: {self.base_seed}")


@dataclass(frozen=True)
class ExperimentRecord:
    """一个样本的结果。未收敛样本 converged 为 False，mal 为最后的估计或 None。"""

    ensemble_kind: str
    n: int
    sample_index: int
    seed: int
    base_seed: int
    mal: Optional[float]
    solver: str
    converged: bool
    wall_time: Optional[float] = None

    @property
    def key(self) -> Tuple[str, int, int, int]:
        return (self.ensemble_kind, self.n, self.sample_index, self.base_seed)

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True)


@dataclass(frozen=True)
class SummaryStats:
    """单个 n 的汇总统计，方差为无偏估计。"""

    n: int
    count: int
    mean: float
    median: float
    variance: float
    failed: int = 0

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


@dataclass(frozen=True)
class PowerFit:
    """幂律模型 αn^β + γ 的拟合结果，ci95 为各参数的 95% 置信区间。"""

    alpha: float
    beta: float
    gamma: float
    ci95: Dict[str, Tuple[float, float]]
    rss: float
    converged: bool
    points: int

    def predict(self, n) -> np.ndarray:
        return power_model(np.asarray(n, dtype=np.float64), self.alpha, self.beta, self.gamma)

    def to_dict(self) -> Dict[str, Any]:
        data = asdict(self)
        data["ci95"] = {k: [lo, hi] for k, (lo, hi) in self.ci95.items()}
        return data


@dataclass(frozen=True)
class KdeCurve:
    """高斯核密度估计曲线。"""

    grid: np.ndarray
    density: np.ndarray
    bandwidth: float
    data: np.ndarray = field(repr=False)

    def evaluate(self, x) -> np.ndarray:
        """在任意点上计算密度。"""
        x = np.atleast_1d(np.asarray(x, dtype=np.float64))
        return _kernel_sum(x, self.data, self.bandwidth)

    def integral(self) -> float:
        """网格上的梯形积分。"""
        return float(trapezoid(self.density, self.grid))


def _parse_n_values(value: Union[str, Sequence[int]]) -> List[int]:
    """接受列表，或 "5,6,8" 与 "6..20" 形式的文本。"""
    if isinstance(value, (list, tuple)):
        return [int(v) for v in value]
    result: List[int] = []
    for part in str(value).replace(" ", "").split(","):
        if not part:
            continue
        if ".." in part:
            lo, hi = part.split("..", 1)
            result.extend(range(int(lo), int(hi) + 1))
        else:
            result.append(int(part))
    return result


def _parse_bool(value: Any) -> bool:
    if isinstance(value, bool):
        return value
    text = str(value).strip().lower()
    if text in ("1", "true", "yes", "on"):
        return True
    if text in ("0", "false", "no", "off"):
        return False
    raise InputError(f"无法解析布尔值: {value}")


def _parse_optional(value: Any, cast: Callable[[Any], Any]) -> Any:
    if value is None or (isinstance(value, str) and value.strip().lower() in ("", "none", "null")):
        return None
    return cast(value)


def _read_key_value(content: str) -> Dict[str, Any]:
    parser = configparser.ConfigParser()
    parser.read_string("[campaign]\n" + content)
    return dict(parser["campaign"])


# 按扩展名选择解析器，其余扩展名按 key = value 文本处理
CAMPAIGN_LOADERS = {
    ".json": lambda content: json.loads(content),
    ".yaml": lambda content: yaml.safe_load(content),
    ".yml": lambda content: yaml.safe_load(content),
}


def campaign_config_from_dict(data: Dict[str, Any]) -> CampaignConfig:
    """
    由字典构造 CampaignConfig。键名与字段名一致，另接受 ensemble 作为 kind 的别名。

    Raises:
        InputError: 缺少必填项或取值无效
    """
    data = {str(k).strip().lower().replace("-", "_"): v for k, v in data.items()}
    if "ensemble" in data and "kind" not in data:
        data["kind"] = data.pop("ensemble")
    missing = [k for k in ("kind", "n_values", "samples_per_n", "output") if k not in data]
    if missing:
        raise InputError(f"实验配置缺少: {', '.join(missing)}")
    known = set(CampaignConfig.__dataclass_fields__)
    unknown = sorted(set(data) - known - {"ensemble"})
    if unknown:
        logger.warning(f"忽略未知的实验配置项: {', '.join(unknown)}")
    try:
        return CampaignConfig(
            kind=str(data["kind"]).strip(),
            n_values=_parse_n_values(data["n_values"]),
            samples_per_n=int(data["samples_per_n"]),
            output=str(data["output"]).strip(),
            base_seed=int(data.get("base_seed", 0)),
            solver=str(data.get("solver", "auto")).strip(),
            tolerance=_parse_optional(data.get("tolerance"), float),
            flavor=_parse_optional(data.get("flavor"), str),
            threads=_parse_optional(data.get("threads"), int),
            record_wall_time=_parse_bool(data.get("record_wall_time", True)),
        )
    except ValueError as e:
        if isinstance(e, InputError):
            raise
        raise InputError(f"实验配置取值无效: {str(e)}") from e


def load_campaign_config(path: str) -> CampaignConfig:
    """
    读取实验配置文件（key = value 文本、JSON 或 YAML）。

    Raises:
        OSError: 文件无法读取
        InputError: 内容无效
    """
    with open(path, "r", encoding="utf-8") as f:
        content = f.read()
    ext = os.path.splitext(path)[1].lower()
    loader = CAMPAIGN_LOADERS.get(ext, _read_key_value)
    try:
        data = loader(content)
    except (json.JSONDecodeError, yaml.YAMLError, configparser.Error) as e:
        raise InputError(f"无法解析实验配置 {path}: {str(e)}") from e
    if not isinstance(data, dict):
        raise InputError(f"实验配置必须是键值映射: {path}")
    return campaign_config_from_dict(data)


def read_records(path: str) -> List[ExperimentRecord]:
    """
    读取 JSON-lines 记录文件，跳过空行和损坏的行。

    Returns:
        文件中的记录；文件不存在时为空列表
    """
    if not os.path.exists(path):
        return []
    records = []
    with open(path, "r", encoding="utf-8") as f:
        for lineno, line in enumerate(f, 1):
            line = line.strip()
            if not line:
                continue
            try:
                records.append(ExperimentRecord(**json.loads(line)))
            except (json.JSONDecodeError, TypeError) as e:
                logger.warning(f"跳过损坏的记录 {path}:{lineno}: {str(e)}")
    return records


# ---------------------------------------------------------------------------
# 实验运行
# ---------------------------------------------------------------------------


def run_sample(config: CampaignConfig, n: int, index: int) -> ExperimentRecord:
    """
    计算一个样本。求解失败记录为 converged=False，不抛出异常。
    """
    seed = derive_seed(config.base_seed, n)
    start = time.perf_counter()
    value: Optional[float] = None
    solver = config.solver
    converged = False
    try:
        x = sample(EnsembleSpec(config.kind, n, seed), index)
        result = mal(x, solver=config.solver, flavor=config.flavor, tol=config.tolerance, seed=derive_seed(seed, index))
        value, solver, converged = result.value, result.solver, result.converged
    except ConvergenceError as e:
        best = e.best
        if best is not None and hasattr(best, "value"):
            value, solver = best.value, best.solver
        logger.warning(f"样本未收敛 ({config.kind.value}, n = {n}, #{index}): {str(e)}")
    except MalnormalError as e:
        logger.warning(f"样本失败 ({config.kind.value}, n = {n}, #{index}): {str(e)}")
    wall_time = time.perf_counter() - start if config.record_wall_time else None
    return ExperimentRecord(
        ensemble_kind=config.kind.value,
        n=n,
        sample_index=index,
        seed=seed,
        base_seed=config.base_seed,
        mal=value,
        solver=solver,
        converged=converged,
        wall_time=wall_time,
    )


def _resolve_threads(threads: Optional[int]) -> int:
    threads = threads or config_manager.get("cli.threads") or os.cpu_count() or 1
    if int(threads) < 1:
        raise InputError(f"线程数必须不小于 1: {threads}")
    return int(threads)


def run_campaign(config: CampaignConfig, threads: Optional[int] = None) -> List[ExperimentRecord]:
    """
    运行实验，把新记录按 (n, 样本序号) 顺序追加到输出文件。

    已存在于输出文件中的键会被跳过，因此中断后重新运行即可续算。
    样本在线程池中并行计算，由单一写者按序写出，文件内容与线程数无关。

    Args:
        config: 实验配置
        threads: 线程数，覆盖 config.threads

    Returns:
        本次新计算的记录

    Raises:
        OSError: 输出文件无法写入
    """
    existing = {r.key for r in read_records(config.output)}
    tasks = [
        (n, index)
        for n in config.n_values
        for index in range(config.samples_per_n)
        if (config.kind.value, n, index, config.base_seed) not in existing
    ]
    total = len(config.n_values) * config.samples_per_n
    logger.info(f"实验 {config.kind.value}: 共 {total} 个样本，已有 {total - len(tasks)}，待计算 {len(tasks)}")
    if not tasks:
        return []

    directory = os.path.dirname(config.output)
    if directory:
        os.makedirs(directory, exist_ok=True)
    needs_newline = False
    if os.path.exists(config.output) and os.path.getsize(config.output) > 0:
        with open(config.output, "rb") as f:
            f.seek(-1, os.SEEK_END)
            needs_newline = f.read(1) != b"\n"

    workers = _resolve_threads(threads or config.threads)
    produced = []
    with open(config.output, "a", encoding="utf-8", newline="\n") as out:
        if needs_newline:
            out.write("\n")
        with ThreadPoolExecutor(max_workers=workers) as pool:
            for record in pool.map(lambda task: run_sample(config, *task), tasks):
                out.write(record.to_json() + "\n")
                out.flush()
                produced.append(record)

    failed = sum(1 for r in produced if not r.converged)
    if failed:
        logger.warning(f"{failed} 个样本未收敛，已记录但不参与统计")
    return produced


# ---------------------------------------------------------------------------
# 统计
# ---------------------------------------------------------------------------


def summarize(records: Iterable[ExperimentRecord], n: int) -> SummaryStats:
    """
    维数 n 上已收敛记录的均值、中位数和无偏方差。

    Raises:
        InputError: 已收敛记录少于 2 个
    """
    at_n = [r for r in records if r.n == n]
    values = np.array([r.mal for r in at_n if r.converged and r.mal is not None], dtype=np.float64)
    if values.size < 2:
        raise InputError(f"n = {n} 的已收敛记录不足 2 个（{values.size} 个）")
    return SummaryStats(
        n=int(n),
        count=int(values.size),
        mean=float(np.mean(values)),
        median=float(np.median(values)),
        variance=float(np.var(values, ddof=1)),
        failed=len(at_n) - int(values.size),
    )


def summarize_all(records: Iterable[ExperimentRecord]) -> List[SummaryStats]:
    """按 n 升序汇总；数据不足的 n 被跳过。"""
    records = list(records)
    stats = []
    for n in sorted({r.n for r in records}):
        try:
            stats.append(summarize(records, n))
        except InputError as e:
            logger.warning(f"跳过 n = {n}: {str(e)}")
    return stats


def _kernel_sum(x: np.ndarray, data: np.ndarray, h: float) -> np.ndarray:
    return norm.pdf((x[:, None] - data[None, :]) / h).sum(axis=1) / (data.size * h)


def kde(values: Sequence[float], bandwidth: Optional[float] = None, grid_points: Optional[int] = None) -> KdeCurve:
    """
    高斯核密度估计，网格覆盖 [min − 5h, max + 5h]。

    Args:
        values: 至少 2 个数据点
        bandwidth: 带宽 h，默认 Silverman 规则 1.06·σ̂·m^(−1/5)
        grid_points: 网格点数，默认读取 experiments.kde_grid_points

    Raises:
        InputError: 数据不足，或数据全部相同且未指定带宽
    """
    data = np.asarray(values, dtype=np.float64).ravel()
    if data.size < 2:
        raise InputError(f"核密度估计至少需要 2 个数据点: {data.size}")
    points = grid_points or config_manager.get("experiments.kde_grid_points", 512)
    if bandwidth is None:
        sigma = float(np.std(data, ddof=1))
        if sigma == 0.0:
            raise InputError("数据全部相同，无法选择默认带宽，请显式指定 bandwidth")
        bandwidth = 1.06 * sigma * data.size ** (-1.0 / 5.0)
    if bandwidth <= 0:
        raise InputError(f"带宽必须为正: {bandwidth}")
    grid = np.linspace(data.min() - 5 * bandwidth, data.max() + 5 * bandwidth, int(points))
    return KdeCurve(grid=grid, density=_kernel_sum(grid, data, bandwidth), bandwidth=float(bandwidth), data=data)


# ---------------------------------------------------------------------------
# 幂律回归
# ---------------------------------------------------------------------------


def power_model(n, alpha: float, beta: float, gamma: float):
    """αn^β + γ。"""
    return alpha * np.power(n, beta) + gamma


def _initial_guess(xs: np.ndarray, ys: np.ndarray) -> Tuple[float, float, float]:
    # γ₀ 放在数据范围之外：递减数据在下方，递增数据在上方
    order = np.argsort(xs)
    x, y = xs[order], ys[order]
    span = float(np.ptp(y)) or max(abs(float(y.mean())), 1.0)
    decreasing = y[-1] <= y[0]
    gamma0 = float(y.min()) - 0.1 * span if decreasing else float(y.max()) + 0.1 * span
    beta0, _ = np.polyfit(np.log(x), np.log(np.abs(y - gamma0)), 1)
    design = np.column_stack([np.power(x, beta0), np.ones_like(x)])
    (alpha0, gamma0), *_ = np.linalg.lstsq(design, y, rcond=None)
    return float(alpha0), float(beta0), float(gamma0)


def _rss(xs: np.ndarray, ys: np.ndarray, params: Sequence[float]) -> float:
    return float(np.sum((ys - power_model(xs, *params)) ** 2))


def fit_power(
    xs: Sequence[float],
    ys: Sequence[float],
    p0: Optional[Sequence[float]] = None,
    max_evaluations: Optional[int] = None,
) -> PowerFit:
    """
    非线性最小二乘拟合 αn^β + γ（Levenberg–Marquardt）。

    置信区间由线性化协方差 rss/(m−3)·(JᵀJ)⁻¹ 与正态分位数
    （experiments.ci_quantile，默认 1.96）给出。

    Args:
        xs: 正的、互不相同的 n
        ys: 观测值
        p0: 初值 (α, β, γ)，默认由数据构造
        max_evaluations: 函数求值上限

    Returns:
        PowerFit；未收敛时 converged 为 False，参数为求值过的残差平方和最小的点

    Raises:
        InputError: 数据点少于 4 个、长度不一致或 xs 非正/重复
    """
    x = np.asarray(xs, dtype=np.float64)
    y = np.asarray(ys, dtype=np.float64)
    if x.shape != y.shape or x.ndim != 1:
        raise InputError(f"xs 与 ys 必须是等长的一维序列: {x.shape} 与 {y.shape}")
    if x.size < 4:
        raise InputError(f"幂律回归至少需要 4 个点: {x.size}")
    if np.any(x <= 0) or np.unique(x).size != x.size:
        raise InputError("xs 必须为正且互不相同")

    quantile = config_manager.get("experiments.ci_quantile", 1.96)
    max_evaluations = max_evaluations or config_manager.get("experiments.fit_max_evaluations", 5000)
    start = tuple(float(v) for v in p0) if p0 is not None else _initial_guess(x, y)

    # 记录求值过的最好参数，未收敛时返回它而不是初值
    start_rss = _rss(x, y, start)
    best = {"rss": start_rss if math.isfinite(start_rss) else math.inf, "params": start}

    def tracked_model(n, alpha, beta, gamma):
        values = power_model(n, alpha, beta, gamma)
        rss = float(np.sum((y - values) ** 2))
        if np.isfinite(rss) and rss < best["rss"]:
            best["rss"] = rss
            best["params"] = (float(alpha), float(beta), float(gamma))
        return values

    try:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", OptimizeWarning)
            warnings.simplefilter("ignore", RuntimeWarning)
            params, cov = curve_fit(tracked_model, x, y, p0=start, method="lm", maxfev=int(max_evaluations))
    except RuntimeError as e:
        logger.warning(f"幂律回归未收敛: {str(e)}，返回求值过的最好参数 rss = {best['rss']:.3e}")
        alpha, beta, gamma = best["params"]
        return PowerFit(
            alpha=alpha,
            beta=beta,
            gamma=gamma,
            ci95={name: (-math.inf, math.inf) for name in ("alpha", "beta", "gamma")},
            rss=best["rss"],
            converged=False,
            points=int(x.size),
        )

    with np.errstate(invalid="ignore"):
        errors = np.sqrt(np.diag(cov))
    errors = np.where(np.isfinite(errors), errors, math.inf)
    ci = {
        name: (float(value - quantile * err), float(value + quantile * err))
        for name, value, err in zip(("alpha", "beta", "gamma"), params, errors)
    }
    fit = PowerFit(
        alpha=float(params[0]),
        beta=float(params[1]),
        gamma=float(params[2]),
        ci95=ci,
        rss=_rss(x, y, params),
        converged=True,
        points=int(x.size),
    )
    logger.info(f"幂律回归: α = {fit.alpha:.6g}, β = {fit.beta:.6g}, γ = {fit.gamma:.6g}, rss = {fit.rss:.3e}")
    return fit


def fit_campaign(records: Iterable[ExperimentRecord], target: str = "mean", min_n: Optional[int] = None) -> PowerFit:
    """
    对各 n 的均值或方差做幂律回归。

    Args:
        records: 实验记录
        target: "mean" 或 "variance"
        min_n: 参与回归的最小 n，默认读取 experiments.regression_min_n

    Raises:
        InputError: target 无效或可用的 n 不足 4 个
    """
    if target not in ("mean", "variance"):
        raise InputError(f"回归目标必须是 mean 或 variance: {target}")
    min_n = min_n if min_n is not None else config_manager.get("experiments.regression_min_n", 6)
    stats = [s for s in summarize_all(records) if s.n >= min_n]
    xs = [s.n for s in stats]
    ys = [getattr(s, target) for s in stats]
    return fit_power(xs, ys)


# ---------------------------------------------------------------------------
# 特征值云
# ---------------------------------------------------------------------------


def eig_cloud(kind: Union[EnsembleKind, str], n: int, samples: int, base_seed: int = 0) -> np.ndarray:
    """
    拼接 samples 个样本的全部特征值。求解失败的样本记录警告后跳过。

    Raises:
        InputError: samples < 1
    """
    if samples < 1:
        raise InputError(f"样本数必须不小于 1: {samples}")
    spec = EnsembleSpec(EnsembleKind(kind), n, derive_seed(base_seed, n))
    clouds = []
    for index in range(samples):
        try:
            clouds.append(general_eigvals(sample(spec, index)).values)
        except (ConvergenceError, SingularityError) as e:
            logger.warning(f"跳过特征值云样本 #{index}: {str(e)}")
    if not clouds:
        return np.empty(0, dtype=np.complex128)
    return np.concatenate(clouds)


def write_cloud_csv(values: Sequence[complex], path: str) -> None:
    """写出两列 CSV，表头 re,im，浮点数用最短往返表示。"""
    directory = os.path.dirname(path)
    if directory:
        os.makedirs(directory, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(["re", "im"])
        for z in np.asarray(values, dtype=np.complex128):
            writer.writerow([repr(float(z.real)), repr(float(z.imag))])


SVG_SIZE = 600
SVG_VIEW = 1.1
SVG_GID = "eigenvalues"


def render_scatter(points: Sequence[complex], path: str, radius: float = 0.004) -> None:
    """
    用 matplotlib 把复平面上的点画成独立的 SVG 散点图，视口固定为 [−1.1, 1.1]²。

    坐标轴关闭，只画两条过原点的参考线；每个点是 id 为 "eigenvalues" 的组里的一个
    <use> 标记。哈希盐和日期元数据固定，相同输入得到逐字节相同的文件。

    Args:
        points: 复数点
        path: 输出 SVG 路径
        radius: 标记半径（数据坐标）

    Raises:
        InputError: 没有点
    """
    pts = np.asarray(points, dtype=np.complex128).ravel()
    if pts.size == 0:
        raise InputError("散点图至少需要一个点")
    v = SVG_VIEW
    inches = SVG_SIZE / 72
    # 数据坐标的直径换算成磅
    marker_size = 2 * radius / (2 * v) * SVG_SIZE

    fig = Figure(figsize=(inches, inches))
    FigureCanvasAgg(fig)
    fig.patch.set_facecolor("white")
    ax = fig.add_axes((0.0, 0.0, 1.0, 1.0))
    ax.set_xlim(-v, v)
    ax.set_ylim(-v, v)
    ax.set_aspect("equal")
    ax.set_axis_off()
    ax.axhline(0.0, color="#999999", linewidth=0.5)
    ax.axvline(0.0, color="#999999", linewidth=0.5)
    ax.plot(
        pts.real,
        pts.imag,
        linestyle="none",
        marker="o",
        markersize=marker_size,
        markeredgewidth=0.0,
        color="#1f4e79",
        alpha=0.5,
        gid=SVG_GID,
    )

    directory = os.path.dirname(path)
    if directory:
        os.makedirs(directory, exist_ok=True)
    with matplotlib.rc_context({"svg.hashsalt": "malnormal", "svg.fonttype": "none"}):
        fig.savefig(path, format="svg", metadata={"Date": None})
    logger.debug(f"散点图已写出: {path}, {pts.size} 个点")
