#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
命令行入口。

退出码：0 成功，1 计算失败（MalnormalError 或 I/O 错误），2 用法错误。
结果以 JSON（键排序）写到标准输出，日志写到标准错误；
所有随机性都来自 --seed。
"""

import argparse
import json
import logging
import os
import sys
from typing import Any, List, Optional

import numpy as np

from core.config import config_manager
from core.log import setup_logging

from .basis import Flavor
from .construction import certify_sampled
from .ensembles import EnsembleKind, EnsembleSpec, sample
from .errors import InputError, MalnormalError
from .expanders import expander_report
from .experiments import (
    eig_cloud,
    fit_campaign,
    load_campaign_config,
    read_records,
    render_scatter,
    run_campaign,
    summarize_all,
    write_cloud_csv,
)
from .malnormality import SOLVERS, mal
from .matrix_io import load_matrices, load_matrix, save_matrix, write_matrix
from .selftest import run_selftest

logger = logging.getLogger("cli")

FLAVOR_CHOICES = [f.value for f in Flavor] + ["real", "complex"]
KIND_CHOICES = [k.value for k in EnsembleKind]


def _emit(data: Any) -> None:
    print(json.dumps(data, sort_keys=True))


def _default_seed() -> int:
    return int(config_manager.get("cli.seed", 0))


def _default_tolerance() -> float:
    return float(config_manager.get("cli.tolerance", 1e-8))


def _cmd_mal(args: argparse.Namespace) -> int:
    x = load_matrix(args.matrix)
    result = mal(x, solver=args.solver, flavor=args.flavor, tol=args.tol, seed=args.seed)
    _emit(result.to_dict(include_minimizer=args.minimizer))
    return 0


def _cmd_sample(args: argparse.Namespace) -> int:
    m = sample(EnsembleSpec(args.kind, args.n, args.seed), args.index)
    if args.output:
        save_matrix(m, args.output)
        logger.info(f"样本已写出: {args.output}")
    else:
        sys.stdout.write(write_matrix(m))
    return 0


def _cmd_expander(args: argparse.Namespace) -> int:
    mats = load_matrices(args.matrices)
    report = expander_report(mats, flavor=args.flavor or Flavor.COMPLEX_HERMITIAN, tol=args.tol)
    _emit(report.to_dict())
    return 0


def _cmd_construct(args: argparse.Namespace) -> int:
    certificate = certify_sampled(
        args.n,
        args.seed,
        flavor=args.flavor or Flavor.COMPLEX_HERMITIAN,
        tol=args.tol,
        solver=args.solver,
    )
    _emit(certificate.to_dict())
    return 0


def _cmd_campaign(args: argparse.Namespace) -> int:
    config = load_campaign_config(args.campaign_config)
    produced = run_campaign(config, threads=args.threads)
    records = [
        r
        for r in read_records(config.output)
        if r.ensemble_kind == config.kind.value and r.base_seed == config.base_seed
    ]
    _emit(
        {
            "output": config.output,
            "new_records": len(produced),
            "summaries": [s.to_dict() for s in summarize_all(records)],
        }
    )
    return 0


def _cmd_fit(args: argparse.Namespace) -> int:
    records = read_records(args.input)
    if not records:
        raise InputError(f"记录文件为空或不存在: {args.input}")
    fit = fit_campaign(records, target=args.target, min_n=args.min_n)
    data = fit.to_dict()
    data["target"] = args.target
    _emit(data)
    return 0


def _cmd_cloud(args: argparse.Namespace) -> int:
    values = eig_cloud(args.kind, args.n, args.samples, args.seed)
    if args.svg:
        render_scatter(values, args.svg)
    if args.output:
        write_cloud_csv(values, args.output)
        moduli = np.abs(values)
        _emit(
            {
                "count": int(values.size),
                "max_modulus": float(moduli.max()) if values.size else 0.0,
                "real_fraction": float(np.mean(np.abs(values.imag) <= 1e-8)) if values.size else 0.0,
                "output": args.output,
            }
        )
    else:
        sys.stdout.write("re,im\n")
        for z in values:
            sys.stdout.write(f"{float(z.real)!r},{float(z.imag)!r}\n")
    return 0


def _cmd_selftest(args: argparse.Namespace) -> int:
    results = run_selftest(args.seed)
    _emit([r.to_dict() for r in results])
    return 0 if all(r.passed for r in results) else 1


def _positive_float(text: str) -> float:
    value = float(text)
    if not value > 0:
        raise argparse.ArgumentTypeError(f"必须为正数: {text}")
    return value


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"必须不小于 1: {text}")
    return value


def _seed(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"种子必须非负: {text}")
    return value


def build_parser() -> argparse.ArgumentParser:
    """
    构造参数解析器。

    Returns:
        带全部子命令的 ArgumentParser
    """
    parser = argparse.ArgumentParser(prog="malnormal", description="恶正规常数、量子扩张子与蒙特卡洛实验")
    parser.add_argument("--config", type=str, help="替代的 JSON 配置文件")
    parser.add_argument("--debug", action="store_true", help="启用调试日志")
    parser.add_argument("--threads", type=_positive_int, help="实验的工作线程数（默认 CPU 数）")
    subparsers = parser.add_subparsers(dest="command", metavar="command")
    subparsers.required = True

    p = subparsers.add_parser("mal", help="计算矩阵文件的 mal(X)")
    p.add_argument("matrix", help="矩阵文本文件")
    p.add_argument("--solver", choices=list(SOLVERS) + ["auto"], default="auto", help="求解器（默认 auto）")
    p.add_argument("--flavor", choices=FLAVOR_CHOICES, help="基类型（默认按矩阵是否为实矩阵）")
    p.add_argument("--tol", type=_positive_float, help="求解器容差（默认 cli.tolerance）")
    p.add_argument("--seed", type=_seed, help="起始向量种子")
    p.add_argument("--minimizer", action="store_true", help="输出极小点坐标")
    p.set_defaults(handler=_cmd_mal)

    p = subparsers.add_parser("sample", help="抽取一个系综样本")
    p.add_argument("--kind", choices=KIND_CHOICES, required=True, help="系综")
    p.add_argument("--n", type=int, required=True, help="维数")
    p.add_argument("--seed", type=_seed, help="基础种子")
    p.add_argument("--index", type=_seed, default=0, help="样本序号")
    p.add_argument("--output", help="输出文件（默认标准输出）")
    p.set_defaults(handler=_cmd_sample)

    p = subparsers.add_parser("expander", help="酉元组的扩张子报告")
    p.add_argument("matrices", nargs="+", help="每个文件一个酉矩阵")
    p.add_argument("--flavor", choices=FLAVOR_CHOICES, help="基类型（默认复 Hermite）")
    p.add_argument("--tol", type=_positive_float, help="Lanczos 容差（默认 cli.tolerance）")
    p.set_defaults(handler=_cmd_expander)

    p = subparsers.add_parser("construct", help="采样酉对并验证 3n×3n 构造")
    p.add_argument("--n", type=int, required=True, help="分块维数")
    p.add_argument("--seed", type=_seed, help="基础种子")
    p.add_argument("--flavor", choices=FLAVOR_CHOICES, help="基类型（默认复 Hermite）")
    p.add_argument("--tol", type=_positive_float, help="求解器容差（默认 cli.tolerance）")
    p.add_argument("--solver", choices=list(SOLVERS) + ["auto"], default="lanczos", help="mal 求解器")
    p.set_defaults(handler=_cmd_construct)

    p = subparsers.add_parser("campaign", help="运行（或续算）蒙特卡洛实验")
    p.add_argument("--config", dest="campaign_config", required=True, help="实验配置文件")
    p.set_defaults(handler=_cmd_campaign)

    p = subparsers.add_parser("fit", help="对记录文件做幂律回归")
    p.add_argument("--in", dest="input", required=True, help="JSON-lines 记录文件")
    p.add_argument("--target", choices=["mean", "variance"], default="mean", help="回归目标")
    p.add_argument("--min-n", type=int, help="参与回归的最小 n（默认 6）")
    p.set_defaults(handler=_cmd_fit)

    p = subparsers.add_parser("cloud", help="J 系综的特征值云")
    p.add_argument("--kind", choices=KIND_CHOICES, default="j-orthogonal", help="系综")
    p.add_argument("--n", type=int, required=True, help="维数")
    p.add_argument("--samples", type=_positive_int, required=True, help="样本数")
    p.add_argument("--seed", type=_seed, help="基础种子")
    p.add_argument("--output", help="CSV 输出文件（默认标准输出）")
    p.add_argument("--svg", help="SVG 散点图输出文件")
    p.set_defaults(handler=_cmd_cloud)

    p = subparsers.add_parser("selftest", help="运行恒等式与求解器一致性自检")
    p.add_argument("--seed", type=_seed, help="随机实例种子")
    p.set_defaults(handler=_cmd_selftest)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """
    CLI 主函数。

    Args:
        argv: 参数列表，默认为 sys.argv[1:]

    Returns:
        退出码
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code) if isinstance(e.code, int) else 2

    if args.config:
        if not os.path.isfile(args.config):
            parser.print_usage(sys.stderr)
            print(f"错误: 配置文件不存在: {args.config}", file=sys.stderr)
            return 2
        config_manager.reload(args.config)
    if getattr(args, "seed", 0) is None:
        args.seed = _default_seed()
    if getattr(args, "tol", 0) is None:
        args.tol = _default_tolerance()
    if args.debug:
        setup_logging("DEBUG", str(config_manager.get("logging.format", "text")))
    if args.threads is not None:
        config_manager.set("cli.threads", args.threads)

    try:
        return args.handler(args)
    except (MalnormalError, OSError) as e:
        logger.error(f"{args.command} 失败: {str(e)}")
        print(f"错误: {str(e)}", file=sys.stderr)
        return 1
