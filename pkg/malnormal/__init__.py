"""
恶正规常数 mal(X)、量子扩张子诊断与蒙特卡洛实验。

常用入口在此重新导出；命令行在 malnormal.cli，MCP 工具在 plugins/ 中。
"""

from .basis import Flavor, TracelessHermitianBasis, build_basis, phi, phi_inv, project_traceless_hermitian
from .construction import ConstructionCertificate, build_X, certify, certify_sampled
from .ensembles import EnsembleKind, EnsembleSpec, SeededStream, haar_tuple, haar_unitary, j_map, sample
from .errors import ConvergenceError, DimensionError, InputError, MalnormalError, SingularityError
from .expanders import ExpanderReport, edge_constant, eh_norm, expander_norm, expander_report
from .experiments import CampaignConfig, ExperimentRecord, fit_power, run_campaign, summarize
from .malnormality import MalResult, mal, mal_exact, mal_iterative, mal_localopt

__all__ = [
    "Flavor",
    "TracelessHermitianBasis",
    "build_basis",
    "phi",
    "phi_inv",
    "project_traceless_hermitian",
    "ConstructionCertificate",
    "build_X",
    "certify",
    "certify_sampled",
    "EnsembleKind",
    "EnsembleSpec",
    "SeededStream",
    "haar_tuple",
    "haar_unitary",
    "j_map",
    "sample",
    "ConvergenceError",
    "DimensionError",
    "InputError",
    "MalnormalError",
    "SingularityError",
    "ExpanderReport",
    "edge_constant",
    "eh_norm",
    "expander_norm",
    "expander_report",
    "CampaignConfig",
    "ExperimentRecord",
    "fit_power",
    "run_campaign",
    "summarize",
    "MalResult",
    "mal",
    "mal_exact",
    "mal_iterative",
    "mal_localopt",
]
