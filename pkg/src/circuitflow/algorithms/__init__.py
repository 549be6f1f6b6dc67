"""Combinatorial flow algorithms instrumented to emit their circuit walks."""

from .common import InfeasibleInstanceError
from .gapa import GapaResult, run_gapa
from .hungarian import HungarianResult, run_hungarian
from .preflow import PreflowResult, run_preflow_push
from .sspa import SspaResult, run_sspa

__all__ = [
    "InfeasibleInstanceError", "GapaResult", "HungarianResult", "PreflowResult", "SspaResult",
    "run_gapa", "run_hungarian", "run_preflow_push", "run_sspa",
]
