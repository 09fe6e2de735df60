"""Workflow orchestration, reports, and the command-line interface."""

from .config import GOLD_TARGET, RunConfig, SampleSpec, parse_target_policy
from .render import FORMATS, render_report
from .runner import DatasetReport, InstanceReport, run_dataset, run_instance, select_instances

__all__ = [
    "DatasetReport",
    "FORMATS",
    "GOLD_TARGET",
    "InstanceReport",
    "RunConfig",
    "SampleSpec",
    "parse_target_policy",
    "render_report",
    "run_dataset",
    "run_instance",
    "select_instances",
]
