"""Configuration, serialisation and comparison of extracted models."""

from .config import ExtractionConfig, load_config
from .diff import DiffReport, diff_fsm
from .dot import emit_dot
from .json_io import emit_json, parse_json

__all__ = ["DiffReport", "ExtractionConfig", "diff_fsm", "emit_dot", "emit_json", "load_config",
           "parse_json"]
