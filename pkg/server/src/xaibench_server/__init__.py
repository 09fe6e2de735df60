"""Reference model server for the xaibench wire protocol."""

from .app import create_app
from .engine import ModelEngine
from .tiny import TINY_LABELS, TINY_VOCAB, build_tiny_classifier

__all__ = [
    "ModelEngine",
    "TINY_LABELS",
    "TINY_VOCAB",
    "build_tiny_classifier",
    "create_app",
]
