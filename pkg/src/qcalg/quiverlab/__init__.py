"""Quiver DSL, path enumeration, truncation compiler and verdict engine."""

from .dsl import ClosureError, DslError, QuiverSpec, parse_spec
from .paths import PathBasis, compile_truncation, enumerate_paths, instantiate
from .registry import builtin_kind, builtin_names, builtin_text

__all__ = [
    "ClosureError", "DslError", "QuiverSpec", "parse_spec",
    "PathBasis", "compile_truncation", "enumerate_paths", "instantiate",
    "builtin_kind", "builtin_names", "builtin_text",
]
