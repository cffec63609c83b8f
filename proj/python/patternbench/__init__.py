"""Patterned matrix benchmark: generation, scoring and reordering."""

from ._core import (
    ConfigError,
    DimensionError,
    Error,
    GenerationError,
    InvariantError,
    IoError,
    KindError,
    ParseError,
    PreconditionError,
    Template,
    algorithms,
    generate_template,
    metric,
    read_rbm,
    reorder,
    score,
    swap_ladder,
    template_from_json,
    variations,
    write_rbm,
)

__all__ = [
    "ConfigError",
    "DimensionError",
    "Error",
    "GenerationError",
    "InvariantError",
    "IoError",
    "KindError",
    "ParseError",
    "PreconditionError",
    "Template",
    "algorithms",
    "generate_template",
    "metric",
    "read_rbm",
    "reorder",
    "score",
    "swap_ladder",
    "template_from_json",
    "variations",
    "write_rbm",
]
