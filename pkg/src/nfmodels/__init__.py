"""Small models of number fields: exact construction, certification and counting bounds."""

__version__ = "0.1.0"

from .nf_core import FieldElement, NumberField, build_field, parse_field  # noqa: E402
from .model_builder import build_model, choose_parameters, verify_model  # noqa: E402
from .bounds import count_bound, exponent_summary  # noqa: E402

__all__ = [
    "FieldElement", "NumberField", "build_field", "parse_field",
    "build_model", "choose_parameters", "verify_model",
    "count_bound", "exponent_summary",
]
