"""Named inequality checks, embedding constants and report serialization."""
from .checks import CHECK_IDS, Case, Context, UnknownCheck, check, run_suite
from .constants import EmbeddingConstants, IotaUndefined, embedding_constants, iota_constant, jay_constant
from .report import CheckReport, reports_to_csv, reports_to_json

__all__ = [
    "CHECK_IDS", "Case", "Context", "UnknownCheck", "check", "run_suite",
    "EmbeddingConstants", "IotaUndefined", "embedding_constants", "iota_constant", "jay_constant",
    "CheckReport", "reports_to_csv", "reports_to_json",
]
