"""Pairwise test suite generation with a gravitational search algorithm."""

from .estimator import PairwiseGSA
from .gsa import GsaParams
from .strategy import StrategyReport, generate_suite
from .sut import ConfigError, SutConfig, TestCase, TestSuite, exhaustive_size, format_config, parse_config
from .tuples import InteractionTuple, TupleList, generate_tuples
from .verify import CoverageReport, lower_bound, verify_coverage

__version__ = "0.1.0"

__all__ = [
    "PairwiseGSA",
    "GsaParams",
    "StrategyReport",
    "generate_suite",
    "ConfigError",
    "SutConfig",
    "TestCase",
    "TestSuite",
    "exhaustive_size",
    "format_config",
    "parse_config",
    "InteractionTuple",
    "TupleList",
    "generate_tuples",
    "CoverageReport",
    "lower_bound",
    "verify_coverage",
]
