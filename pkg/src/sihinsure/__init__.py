"""SIH epidemic model with an epidemic-linked health-insurance pricing engine."""

__version__ = "0.1.0"

from .actuarial import PricingReport, price, price_trajectory
from .continuous import Verdict, analyze_continuous, basic_reproduction_number
from .discrete import analyze_discrete
from .errors import (
    DegenerateBase,
    GridMismatch,
    InternalInconsistency,
    InvalidPerturbation,
    NegativeStateProduced,
    NumericalError,
    ParseError,
    SihError,
    ValidationError,
    ZeroBaseline,
)
from .model import EpidemicParams, PolicyParams, Scenario, SihState, Trajectory, default_scenarios
from .sensitivity import sensitivity_index, sensitivity_table
from .simulator import reference_simulate, simulate

__all__ = [
    "DegenerateBase",
    "EpidemicParams",
    "GridMismatch",
    "InternalInconsistency",
    "InvalidPerturbation",
    "NegativeStateProduced",
    "NumericalError",
    "ParseError",
    "PolicyParams",
    "PricingReport",
    "Scenario",
    "SihError",
    "SihState",
    "Trajectory",
    "ValidationError",
    "Verdict",
    "ZeroBaseline",
    "analyze_continuous",
    "analyze_discrete",
    "basic_reproduction_number",
    "default_scenarios",
    "price",
    "price_trajectory",
    "reference_simulate",
    "sensitivity_index",
    "sensitivity_table",
    "simulate",
]
