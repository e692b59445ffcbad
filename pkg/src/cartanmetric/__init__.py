"""Invariants, fundamental and Cartan tensors of (alpha, beta)-metrics on Cartan spaces."""

from .hfunction import FAMILIES, DomainError, Jet3, admissible, get_family, h_jet_closed, h_jet_oracle, h_value
from .invariants import InvariantSet, invariants_from_jet
from .metric_space import ManifoldSpec, Momentum, PointSample, evaluate_point, load_manifold_spec
from .tensors import TensorBundle, tensor_bundle
from .verify import compare_paper_tables, run_suite

__version__ = "0.1.0"

__all__ = [
    "FAMILIES",
    "DomainError",
    "InvariantSet",
    "Jet3",
    "ManifoldSpec",
    "Momentum",
    "PointSample",
    "TensorBundle",
    "admissible",
    "compare_paper_tables",
    "evaluate_point",
    "get_family",
    "h_jet_closed",
    "h_jet_oracle",
    "h_value",
    "invariants_from_jet",
    "load_manifold_spec",
    "run_suite",
    "tensor_bundle",
]
