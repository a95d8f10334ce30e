"""Hadamard and harmonic convolutions, coefficient certificates and numeric probes for univalent harmonic maps."""

from .certificates import Certificate, certify
from .harmonic import HarmonicMap
from .numeric import DiskGrid
from .rational import GaussianRational
from .series import PowerSeries
from .theorems import get_descriptor, list_scenarios, run_all, run_scenario

__all__ = [
    "Certificate",
    "DiskGrid",
    "GaussianRational",
    "HarmonicMap",
    "PowerSeries",
    "certify",
    "get_descriptor",
    "list_scenarios",
    "run_all",
    "run_scenario",
]
__version__ = "0.1.0"
