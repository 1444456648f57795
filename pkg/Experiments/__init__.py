# Experiments/__init__.py
"""
Monte Carlo sweeps, CSV/SVG reporting and property suites.
"""

from .harness import ExperimentRecord, SweepConfig, run_cell, run_sweep

__all__ = ["ExperimentRecord", "SweepConfig", "run_cell", "run_sweep"]
