"""Exact torsion-free holonomy analysis for matrix Lie algebras h in gl(m)."""

from .catalog import AnalysisReport, analyze, build_recipe, load_catalog, verify
from .representations import Representation

__all__ = ["AnalysisReport", "Representation", "analyze", "build_recipe", "load_catalog", "verify"]
__version__ = "0.1.0"
