"""Randomized verification harness for Ando-Hiai type inequalities."""

from meanslab.harness.checks import REGISTRY, run_check
from meanslab.harness.suite import run_suite

__all__ = ["REGISTRY", "run_check", "run_suite"]
