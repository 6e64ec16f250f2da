"""Tightness probe command for meanslab CLI."""

import argparse
import sys

from meanslab.config import AppConfig
from meanslab.harness.probes import tightness_probe
from meanslab.models import SpectralBounds
from meanslab.services.validators import require, validate_bounds
from meanslab.storage.reports import canonical_json


def handle_probe(args: argparse.Namespace, config: AppConfig) -> int:
    """Handle `meanslab probe --m M_LOW --M M_HIGH [--seeds N] [--alpha A]`."""

    require(validate_bounds(args.m, args.M))
    result = tightness_probe(SpectralBounds(args.m, args.M), args.seeds, args.alpha, config.solver)
    payload = result.to_dict()
    payload["ratio"] = result.ratio
    sys.stdout.write(canonical_json(payload))
    return 0
