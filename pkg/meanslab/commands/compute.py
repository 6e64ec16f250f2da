"""Compute command handler: evaluate one mean from a JSON job."""

import argparse
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple

from meanslab.config import AppConfig, SolverConfig
from meanslab.errors import ValidationError
from meanslab.harness.checks import run_check
from meanslab.models import CheckInstance, NMeanSpec, PositiveMapSpec, SolveTrace, SpdMatrix, Weights
from meanslab.services import means2, posmaps, spd
from meanslab.services.meansn import (
    karcher_mean,
    log_euclidean,
    nmean,
    nmean_spec,
    power_mean_traced,
    uniform_weights,
    weights_from,
)
from meanslab.storage.jobs import JobModel, MeanModel, load_job, matrix_to_json
from meanslab.storage.reports import canonical_json

EXIT_CHECK_FAILED = 3


def _read_job(source: Optional[str]) -> str:
    if source in (None, "-"):
        return sys.stdin.read()
    try:
        return Path(source).read_text(encoding="utf-8")
    except OSError as exc:
        raise ValidationError(f"Cannot read job file {source}: {exc}") from exc


def mean_spec_for(model: MeanModel, weights: Weights) -> Optional[NMeanSpec]:
    """NMeanSpec for the kinds that have one; Karcher and log-Euclidean have none.

    A power mean with alpha < 0 maps to its direct form, the harmonic base
    deformed by #_{-alpha}. It is used for checks only; evaluate() computes
    power jobs with power_mean_traced.
    """

    if model.kind == "deformed":
        assert model.base is not None and model.sigma is not None
        return nmean_spec(model.base, weights, means2.spec_from_dict(model.sigma.model_dump()))
    if model.kind in ("arithmetic", "harmonic"):
        return nmean_spec(model.kind, weights)
    if model.kind == "power":
        assert model.alpha is not None
        if model.alpha == 1:
            return nmean_spec("arithmetic", weights)
        if model.alpha == -1:
            return nmean_spec("harmonic", weights)
        if model.alpha > 0:
            return nmean_spec("arithmetic", weights, means2.geometric(model.alpha))
        return nmean_spec("harmonic", weights, means2.geometric(-model.alpha))
    return None


def evaluate(job: JobModel) -> Tuple[SpdMatrix, Optional[SolveTrace], Optional[NMeanSpec], Weights, List[SpdMatrix]]:
    """Run the job's mean.

    Raises:
        ValidationError: inconsistent job
        SolverError: the fixed-point or Karcher solve did not converge
    """
    matrices = [spd.spd_from_entries(matrix.entries) for matrix in job.matrices]
    weights = weights_from(job.weights) if job.weights is not None else uniform_weights(len(matrices))
    solver = SolverConfig(**job.solver.model_dump())
    spec = mean_spec_for(job.mean, weights)
    if job.mean.kind == "power":
        assert job.mean.alpha is not None
        result, trace = power_mean_traced(weights, job.mean.alpha, matrices, solver)
    elif spec is not None:
        result, trace = nmean(spec, matrices, solver)
    elif job.mean.kind == "karcher":
        result, trace = karcher_mean(weights, matrices, solver)
    else:
        result, trace = log_euclidean(weights, matrices), None
    return result, trace, spec, weights, matrices


def handle_compute(args: argparse.Namespace, config: AppConfig) -> int:
    """Handle `meanslab compute [JOB|-]`: print result, trace and optional map image or check report."""

    job = load_job(_read_job(args.job))
    result, trace, spec, _, matrices = evaluate(job)

    payload: Dict[str, Any] = {
        "mean": job.mean.kind,
        "result": matrix_to_json(result),
        "trace": trace.to_dict() if trace is not None else None,
    }
    phi: Optional[PositiveMapSpec] = None
    if job.map_spec is not None:
        phi = posmaps.map_from_dict(job.map_spec.model_dump(exclude_none=True), result.dim)
        payload["mapped"] = matrix_to_json(posmaps.apply_map(phi, result))

    exit_code = 0
    if job.check is not None:
        if spec is None:
            raise ValidationError(f"check: needs a deformed, arithmetic, harmonic or power mean, got {job.mean.kind}")
        instance = CheckInstance(
            seed=0,
            bounds=spd.joint_bounds(matrices),
            matrices=tuple(matrices),
            mean=spec,
            phi=phi or posmaps.identity_map(result.dim),
        )
        solver = SolverConfig(**job.solver.model_dump())
        report = run_check(job.check.name, instance, job.check.params, solver, job.check.tolerance)
        payload["check"] = report.to_dict()
        if report.failed:
            exit_code = EXIT_CHECK_FAILED

    sys.stdout.write(canonical_json(payload))
    return exit_code
