"""JSON job files and the matrix JSON format, validated with pydantic."""

from __future__ import annotations

import json
from typing import Any, Dict, List, Literal, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator
from pydantic import ValidationError as SchemaError

from meanslab.errors import ValidationError
from meanslab.models import SpdMatrix
from meanslab.services import spd

MeanKind = Literal["deformed", "arithmetic", "harmonic", "power", "karcher", "log_euclidean"]


class MatrixModel(BaseModel):
    """{"dim": n, "entries": [[...], ...]} with entries row-major."""

    model_config = ConfigDict(extra="forbid")

    dim: Optional[int] = Field(default=None, ge=1)
    entries: List[List[float]]

    @model_validator(mode="after")
    def _square(self) -> "MatrixModel":
        size = len(self.entries)
        if size == 0 or any(len(row) != size for row in self.entries):
            raise ValueError("entries must form a non-empty square matrix")
        if self.dim is not None and self.dim != size:
            raise ValueError(f"dim is {self.dim} but entries are {size}x{size}")
        return self


class MeanTwoModel(BaseModel):
    model_config = ConfigDict(extra="forbid")

    kind: Literal["geometric", "arithmetic", "harmonic", "left_trivial"]
    alpha: float = Field(default=0.5, ge=0.0, le=1.0)


class MeanModel(BaseModel):
    """Which mean to compute.

    ``kind`` may be omitted: a ``sigma`` makes it "deformed", otherwise the
    ``base`` names it.
    """

    model_config = ConfigDict(extra="forbid")

    kind: Optional[MeanKind] = None
    base: Optional[Literal["arithmetic", "harmonic"]] = None
    sigma: Optional[MeanTwoModel] = None
    alpha: Optional[float] = Field(default=None, ge=-1.0, le=1.0)

    @model_validator(mode="after")
    def _resolve_kind(self) -> "MeanModel":
        if self.kind is None:
            if self.sigma is not None:
                self.kind = "deformed"
            elif self.base is not None:
                self.kind = self.base
            else:
                raise ValueError("one of kind, base or sigma is required")
        if self.kind == "deformed" and (self.base is None or self.sigma is None):
            raise ValueError("a deformed mean needs both base and sigma")
        if self.kind == "power" and (self.alpha is None or self.alpha == 0):
            raise ValueError("a power mean needs a non-zero alpha in [-1, 1]")
        return self


class MapModel(BaseModel):
    model_config = ConfigDict(extra="forbid")

    kind: Literal["identity", "compression", "pinching", "normalized_trace"]
    dim: Optional[int] = Field(default=None, ge=1)
    V: Optional[List[List[float]]] = None
    blocks: Optional[List[List[int]]] = None


class SolverModel(BaseModel):
    model_config = ConfigDict(extra="forbid")

    tol: float = Field(default=1e-12, gt=0.0)
    max_iter: int = Field(default=500, ge=1)
    damping: float = Field(default=1.0, gt=0.0, le=1.0)
    karcher_step: Literal["adaptive", "fixed"] = "adaptive"


class CheckModel(BaseModel):
    model_config = ConfigDict(extra="forbid")

    name: str
    params: Dict[str, Any] = Field(default_factory=dict)
    tolerance: float = Field(default=1e-9, gt=0.0)


class JobModel(BaseModel):
    """A compute job: mean, weights, matrices, solver settings, optional map and check."""

    model_config = ConfigDict(extra="forbid", populate_by_name=True)

    mean: MeanModel
    weights: Optional[List[float]] = None
    matrices: List[MatrixModel] = Field(min_length=1)
    solver: SolverModel = Field(default_factory=SolverModel)
    map_spec: Optional[MapModel] = Field(default=None, alias="map")
    check: Optional[CheckModel] = None

    @field_validator("matrices", mode="before")
    @classmethod
    def _wrap_bare(cls, value: Any) -> Any:
        if isinstance(value, list):
            return [{"entries": item} if isinstance(item, list) else item for item in value]
        return value

    @model_validator(mode="after")
    def _consistent(self) -> "JobModel":
        if self.weights is not None and len(self.weights) != len(self.matrices):
            raise ValueError(f"{len(self.weights)} weights for {len(self.matrices)} matrices")
        sizes = {len(matrix.entries) for matrix in self.matrices}
        if len(sizes) > 1:
            raise ValueError(f"matrices have different dimensions {sorted(sizes)}")
        return self


def _describe(exc: SchemaError) -> str:
    first = exc.errors()[0]
    location = ".".join(str(part) for part in first["loc"]) or "job"
    return f"{location}: {first['msg']}"


def load_job(text: str) -> JobModel:
    """Parse and validate a job document.

    Raises:
        ValidationError: malformed JSON or a schema violation, naming the field
    """
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"Malformed JSON: {exc}") from exc
    try:
        return JobModel.model_validate(raw)
    except SchemaError as exc:
        raise ValidationError(_describe(exc)) from exc


def matrix_from_json(data: Dict[str, Any] | List[List[float]]) -> SpdMatrix:
    """Build an SpdMatrix from the matrix JSON form; rejects asymmetric or non-PD input."""

    payload = {"entries": data} if isinstance(data, list) else data
    try:
        model = MatrixModel.model_validate(payload)
    except SchemaError as exc:
        raise ValidationError(f"matrix {_describe(exc)}") from exc
    return spd.spd_from_entries(model.entries)


def matrix_to_json(A: spd.MatrixLike) -> Dict[str, Any]:
    """Matrix JSON at full double round-trip precision."""

    array = np.asarray(spd.as_array(A), dtype=float)
    return {"dim": int(array.shape[0]), "entries": array.tolist()}
