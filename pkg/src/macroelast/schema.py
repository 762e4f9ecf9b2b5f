"""Pydantic models for macroelast run configuration and reports.

The configuration defines:
- the mesh and the degree of the complex
- which verification checks to run
- the material law and the manufactured case for the solver
- report rows emitted by verification and convergence runs
"""

from __future__ import annotations

from enum import Enum
from pathlib import Path
from typing import Any, Literal

import yaml
from pydantic import BaseModel, ConfigDict, Field, model_validator

MAX_DEGREE = 8


# ---------------------------------------------------------------------------
# Enumerations
# ---------------------------------------------------------------------------


class CheckName(str, Enum):
    """Verification checks selectable with ``verify --checks``."""

    PSI = "psi"
    POTENTIAL = "potential"
    UNISOLVENCE = "unisolvence"
    EXACTNESS = "exactness"
    COMMUTING = "commuting"
    C1 = "c1"


class ManufacturedCase(str, Enum):
    """Manufactured solutions known to the solver harness."""

    LINEAR = "linear"
    POLYNOMIAL = "polynomial"
    TRIG = "trig"
    ZERO = "zero"
    PATCH = "patch"


class CheckStatus(str, Enum):
    PASS = "pass"
    FAIL = "fail"
    SKIPPED = "skipped"


# ---------------------------------------------------------------------------
# Material law
# ---------------------------------------------------------------------------


class MaterialLaw(BaseModel):
    """Isotropic Lamé parameters; ``lambda`` is accepted as an alias."""

    model_config = ConfigDict(populate_by_name=True, frozen=True)

    lame_lambda: float = Field(default=1.0, ge=0, alias="lambda")
    mu: float = Field(default=1.0, gt=0)


# ---------------------------------------------------------------------------
# Run configuration
# ---------------------------------------------------------------------------


class RunConfig(BaseModel):
    """Options shared by the CLI subcommands; every field has a default."""

    mesh: str = "builtin:square"
    k: int = 2
    seed: int = 0
    trials: int = Field(default=20, ge=1)
    checks: list[CheckName] = Field(default_factory=lambda: list(CheckName))
    material: MaterialLaw = Field(default_factory=MaterialLaw)
    levels: int = Field(default=3, ge=1)
    case: ManufacturedCase = ManufacturedCase.TRIG
    boundary: Literal["traction", "displacement"] = "traction"
    quadrature_degree: int | None = None

    @model_validator(mode="after")
    def _check_degrees(self) -> RunConfig:
        """Keep k in the supported range and quadrature exact enough for it."""
        if not 0 <= self.k <= MAX_DEGREE:
            raise ValueError(f"k must lie in 0..{MAX_DEGREE}, got {self.k}")
        if self.quadrature_degree is not None and self.quadrature_degree < 2 * (self.k + 3):
            raise ValueError(
                f"quadrature_degree {self.quadrature_degree} is below 2(k+3) = {2 * (self.k + 3)}"
            )
        return self


def load_config(path: Path) -> RunConfig:
    """Load and validate a YAML run configuration."""
    with open(path, encoding="utf-8") as f:
        raw: Any = yaml.safe_load(f)
    if raw is None:
        raw = {}
    if not isinstance(raw, dict):
        raise ValueError(f"config file must be a YAML mapping, got {type(raw).__name__}")
    return RunConfig.model_validate(raw)


# ---------------------------------------------------------------------------
# Reports
# ---------------------------------------------------------------------------


class CheckReport(BaseModel):
    """Outcome of one verification check."""

    check: CheckName
    mesh: str
    k: int
    status: CheckStatus
    dims: dict[str, int] = Field(default_factory=dict)
    ranks: dict[str, int] = Field(default_factory=dict)
    witness: list[Any] | None = None
    details: dict[str, Any] = Field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.status is not CheckStatus.FAIL


class ConvergenceRow(BaseModel):
    level: int
    h: float
    err_sigma_L2: float
    err_u_L2: float
    order_sigma: float | None = None
    order_u: float | None = None
