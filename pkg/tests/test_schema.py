"""Tests for the schema module."""

from pathlib import Path

import pytest
from pydantic import ValidationError

from macroelast.schema import (
    CheckName,
    CheckReport,
    CheckStatus,
    ConvergenceRow,
    ManufacturedCase,
    MaterialLaw,
    RunConfig,
    load_config,
)


class TestMaterialLaw:
    def test_defaults(self) -> None:
        material = MaterialLaw()
        assert material.lame_lambda == 1.0
        assert material.mu == 1.0

    def test_lambda_alias(self) -> None:
        material = MaterialLaw.model_validate({"lambda": 1e6, "mu": 2})
        assert material.lame_lambda == 1e6
        assert material.model_dump(by_alias=True) == {"lambda": 1e6, "mu": 2.0}

    def test_field_name_accepted(self) -> None:
        assert MaterialLaw(lame_lambda=3).lame_lambda == 3

    def test_mu_positive(self) -> None:
        with pytest.raises(ValidationError):
            MaterialLaw(mu=0)

    def test_lambda_nonnegative(self) -> None:
        with pytest.raises(ValidationError):
            MaterialLaw.model_validate({"lambda": -1})


class TestRunConfig:
    def test_defaults(self) -> None:
        config = RunConfig()
        assert config.k == 2
        assert config.checks == list(CheckName)
        assert config.case is ManufacturedCase.TRIG
        assert config.boundary == "traction"

    def test_degree_range(self) -> None:
        with pytest.raises(ValidationError, match="k must lie"):
            RunConfig(k=9)

    def test_quadrature_too_low(self) -> None:
        with pytest.raises(ValidationError, match="below 2"):
            RunConfig(k=2, quadrature_degree=9)

    def test_quadrature_accepted(self) -> None:
        assert RunConfig(k=2, quadrature_degree=10).quadrature_degree == 10

    def test_unknown_check(self) -> None:
        with pytest.raises(ValidationError):
            RunConfig.model_validate({"checks": ["psi", "magic"]})

    def test_unknown_boundary(self) -> None:
        with pytest.raises(ValidationError):
            RunConfig.model_validate({"boundary": "mixed"})


class TestLoadConfig:
    def test_yaml(self, tmp_path: Path) -> None:
        path = tmp_path / "run.yaml"
        path.write_text("k: 3\nmaterial:\n  lambda: 10\ncase: polynomial\nchecks: [psi, c1]\n")
        config = load_config(path)
        assert config.k == 3
        assert config.material.lame_lambda == 10
        assert config.case is ManufacturedCase.POLYNOMIAL
        assert config.checks == [CheckName.PSI, CheckName.C1]

    def test_empty_file(self, tmp_path: Path) -> None:
        path = tmp_path / "run.yaml"
        path.write_text("")
        assert load_config(path) == RunConfig()

    def test_not_a_mapping(self, tmp_path: Path) -> None:
        path = tmp_path / "run.yaml"
        path.write_text("- 1\n- 2\n")
        with pytest.raises(ValueError, match="YAML mapping"):
            load_config(path)


class TestReports:
    def test_skipped_counts_as_passed(self) -> None:
        report = CheckReport(check=CheckName.EXACTNESS, mesh="m", k=2, status=CheckStatus.SKIPPED)
        assert report.passed

    def test_failed(self) -> None:
        report = CheckReport(check="psi", mesh="m", k=1, status="fail", witness=[{"i": 0}])
        assert not report.passed
        assert report.model_dump(mode="json")["status"] == "fail"

    def test_convergence_row_orders_optional(self) -> None:
        row = ConvergenceRow(level=0, h=0.5, err_sigma_L2=1e-2, err_u_L2=1e-3)
        assert row.order_sigma is None
