"""Tests for check dispatch and report construction."""

from __future__ import annotations

import pytest

from macroelast.checks import CHECKS, run_check, run_checks
from macroelast.checks.context import report
from macroelast.geometry.mesh import Mesh, load_mesh
from macroelast.schema import CheckName, CheckStatus

from . import context

ANNULUS = """\
8 8
0 0
3 0
3 3
0 3
1 1
2 1
2 2
1 2
0 1 5
0 5 4
1 2 6
1 6 5
2 3 7
2 7 6
3 0 4
3 4 7
"""


def _annulus() -> Mesh:
    return load_mesh(ANNULUS)


class TestContext:
    def test_square_has_one_shape_per_triangle(self) -> None:
        assert len(context("square").shapes) == 2

    def test_translated_copies_share_a_shape(self) -> None:
        ctx = context("square8")
        assert len(ctx.shapes) < len(ctx.mesh.triangles)

    def test_report_skipped(self) -> None:
        result = report(context(), CheckName.PSI, skipped="not applicable")
        assert result.status is CheckStatus.SKIPPED
        assert result.passed
        assert result.details == {"reason": "not applicable"}

    def test_report_failure_has_witness(self) -> None:
        result = report(context(), CheckName.C1, failures=[{"edge": 3}])
        assert result.status is CheckStatus.FAIL
        assert result.witness == [{"edge": 3}]

    def test_report_pass_has_no_witness(self) -> None:
        result = report(context(), CheckName.C1, failures=[], dims={"U": 27})
        assert result.status is CheckStatus.PASS
        assert result.witness is None
        assert result.dims == {"U": 27}


class TestDispatch:
    def test_every_check_registered(self) -> None:
        assert set(CHECKS) == set(CheckName)

    def test_run_by_name(self) -> None:
        result = run_check("psi", context())
        assert result.check is CheckName.PSI
        assert result.mesh == "builtin:square"

    def test_unknown_name(self) -> None:
        with pytest.raises(ValueError):
            run_check("curl", context())

    def test_order_is_kept(self) -> None:
        results = run_checks(["unisolvence", "psi"], context("reference", k=1))
        assert [r.check for r in results] == [CheckName.UNISOLVENCE, CheckName.PSI]


class TestLocalChecks:
    @pytest.mark.parametrize("name", ["psi", "potential", "unisolvence"])
    def test_pass_on_square(self, name: str) -> None:
        assert run_check(name, context()).status is CheckStatus.PASS

    @pytest.mark.parametrize("name", ["psi", "potential"])
    def test_skipped_at_k0(self, name: str) -> None:
        assert run_check(name, context(k=0)).status is CheckStatus.SKIPPED

    def test_unisolvence_at_k0_checks_u_only(self) -> None:
        result = run_check("unisolvence", context(k=0))
        assert result.status is CheckStatus.PASS
        assert result.details["determinants"]["Sigma"] == []
        assert len(result.details["determinants"]["U"]) == 2


class TestGlobalChecks:
    def test_c1(self) -> None:
        result = run_check("c1", context())
        assert result.status is CheckStatus.PASS
        assert result.details["interior_edges"] == 1

    def test_exactness_records_ranks(self) -> None:
        result = run_check("exactness", context())
        assert result.status is CheckStatus.PASS
        assert result.dims == {"U": 27, "Sigma": 36, "V": 12}
        assert result.ranks == {"J": 24, "div": 12}
        assert result.details["identities"]["div onto V (random trials)"]

    def test_exactness_skipped_on_annulus(self) -> None:
        result = run_check("exactness", context(_annulus()))
        assert result.status is CheckStatus.SKIPPED
        assert "simply connected" in result.details["reason"]

    @pytest.mark.parametrize("name", ["exactness", "commuting"])
    def test_skipped_below_k2(self, name: str) -> None:
        assert run_check(name, context("reference", k=1)).status is CheckStatus.SKIPPED

    def test_commuting(self) -> None:
        result = run_check("commuting", context(trials=1))
        assert result.status is CheckStatus.PASS
        assert result.details == {"trials": 1}

    def test_complex_is_shared_between_checks(self) -> None:
        ctx = context()
        run_checks(["exactness", "commuting"], ctx)
        assert "complex" in ctx.cache
