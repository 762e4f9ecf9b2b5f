"""Element-level checks – enrichments, Airy potentials and unisolvence.

Each check runs on every distinct triangle shape of the mesh.
"""

from __future__ import annotations

from macroelast.checks.context import CheckContext, report
from macroelast.elements.c1 import build_v, verify_unisolvence_c1
from macroelast.elements.stress import build_psi, verify_unisolvence_stress
from macroelast.fields import airy, divergence, is_continuous
from macroelast.schema import CheckName, CheckReport


def check_psi(ctx: CheckContext) -> CheckReport:
    """``div ψᵢ = 0`` on every piece and ``ψᵢ n`` is continuous across interior edges."""
    if ctx.k < 1:
        return report(ctx, CheckName.PSI, skipped="the enrichments need k >= 1")
    failures = []
    for s, macro in enumerate(ctx.shapes):
        for i in range(3):
            psi = build_psi(macro, ctx.k, i)
            if not divergence(psi).is_zero():
                failures.append({"shape": s, "i": i, "failure": "divergence"})
            if not is_continuous(psi, "normal_trace"):
                failures.append({"shape": s, "i": i, "failure": "normal trace jump"})
    return report(ctx, CheckName.PSI, failures=failures, details={"shapes": len(ctx.shapes)})


def check_potential(ctx: CheckContext) -> CheckReport:
    """``J(vᵢ) = ψᵢ`` exactly."""
    if ctx.k < 1:
        return report(ctx, CheckName.POTENTIAL, skipped="the enrichments need k >= 1")
    failures = []
    for s, macro in enumerate(ctx.shapes):
        for i in range(3):
            if not airy(build_v(macro, ctx.k, i)).equals(build_psi(macro, ctx.k, i)):
                failures.append({"shape": s, "i": i})
    return report(ctx, CheckName.POTENTIAL, failures=failures, details={"shapes": len(ctx.shapes)})


def check_unisolvence(ctx: CheckContext) -> CheckReport:
    """Nonzero DoF determinants and the block pattern of both elements."""
    failures = []
    determinants: dict[str, list[str]] = {"U": [], "Sigma": []}
    for s, macro in enumerate(ctx.shapes):
        reports = {"U": verify_unisolvence_c1(macro, ctx.k)}
        if ctx.k >= 1:
            reports["Sigma"] = verify_unisolvence_stress(macro, ctx.k)
        for family, result in reports.items():
            determinants[family].append(str(result.determinant))
            if not result.invertible:
                failures.append(
                    {
                        "shape": s,
                        "family": family,
                        "determinant": str(result.determinant),
                        "offending_block": list(result.offending_block) if result.offending_block else None,
                    }
                )
    return report(ctx, CheckName.UNISOLVENCE, failures=failures, details={"determinants": determinants})
