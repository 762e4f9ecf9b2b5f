"""Global checks – C¹ and H(div) conformity, exactness and the commuting diagram."""

from __future__ import annotations

from macroelast.checks.context import CheckContext, report
from macroelast.elements import local_element
from macroelast.fields import is_c1
from macroelast.schema import CheckName, CheckReport
from macroelast.spaces import Family, assemble_space
from macroelast.spaces.checks import (
    ComplexMatrices,
    ExactnessPreconditionError,
    assemble_complex,
    global_c1_check,
    global_normal_trace_check,
    verify_commuting,
    verify_exactness,
    verify_surjectivity,
)


def _complex(ctx: CheckContext) -> ComplexMatrices:
    if "complex" not in ctx.cache:
        ctx.cache["complex"] = assemble_complex(ctx.mesh, ctx.k)
    return ctx.cache["complex"]


def check_c1(ctx: CheckContext) -> CheckReport:
    """Local shape functions are C¹ and global basis functions glue across mesh edges."""
    failures: list[dict] = []
    for s, macro in enumerate(ctx.shapes):
        element = local_element("U", macro, ctx.k)
        failures += [{"shape": s, "function": b} for b, v in enumerate(element.basis) if not is_c1(v)]
    u_verdict = global_c1_check(assemble_space(ctx.mesh, Family.U, ctx.k))
    failures += [{"space": "U", "edge": e, "dof": g} for e, g in u_verdict.offending]
    details = {"interior_edges": u_verdict.edges_checked, "U_functions": u_verdict.functions_checked}
    if ctx.k >= 1:
        sigma_verdict = global_normal_trace_check(assemble_space(ctx.mesh, Family.SIGMA, ctx.k))
        failures += [{"space": "Sigma", "edge": e, "dof": g} for e, g in sigma_verdict.offending]
        details["Sigma_functions"] = sigma_verdict.functions_checked
    return report(ctx, CheckName.C1, failures=failures, details=details)


def check_exactness(ctx: CheckContext) -> CheckReport:
    """Exact ranks of ``J`` and ``div`` and random surjectivity trials."""
    if ctx.k < 2:
        return report(ctx, CheckName.EXACTNESS, skipped="exactness is verified for k >= 2")
    try:
        result = verify_exactness(ctx.mesh, ctx.k)
    except ExactnessPreconditionError as exc:
        return report(ctx, CheckName.EXACTNESS, skipped=str(exc))
    identities = dict(result.identities)
    identities["div onto V (random trials)"] = verify_surjectivity(_complex(ctx).div, ctx.rng, ctx.trials)
    failures = [name for name, ok in identities.items() if not ok]
    return report(
        ctx, CheckName.EXACTNESS, failures=failures, dims=result.dims, ranks=result.ranks, details={"identities": identities}
    )


def check_commuting(ctx: CheckContext) -> CheckReport:
    """``div I = Q div`` and ``I J = J I`` on random global polynomials."""
    if ctx.k < 2:
        return report(ctx, CheckName.COMMUTING, skipped="the commuting diagram is verified for k >= 2")
    result = verify_commuting(ctx.mesh, ctx.k, ctx.rng, ctx.trials, complex_=_complex(ctx))
    failures = [
        {"identity": name, "trial": trial, "dof": g} for name, bad in result.mismatches.items() for trial, g in bad
    ]
    return report(ctx, CheckName.COMMUTING, failures=failures, details={"trials": ctx.trials})
