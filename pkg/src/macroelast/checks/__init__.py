"""Checks module – verification reports for the ``verify`` command.

Each check lives in a submodule:
- ``psi``, ``potential``, ``unisolvence`` → :mod:`macroelast.checks.local`
- ``c1``, ``exactness``, ``commuting``   → :mod:`macroelast.checks.complex`

Every check returns a :class:`~macroelast.schema.CheckReport`; a check that
does not apply to the mesh or degree is reported as ``skipped``.
"""

from __future__ import annotations

import logging
from collections.abc import Callable, Iterable

from macroelast.checks.complex import check_c1, check_commuting, check_exactness
from macroelast.checks.context import CheckContext
from macroelast.checks.local import check_potential, check_psi, check_unisolvence
from macroelast.schema import CheckName, CheckReport

logger = logging.getLogger(__name__)

CHECKS: dict[CheckName, Callable[[CheckContext], CheckReport]] = {
    CheckName.PSI: check_psi,
    CheckName.POTENTIAL: check_potential,
    CheckName.UNISOLVENCE: check_unisolvence,
    CheckName.C1: check_c1,
    CheckName.EXACTNESS: check_exactness,
    CheckName.COMMUTING: check_commuting,
}


def run_check(name: CheckName | str, ctx: CheckContext) -> CheckReport:
    """Dispatch to the check called *name*."""
    check = CheckName(name)
    result = CHECKS[check](ctx)
    logger.info("check %s on %s (k=%d): %s", check.value, ctx.mesh_name, ctx.k, result.status.value)
    return result


def run_checks(names: Iterable[CheckName | str], ctx: CheckContext) -> list[CheckReport]:
    return [run_check(name, ctx) for name in names]


__all__ = ["CHECKS", "CheckContext", "run_check", "run_checks"]
