"""CLI entry-point for macroelast."""

from __future__ import annotations

import argparse
import logging
import sys
from dataclasses import asdict
from pathlib import Path
from typing import Any

import numpy as np
from marshmallow import ValidationError as MarshmallowValidationError
from pydantic import ValidationError

from macroelast.checks import CheckContext, run_checks
from macroelast.geometry.mesh import resolve_mesh
from macroelast.schema import CheckName, ManufacturedCase, RunConfig, load_config
from macroelast.solver import assemble_system, discrete_patch_pair, displacement_error, solve_mixed, stress_error
from macroelast.solver.assembly import displacement_mass, stress_mass
from macroelast.solver.convergence import convergence_study
from macroelast.solver.manufactured import manufactured
from macroelast.spaces import Family, dimensions, entity_counts
from macroelast.storage import get_storage


# ---------------------------------------------------------------------------
# Configuration
# ---------------------------------------------------------------------------


def _parse_checks(value: str) -> list[str]:
    names = [name.strip() for name in value.split(",") if name.strip()]
    known = {c.value for c in CheckName}
    for name in names:
        if name not in known:
            raise argparse.ArgumentTypeError(f"unknown check '{name}' (choose from {', '.join(sorted(known))})")
    return names


def _build_config(args: argparse.Namespace) -> RunConfig:
    """Config file values overridden by the options given on the command line."""
    base = load_config(args.config) if args.config else RunConfig()
    raw = base.model_dump(by_alias=True, mode="json")
    overrides = {
        name: getattr(args, name, None)
        for name in ("mesh", "k", "seed", "trials", "checks", "levels", "case", "boundary")
    }
    raw.update({name: value for name, value in overrides.items() if value is not None})
    material = raw["material"]
    if getattr(args, "lame_lambda", None) is not None:
        material["lambda"] = args.lame_lambda
    if getattr(args, "mu", None) is not None:
        material["mu"] = args.mu
    return RunConfig.model_validate(raw)


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------


def _verify(config: RunConfig) -> tuple[dict[str, Any], bool]:
    mesh = resolve_mesh(config.mesh)
    ctx = CheckContext(mesh, config.mesh, config.k, np.random.default_rng(config.seed), config.trials)
    reports = run_checks(config.checks, ctx)
    passed = all(r.passed for r in reports)
    document = {
        "mesh": config.mesh,
        "k": config.k,
        "seed": config.seed,
        "passed": passed,
        "reports": [r.model_dump(mode="json") for r in reports],
    }
    return document, passed


def _dims(config: RunConfig) -> dict[str, Any]:
    mesh = resolve_mesh(config.mesh)
    dims = dimensions(mesh, config.k)
    return {
        "mesh": config.mesh,
        "k": config.k,
        "dofs_per_entity": {family.value: asdict(entity_counts(family, config.k)) for family in Family},
        "rows": [{"space": name, "dim": value} for name, value in dims.items()],
    }


def _solve(config: RunConfig) -> dict[str, Any]:
    mesh = resolve_mesh(config.mesh)
    system = assemble_system(mesh, config.k, config.material, config.quadrature_degree)
    row: dict[str, Any] = {"k": config.k, "h": mesh.h, "dim_sigma": system.sigma_space.dim, "dim_u": system.v_space.dim}
    if config.case is ManufacturedCase.PATCH:
        if config.boundary != "traction":
            raise ValueError("the patch case uses traction boundary data")
        sigma, u, load = discrete_patch_pair(system, np.random.default_rng(config.seed))
        result = solve_mixed(mesh, config.k, config.material, f=load, sigma_boundary=sigma, system=system)
        row["err_sigma_rel"] = float(np.linalg.norm(result.sigma - sigma) / np.linalg.norm(sigma))
        row["err_u_rel"] = float(np.linalg.norm(result.u - u) / max(np.linalg.norm(u), 1e-300))
    else:
        exact = manufactured(config.case, config.material)
        result = solve_mixed(
            mesh,
            config.k,
            config.material,
            f=exact.body_force,
            boundary=config.boundary,
            sigma_boundary=exact.stress,
            u_boundary=exact.displacement,
            system=system,
        )
        row["err_sigma_L2"] = stress_error(result, exact.stress)
        row["err_u_L2"] = displacement_error(result, exact.displacement, modulo_rigid=config.boundary == "traction")
    row["norm_sigma_L2"] = float(np.sqrt(result.sigma @ stress_mass(system.sigma_space, system.rule) @ result.sigma))
    row["norm_u_L2"] = float(np.sqrt(result.u @ displacement_mass(system.v_space, system.rule) @ result.u))
    row["residual"] = result.residual
    return {"mesh": config.mesh, "case": config.case.value, "boundary": config.boundary, "rows": [row]}


def _convergence(config: RunConfig) -> dict[str, Any]:
    table = convergence_study(
        resolve_mesh(config.mesh),
        config.levels,
        config.k,
        config.material,
        case=config.case,
        boundary=config.boundary,
        quadrature_degree=config.quadrature_degree,
    )
    rows = table.astype(object).where(table.notna(), None).to_dict(orient="records")
    return {"mesh": config.mesh, "case": config.case.value, "rows": rows}


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------


def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--mesh", help="Mesh file or builtin:<name> (default: builtin:square).")
    common.add_argument("--k", type=int, help="Stress degree k of the complex (default: 2).")
    common.add_argument("--seed", type=int, help="Seed for random rational trials (default: 0).")
    common.add_argument("--config", type=Path, help="YAML run configuration; options override it.")
    common.add_argument("-s", "--storage", default="stdout", help="Storage backend (default: stdout).")
    common.add_argument(
        "-b",
        "--backend",
        choices=["csv", "json", "toml", "yaml"],
        help="Explicitly specify the storage backend type (useful for ambiguous file extensions).",
    )
    common.add_argument("-v", "--verbose", action="count", default=0, help="Log progress (-vv for debug).")

    solver = argparse.ArgumentParser(add_help=False)
    solver.add_argument("--lambda", dest="lame_lambda", type=float, help="First Lamé parameter.")
    solver.add_argument("--mu", type=float, help="Shear modulus.")
    solver.add_argument("--case", choices=[c.value for c in ManufacturedCase], help="Manufactured solution.")
    solver.add_argument("--boundary", choices=["traction", "displacement"], help="Boundary data (default: traction).")
    solver.add_argument("--levels", type=int, help="Refinement levels for convergence (default: 3).")

    parser = argparse.ArgumentParser(
        prog="macroelast",
        description="Verify and solve with barycentric macroelement elasticity complexes.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    verify = sub.add_parser("verify", parents=[common], help="Run exact verification checks.")
    verify.add_argument("--checks", type=_parse_checks, help="Comma separated checks (default: all).")
    verify.add_argument("--trials", type=int, help="Random trials per identity (default: 20).")
    sub.add_parser("dims", parents=[common], help="Print the dimensions of the discrete spaces.")
    sub.add_parser("solve", parents=[common, solver], help="Solve one mixed elasticity problem.")
    sub.add_parser("convergence", parents=[common, solver], help="Run a convergence study.")
    return parser


def main(argv: list[str] | None = None) -> None:
    """Main entry-point."""
    args = _parser().parse_args(argv)
    level = logging.WARNING if args.verbose == 0 else logging.INFO if args.verbose == 1 else logging.DEBUG
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s")

    try:
        config = _build_config(args)
        backend = get_storage(args.storage, args.backend)
        passed = True
        if args.command == "verify":
            document, passed = _verify(config)
        elif args.command == "dims":
            document = _dims(config)
        elif args.command == "solve":
            document = _solve(config)
        else:
            document = _convergence(config)
        backend.store(document)
    except ValidationError as exc:
        print(f"Error: invalid configuration:\n{exc}")
        sys.exit(1)
    except (ValueError, ArithmeticError, RuntimeError, OSError, MarshmallowValidationError) as exc:
        print(f"Error: {exc}")
        sys.exit(1)

    if not passed:
        sys.exit(1)
