"""Command line workbench.

Every command prints one document (``json``, ``yaml`` or ``tsv``) on stdout;
logs go to stderr and the log file. Exit codes: ``0`` when every check
passes, ``1`` when a check fails, ``2`` for budget, configuration and usage
errors.
"""

# =========================================================================== #
import contextlib
import sys as _sys
from typing import Any, Iterator

import typer

# --------------------------------------------------------------------------- #
from hkcubes import cube_groups, cubespace, flags, nrp, oracle, tower, util, zoo
from hkcubes.cubes import vertex_count
from hkcubes.errors import (
    BudgetExceeded,
    ConfigError,
    HKCubesError,
    InternalInvariantViolation,
    NotApplicable,
)
from hkcubes.parse import resolve_group, resolve_system
from hkcubes.report import Report, Suite, render
from hkcubes.systems import FiniteSystem

logger = util.get_logger(__name__)

EXHAUSTIVE_LIMIT = _sys.maxsize


@contextlib.contextmanager
def handle_errors() -> Iterator[None]:
    try:
        yield
    except BudgetExceeded as err:
        logger.error("%s", err, extra=dict(diagnostics=err.diagnostics()))
        raise typer.Exit(2)
    except ConfigError as err:
        logger.error("Configuration error: %s", err)
        raise typer.Exit(2)
    except InternalInvariantViolation as err:
        logger.error("Verification failed: %s", err)
        raise typer.Exit(1)
    except HKCubesError as err:
        logger.error("%s: %s", type(err).__name__, err)
        raise typer.Exit(2)


def emit(obj: Any, output: str) -> None:
    typer.echo(render(obj, output))


def finish(suite: Suite, output: str) -> None:
    emit(suite, output)
    if not suite.passed:
        raise typer.Exit(1)


class WorkbenchCommand:
    @classmethod
    def system(
        cls, context: typer.Context, system: str, subpath: str | None
    ) -> FiniteSystem:
        context_data: flags.ContextData = context.obj
        budgets = context_data.config.budgets
        return resolve_system(
            system,
            subpath,
            max_order=budgets.group_order,
            action_check=budgets.action_check,
        )

    @classmethod
    def cubes(
        cls,
        context: typer.Context,
        system: flags.FlagSystem,
        subpath: flags.FlagSubpath = None,
        d: flags.FlagD = 2,
        budget: flags.FlagBudget = None,
        output: flags.FlagOutput = None,
        oracle_: flags.FlagOracle = False,
        jsonl: flags.FlagJsonl = False,
    ):
        """Compute ``C^[d]`` and its slices."""
        context_data: flags.ContextData = context.obj
        budgets = context_data.budgets(budget)
        with handle_errors():
            sys = cls.system(context, system, subpath)
            C = cubespace.dynamical_cubes(sys, d, budget=budgets.cubes)
            if jsonl:
                typer.echo(C.to_jsonl())
                return

            slices = {
                r: cubespace.y_space(sys, d, r, budget=budgets.cubes).size
                for r in sys.orbit_representatives()
            }
            suite = Suite(
                name=f"cubes[{d}]",
                data=dict(
                    system=sys.name,
                    points=sys.points,
                    d=d,
                    size=C.size,
                    levels=C.levels,
                    slice_sizes=slices,
                ),
            )
            suite.add(cubespace.check_hk_minimal(sys, d, budget=budgets.cubes))
            if oracle_:
                rows = frozenset(tuple(row) for row in C.rows().tolist())
                suite.add(
                    oracle.diff_cubes(
                        f"cubes[{d}]",
                        rows,
                        oracle.cubes_fixpoint(sys, d, budget=budgets.cubes),
                    )
                )
        finish(suite, context_data.output(output))

    @classmethod
    def nrp(
        cls,
        context: typer.Context,
        system: flags.FlagSystem,
        subpath: flags.FlagSubpath = None,
        d: flags.FlagD = 1,
        budget: flags.FlagBudget = None,
        output: flags.FlagOutput = None,
        oracle_: flags.FlagOracle = False,
        chain: flags.FlagRP = False,
    ):
        """``NRP^[d]`` with its quotient and verification suite."""
        context_data: flags.ContextData = context.obj
        budgets = context_data.budgets(budget)
        with handle_errors():
            sys = cls.system(context, system, subpath)
            R = nrp.nrp_relation(sys, d, budget=budgets.cubes)
            classes = R.classes()
            suite = Suite(
                name=f"nrp[{d}]",
                data=dict(
                    system=sys.name,
                    points=sys.points,
                    d=d,
                    minimal=sys.is_minimal,
                    classes=len(classes),
                    class_sizes=sorted(len(c) for c in classes),
                    relation=R.to_json(),
                    pairs=R.pairs(),
                ),
            )
            if sys.is_minimal:
                suite.add(nrp.verify_equivalence(R, sys))
                quotient, _ = tower.quotient_by_nrp(sys, d, budget=budgets.cubes)
                suite.data["quotient_size"] = quotient.points
                suite.add(tower.verify_order_of_factor(sys, d, budget=budgets.cubes))
                if chain:
                    suite.add(
                        nrp.elementary_chain_check(
                            sys, d, budget=budgets.cubes, rp=True, pair_budget=budgets.pairs
                        )
                    )
            else:
                suite.add(Report.not_applicable("equivalence", "system is not minimal"))
            suite.add(nrp.verify_alt_corner(sys, d, budget=budgets.cubes))
            suite.add(nrp.check_canonical(sys, d, budget=budgets.cubes))
            if oracle_:
                suite.add(
                    oracle.diff(
                        f"nrp[{d}]", R, oracle.nrp_by_membership(sys, d, budget=budgets.cubes)
                    )
                )
                suite.add(
                    oracle.diff(
                        f"canonical[{d}]",
                        nrp.canonical_relation(sys, d, budget=budgets.cubes),
                        oracle.canonical_by_scan(sys, d, budget=budgets.cubes),
                    )
                )
        finish(suite, context_data.output(output))

    @classmethod
    def rp(
        cls,
        context: typer.Context,
        system: flags.FlagSystem,
        subpath: flags.FlagSubpath = None,
        d: flags.FlagD = 1,
        budget: flags.FlagBudget = None,
        output: flags.FlagOutput = None,
        oracle_: flags.FlagOracle = False,
    ):
        """``RP^[d]`` and its inclusion in ``NRP^[d]``."""
        context_data: flags.ContextData = context.obj
        budgets = context_data.budgets(budget)
        with handle_errors():
            sys = cls.system(context, system, subpath)
            R = nrp.rp_relation(sys, d, budget=budgets.pairs)
            suite = Suite(
                name=f"rp[{d}]",
                data=dict(
                    system=sys.name,
                    d=d,
                    classes=len(R.classes()),
                    relation=R.to_json(),
                    pairs=R.pairs(),
                ),
            )
            suite.add(
                nrp.check_rp_subset_nrp(
                    sys, d, budget=budgets.cubes, pair_budget=budgets.pairs
                )
            )
            if oracle_:
                suite.add(
                    oracle.diff(f"rp[{d}]", R, oracle.rp_by_pairs(sys, d, budget=budgets.tuples))
                )
        finish(suite, context_data.output(output))

    @classmethod
    def order(
        cls,
        context: typer.Context,
        system: flags.FlagSystem,
        subpath: flags.FlagSubpath = None,
        d: flags.FlagDMax = None,
        budget: flags.FlagBudget = None,
        output: flags.FlagOutput = None,
    ):
        """Order of a minimal system, searched up to ``d``.

        ``skipped_orders`` lists the orders ruled out without computing their
        relation.
        """
        context_data: flags.ContextData = context.obj
        budgets = context_data.budgets(budget)
        d_max = context_data.d_max(d)
        with handle_errors():
            sys = cls.system(context, system, subpath)
            found = tower.order_of_system(sys, d_max, budget=budgets.cubes)
            skipped = tower.skipped_orders(sys, d_max)
            suite = Suite(
                name="order",
                data=dict(
                    system=sys.name,
                    points=sys.points,
                    d_max=d_max,
                    order=found if found is not None else f">={d_max + 1}",
                    shortcut=bool(skipped),
                    skipped_orders=skipped,
                ),
            )
            if found is not None and found >= 1:
                effective = tower.effective_nilpotent_quotient(sys, found, budget=budgets.cubes)
                suite.data["effective_group_order"] = effective.group.order
                suite.data["nilpotency_class"] = effective.nilpotency_class
                suite.add(nrp.distal_from_order(sys, found, budget=budgets.cubes))
        finish(suite, context_data.output(output))

    @classmethod
    def tower(
        cls,
        context: typer.Context,
        system: flags.FlagSystem,
        subpath: flags.FlagSubpath = None,
        d: flags.FlagDMax = None,
        budget: flags.FlagBudget = None,
        output: flags.FlagOutput = None,
    ):
        """Factor tower with its structure groups."""
        context_data: flags.ContextData = context.obj
        budgets = context_data.budgets(budget)
        with handle_errors():
            sys = cls.system(context, system, subpath)
            report = tower.factor_tower(sys, context_data.d_max(d), budget=budgets.cubes)
        emit(report, context_data.output(output))

    @classmethod
    def axioms(
        cls,
        context: typer.Context,
        system: flags.FlagSystem,
        subpath: flags.FlagSubpath = None,
        d: flags.FlagD = 2,
        budget: flags.FlagBudget = None,
        output: flags.FlagOutput = None,
        exhaustive: flags.FlagExhaustive = False,
        sample: flags.FlagSample = None,
        seed: flags.FlagSeed = None,
    ):
        """Nilspace axioms of ``C^[d]``."""
        context_data: flags.ContextData = context.obj
        budgets = context_data.budgets(budget)
        sample_ = context_data.sample(sample, exhaustive)
        seed_ = context_data.seed(seed)
        limit = EXHAUSTIVE_LIMIT if exhaustive else budgets.corners_exhaustive
        with handle_errors():
            sys = cls.system(context, system, subpath)
            C = cubespace.dynamical_cubes(sys, d, budget=budgets.cubes)
            suite = Suite(
                name=f"axioms[{d}]",
                data=dict(system=sys.name, points=sys.points, d=d, size=C.size),
            )
            kwargs = dict(budget=budgets.cubes)
            suite.add(cubespace.check_ergodic(sys, **kwargs))
            suite.add(
                cubespace.check_completion(
                    sys, d, limit=limit, sample=sample_ or 1000, seed=seed_, **kwargs
                )
            )
            suite.add(
                cubespace.check_glueing(C, limit=limit, sample=sample_ or 1000, seed=seed_)
            )
            suite.add(cubespace.uniqueness_report(C))
            suite.add(
                cubespace.check_cube_invariance(C, d, sample=sample_, seed=seed_, **kwargs)
            )
            corner = list(range(vertex_count(d) - 1)) or [0]
            if sys.points ** len(corner) <= limit:
                suite.add(
                    cubespace.check_extension_property(sys, d, corner, limit=limit, **kwargs)
                )
            else:
                suite.add(Report.not_applicable(f"extension[{d}]", "corner space too large"))
            suite.add(cubespace.check_projections(sys, d, **kwargs))
            suite.add(cubespace.check_slices(sys, d, sample=sample_, seed=seed_, **kwargs))
            suite.add(cubespace.check_hk_minimal(sys, d, **kwargs))
            try:
                suite.add(nrp.weakly_mixing_checks(sys, d, **kwargs))
            except NotApplicable as err:
                suite.add(Report.not_applicable(f"weakly-mixing[{d}]", str(err)))
        finish(suite, context_data.output(output))

    @classmethod
    def appendix(
        cls,
        context: typer.Context,
        group: flags.FlagGroup = "sym:3",
        d: flags.FlagD = 2,
        budget: flags.FlagBudget = None,
        output: flags.FlagOutput = None,
        sample: flags.FlagSample = None,
        seed: flags.FlagSeed = None,
    ):
        """Cube group algebra of a group."""
        context_data: flags.ContextData = context.obj
        budgets = context_data.budgets(budget)
        seed_ = context_data.seed(seed)
        trials = context_data.sample(sample, False) or 1000
        with handle_errors():
            G = resolve_group(group)
            tuples = dict(budget=budgets.tuples)
            suite = Suite(
                name=f"appendix[{d}]",
                data=dict(
                    group=G.name,
                    order=G.order,
                    d=d,
                    hk_size=cube_groups.generated_tuple_group(G, d, "hk", **tuples).size,
                    face_size=cube_groups.generated_tuple_group(G, d, "face", **tuples).size,
                ),
            )
            suite.add(cube_groups.verify_key_commutator(G, d, trials=trials, seed=seed_))
            suite.add(cube_groups.face_group_ceiling_image(G, d, **tuples))
            suite.add(cube_groups.verify_doubling_inclusion(G, max(d - 1, 1), **tuples))
            suite.add(cube_groups.verify_hk_presentations(G, d, **tuples))
            suite.add(cube_groups.verify_face_group_vertex_zero(G, d, **tuples))
            suite.add(cube_groups.verify_face_inclusion(G, d, **tuples))
            suite.add(cube_groups.verify_factor_hk(G, d, seed=seed_, **tuples))
            suite.add(
                cube_groups.verify_decomposition(
                    G, d, rewrite_budget=budgets.rewrite, seed=seed_, **tuples
                )
            )
            suite.add(cube_groups.verify_normal_form(G, d, rewrite_budget=budgets.rewrite))
            suite.add(cube_groups.verify_face_product_decomposition(G, d, **tuples))
        finish(suite, context_data.output(output))

    @classmethod
    def demo_sturmian(
        cls,
        context: typer.Context,
        q: int = 89,
        p: int = 55,
        n_max: int = 10_000,
        half: int = 2,
        exhaustive: flags.FlagExhaustive = False,
        output: flags.FlagOutput = None,
    ):
        """Rotation of ``Z/q`` preserves the orientation of the arcs at ``0``."""
        context_data: flags.ContextData = context.obj
        with handle_errors():
            report = zoo.sturmian_orientation_demo(q, p, n_max, half, exhaustive=exhaustive)
        suite = Suite(name="demo-sturmian", reports=[report])
        finish(suite, context_data.output(output))

    @classmethod
    def create_typer(cls):
        cli = typer.Typer(no_args_is_help=True)
        cli.command("cubes")(cls.cubes)
        cli.command("nrp")(cls.nrp)
        cli.command("rp")(cls.rp)
        cli.command("order")(cls.order)
        cli.command("tower")(cls.tower)
        cli.command("axioms")(cls.axioms)
        cli.command("appendix")(cls.appendix)
        cli.command("demo-sturmian")(cls.demo_sturmian)

        return cli
