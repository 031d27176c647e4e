"""Command-line front end: evaluate / budget / coverage / select / report.

A batch tool: all inputs are files plus flags, no prompts, and identical
inputs produce byte-identical output.  Exit codes: 0 success, 1 the
analysis ran but the result is infeasible, 2 input or validation error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import budget as budget_ops
from .catalog import (
    Catalog,
    MissionConfig,
    Modality,
    bundled_path,
    load_catalog,
    load_mission,
)
from .errors import NoFeasibleSuiteError, TradeStudyError
from .geometry import (
    TubeSection,
    effective_vertical_fov,
    section_coverage,
    stage_plan,
)
from .mounts import MountSpec, load_mounts
from .reporting import (
    FORMATS,
    budget_summary_lines,
    budget_table,
    coverage_table,
    decision_matrix_table,
    fmt_num,
    modality_overview_table,
    selection_lines,
    sensitivity_table,
    stage_plan_lines,
)
from .scoring import (
    CriterionName,
    ScoringProfile,
    Stage,
    gate_requirements,
    load_profile,
    modality_table,
    score_matrix,
)
from .selector import Placement, PlacementRule, select_best, sensitivity_report

EXIT_OK = 0
EXIT_INFEASIBLE = 1
EXIT_INPUT = 2

_PROFILE_SHORTHANDS = {
    "far_field": "far_field.profile",
    "near_field": "near_field.profile",
    "modality": "modality.profile",
}

# Default modality families admitted to each placement slot; each family
# is one the placement profile carries complete scoring coverage for.
_BODY_MODALITIES = (Modality.LIDAR, Modality.RADAR)
_DISTAL_MODALITIES = (Modality.CAMERA2D, Modality.CAMERA3D)


def _resolve_profile_path(value: str) -> Path:
    if value in _PROFILE_SHORTHANDS:
        return bundled_path(_PROFILE_SHORTHANDS[value])
    return Path(value)


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--format", choices=FORMATS, default="table", help="output format")
    parser.add_argument("--preset", choices=["paper"], help="use the bundled reference fixtures")
    parser.add_argument("--catalog", help="sensor catalog file")
    parser.add_argument("--mission", help="mission configuration file")


def _load_inputs(args: argparse.Namespace, need_mission: bool = True):
    catalog_path = args.catalog
    mission_path = getattr(args, "mission", None)
    if args.preset == "paper":
        catalog_path = catalog_path or bundled_path("paper_catalog.yaml")
        mission_path = mission_path or bundled_path("paper_mission.yaml")
    if catalog_path is None:
        raise TradeStudyError("a --catalog file is required (or use --preset paper)")
    catalog = load_catalog(catalog_path)
    mission = None
    if need_mission:
        if mission_path is None:
            raise TradeStudyError("a --mission file is required (or use --preset paper)")
        mission = load_mission(mission_path)
    return catalog, mission


def _load_mounts(args: argparse.Namespace, catalog: Catalog) -> MountSpec:
    mounts_path = getattr(args, "mounts", None)
    if mounts_path is None and args.preset == "paper":
        mounts_path = bundled_path("paper_mounts.yaml")
    if mounts_path is None:
        raise TradeStudyError("a --mounts file is required (or use --preset paper)")
    return load_mounts(mounts_path, catalog)


def _default_rules(
    mission: MissionConfig,
    far_profile: ScoringProfile,
    near_profile: ScoringProfile,
    args: argparse.Namespace,
) -> list[PlacementRule]:
    """Body + distal rules with budgets derived from the mission."""
    report = budget_ops.budget_report(mission)
    body_budget = args.body_budget if args.body_budget is not None else report.body_sensor_budget
    distal_budget = (
        args.distal_budget if args.distal_budget is not None else report.distal_sensor_budget
    )
    body_max = args.body_max
    min_dust_modalities = 0
    if args.redundancy:
        body_max = max(body_max, 2)
        min_dust_modalities = 2
    return [
        PlacementRule(
            placement=Placement.BODY,
            mass_budget=body_budget,
            profile=far_profile,
            max_sensors=body_max,
            modalities=_BODY_MODALITIES,
            min_dust_robust_modalities=min_dust_modalities,
        ),
        PlacementRule(
            placement=Placement.DISTAL,
            mass_budget=distal_budget,
            profile=near_profile,
            max_sensors=args.distal_max,
            modalities=_DISTAL_MODALITIES,
        ),
    ]


def _emit(text: str) -> None:
    sys.stdout.write(text + "\n")


# ---------------------------------------------------------------------------
# subcommands


def cmd_evaluate(args: argparse.Namespace) -> int:
    catalog, _ = _load_inputs(args, need_mission=False)
    profile_arg = args.profile or ("far_field" if args.preset == "paper" else None)
    if profile_arg is None:
        raise TradeStudyError("a --profile file or shorthand is required")
    profile = load_profile(_resolve_profile_path(profile_arg))
    if profile.stage is Stage.MODALITY_OVERVIEW:
        table = modality_table(catalog, profile)
        _emit(
            modality_overview_table(
                table, catalog, dict(profile.exemplars), args.format, title="Modality Overview"
            )
        )
        return EXIT_OK
    pool = catalog.subset(modalities=profile.modalities) if profile.modalities else catalog
    matrix = gate_requirements(score_matrix(pool, profile), profile)
    _emit(
        decision_matrix_table(
            matrix, pool, args.format, title=f"Decision Matrix ({profile.stage.value})"
        )
    )
    return EXIT_OK


def cmd_budget(args: argparse.Namespace) -> int:
    catalog, mission = _load_inputs(args)
    body_mass = args.body_mass
    distal_mass = args.distal_mass
    if args.preset == "paper" and (body_mass is None or distal_mass is None):
        spec = _load_mounts(args, catalog)
        body_mass = spec.body_mass_kg if body_mass is None else body_mass
        distal_mass = spec.distal_mass_kg if distal_mass is None else distal_mass
    report = budget_ops.budget_report(mission, distal_mass or 0.0, body_mass or 0.0)
    if args.format == "table":
        for line in budget_summary_lines(report):
            _emit(line)
    _emit(budget_table(report, args.format, title="Mass and Buckling Budget"))
    return EXIT_OK if report.feasible else EXIT_INFEASIBLE


def cmd_coverage(args: argparse.Namespace) -> int:
    catalog, mission = _load_inputs(args)
    spec = _load_mounts(args, catalog)
    tube = spec.analysis_tube or TubeSection(depth=mission.tube_depth, width=mission.tube_width)
    if args.tube_depth is not None or args.tube_width is not None:
        tube = TubeSection(
            depth=args.tube_depth if args.tube_depth is not None else tube.depth,
            width=args.tube_width if args.tube_width is not None else tube.width,
        )
    if not spec.body_mounts:
        raise TradeStudyError("mount specification lists no body mounts")
    report = section_coverage(list(spec.body_mounts), tube, mission.boom_length)

    if args.format == "table":
        for mount in spec.body_mounts:
            fov = mount.sensor.fov
            vfov = fov.vertical_deg if fov and fov.vertical_deg is not None else (
                fov.horizontal_deg if fov else None
            )
            if vfov is None:
                continue
            eff = effective_vertical_fov(vfov, abs(mount.tilt_deg), mount.spinning)
            kind = "spinning" if mount.spinning else "static"
            _emit(
                f"{mount.sensor.id} at {fmt_num(mount.tilt_deg)} deg ({kind}): "
                f"effective vertical FOV {fmt_num(eff)} deg"
            )
        _emit(
            f"analysis slice: {fmt_num(tube.depth)} m deep x {fmt_num(tube.width)} m wide; "
            f"near-field boundary {fmt_num(report.near_field_max)} m"
        )
    _emit(coverage_table(report, args.format, title="Cross-Section Coverage"))

    if spec.distal and spec.body_mounts:
        ranged = [m.sensor for m in spec.body_mounts if m.sensor.range_max is not None]
        if ranged:
            far = max(ranged, key=lambda s: s.range_max)
            plan = stage_plan(far, spec.distal[0], mission.boom_length)
            if args.format == "table":
                for line in stage_plan_lines(plan):
                    _emit(line)
    not_visible = [s for s, cov in report.surfaces.items() if not cov.visible]
    if not_visible:
        _emit("not visible: " + ", ".join(not_visible))
        return EXIT_INFEASIBLE
    return EXIT_OK


def _select_profiles(args: argparse.Namespace) -> tuple[ScoringProfile, ScoringProfile]:
    far_arg = args.far_profile or "far_field"
    near_arg = args.near_profile or "near_field"
    return (
        load_profile(_resolve_profile_path(far_arg)),
        load_profile(_resolve_profile_path(near_arg)),
    )


def cmd_select(args: argparse.Namespace) -> int:
    catalog, mission = _load_inputs(args)
    far_profile, near_profile = _select_profiles(args)
    rules = _default_rules(mission, far_profile, near_profile, args)

    if args.sweep is not None:
        crit_name, lo, hi = args.sweep
        try:
            criterion = CriterionName(crit_name)
        except ValueError:
            raise TradeStudyError(f"unknown criterion {crit_name!r}") from None
        weights = list(range(int(lo), int(hi) + 1))
        rows = sensitivity_report(catalog, rules, mission, criterion, weights)
        _emit(
            sensitivity_table(
                rows, criterion, args.format, title=f"Sensitivity: {criterion.value} weight"
            )
        )
        return EXIT_OK

    try:
        suite = select_best(catalog, rules, mission)
    except NoFeasibleSuiteError as exc:
        _emit("no feasible suite:")
        for reason in exc.reasons:
            _emit(f"  - {reason}")
        return EXIT_INFEASIBLE
    body_rule = rules[0]
    distal_rule = rules[1]
    if args.format == "table":
        _emit(
            f"body budget: {fmt_num(suite.body_mass)} of {fmt_num(body_rule.mass_budget)} kg; "
            f"distal budget: {fmt_num(suite.distal_mass)} of {fmt_num(distal_rule.mass_budget)} kg"
        )
    _emit(selection_lines(suite, args.format, title="Selected Suite"))
    return EXIT_OK


def cmd_report(args: argparse.Namespace) -> int:
    catalog, mission = _load_inputs(args)
    sections: list[str] = []
    worst = EXIT_OK

    modality_profile = load_profile(_resolve_profile_path("modality"))
    table = modality_table(catalog, modality_profile)
    sections.append(
        modality_overview_table(
            table, catalog, dict(modality_profile.exemplars), args.format, title="Modality Overview"
        )
    )

    for shorthand, label in (("far_field", "Far-Field Matrix"), ("near_field", "Near-Field Matrix")):
        profile = load_profile(_resolve_profile_path(shorthand))
        pool = catalog.subset(modalities=profile.modalities) if profile.modalities else catalog
        matrix = gate_requirements(score_matrix(pool, profile), profile)
        sections.append(decision_matrix_table(matrix, pool, args.format, title=label))

    spec = _load_mounts(args, catalog)
    report = budget_ops.budget_report(mission, spec.distal_mass_kg, spec.body_mass_kg)
    sections.append(budget_table(report, args.format, title="Mass and Buckling Budget"))
    if not report.feasible:
        worst = EXIT_INFEASIBLE

    tube = spec.analysis_tube or TubeSection(depth=mission.tube_depth, width=mission.tube_width)
    coverage = section_coverage(list(spec.body_mounts), tube, mission.boom_length)
    sections.append(coverage_table(coverage, args.format, title="Cross-Section Coverage"))
    if not coverage.all_visible:
        worst = EXIT_INFEASIBLE

    far_profile, near_profile = _select_profiles(args)
    rules = _default_rules(mission, far_profile, near_profile, args)
    try:
        suite = select_best(catalog, rules, mission)
        sections.append(selection_lines(suite, args.format, title="Selected Suite"))
    except NoFeasibleSuiteError as exc:
        sections.append("no feasible suite: " + "; ".join(exc.reasons))
        worst = EXIT_INFEASIBLE

    _emit("\n\n".join(sections))
    return worst


# ---------------------------------------------------------------------------
# argument wiring


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="boomsuite",
        description="Trade-study engine for perception sensor suites on boom-based climbers.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_eval = sub.add_parser("evaluate", help="score a catalog against a profile")
    _add_common(p_eval)
    p_eval.add_argument(
        "--profile",
        help="profile file, or shorthand: far_field / near_field / modality",
    )
    p_eval.set_defaults(func=cmd_evaluate)

    p_budget = sub.add_parser("budget", help="mass and buckling budget report")
    _add_common(p_budget)
    p_budget.add_argument("--mounts", help="mount specification file")
    p_budget.add_argument("--body-mass", type=float, help="body sensor mass to check, kg")
    p_budget.add_argument("--distal-mass", type=float, help="boom-tip sensor mass to check, kg")
    p_budget.set_defaults(func=cmd_budget)

    p_cov = sub.add_parser("coverage", help="cross-section coverage and stage plan")
    _add_common(p_cov)
    p_cov.add_argument("--mounts", help="mount specification file")
    p_cov.add_argument("--tube-depth", type=float, help="override analysis tube depth, m")
    p_cov.add_argument("--tube-width", type=float, help="override analysis tube width, m")
    p_cov.set_defaults(func=cmd_coverage)

    def add_select_flags(p: argparse.ArgumentParser) -> None:
        p.add_argument("--far-profile", help="body placement profile (default: bundled far_field)")
        p.add_argument("--near-profile", help="boom-tip placement profile (default: bundled near_field)")
        p.add_argument("--body-budget", type=float, help="override body mass budget, kg")
        p.add_argument("--distal-budget", type=float, help="override boom-tip mass budget, kg")
        p.add_argument("--body-max", type=int, default=1, help="max sensors on the body")
        p.add_argument("--distal-max", type=int, default=1, help="max sensors at the boom tip")
        p.add_argument(
            "--redundancy",
            action="store_true",
            help="require two dust-robust modalities on the body",
        )

    p_select = sub.add_parser("select", help="choose the best feasible sensor suite")
    _add_common(p_select)
    add_select_flags(p_select)
    p_select.add_argument(
        "--sweep",
        nargs=3,
        metavar=("CRITERION", "MIN", "MAX"),
        help="sweep one criterion's weight over an integer range",
    )
    p_select.set_defaults(func=cmd_select)

    p_report = sub.add_parser("report", help="bundle every analysis into one report")
    _add_common(p_report)
    p_report.add_argument("--mounts", help="mount specification file")
    add_select_flags(p_report)
    p_report.set_defaults(func=cmd_report)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except TradeStudyError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INPUT
    except ValueError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
