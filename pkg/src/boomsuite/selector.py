"""Constrained sensor-suite selection.

Chooses body and boom-tip sensor sets maximizing the summed weighted
scores, subject to per-placement mass budgets, requirement gates, an
optional modality-redundancy constraint, and cross-placement stage-plan
compatibility.  Two independent routes exist on purpose:

* ``enumerate_suites`` exhaustively materializes every feasible suite
  (flat cross product, guarded against combinatorial blowup), and
* ``select_best`` runs a best-first search over per-placement ranked
  subsets with score-bound pruning.

They must agree; the test suite checks them against each other on
randomized catalogs.  The final reduction is deterministic: ties break
by lower total price, then lower total mass, then lexicographic ids.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass

from .catalog import Catalog, MissionConfig, Modality, SensorRecord
from .errors import EnumerationGuardError, NoFeasibleSuiteError
from .geometry import StagePlan, stage_plan
from .scoring import CriterionName, DecisionMatrix, ScoringProfile, gate_requirements, score_matrix

__all__ = [
    "Placement",
    "PlacementRule",
    "SuiteSolution",
    "enumerate_suites",
    "select_best",
    "sensitivity_report",
    "SensitivityRow",
]

ENUMERATION_GUARD = 1_000_000


class Placement(enum.Enum):
    BODY = "body"
    DISTAL = "distal"


@dataclass(frozen=True)
class PlacementRule:
    """Constraints for one placement slot.

    ``modalities`` restricts which sensor families may occupy the slot
    (None admits the profile's own modality list, or everything).
    ``min_dust_robust_modalities`` > 0 demands that many distinct
    modalities with a non-zero dust score among the chosen sensors —
    the redundancy constraint for dusty conditions.
    """

    placement: Placement
    mass_budget: float                  # kg
    profile: ScoringProfile
    max_sensors: int = 1
    modalities: tuple[Modality, ...] | None = None
    min_dust_robust_modalities: int = 0

    def __post_init__(self) -> None:
        # zero is degenerate but legal: nothing fits, enumeration is empty
        if self.mass_budget < 0:
            raise ValueError("mass budget must be >= 0 kg")
        if self.max_sensors < 1:
            raise ValueError("max_sensors must be >= 1")

    def candidate_modalities(self) -> tuple[Modality, ...] | None:
        if self.modalities is not None:
            return self.modalities
        return self.profile.modalities


@dataclass(frozen=True)
class SuiteSolution:
    """A placement assignment with its aggregate score and feasibility."""

    body_sensors: tuple[str, ...] = ()
    distal_sensors: tuple[str, ...] = ()
    body_mass: float = 0.0              # kg
    distal_mass: float = 0.0            # kg
    total_price: float = 0.0            # USD
    aggregate_score: int = 0
    stage_plan: StagePlan | None = None
    feasible: bool = True
    reasons: tuple[str, ...] = ()
    warnings: tuple[str, ...] = ()
    notes: tuple[str, ...] = ()

    def ids(self) -> tuple[str, ...]:
        return tuple(sorted(self.body_sensors + self.distal_sensors))


@dataclass(frozen=True)
class _Slot:
    """Pre-computed candidate data for one placement."""

    rule: PlacementRule
    matrix: DecisionMatrix | None
    eligible: tuple[SensorRecord, ...]

    def score(self, sensor_id: str) -> int:
        assert self.matrix is not None
        return self.matrix.weighted_sums[sensor_id]


def _build_slot(catalog: Catalog, rule: PlacementRule) -> _Slot:
    modalities = rule.candidate_modalities()
    admitted = tuple(
        s for s in catalog if modalities is None or s.modality in set(modalities)
    )
    if not admitted:
        # no candidates of the admitted modalities: the slot is unfillable
        return _Slot(rule=rule, matrix=None, eligible=())
    pool = Catalog(admitted)
    matrix = gate_requirements(score_matrix(pool, rule.profile), rule.profile)
    eligible = tuple(s for s in pool if matrix.eligibility[s.id].eligible)
    return _Slot(rule=rule, matrix=matrix, eligible=eligible)


def _subset_ok(slot: _Slot, subset: tuple[SensorRecord, ...]) -> bool:
    if sum(s.mass_kg for s in subset) > slot.rule.mass_budget:
        return False
    if slot.rule.min_dust_robust_modalities > 0:
        dust_ok = {
            s.modality
            for s in subset
            if slot.matrix.score(s.id, CriterionName.DUST) > 0
        }
        if len(dust_ok) < slot.rule.min_dust_robust_modalities:
            return False
    return True


def _suite_stage_plan(
    body: tuple[SensorRecord, ...],
    distal: tuple[SensorRecord, ...],
    mission: MissionConfig,
) -> StagePlan | None:
    """Stage plan anchored on the longest-range sensor of each placement;
    None when either placement lacks a ranged sensor."""
    far = [s for s in body if s.range_max is not None and s.range_min is not None]
    near = [s for s in distal if s.range_max is not None and s.range_min is not None]
    if not far or not near:
        return None
    far_anchor = max(far, key=lambda s: s.range_max)
    near_anchor = max(near, key=lambda s: s.range_max)
    return stage_plan(far_anchor, near_anchor, mission.boom_length)


def _assemble(
    body: tuple[SensorRecord, ...],
    distal: tuple[SensorRecord, ...],
    body_slot: _Slot | None,
    distal_slot: _Slot | None,
    mission: MissionConfig,
) -> SuiteSolution | None:
    """Build a feasible SuiteSolution, or None when the cross-placement
    stage-plan constraint rejects the combination."""
    plan = None
    warnings: list[str] = []
    if body and distal:
        plan = _suite_stage_plan(body, distal, mission)
        if plan is None:
            return None
        if not (plan.valid or plan.marginal):
            return None
        if plan.marginal:
            warnings.append(
                f"stage plan leaves a {plan.blind_band:.2f} m blind band below "
                f"the {plan.near_field_max:.2f} m near-field boundary"
            )
    score = 0
    if body_slot is not None:
        score += sum(body_slot.score(s.id) for s in body)
    if distal_slot is not None:
        score += sum(distal_slot.score(s.id) for s in distal)
    return SuiteSolution(
        body_sensors=tuple(s.id for s in body),
        distal_sensors=tuple(s.id for s in distal),
        body_mass=sum(s.mass_kg for s in body),
        distal_mass=sum(s.mass_kg for s in distal),
        total_price=sum(s.price for s in body) + sum(s.price for s in distal),
        aggregate_score=score,
        stage_plan=plan,
        feasible=True,
        warnings=tuple(warnings),
    )


def _slots_by_placement(
    catalog: Catalog, rules: list[PlacementRule]
) -> tuple[_Slot | None, _Slot | None]:
    body = distal = None
    for rule in rules:
        slot = _build_slot(catalog, rule)
        if rule.placement is Placement.BODY:
            if body is not None:
                raise ValueError("duplicate body placement rule")
            body = slot
        else:
            if distal is not None:
                raise ValueError("duplicate distal placement rule")
            distal = slot
    if body is None and distal is None:
        raise ValueError("at least one placement rule is required")
    return body, distal


def _slot_subsets(slot: _Slot) -> list[tuple[SensorRecord, ...]]:
    """All admissible subsets (size 1..max) in deterministic order."""
    out = []
    for k in range(1, slot.rule.max_sensors + 1):
        for combo in itertools.combinations(slot.eligible, k):
            if _subset_ok(slot, combo):
                out.append(combo)
    return out


def _subset_count(slot: _Slot | None) -> int:
    if slot is None:
        return 1
    n = len(slot.eligible)
    total = 0
    for k in range(1, slot.rule.max_sensors + 1):
        total += _ncr(n, k)
    return max(total, 1)


def _ncr(n: int, k: int) -> int:
    if k > n:
        return 0
    out = 1
    for i in range(k):
        out = out * (n - i) // (i + 1)
    return out


def enumerate_suites(
    catalog: Catalog, rules: list[PlacementRule], mission: MissionConfig
) -> list[SuiteSolution]:
    """Exhaustively enumerate every feasible suite, in deterministic order.

    Serves as the ground-truth oracle for select_best.  Raises
    EnumerationGuardError when the cross product would exceed the guard.
    """
    body_slot, distal_slot = _slots_by_placement(catalog, rules)
    if _subset_count(body_slot) * _subset_count(distal_slot) > ENUMERATION_GUARD:
        raise EnumerationGuardError(
            f"enumeration would exceed {ENUMERATION_GUARD} combinations"
        )
    body_subsets = _slot_subsets(body_slot) if body_slot is not None else [()]
    distal_subsets = _slot_subsets(distal_slot) if distal_slot is not None else [()]
    suites = []
    for body in body_subsets:
        for distal in distal_subsets:
            suite = _assemble(body, distal, body_slot, distal_slot, mission)
            if suite is not None:
                suites.append(suite)
    return suites


def _tie_key(suite: SuiteSolution) -> tuple:
    return (suite.total_price, suite.body_mass + suite.distal_mass, suite.ids())


def _diagnose(body_slot: _Slot | None, distal_slot: _Slot | None) -> list[str]:
    reasons = []
    for label, slot in (("body", body_slot), ("distal", distal_slot)):
        if slot is None:
            continue
        if slot.matrix is None:
            reasons.append(f"{label}: no candidate sensors of the admitted modalities")
            continue
        if not slot.eligible:
            reasons.append(f"{label}: no sensor passes the requirement gate")
            continue
        lightest = min(s.mass_kg for s in slot.eligible)
        if lightest > slot.rule.mass_budget:
            reasons.append(
                f"{label}: lightest eligible sensor ({lightest:.3f} kg) exceeds "
                f"the {slot.rule.mass_budget:.3f} kg budget"
            )
        if slot.rule.min_dust_robust_modalities > 0:
            dust_ok = {
                s.modality for s in slot.eligible
                if slot.matrix.score(s.id, CriterionName.DUST) > 0
            }
            if len(dust_ok) < slot.rule.min_dust_robust_modalities:
                reasons.append(
                    f"{label}: only {len(dust_ok)} dust-robust modalities available, "
                    f"{slot.rule.min_dust_robust_modalities} required"
                )
    if not reasons:
        reasons.append("no body/distal combination yields a workable stage plan")
    return reasons


def select_best(
    catalog: Catalog, rules: list[PlacementRule], mission: MissionConfig
) -> SuiteSolution:
    """Best feasible suite by aggregate score, with documented tie-break.

    Independent of enumerate_suites: ranks admissible subsets per
    placement and walks combinations best-first, pruning any branch whose
    score bound falls below the incumbent.  Raises NoFeasibleSuiteError
    (listing binding constraints) when nothing qualifies.
    """
    body_slot, distal_slot = _slots_by_placement(catalog, rules)

    def ranked(slot: _Slot | None) -> list[tuple[SensorRecord, ...]]:
        if slot is None:
            return [()]
        subsets = _slot_subsets(slot)
        subsets.sort(
            key=lambda combo: (
                -sum(slot.score(s.id) for s in combo),
                sum(s.price for s in combo),
                sum(s.mass_kg for s in combo),
                tuple(sorted(s.id for s in combo)),
            )
        )
        return subsets

    body_ranked = ranked(body_slot)
    distal_ranked = ranked(distal_slot)
    if not body_ranked or not distal_ranked:
        raise NoFeasibleSuiteError(_diagnose(body_slot, distal_slot))

    def subset_score(slot: _Slot | None, combo: tuple[SensorRecord, ...]) -> int:
        return sum(slot.score(s.id) for s in combo) if slot is not None else 0

    best_score: int | None = None
    finalists: list[SuiteSolution] = []
    top_distal = subset_score(distal_slot, distal_ranked[0])
    for body in body_ranked:
        body_score = subset_score(body_slot, body)
        if best_score is not None and body_score + top_distal < best_score:
            break  # every later body subset is bounded lower still
        for distal in distal_ranked:
            bound = body_score + subset_score(distal_slot, distal)
            if best_score is not None and bound < best_score:
                break
            suite = _assemble(body, distal, body_slot, distal_slot, mission)
            if suite is None:
                continue
            if best_score is None or suite.aggregate_score > best_score:
                best_score = suite.aggregate_score
                finalists = [suite]
            elif suite.aggregate_score == best_score:
                finalists.append(suite)
    if not finalists:
        raise NoFeasibleSuiteError(_diagnose(body_slot, distal_slot))

    finalists.sort(key=_tie_key)
    winner = finalists[0]
    notes: list[str] = []
    if len(finalists) > 1:
        rivals = ", ".join("+".join(f.ids()) for f in finalists)
        level = "price"
        if finalists[0].total_price == finalists[1].total_price:
            level = (
                "mass"
                if finalists[0].body_mass + finalists[0].distal_mass
                != finalists[1].body_mass + finalists[1].distal_mass
                else "id"
            )
        notes.append(
            f"tie at score {winner.aggregate_score} among [{rivals}]; broken by {level}"
        )
    return SuiteSolution(
        body_sensors=winner.body_sensors,
        distal_sensors=winner.distal_sensors,
        body_mass=winner.body_mass,
        distal_mass=winner.distal_mass,
        total_price=winner.total_price,
        aggregate_score=winner.aggregate_score,
        stage_plan=winner.stage_plan,
        feasible=True,
        warnings=winner.warnings,
        notes=tuple(notes),
    )


@dataclass(frozen=True)
class SensitivityRow:
    weight: int
    body_sensors: tuple[str, ...]
    distal_sensors: tuple[str, ...]
    aggregate_score: int
    changed: bool
    notes: tuple[str, ...] = ()


def sensitivity_report(
    catalog: Catalog,
    rules: list[PlacementRule],
    mission: MissionConfig,
    criterion: CriterionName,
    weights: list[int],
) -> list[SensitivityRow]:
    """Re-run selection for each weight of one criterion (applied to every
    placement profile) and record where the argmax changes.  Each weight
    is evaluated from scratch; nothing is cached across steps."""
    rows: list[SensitivityRow] = []
    previous: tuple[tuple[str, ...], tuple[str, ...]] | None = None
    for weight in weights:
        if weight < 0:
            raise ValueError("criterion weights must be non-negative integers")
        adjusted = [
            PlacementRule(
                placement=r.placement,
                mass_budget=r.mass_budget,
                profile=r.profile.with_weight(criterion, weight),
                max_sensors=r.max_sensors,
                modalities=r.modalities,
                min_dust_robust_modalities=r.min_dust_robust_modalities,
            )
            for r in rules
        ]
        suite = select_best(catalog, adjusted, mission)
        selection = (suite.body_sensors, suite.distal_sensors)
        rows.append(
            SensitivityRow(
                weight=weight,
                body_sensors=suite.body_sensors,
                distal_sensors=suite.distal_sensors,
                aggregate_score=suite.aggregate_score,
                changed=previous is not None and selection != previous,
                notes=suite.notes,
            )
        )
        previous = selection
    return rows
