"""boomsuite: trade studies for perception sensor suites on boom-based climbers.

The library evaluates candidate sensors on an ordinal decision matrix,
budgets mass against a buckling-limited boom, analyzes two-stage sensing
geometry in a tube cross-section, and selects feasible body/boom-tip
suites under those constraints.  Loaded configuration objects are
immutable; every analysis is a pure function, safe to run in parallel.
"""

from .budget import (
    BudgetReport,
    body_sensor_budget,
    boom_mass,
    budget_report,
    max_distal_sensor_mass,
    pulloff_capacity_check,
    shoulder_moment,
)
from .catalog import (
    Catalog,
    MissionConfig,
    Modality,
    Ordinal,
    SensorRecord,
    bundled_path,
    load_catalog,
    load_mission,
    save_catalog,
)
from .errors import (
    ConfigError,
    EnumerationGuardError,
    InfeasibleError,
    NoFeasibleSuiteError,
    ScoringError,
    TradeStudyError,
    ValidationError,
)
from .geometry import (
    CoverageReport,
    Footprint,
    Mount,
    StagePlan,
    Strategy,
    TubeSection,
    effective_vertical_fov,
    feature_resolvable,
    footprint_at_range,
    near_field_threshold,
    section_coverage,
    stage_plan,
    strategy_recommend,
)
from .mounts import MountSpec, load_mounts
from .scoring import (
    BinRule,
    Criterion,
    CriterionKind,
    CriterionName,
    DecisionMatrix,
    ScoringProfile,
    Stage,
    bin_score,
    gate_requirements,
    load_profile,
    modality_table,
    score_matrix,
)
from .selector import (
    Placement,
    PlacementRule,
    SensitivityRow,
    SuiteSolution,
    enumerate_suites,
    select_best,
    sensitivity_report,
)

__version__ = "0.1.0"
