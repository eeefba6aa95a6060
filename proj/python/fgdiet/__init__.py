"""Fuzzy-adaptive genetic diet optimizer.

The compiled core carries all of the numerics; this package re-exports it and
adds a couple of path helpers for the data files shipped with the repository.
"""

from ._core import (  # noqa: F401
    AggregatedOutput,
    ActivityFactor,
    DataError,
    Disease,
    FitnessConfig,
    FoodDatabase,
    FoodRecord,
    GaConfig,
    GaParamController,
    GuardError,
    MembershipFunction,
    MutationPool,
    NutrientTargets,
    NutrientTotals,
    NutritionTables,
    ParamDecision,
    ParamMode,
    PatientProfile,
    RunResult,
    ScalingMode,
    Sex,
    StressFactor,
    TraceRow,
    Universe,
    ValidationError,
    __version__,
    bmr,
    brute_force_best,
    defuzz_centroid,
    evolve,
    fitness,
    nutrient_totals,
    per_kg_energy,
    targets_for,
    total_energy,
    tracked_deviation,
)

__all__ = [name for name in dir() if not name.startswith("_")]
