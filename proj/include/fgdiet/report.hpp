#pragma once

#include <ostream>
#include <string>

#include "fgdiet/ga.hpp"

namespace fgdiet {

/// Shortest round-trip decimal representation (parses back bit-exact).
std::string format_double(double value);

/// CSV trace: header `generation,best_fitness,mean_fitness,pc,pm`,
/// one row per generation. Byte-identical for identical runs.
void write_trace_csv(std::ostream& out, const RunResult& result);

struct ReportContext {
    PatientProfile patient;
    ActivityFactor activity;
    StressFactor stress;
    double bmr_kcal = 0.0;
    double energy_kcal = 0.0;
    std::string energy_mode;
    FitnessConfig fitness_config;
    GaConfig ga_config;
};

/// Human-readable run report: patient and energy header, applied GA
/// parameters, the best foods with index/code/name/serving grams, and a
/// totals-vs-targets table. Format is versioned.
void write_report(std::ostream& out, const ReportContext& ctx,
                  const RunResult& result, const FoodDatabase& db);

}  // namespace fgdiet
