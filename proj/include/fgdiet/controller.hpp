#pragma once

#include <filesystem>
#include <memory>
#include <string>

#include "fgdiet/fuzzy.hpp"

namespace fgdiet {

struct ParamDecision {
    double pc = 0.0;
    double pm = 0.0;
};

/// Two-input / two-output fuzzy controller mapping (population size,
/// generation) to (crossover probability, mutation probability).
///
/// Variables: population_size over [0,150] {small, medium, big},
/// generation over [0,1500] {short, medium, long},
/// crossover_probability over [0,1] {small, medium, big, very_big},
/// mutation_probability over [0,1] {very_small, small, medium, big}.
/// The 18-rule base is fixed; membership breakpoints come from a versioned
/// JSON config (a calibrated default ships with the library).
class GaParamController {
public:
    static GaParamController with_default_config();
    static GaParamController from_json_text(const std::string& text);
    static GaParamController from_json_file(const std::filesystem::path& path);

    /// The embedded default config, byte-identical to the shipped
    /// data/fuzzy_controller.json.
    static const char* default_config_text();

    /// Inputs are clamped into their universes; pure and thread-safe.
    ParamDecision decide(double population_size, double generation) const;

    const fuzzy::MamdaniEngine& engine() const { return *engine_; }
    std::size_t rule_count() const { return engine_->rules().size(); }

    /// Consequent-label lookup in the rule grids, e.g. ("short","small").
    std::string pc_consequent(const std::string& generation_label,
                              const std::string& population_label) const;
    std::string pm_consequent(const std::string& generation_label,
                              const std::string& population_label) const;

    static constexpr const char* kPopulationVar = "population_size";
    static constexpr const char* kGenerationVar = "generation";
    static constexpr const char* kPcVar = "crossover_probability";
    static constexpr const char* kPmVar = "mutation_probability";

private:
    explicit GaParamController(std::shared_ptr<const fuzzy::MamdaniEngine> engine);

    std::shared_ptr<const fuzzy::MamdaniEngine> engine_;
};

}  // namespace fgdiet
