#include "fgdiet/controller.hpp"

#include <array>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace fgdiet {

namespace {

using nlohmann::json;

constexpr std::array<const char*, 3> kGenerationLabels = {"short", "medium", "long"};
constexpr std::array<const char*, 3> kPopulationLabels = {"small", "medium", "big"};

// Rows: generation short/medium/long. Columns: population small/medium/big.
constexpr std::array<std::array<const char*, 3>, 3> kPcGrid = {{
    {"medium", "small", "small"},
    {"big", "big", "medium"},
    {"very_big", "very_big", "big"},
}};
constexpr std::array<std::array<const char*, 3>, 3> kPmGrid = {{
    {"big", "medium", "small"},
    {"medium", "small", "very_small"},
    {"small", "very_small", "very_small"},
}};

struct VariableSpec {
    const char* name;
    double lo;
    double hi;
    std::vector<const char*> labels;
};

const std::vector<VariableSpec>& variable_specs() {
    static const std::vector<VariableSpec> specs = {
        {GaParamController::kPopulationVar, 0.0, 150.0, {"small", "medium", "big"}},
        {GaParamController::kGenerationVar, 0.0, 1500.0, {"short", "medium", "long"}},
        {GaParamController::kPcVar, 0.0, 1.0, {"small", "medium", "big", "very_big"}},
        {GaParamController::kPmVar, 0.0, 1.0, {"very_small", "small", "medium", "big"}},
    };
    return specs;
}

fuzzy::MembershipFunction parse_mf(const json& set_node, const std::string& var,
                                   const std::string& label) {
    const std::string where = "variable '" + var + "' set '" + label + "'";
    if (!set_node.contains("shape") || !set_node.contains("points")) {
        throw DataError("controller config: " + where + " needs 'shape' and 'points'");
    }
    const std::string shape = set_node.at("shape").get<std::string>();
    std::vector<double> pts;
    try {
        pts = set_node.at("points").get<std::vector<double>>();
    } catch (const json::exception&) {
        throw DataError("controller config: " + where + " has non-numeric points");
    }
    try {
        if (shape == "shoulder_left" && pts.size() == 2) {
            return fuzzy::MembershipFunction::shoulder_left(pts[0], pts[1]);
        }
        if (shape == "shoulder_right" && pts.size() == 2) {
            return fuzzy::MembershipFunction::shoulder_right(pts[0], pts[1]);
        }
        if (shape == "pi" && pts.size() == 4) {
            return fuzzy::MembershipFunction::pi(pts[0], pts[1], pts[2], pts[3]);
        }
    } catch (const ValidationError& e) {
        throw DataError("controller config: " + where + ": " + e.what());
    }
    throw DataError("controller config: " + where + " has unknown shape '" + shape +
                    "' or wrong point count");
}

std::vector<fuzzy::Rule> build_rules() {
    std::vector<fuzzy::Rule> rules;
    rules.reserve(18);
    for (std::size_t g = 0; g < 3; ++g) {
        for (std::size_t p = 0; p < 3; ++p) {
            rules.push_back({{{GaParamController::kGenerationVar, kGenerationLabels[g]},
                              {GaParamController::kPopulationVar, kPopulationLabels[p]}},
                             {GaParamController::kPcVar, kPcGrid[g][p]}});
            rules.push_back({{{GaParamController::kGenerationVar, kGenerationLabels[g]},
                              {GaParamController::kPopulationVar, kPopulationLabels[p]}},
                             {GaParamController::kPmVar, kPmGrid[g][p]}});
        }
    }
    return rules;
}

}  // namespace

const char* GaParamController::default_config_text() {
    return R"json({
  "version": 1,
  "resolution": 1001,
  "variables": {
    "population_size": {
      "universe": [0, 150],
      "sets": [
        {"label": "small", "shape": "shoulder_left", "points": [50, 60]},
        {"label": "medium", "shape": "pi", "points": [50, 60, 100, 110]},
        {"label": "big", "shape": "shoulder_right", "points": [100, 110]}
      ]
    },
    "generation": {
      "universe": [0, 1500],
      "sets": [
        {"label": "short", "shape": "shoulder_left", "points": [250, 750]},
        {"label": "medium", "shape": "pi", "points": [250, 750, 1060, 1090]},
        {"label": "long", "shape": "shoulder_right", "points": [1060, 1090]}
      ]
    },
    "crossover_probability": {
      "universe": [0, 1],
      "sets": [
        {"label": "small", "shape": "pi", "points": [-0.002, 0.168, 0.168, 0.338]},
        {"label": "medium", "shape": "pi", "points": [0.259, 0.429, 0.429, 0.599]},
        {"label": "big", "shape": "pi", "points": [0.43, 0.6, 0.6, 0.77]},
        {"label": "very_big", "shape": "pi", "points": [0.69, 0.86, 0.86, 1.03]}
      ]
    },
    "mutation_probability": {
      "universe": [0, 1],
      "sets": [
        {"label": "very_small", "shape": "pi", "points": [-0.039, 0.131, 0.131, 0.301]},
        {"label": "small", "shape": "pi", "points": [0.13, 0.3, 0.3, 0.47]},
        {"label": "medium", "shape": "pi", "points": [0.319, 0.489, 0.489, 0.659]},
        {"label": "big", "shape": "pi", "points": [0.655, 0.83, 0.83, 1.005]}
      ]
    }
  }
}
)json";
}

GaParamController::GaParamController(std::shared_ptr<const fuzzy::MamdaniEngine> engine)
    : engine_(std::move(engine)) {}

GaParamController GaParamController::with_default_config() {
    return from_json_text(default_config_text());
}

GaParamController GaParamController::from_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw DataError("cannot open controller config: " + path.string());
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return from_json_text(buf.str());
}

GaParamController GaParamController::from_json_text(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw DataError(std::string("controller config is not valid JSON: ") + e.what());
    }
    if (!doc.contains("variables")) {
        throw DataError("controller config: missing 'variables'");
    }
    const int resolution = doc.value("resolution", 1001);

    std::vector<fuzzy::LinguisticVariable> variables;
    for (const auto& spec : variable_specs()) {
        if (!doc.at("variables").contains(spec.name)) {
            throw DataError(std::string("controller config: missing variable '") +
                            spec.name + "'");
        }
        const json& node = doc.at("variables").at(spec.name);
        const auto uni = node.value("universe", std::vector<double>{});
        if (uni.size() != 2 || uni[0] != spec.lo || uni[1] != spec.hi) {
            std::ostringstream msg;
            msg << "controller config: variable '" << spec.name << "' universe must be ["
                << spec.lo << ", " << spec.hi << "]";
            throw DataError(msg.str());
        }
        if (!node.contains("sets") || node.at("sets").size() != spec.labels.size()) {
            std::ostringstream msg;
            msg << "controller config: variable '" << spec.name << "' needs exactly "
                << spec.labels.size() << " sets";
            throw DataError(msg.str());
        }
        std::vector<fuzzy::FuzzySet> sets;
        for (std::size_t i = 0; i < spec.labels.size(); ++i) {
            const json& set_node = node.at("sets").at(i);
            const std::string label = set_node.value("label", "");
            if (label != spec.labels[i]) {
                throw DataError(std::string("controller config: variable '") + spec.name +
                                "' set " + std::to_string(i) + " must be labeled '" +
                                spec.labels[i] + "'");
            }
            sets.push_back({label, parse_mf(set_node, spec.name, label)});
        }
        try {
            variables.emplace_back(spec.name, fuzzy::Universe(spec.lo, spec.hi),
                                   std::move(sets));
        } catch (const ValidationError& e) {
            throw DataError(std::string("controller config: variable '") + spec.name +
                            "': " + e.what());
        }
    }

    auto engine = std::make_shared<fuzzy::MamdaniEngine>(std::move(variables),
                                                         build_rules(), resolution);
    return GaParamController(std::move(engine));
}

ParamDecision GaParamController::decide(double population_size, double generation) const {
    const std::map<std::string, double> inputs = {
        {kPopulationVar, population_size},
        {kGenerationVar, generation},
    };
    return {engine_->infer(inputs, kPcVar).value, engine_->infer(inputs, kPmVar).value};
}

namespace {

std::string grid_lookup(const std::array<std::array<const char*, 3>, 3>& grid,
                        const std::string& generation_label,
                        const std::string& population_label) {
    for (std::size_t g = 0; g < 3; ++g) {
        if (generation_label != kGenerationLabels[g]) continue;
        for (std::size_t p = 0; p < 3; ++p) {
            if (population_label == kPopulationLabels[p]) return grid[g][p];
        }
    }
    throw ValidationError("no rule for (" + generation_label + ", " + population_label +
                          ")");
}

}  // namespace

std::string GaParamController::pc_consequent(const std::string& generation_label,
                                             const std::string& population_label) const {
    return grid_lookup(kPcGrid, generation_label, population_label);
}

std::string GaParamController::pm_consequent(const std::string& generation_label,
                                             const std::string& population_label) const {
    return grid_lookup(kPmGrid, generation_label, population_label);
}

}  // namespace fgdiet
