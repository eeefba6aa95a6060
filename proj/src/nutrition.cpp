#include "fgdiet/nutrition.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace fgdiet {

namespace {

using nlohmann::json;

const std::map<std::string, Disease>& disease_names() {
    static const std::map<std::string, Disease> names = {
        {"nephrotic_syndrome", Disease::nephrotic_syndrome},
        {"acute_renal_failure", Disease::acute_renal_failure},
        {"chronic_kidney", Disease::chronic_kidney},
        {"final_stage", Disease::final_stage},
        {"kidney_stone", Disease::kidney_stone},
    };
    return names;
}

}  // namespace

std::string to_string(Disease d) {
    for (const auto& [name, value] : disease_names()) {
        if (value == d) return name;
    }
    return "unknown";
}

Disease disease_from_string(const std::string& name) {
    auto it = disease_names().find(name);
    if (it == disease_names().end()) {
        throw ValidationError("unknown disease '" + name + "'");
    }
    return it->second;
}

std::string to_string(Sex s) {
    return s == Sex::male ? "male" : "female";
}

Sex sex_from_string(const std::string& name) {
    if (name == "male") return Sex::male;
    if (name == "female") return Sex::female;
    throw ValidationError("unknown sex '" + name + "' (expected male or female)");
}

void PatientProfile::validate() const {
    if (!(weight_kg > 0.0)) throw ValidationError("body weight must be > 0 kg");
    if (!(height_cm > 0.0)) throw ValidationError("height must be > 0 cm");
    if (age_years < 0.0) throw ValidationError("age must be >= 0 years");
}

const char* NutritionTables::default_tables_text() {
    return R"json({
  "version": 1,
  "atwater_kcal_per_g": {"protein": 4, "carbohydrate": 4, "fat": 9},
  "potassium_mg_per_meq": 39.1,
  "activity_factors": {"bed_rest": 1.2, "ambulatory": 1.3},
  "stress_factors": {
    "none": 1.3,
    "minor": 1.4,
    "moderate": 1.5,
    "major": 1.6,
    "very_severe": 1.7,
    "severe_burns": 2.1
  },
  "diet_rules": {
    "nephrotic_syndrome": {
      "energy_kcal_per_kg": 35,
      "protein_g_per_kg": 1.0,
      "fat_fraction_of_energy": 0.175,
      "sodium_mg": 1000
    },
    "acute_renal_failure": {
      "energy_kcal_per_kg": 30,
      "protein_g_per_kg": 0.8,
      "fat_fraction_of_energy": 0.25
    },
    "chronic_kidney": {
      "energy_kcal_per_kg": 35,
      "protein_g_per_kg": 0.7,
      "fat_fraction_of_energy": 0.25,
      "potassium_meq": 55
    },
    "final_stage": {
      "energy_kcal_per_kg": 32.5,
      "protein_g_per_kg": 1.4,
      "fat_fraction_of_energy": 0.3,
      "calcium_mg": 1000,
      "phosphorus_mg": 1000
    },
    "kidney_stone": {
      "energy_kcal_per_kg": 35,
      "protein_g_per_kg": 1.1,
      "carb_fraction_of_energy": 0.65,
      "fat_fraction_of_energy": 0.225,
      "calcium_mg": 1000,
      "phosphorus_mg_per_kg": 17
    }
  }
}
)json";
}

NutritionTables NutritionTables::from_json_text(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw DataError(std::string("nutrition tables are not valid JSON: ") + e.what());
    }
    NutritionTables t;
    try {
        const json& atwater = doc.at("atwater_kcal_per_g");
        t.atwater_protein_kcal_per_g = atwater.at("protein").get<double>();
        t.atwater_carb_kcal_per_g = atwater.at("carbohydrate").get<double>();
        t.atwater_fat_kcal_per_g = atwater.at("fat").get<double>();
        t.potassium_mg_per_meq = doc.at("potassium_mg_per_meq").get<double>();
        for (const auto& [label, value] : doc.at("activity_factors").items()) {
            t.activity_factors[label] = value.get<double>();
        }
        for (const auto& [label, value] : doc.at("stress_factors").items()) {
            t.stress_factors[label] = value.get<double>();
        }
        for (const auto& [name, node] : doc.at("diet_rules").items()) {
            DietRule rule;
            rule.energy_kcal_per_kg = node.at("energy_kcal_per_kg").get<double>();
            rule.protein_g_per_kg = node.at("protein_g_per_kg").get<double>();
            if (node.contains("fat_fraction_of_energy")) {
                rule.fat_fraction_of_energy = node.at("fat_fraction_of_energy").get<double>();
            }
            if (node.contains("carb_fraction_of_energy")) {
                rule.carb_fraction_of_energy = node.at("carb_fraction_of_energy").get<double>();
            }
            if (node.contains("sodium_mg")) {
                rule.sodium_mg = node.at("sodium_mg").get<double>();
            }
            if (node.contains("potassium_meq")) {
                rule.potassium_meq = node.at("potassium_meq").get<double>();
            }
            if (node.contains("calcium_mg")) {
                rule.calcium_mg = node.at("calcium_mg").get<double>();
            }
            if (node.contains("phosphorus_mg")) {
                rule.phosphorus_mg = node.at("phosphorus_mg").get<double>();
            }
            if (node.contains("phosphorus_mg_per_kg")) {
                rule.phosphorus_mg_per_kg = node.at("phosphorus_mg_per_kg").get<double>();
            }
            t.diet_rules[disease_from_string(name)] = rule;
        }
    } catch (const json::exception& e) {
        throw DataError(std::string("nutrition tables: ") + e.what());
    }
    for (const auto& [name, d] : disease_names()) {
        if (!t.diet_rules.count(d)) {
            throw DataError("nutrition tables: missing diet rule for '" + name + "'");
        }
    }
    return t;
}

NutritionTables NutritionTables::from_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open nutrition tables: " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return from_json_text(buf.str());
}

const NutritionTables& NutritionTables::defaults() {
    static const NutritionTables tables = from_json_text(default_tables_text());
    return tables;
}

ActivityFactor NutritionTables::activity(const std::string& label) const {
    auto it = activity_factors.find(label);
    if (it == activity_factors.end()) {
        throw ValidationError("unknown activity factor '" + label + "'");
    }
    return {label, it->second};
}

StressFactor NutritionTables::stress(const std::string& label) const {
    auto it = stress_factors.find(label);
    if (it == stress_factors.end()) {
        throw ValidationError("unknown stress factor '" + label + "'");
    }
    return {label, it->second};
}

double bmr(const PatientProfile& profile) {
    profile.validate();
    const double result =
        profile.sex == Sex::male
            ? 66.0 + 13.7 * profile.weight_kg + 5.0 * profile.height_cm -
                  6.8 * profile.age_years
            : 655.0 + 9.6 * profile.weight_kg + 1.8 * profile.height_cm -
                  4.7 * profile.age_years;
    if (!(result > 0.0)) {
        throw ValidationError("degenerate profile: basal metabolic rate is not positive");
    }
    return result;
}

double total_energy(double bmr_kcal, const ActivityFactor& activity,
                    const StressFactor& stress) {
    if (!(bmr_kcal > 0.0)) throw ValidationError("basal metabolic rate must be > 0");
    return bmr_kcal * activity.value * stress.value;
}

double per_kg_energy(Disease disease, const PatientProfile& profile,
                     const NutritionTables& tables) {
    profile.validate();
    return tables.diet_rules.at(disease).energy_kcal_per_kg * profile.weight_kg;
}

NutrientTargets targets_for(Disease disease, const PatientProfile& profile,
                            double energy_kcal, const NutritionTables& tables) {
    profile.validate();
    if (!(energy_kcal > 0.0)) throw ValidationError("energy target must be > 0 kcal");
    const NutritionTables::DietRule& rule = tables.diet_rules.at(disease);

    NutrientTargets t;
    t.energy_kcal = energy_kcal;
    t.protein_g = rule.protein_g_per_kg * profile.weight_kg;
    if (rule.fat_fraction_of_energy) {
        t.fat_g = *rule.fat_fraction_of_energy * energy_kcal / tables.atwater_fat_kcal_per_g;
    }
    if (rule.carb_fraction_of_energy) {
        t.carb_g = *rule.carb_fraction_of_energy * energy_kcal / tables.atwater_carb_kcal_per_g;
    }
    if (rule.sodium_mg) t.sodium_mg = *rule.sodium_mg;
    if (rule.potassium_meq) {
        t.potassium_mg = *rule.potassium_meq * tables.potassium_mg_per_meq;
    }
    if (rule.calcium_mg) t.calcium_mg = *rule.calcium_mg;
    if (rule.phosphorus_mg) t.phosphorus_mg = *rule.phosphorus_mg;
    if (rule.phosphorus_mg_per_kg) {
        t.phosphorus_mg = *rule.phosphorus_mg_per_kg * profile.weight_kg;
    }
    return t;
}

}  // namespace fgdiet
