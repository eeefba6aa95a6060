#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>

#include "fgdiet/errors.hpp"

namespace fgdiet {

enum class Sex { male, female };

struct PatientProfile {
    Sex sex = Sex::male;
    double weight_kg = 0.0;
    double height_cm = 0.0;
    double age_years = 0.0;

    /// Throws ValidationError unless weight > 0, height > 0, age >= 0.
    void validate() const;
};

struct ActivityFactor {
    std::string label;
    double value = 1.0;
};

struct StressFactor {
    std::string label;
    double value = 1.0;
};

enum class Disease {
    nephrotic_syndrome,
    acute_renal_failure,
    chronic_kidney,
    final_stage,
    kidney_stone,
};

std::string to_string(Disease d);
Disease disease_from_string(const std::string& name);
std::string to_string(Sex s);
Sex sex_from_string(const std::string& name);

/// Daily target vector. Energy/protein/fat appear for every disease; the
/// optional fields are populated per disease to match its fitness equation:
/// nephrotic {energy,protein,fat,sodium}, acute {energy,protein,fat},
/// chronic {energy,protein,fat,potassium},
/// final stage {energy,protein,fat,calcium,phosphorus},
/// kidney stone {energy,protein,carb,fat,calcium,phosphorus}.
struct NutrientTargets {
    double energy_kcal = 0.0;
    double protein_g = 0.0;
    double fat_g = 0.0;
    std::optional<double> sodium_mg;
    std::optional<double> potassium_mg;
    std::optional<double> phosphorus_mg;
    std::optional<double> calcium_mg;
    std::optional<double> carb_g;
};

/// Per-disease diet rule parameters plus the unit-conversion constants.
/// Ships as data/nutrition.json so dietetic revisions need no code change.
struct NutritionTables {
    struct DietRule {
        double energy_kcal_per_kg = 0.0;
        double protein_g_per_kg = 0.0;
        std::optional<double> fat_fraction_of_energy;
        std::optional<double> carb_fraction_of_energy;
        std::optional<double> sodium_mg;
        std::optional<double> potassium_meq;
        std::optional<double> calcium_mg;
        std::optional<double> phosphorus_mg;
        std::optional<double> phosphorus_mg_per_kg;
    };

    double atwater_protein_kcal_per_g = 4.0;
    double atwater_carb_kcal_per_g = 4.0;
    double atwater_fat_kcal_per_g = 9.0;
    double potassium_mg_per_meq = 39.1;
    std::map<std::string, double> activity_factors;
    std::map<std::string, double> stress_factors;
    std::map<Disease, DietRule> diet_rules;

    static const NutritionTables& defaults();
    static NutritionTables from_json_text(const std::string& text);
    static NutritionTables from_json_file(const std::filesystem::path& path);

    /// Embedded default tables, byte-identical to data/nutrition.json.
    static const char* default_tables_text();

    ActivityFactor activity(const std::string& label) const;
    StressFactor stress(const std::string& label) const;
};

/// Harris-Benedict basal metabolic rate, kcal/day.
/// male:   66 + 13.7*BW + 5*H - 6.8*A
/// female: 655 + 9.6*BW + 1.8*H - 4.7*A
double bmr(const PatientProfile& profile);

/// bmr * activity factor * stress factor.
double total_energy(double bmr_kcal, const ActivityFactor& activity,
                    const StressFactor& stress);

/// Disease-specific per-kg daily energy (the alternative to Harris-Benedict).
double per_kg_energy(Disease disease, const PatientProfile& profile,
                     const NutritionTables& tables = NutritionTables::defaults());

/// Builds the target vector for `disease` from the patient and a daily energy
/// value. Per-kg rules scale by body weight, percent-of-energy rules convert
/// through the Atwater factors, potassium converts at mg-per-mEq.
NutrientTargets targets_for(Disease disease, const PatientProfile& profile,
                            double energy_kcal,
                            const NutritionTables& tables = NutritionTables::defaults());

}  // namespace fgdiet
