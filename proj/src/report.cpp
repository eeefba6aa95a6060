#include "fgdiet/report.hpp"

#include <array>
#include <charconv>
#include <iomanip>

namespace fgdiet {

std::string format_double(double value) {
    std::array<char, 32> buf;
    auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    return std::string(buf.data(), ptr);
}

void write_trace_csv(std::ostream& out, const RunResult& result) {
    out << "generation,best_fitness,mean_fitness,pc,pm\n";
    for (const TraceRow& row : result.trace) {
        out << row.generation << ',' << format_double(row.best_fitness) << ','
            << format_double(row.mean_fitness) << ',' << format_double(row.pc) << ','
            << format_double(row.pm) << '\n';
    }
}

namespace {

struct TargetRow {
    const char* nutrient;
    double target;
    double total;
};

void append_target_rows(std::vector<TargetRow>& rows, const FitnessConfig& cfg,
                        const NutrientTotals& totals) {
    const NutrientTargets& t = cfg.targets;
    rows.push_back({"energy_kcal", t.energy_kcal, totals.energy_kcal});
    rows.push_back({"protein_g", t.protein_g, totals.protein_g});
    if (t.carb_g) rows.push_back({"carb_g", *t.carb_g, totals.carb_g});
    rows.push_back({"fat_g", t.fat_g, totals.fat_g});
    if (t.sodium_mg) rows.push_back({"sodium_mg", *t.sodium_mg, totals.sodium_mg});
    if (t.potassium_mg) {
        rows.push_back({"potassium_mg", *t.potassium_mg, totals.potassium_mg});
    }
    if (t.calcium_mg) rows.push_back({"calcium_mg", *t.calcium_mg, totals.calcium_mg});
    if (t.phosphorus_mg) {
        rows.push_back({"phosphorus_mg", *t.phosphorus_mg, totals.phosphorus_mg});
    }
}

}  // namespace

void write_report(std::ostream& out, const ReportContext& ctx, const RunResult& result,
                  const FoodDatabase& db) {
    const NutrientTotals totals =
        nutrient_totals(result.best, db, ctx.fitness_config.scaling);
    const double deviation = tracked_deviation(totals, ctx.fitness_config);

    out << "diet optimization report (format 1)\n";
    out << "====================================\n";
    out << "patient: " << to_string(ctx.patient.sex) << ", " << ctx.patient.weight_kg
        << " kg, " << ctx.patient.height_cm << " cm, " << ctx.patient.age_years
        << " y\n";
    out << "activity: " << ctx.activity.label << " (" << ctx.activity.value << ")"
        << "   stress: " << ctx.stress.label << " (" << ctx.stress.value << ")\n";
    out << std::fixed << std::setprecision(2);
    out << "bmr: " << ctx.bmr_kcal << " kcal/day\n";
    out << "energy: " << ctx.energy_kcal << " kcal/day (" << ctx.energy_mode << ")\n";
    out << "disease: " << to_string(ctx.fitness_config.disease) << "\n";
    out << "ga: population " << ctx.ga_config.population_size << ", generations "
        << ctx.ga_config.max_generations << ", mode " << to_string(ctx.ga_config.mode)
        << ", seed " << ctx.ga_config.seed << ", epsilon "
        << format_double(ctx.fitness_config.epsilon) << ", scaling "
        << to_string(ctx.fitness_config.scaling) << "\n";
    if (!result.trace.empty()) {
        out << "applied pc/pm: " << format_double(result.trace.front().pc) << " / "
            << format_double(result.trace.front().pm);
        if (ctx.ga_config.mode == ParamMode::dynamic_fuzzy) {
            out << " (first generation; see trace for the schedule)";
        }
        out << "\n";
    }
    out << "best fitness: " << format_double(result.best_fitness) << " (generation "
        << result.best_generation << ")\n";
    out << "total tracked deviation: " << format_double(deviation) << "\n";
    out << "\nfoods:\n";
    out << "  " << std::left << std::setw(7) << "index" << std::setw(10) << "code"
        << std::setw(42) << "name" << std::right << std::setw(10) << "serving_g"
        << "\n";
    for (std::int32_t gene : result.best) {
        const FoodRecord& r = db.get(gene);
        out << "  " << std::left << std::setw(7) << gene << std::setw(10) << r.code
            << std::setw(42) << r.name << std::right << std::setw(10)
            << format_double(r.serving_g) << "\n";
    }
    out << "\ntotals vs targets:\n";
    out << "  " << std::left << std::setw(15) << "nutrient" << std::right
        << std::setw(12) << "total" << std::setw(12) << "target" << std::setw(12)
        << "deviation" << "\n";
    std::vector<TargetRow> rows;
    append_target_rows(rows, ctx.fitness_config, totals);
    for (const TargetRow& row : rows) {
        out << "  " << std::left << std::setw(15) << row.nutrient << std::right
            << std::setw(12) << row.total << std::setw(12) << row.target
            << std::setw(12) << std::abs(row.target - row.total) << "\n";
    }
}

}  // namespace fgdiet
