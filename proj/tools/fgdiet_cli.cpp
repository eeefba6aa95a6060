// Command line surface: run a diet optimization for a patient, compare
// configurations over seeds, or run the exhaustive oracle.
//
// Exit codes: 0 success, 2 input/usage error, 3 data/file error,
// 4 enumeration guard error, 1 unexpected failure.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <vector>

#include <CLI11.hpp>

#include "fgdiet/ga.hpp"
#include "fgdiet/report.hpp"

namespace fs = std::filesystem;
using namespace fgdiet;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitData = 3;
constexpr int kExitGuard = 4;

struct CommonOpts {
    std::string foods_path;
    std::string sex = "male";
    double weight_kg = 50.0;
    double height_cm = 165.0;
    double age_years = 40.0;
    std::string activity = "bed_rest";
    std::string stress = "minor";
    std::string disease = "nephrotic_syndrome";
    std::string energy_mode = "harris-benedict";
    std::string scaling = "per-100g";
    double epsilon = 0.01;
    std::string controller_config;
    std::string nutrition_config;
};

struct GaOpts {
    int population = 150;
    int generations = 1500;
    int genes = 10;
    std::string mode = "static";
    double pc = 0.6;
    double pm = 0.1;
    std::uint64_t seed = 0;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--foods", o.foods_path, "food database CSV")->required();
    cmd->add_option("--sex", o.sex, "male|female")->capture_default_str();
    cmd->add_option("--weight-kg", o.weight_kg)->capture_default_str();
    cmd->add_option("--height-cm", o.height_cm)->capture_default_str();
    cmd->add_option("--age", o.age_years)->capture_default_str();
    cmd->add_option("--activity", o.activity, "bed_rest|ambulatory")->capture_default_str();
    cmd->add_option("--stress", o.stress,
                    "none|minor|moderate|major|very_severe|severe_burns")
        ->capture_default_str();
    cmd->add_option("--disease", o.disease,
                    "nephrotic_syndrome|acute_renal_failure|chronic_kidney|"
                    "final_stage|kidney_stone")
        ->capture_default_str();
    cmd->add_option("--energy-mode", o.energy_mode, "harris-benedict|per-kg")
        ->capture_default_str();
    cmd->add_option("--scaling", o.scaling, "per-100g|per-serving")->capture_default_str();
    cmd->add_option("--epsilon", o.epsilon, "fitness epsilon")->capture_default_str();
    cmd->add_option("--controller-config", o.controller_config,
                    "fuzzy controller JSON (default: built-in calibration)");
    cmd->add_option("--nutrition-config", o.nutrition_config,
                    "nutrition tables JSON (default: built-in tables)");
}

struct ResolvedCase {
    PatientProfile patient;
    ActivityFactor activity;
    StressFactor stress;
    Disease disease;
    double bmr_kcal = 0.0;
    double energy_kcal = 0.0;
    FitnessConfig fitness_config;
    NutritionTables tables;
};

ResolvedCase resolve_case(const CommonOpts& o) {
    ResolvedCase rc;
    rc.tables = o.nutrition_config.empty()
                    ? NutritionTables::defaults()
                    : NutritionTables::from_json_file(o.nutrition_config);
    rc.patient = {sex_from_string(o.sex), o.weight_kg, o.height_cm, o.age_years};
    rc.activity = rc.tables.activity(o.activity);
    rc.stress = rc.tables.stress(o.stress);
    rc.disease = disease_from_string(o.disease);
    rc.bmr_kcal = bmr(rc.patient);
    if (o.energy_mode == "harris-benedict") {
        rc.energy_kcal = total_energy(rc.bmr_kcal, rc.activity, rc.stress);
    } else if (o.energy_mode == "per-kg") {
        rc.energy_kcal = per_kg_energy(rc.disease, rc.patient, rc.tables);
    } else {
        throw ValidationError("unknown energy mode '" + o.energy_mode +
                              "' (expected harris-benedict or per-kg)");
    }
    rc.fitness_config = {rc.disease,
                         targets_for(rc.disease, rc.patient, rc.energy_kcal, rc.tables),
                         o.epsilon, scaling_from_string(o.scaling)};
    rc.fitness_config.validate();
    return rc;
}

GaParamController load_controller(const CommonOpts& o) {
    return o.controller_config.empty()
               ? GaParamController::with_default_config()
               : GaParamController::from_json_file(o.controller_config);
}

GaConfig make_ga_config(const GaOpts& g, std::uint64_t seed) {
    GaConfig cfg;
    cfg.population_size = g.population;
    cfg.max_generations = g.generations;
    cfg.chromosome_length = g.genes;
    cfg.mode = param_mode_from_string(g.mode);
    cfg.fixed_pc = g.pc;
    cfg.fixed_pm = g.pm;
    cfg.seed = seed;
    cfg.validate();
    return cfg;
}

int cmd_run(const CommonOpts& common, const GaOpts& ga, const std::string& out_dir) {
    const ResolvedCase rc = resolve_case(common);
    const FoodDatabase db = FoodDatabase::load_csv(common.foods_path);
    const GaParamController controller = load_controller(common);
    const GaConfig ga_config = make_ga_config(ga, ga.seed);

    const RunResult result = evolve(db, rc.fitness_config, ga_config, &controller);

    fs::create_directories(out_dir);
    const fs::path trace_path = fs::path(out_dir) / "trace.csv";
    const fs::path report_path = fs::path(out_dir) / "report.txt";
    {
        std::ofstream trace(trace_path, std::ios::binary);
        if (!trace) throw DataError("cannot write " + trace_path.string());
        write_trace_csv(trace, result);
    }
    ReportContext ctx{rc.patient, rc.activity, rc.stress,  rc.bmr_kcal,
                      rc.energy_kcal, common.energy_mode, rc.fitness_config, ga_config};
    {
        std::ofstream report(report_path, std::ios::binary);
        if (!report) throw DataError("cannot write " + report_path.string());
        write_report(report, ctx, result, db);
    }
    std::ostringstream summary;
    write_report(summary, ctx, result, db);
    std::cout << summary.str();
    std::cout << "\ntrace: " << trace_path.string() << "\nreport: " << report_path.string()
              << "\n";
    return kExitOk;
}

int cmd_compare(CommonOpts common, const GaOpts& ga,
                const std::vector<std::string>& config_specs,
                const std::vector<std::string>& diseases, int seeds,
                std::uint64_t seed0, const std::string& out_dir, bool baseline,
                double baseline_pc, double baseline_pm) {
    if (seeds < 1) throw ValidationError("--seeds must be >= 1");
    if (config_specs.empty()) throw ValidationError("at least one --config is required");

    struct Config {
        int population;
        int generations;
        ParamMode mode;
        double pc = 0.0, pm = 0.0;
    };
    std::vector<Config> configs;
    for (const std::string& spec : config_specs) {
        const auto x = spec.find('x');
        if (x == std::string::npos) {
            throw ValidationError("--config expects POPxGENS, got '" + spec + "'");
        }
        try {
            configs.push_back({std::stoi(spec.substr(0, x)), std::stoi(spec.substr(x + 1)),
                               param_mode_from_string(ga.mode), ga.pc, ga.pm});
        } catch (const std::invalid_argument&) {
            throw ValidationError("--config expects POPxGENS, got '" + spec + "'");
        }
    }
    if (baseline) {
        const std::size_t n = configs.size();
        for (std::size_t i = 0; i < n; ++i) {
            Config c = configs[i];
            c.mode = ParamMode::fixed;
            c.pc = baseline_pc;
            c.pm = baseline_pm;
            configs.push_back(c);
        }
    }

    const FoodDatabase db = FoodDatabase::load_csv(common.foods_path);
    const GaParamController controller = load_controller(common);

    fs::create_directories(out_dir);
    std::ofstream runs(fs::path(out_dir) / "compare_runs.csv", std::ios::binary);
    std::ofstream summary(fs::path(out_dir) / "compare_summary.csv", std::ios::binary);
    runs << "disease,population,generations,mode,pc,pm,seed,best_fitness,status\n";
    summary << "disease,population,generations,mode,pc,pm,seeds,best_fitness_mean,"
               "best_fitness_median,best_fitness_max\n";

    for (const std::string& disease_name : diseases) {
        common.disease = disease_name;
        for (const Config& cfg : configs) {
            std::vector<double> best;
            double applied_pc = cfg.pc, applied_pm = cfg.pm;
            for (int s = 0; s < seeds; ++s) {
                const std::uint64_t seed = seed0 + static_cast<std::uint64_t>(s);
                try {
                    const ResolvedCase rc = resolve_case(common);
                    GaOpts cell = ga;
                    cell.population = cfg.population;
                    cell.generations = cfg.generations;
                    cell.mode = to_string(cfg.mode);
                    cell.pc = cfg.pc;
                    cell.pm = cfg.pm;
                    const GaConfig ga_config = make_ga_config(cell, seed);
                    const RunResult r = evolve(db, rc.fitness_config, ga_config, &controller);
                    best.push_back(r.best_fitness);
                    applied_pc = r.trace.front().pc;
                    applied_pm = r.trace.front().pm;
                    runs << disease_name << ',' << cfg.population << ',' << cfg.generations
                         << ',' << to_string(cfg.mode) << ',' << format_double(applied_pc)
                         << ',' << format_double(applied_pm) << ',' << seed << ','
                         << format_double(r.best_fitness) << ",ok\n";
                } catch (const Error& e) {
                    runs << disease_name << ',' << cfg.population << ',' << cfg.generations
                         << ',' << to_string(cfg.mode) << ",,," << seed << ",,error: "
                         << e.what() << "\n";
                }
            }
            if (best.empty()) continue;
            std::vector<double> sorted = best;
            std::sort(sorted.begin(), sorted.end());
            const double mean =
                std::accumulate(sorted.begin(), sorted.end(), 0.0) /
                static_cast<double>(sorted.size());
            const double median = sorted.size() % 2 == 1
                                      ? sorted[sorted.size() / 2]
                                      : 0.5 * (sorted[sorted.size() / 2 - 1] +
                                               sorted[sorted.size() / 2]);
            summary << disease_name << ',' << cfg.population << ',' << cfg.generations
                    << ',' << to_string(cfg.mode) << ',' << format_double(applied_pc) << ','
                    << format_double(applied_pm) << ',' << best.size() << ','
                    << format_double(mean) << ',' << format_double(median) << ','
                    << format_double(sorted.back()) << "\n";
        }
    }
    std::cout << "wrote " << (fs::path(out_dir) / "compare_runs.csv").string() << " and "
              << (fs::path(out_dir) / "compare_summary.csv").string() << "\n";
    return kExitOk;
}

int cmd_oracle(const CommonOpts& common, int genes) {
    const ResolvedCase rc = resolve_case(common);
    const FoodDatabase db = FoodDatabase::load_csv(common.foods_path);
    auto [chrom, fit] = brute_force_best(db, rc.fitness_config, genes);
    const NutrientTotals totals = nutrient_totals(chrom, db, rc.fitness_config.scaling);
    std::cout << "exhaustive optimum over " << db.size() << "^" << genes
              << " chromosomes\n";
    std::cout << "fitness: " << format_double(fit) << "\n";
    std::cout << "deviation: " << format_double(tracked_deviation(totals, rc.fitness_config))
              << "\n";
    std::cout << "genes:";
    for (std::int32_t g : chrom) std::cout << ' ' << g;
    std::cout << "\nfoods:\n";
    for (std::int32_t g : chrom) {
        const FoodRecord& r = db.get(g);
        std::cout << "  " << g << "  " << r.code << "  " << r.name << "\n";
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"fuzzy-adaptive genetic diet optimizer"};
    app.require_subcommand(1);

    CommonOpts run_common, cmp_common, oracle_common;
    GaOpts run_ga, cmp_ga;
    std::string run_out = "out", cmp_out = "out";
    int oracle_genes = 3;
    std::vector<std::string> cmp_configs;
    std::vector<std::string> cmp_diseases;
    int cmp_seeds = 1;
    bool cmp_baseline = false;
    double cmp_baseline_pc = 0.6, cmp_baseline_pm = 0.13;

    CLI::App* run = app.add_subcommand("run", "optimize one diet and write trace/report");
    add_common(run, run_common);
    run->add_option("--pop", run_ga.population)->capture_default_str();
    run->add_option("--gens", run_ga.generations)->capture_default_str();
    run->add_option("--genes", run_ga.genes)->capture_default_str();
    run->add_option("--mode", run_ga.mode, "static|dynamic|fixed")->capture_default_str();
    run->add_option("--pc", run_ga.pc, "crossover probability (fixed mode)")
        ->capture_default_str();
    run->add_option("--pm", run_ga.pm, "mutation probability (fixed mode)")
        ->capture_default_str();
    run->add_option("--seed", run_ga.seed)->capture_default_str();
    run->add_option("--out", run_out, "output directory")->capture_default_str();

    CLI::App* cmp = app.add_subcommand("compare", "sweep configurations x seeds");
    add_common(cmp, cmp_common);
    cmp->add_option("--config", cmp_configs, "configuration POPxGENS (repeatable)")
        ->required();
    cmp->add_option("--compare-disease", cmp_diseases,
                    "disease list for the sweep (default: the --disease value)");
    cmp->add_option("--mode", cmp_ga.mode, "static|dynamic|fixed")->capture_default_str();
    cmp->add_option("--pc", cmp_ga.pc)->capture_default_str();
    cmp->add_option("--pm", cmp_ga.pm)->capture_default_str();
    cmp->add_option("--genes", cmp_ga.genes)->capture_default_str();
    cmp->add_option("--seed", cmp_ga.seed, "first seed; runs use seed..seed+N-1")
        ->capture_default_str();
    cmp->add_option("--seeds", cmp_seeds, "seeds per configuration")->capture_default_str();
    cmp->add_flag("--baseline", cmp_baseline,
                  "also run fixed-parameter baselines of each configuration");
    cmp->add_option("--baseline-pc", cmp_baseline_pc)->capture_default_str();
    cmp->add_option("--baseline-pm", cmp_baseline_pm)->capture_default_str();
    cmp->add_option("--out", cmp_out, "output directory")->capture_default_str();

    CLI::App* oracle = app.add_subcommand("oracle", "exhaustive brute-force optimum");
    add_common(oracle, oracle_common);
    oracle->add_option("--genes", oracle_genes, "chromosome length")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (run->parsed()) return cmd_run(run_common, run_ga, run_out);
        if (cmp->parsed()) {
            std::vector<std::string> diseases =
                cmp_diseases.empty() ? std::vector<std::string>{cmp_common.disease}
                                     : cmp_diseases;
            return cmd_compare(cmp_common, cmp_ga, cmp_configs, diseases, cmp_seeds,
                               cmp_ga.seed, cmp_out, cmp_baseline, cmp_baseline_pc,
                               cmp_baseline_pm);
        }
        if (oracle->parsed()) return cmd_oracle(oracle_common, oracle_genes);
    } catch (const GuardError& e) {
        std::cerr << "guard error: " << e.what() << "\n";
        return kExitGuard;
    } catch (const DataError& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return kExitData;
    } catch (const ValidationError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return kExitUsage;
}
