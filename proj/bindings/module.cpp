#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "fgdiet/controller.hpp"
#include "fgdiet/food_db.hpp"
#include "fgdiet/fuzzy.hpp"
#include "fgdiet/ga.hpp"
#include "fgdiet/nutrition.hpp"
#include "fgdiet/report.hpp"

#include <sstream>

namespace py = pybind11;
using namespace fgdiet;

PYBIND11_MODULE(_core, m) {
    m.doc() = "Fuzzy-adaptive genetic diet optimizer (compiled core)";

    py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
    py::register_exception<DataError>(m, "DataError", PyExc_RuntimeError);
    py::register_exception<GuardError>(m, "GuardError", PyExc_RuntimeError);

    // fuzzy inference
    py::class_<fuzzy::Universe>(m, "Universe")
        .def(py::init<double, double>(), py::arg("lo"), py::arg("hi"))
        .def_readonly("lo", &fuzzy::Universe::lo)
        .def_readonly("hi", &fuzzy::Universe::hi)
        .def("clamp", &fuzzy::Universe::clamp);

    py::class_<fuzzy::MembershipFunction>(m, "MembershipFunction")
        .def_static("shoulder_left", &fuzzy::MembershipFunction::shoulder_left,
                    py::arg("plateau_end"), py::arg("foot"))
        .def_static("shoulder_right", &fuzzy::MembershipFunction::shoulder_right,
                    py::arg("foot"), py::arg("plateau_start"))
        .def_static("pi", &fuzzy::MembershipFunction::pi, py::arg("left_foot"),
                    py::arg("left_shoulder"), py::arg("right_shoulder"),
                    py::arg("right_foot"))
        .def("eval", &fuzzy::MembershipFunction::eval, py::arg("x"));

    py::class_<fuzzy::AggregatedOutput>(m, "AggregatedOutput")
        .def_readonly("variable", &fuzzy::AggregatedOutput::variable)
        .def_readonly("degrees", &fuzzy::AggregatedOutput::degrees)
        .def("x_at", &fuzzy::AggregatedOutput::x_at);

    m.def("defuzz_centroid", &fuzzy::defuzz_centroid, py::arg("aggregated"));

    // controller
    py::class_<ParamDecision>(m, "ParamDecision")
        .def_readonly("pc", &ParamDecision::pc)
        .def_readonly("pm", &ParamDecision::pm)
        .def("__repr__", [](const ParamDecision& d) {
            std::ostringstream s;
            s << "ParamDecision(pc=" << d.pc << ", pm=" << d.pm << ")";
            return s.str();
        });

    py::class_<GaParamController>(m, "GaParamController")
        .def_static("with_default_config", &GaParamController::with_default_config)
        .def_static("from_json_file", &GaParamController::from_json_file, py::arg("path"))
        .def_static("from_json_text", &GaParamController::from_json_text, py::arg("text"))
        .def_static("default_config_text",
                    [] { return std::string(GaParamController::default_config_text()); })
        .def("decide", &GaParamController::decide, py::arg("population_size"),
             py::arg("generation"))
        .def("rule_count", &GaParamController::rule_count)
        .def("pc_consequent", &GaParamController::pc_consequent, py::arg("generation"),
             py::arg("population"))
        .def("pm_consequent", &GaParamController::pm_consequent, py::arg("generation"),
             py::arg("population"))
        .def("fuzzify",
             [](const GaParamController& c, const std::string& variable, double x) {
                 return c.engine().variable(variable).fuzzify(x);
             },
             py::arg("variable"), py::arg("x"))
        .def("aggregate",
             [](const GaParamController& c, double population, double generation,
                const std::string& output) {
                 return c.engine().aggregate(
                     {{GaParamController::kPopulationVar, population},
                      {GaParamController::kGenerationVar, generation}},
                     output);
             },
             py::arg("population_size"), py::arg("generation"), py::arg("output"));

    // nutrition
    py::enum_<Sex>(m, "Sex").value("male", Sex::male).value("female", Sex::female);

    py::enum_<Disease>(m, "Disease")
        .value("nephrotic_syndrome", Disease::nephrotic_syndrome)
        .value("acute_renal_failure", Disease::acute_renal_failure)
        .value("chronic_kidney", Disease::chronic_kidney)
        .value("final_stage", Disease::final_stage)
        .value("kidney_stone", Disease::kidney_stone);

    py::class_<PatientProfile>(m, "PatientProfile")
        .def(py::init([](Sex sex, double weight_kg, double height_cm, double age_years) {
                 PatientProfile p{sex, weight_kg, height_cm, age_years};
                 p.validate();
                 return p;
             }),
             py::arg("sex"), py::arg("weight_kg"), py::arg("height_cm"),
             py::arg("age_years"))
        .def_readonly("sex", &PatientProfile::sex)
        .def_readonly("weight_kg", &PatientProfile::weight_kg)
        .def_readonly("height_cm", &PatientProfile::height_cm)
        .def_readonly("age_years", &PatientProfile::age_years);

    py::class_<ActivityFactor>(m, "ActivityFactor")
        .def_readonly("label", &ActivityFactor::label)
        .def_readonly("value", &ActivityFactor::value);
    py::class_<StressFactor>(m, "StressFactor")
        .def_readonly("label", &StressFactor::label)
        .def_readonly("value", &StressFactor::value);

    py::class_<NutrientTargets>(m, "NutrientTargets")
        .def(py::init<>())
        .def_readwrite("energy_kcal", &NutrientTargets::energy_kcal)
        .def_readwrite("protein_g", &NutrientTargets::protein_g)
        .def_readwrite("fat_g", &NutrientTargets::fat_g)
        .def_readwrite("sodium_mg", &NutrientTargets::sodium_mg)
        .def_readwrite("potassium_mg", &NutrientTargets::potassium_mg)
        .def_readwrite("phosphorus_mg", &NutrientTargets::phosphorus_mg)
        .def_readwrite("calcium_mg", &NutrientTargets::calcium_mg)
        .def_readwrite("carb_g", &NutrientTargets::carb_g);

    py::class_<NutritionTables>(m, "NutritionTables")
        .def_static("defaults", [] { return NutritionTables::defaults(); })
        .def_static("from_json_file", &NutritionTables::from_json_file, py::arg("path"))
        .def("activity", &NutritionTables::activity, py::arg("label"))
        .def("stress", &NutritionTables::stress, py::arg("label"));

    m.def("bmr", &bmr, py::arg("profile"));
    m.def("total_energy", &total_energy, py::arg("bmr_kcal"), py::arg("activity"),
          py::arg("stress"));
    m.def("per_kg_energy", &per_kg_energy, py::arg("disease"), py::arg("profile"),
          py::arg("tables") = NutritionTables::defaults());
    m.def("targets_for", &targets_for, py::arg("disease"), py::arg("profile"),
          py::arg("energy_kcal"), py::arg("tables") = NutritionTables::defaults());

    // food database
    py::class_<FoodRecord>(m, "FoodRecord")
        .def_readonly("index", &FoodRecord::index)
        .def_readonly("code", &FoodRecord::code)
        .def_readonly("name", &FoodRecord::name)
        .def_readonly("energy_kcal", &FoodRecord::energy_kcal)
        .def_readonly("protein_g", &FoodRecord::protein_g)
        .def_readonly("fat_g", &FoodRecord::fat_g)
        .def_readonly("carb_g", &FoodRecord::carb_g)
        .def_readonly("calcium_mg", &FoodRecord::calcium_mg)
        .def_readonly("phosphorus_mg", &FoodRecord::phosphorus_mg)
        .def_readonly("sodium_mg", &FoodRecord::sodium_mg)
        .def_readonly("potassium_mg", &FoodRecord::potassium_mg)
        .def_readonly("serving_g", &FoodRecord::serving_g);

    py::class_<FoodDatabase>(m, "FoodDatabase")
        .def_static("load_csv", &FoodDatabase::load_csv, py::arg("path"))
        .def("save_csv", &FoodDatabase::save_csv, py::arg("path"))
        .def("get", &FoodDatabase::get, py::arg("index"),
             py::return_value_policy::reference_internal)
        .def("contains", &FoodDatabase::contains, py::arg("index"))
        .def("indices", &FoodDatabase::indices)
        .def("__len__", &FoodDatabase::size);

    // genetic algorithm
    py::enum_<ScalingMode>(m, "ScalingMode")
        .value("per_100g", ScalingMode::per_100g)
        .value("per_serving", ScalingMode::per_serving);
    py::enum_<ParamMode>(m, "ParamMode")
        .value("static_fuzzy", ParamMode::static_fuzzy)
        .value("dynamic_fuzzy", ParamMode::dynamic_fuzzy)
        .value("fixed", ParamMode::fixed);
    py::enum_<MutationPool>(m, "MutationPool")
        .value("absent_from_chromosome", MutationPool::absent_from_chromosome)
        .value("absent_from_initial_population",
               MutationPool::absent_from_initial_population);

    py::class_<NutrientTotals>(m, "NutrientTotals")
        .def_readonly("energy_kcal", &NutrientTotals::energy_kcal)
        .def_readonly("protein_g", &NutrientTotals::protein_g)
        .def_readonly("fat_g", &NutrientTotals::fat_g)
        .def_readonly("carb_g", &NutrientTotals::carb_g)
        .def_readonly("calcium_mg", &NutrientTotals::calcium_mg)
        .def_readonly("phosphorus_mg", &NutrientTotals::phosphorus_mg)
        .def_readonly("sodium_mg", &NutrientTotals::sodium_mg)
        .def_readonly("potassium_mg", &NutrientTotals::potassium_mg);

    py::class_<FitnessConfig>(m, "FitnessConfig")
        .def(py::init([](Disease disease, const NutrientTargets& targets, double epsilon,
                         ScalingMode scaling) {
                 FitnessConfig c{disease, targets, epsilon, scaling};
                 c.validate();
                 return c;
             }),
             py::arg("disease"), py::arg("targets"), py::arg("epsilon") = 0.01,
             py::arg("scaling") = ScalingMode::per_100g)
        .def_readonly("disease", &FitnessConfig::disease)
        .def_readonly("targets", &FitnessConfig::targets)
        .def_readonly("epsilon", &FitnessConfig::epsilon)
        .def_readonly("scaling", &FitnessConfig::scaling);

    py::class_<GaConfig>(m, "GaConfig")
        .def(py::init<>())
        .def_readwrite("population_size", &GaConfig::population_size)
        .def_readwrite("max_generations", &GaConfig::max_generations)
        .def_readwrite("chromosome_length", &GaConfig::chromosome_length)
        .def_readwrite("mode", &GaConfig::mode)
        .def_readwrite("fixed_pc", &GaConfig::fixed_pc)
        .def_readwrite("fixed_pm", &GaConfig::fixed_pm)
        .def_readwrite("elitism", &GaConfig::elitism)
        .def_readwrite("pool", &GaConfig::pool)
        .def_readwrite("seed", &GaConfig::seed);

    py::class_<TraceRow>(m, "TraceRow")
        .def_readonly("generation", &TraceRow::generation)
        .def_readonly("best_fitness", &TraceRow::best_fitness)
        .def_readonly("mean_fitness", &TraceRow::mean_fitness)
        .def_readonly("pc", &TraceRow::pc)
        .def_readonly("pm", &TraceRow::pm);

    py::class_<RunResult>(m, "RunResult")
        .def_readonly("best", &RunResult::best)
        .def_readonly("best_fitness", &RunResult::best_fitness)
        .def_readonly("best_generation", &RunResult::best_generation)
        .def_readonly("trace", &RunResult::trace)
        .def_readonly("seed", &RunResult::seed);

    m.def("nutrient_totals", &nutrient_totals, py::arg("chromosome"), py::arg("db"),
          py::arg("scaling") = ScalingMode::per_100g);
    m.def("tracked_deviation", &tracked_deviation, py::arg("totals"), py::arg("config"));
    m.def("fitness", &fitness, py::arg("chromosome"), py::arg("db"), py::arg("config"));
    m.def(
        "evolve",
        [](const FoodDatabase& db, const FitnessConfig& fc, const GaConfig& gc,
           const GaParamController* controller) {
            py::gil_scoped_release release;
            return evolve(db, fc, gc, controller);
        },
        py::arg("db"), py::arg("fitness_config"), py::arg("ga_config"),
        py::arg("controller") = nullptr);
    m.def("brute_force_best", &brute_force_best, py::arg("db"), py::arg("config"),
          py::arg("chromosome_length"));

    m.attr("__version__") = "1.0.0";
}
