#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <utility>
#include <vector>

#include "fgdiet/controller.hpp"
#include "fgdiet/food_db.hpp"
#include "fgdiet/nutrition.hpp"

namespace fgdiet {

/// Fixed-length vector of food indices; duplicates permitted.
using Chromosome = std::vector<std::int32_t>;
using Population = std::vector<Chromosome>;

/// All randomness flows through one seeded mt19937_64. Uniform draws use the
/// helpers below, so runs are reproducible bit-for-bit for a fixed seed.
using Rng = std::mt19937_64;

/// Unbiased uniform integer in [0, n) by rejection sampling.
std::uint64_t uniform_below(Rng& rng, std::uint64_t n);

/// Uniform double in [0, 1) with 53 random bits.
double uniform_unit(Rng& rng);

enum class ScalingMode { per_100g, per_serving };
enum class ParamMode { static_fuzzy, dynamic_fuzzy, fixed };

/// Mutation replacement pool. `absent_from_chromosome` draws from indices not
/// currently present in the chromosome (default). `absent_from_initial_population`
/// draws from indices that never appeared in the run's initial population,
/// falling back to the full index range when that set is empty.
enum class MutationPool { absent_from_chromosome, absent_from_initial_population };

ScalingMode scaling_from_string(const std::string& name);
ParamMode param_mode_from_string(const std::string& name);
std::string to_string(ScalingMode m);
std::string to_string(ParamMode m);

/// Per-chromosome nutrient sums over the L foods.
struct NutrientTotals {
    double energy_kcal = 0.0;
    double protein_g = 0.0;
    double fat_g = 0.0;
    double carb_g = 0.0;
    double calcium_mg = 0.0;
    double phosphorus_mg = 0.0;
    double sodium_mg = 0.0;
    double potassium_mg = 0.0;
};

struct FitnessConfig {
    Disease disease = Disease::nephrotic_syndrome;
    NutrientTargets targets;
    double epsilon = 0.01;
    ScalingMode scaling = ScalingMode::per_100g;

    /// Throws ValidationError unless epsilon > 0 and the populated target
    /// fields match the disease's fitness equation.
    void validate() const;
};

struct GaConfig {
    int population_size = 150;
    int max_generations = 1500;
    int chromosome_length = 10;
    ParamMode mode = ParamMode::static_fuzzy;
    double fixed_pc = 0.0;
    double fixed_pm = 0.0;
    bool elitism = true;
    MutationPool pool = MutationPool::absent_from_chromosome;
    std::uint64_t seed = 0;

    void validate() const;
};

struct TraceRow {
    int generation = 0;
    double best_fitness = 0.0;
    double mean_fitness = 0.0;
    double pc = 0.0;
    double pm = 0.0;
};

struct RunResult {
    Chromosome best;
    double best_fitness = 0.0;
    int best_generation = 0;
    std::vector<TraceRow> trace;
    std::uint64_t seed = 0;
};

/// P chromosomes of L genes, each gene uniform over the database indices.
Population init_population(int population_size, int chromosome_length,
                           const FoodDatabase& db, Rng& rng);

/// Genes are accumulated in ascending index order, so totals (and therefore
/// fitness) are bit-identical under gene permutation.
NutrientTotals nutrient_totals(const Chromosome& chrom, const FoodDatabase& db,
                               ScalingMode scaling);

/// Sum of |target - total| over the disease's tracked nutrient set.
double tracked_deviation(const NutrientTotals& totals, const FitnessConfig& config);

/// f = 1 / (tracked deviation + epsilon); in (0, 1/epsilon].
double fitness(const Chromosome& chrom, const FoodDatabase& db,
               const FitnessConfig& config);

/// P(choose i) = f_i / sum(f). Requires strictly positive fitnesses.
std::size_t roulette_select(std::span<const double> fitnesses, Rng& rng);

/// Deterministic kernel: children spliced at cut k in [1, L-1].
std::pair<Chromosome, Chromosome> crossover_at(const Chromosome& a,
                                               const Chromosome& b, int cut);

/// With probability pc picks a uniform cut in [1, L-1] and splices; otherwise
/// returns copies. Chromosomes of length 1 always pass through unchanged.
std::pair<Chromosome, Chromosome> crossover_single_point(const Chromosome& a,
                                                         const Chromosome& b,
                                                         double pc, Rng& rng);

/// Each gene independently, with probability pm, is replaced by a uniform
/// draw from `pool_indices` minus the indices currently present in the
/// chromosome; when that pool is empty the draw falls back to the full pool.
/// Passing the database index list gives the default current-chromosome pool;
/// passing a restricted list gives the initial-population variant.
void mutate(Chromosome& chrom, double pm, std::span<const std::int32_t> pool_indices,
            Rng& rng);

/// Runs max_generations of select -> crossover -> mutate -> replace with
/// full generational replacement and optional elitism-of-1. pc/pm come from
/// the controller per ParamMode (static: decided once with
/// generation = max_generations; dynamic: re-decided each generation with the
/// current generation index; fixed: constants from the config). The
/// controller may be null in fixed mode only.
RunResult evolve(const FoodDatabase& db, const FitnessConfig& fitness_config,
                 const GaConfig& ga_config, const GaParamController* controller);

/// Exhaustive optimum over all |db|^L ordered chromosomes, enumerated in
/// lexicographic gene order (ties keep the first maximizer found).
/// Throws GuardError when |db|^L exceeds 1e7.
std::pair<Chromosome, double> brute_force_best(const FoodDatabase& db,
                                               const FitnessConfig& config,
                                               int chromosome_length);

}  // namespace fgdiet
