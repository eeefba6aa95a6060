#include "fgdiet/ga.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <unordered_map>

namespace fgdiet {

std::uint64_t uniform_below(Rng& rng, std::uint64_t n) {
    if (n == 0) throw ValidationError("uniform_below(0)");
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % n;
    std::uint64_t draw;
    do {
        draw = rng();
    } while (draw >= limit);
    return draw % n;
}

double uniform_unit(Rng& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

ScalingMode scaling_from_string(const std::string& name) {
    if (name == "per-100g" || name == "per_100g") return ScalingMode::per_100g;
    if (name == "per-serving" || name == "per_serving") return ScalingMode::per_serving;
    throw ValidationError("unknown scaling mode '" + name + "'");
}

ParamMode param_mode_from_string(const std::string& name) {
    if (name == "static") return ParamMode::static_fuzzy;
    if (name == "dynamic") return ParamMode::dynamic_fuzzy;
    if (name == "fixed") return ParamMode::fixed;
    throw ValidationError("unknown parameter mode '" + name + "'");
}

std::string to_string(ScalingMode m) {
    return m == ScalingMode::per_100g ? "per-100g" : "per-serving";
}

std::string to_string(ParamMode m) {
    switch (m) {
        case ParamMode::static_fuzzy: return "static";
        case ParamMode::dynamic_fuzzy: return "dynamic";
        case ParamMode::fixed: return "fixed";
    }
    return "unknown";
}

void FitnessConfig::validate() const {
    if (!(epsilon > 0.0)) throw ValidationError("epsilon must be > 0");
    if (!(targets.energy_kcal > 0.0) || !(targets.protein_g > 0.0) ||
        !(targets.fat_g > 0.0)) {
        throw ValidationError("energy, protein and fat targets must be > 0");
    }
    const bool sodium = targets.sodium_mg.has_value();
    const bool potassium = targets.potassium_mg.has_value();
    const bool phosphorus = targets.phosphorus_mg.has_value();
    const bool calcium = targets.calcium_mg.has_value();
    const bool carb = targets.carb_g.has_value();

    bool ok = false;
    switch (disease) {
        case Disease::nephrotic_syndrome:
            ok = sodium && !potassium && !phosphorus && !calcium && !carb;
            break;
        case Disease::acute_renal_failure:
            ok = !sodium && !potassium && !phosphorus && !calcium && !carb;
            break;
        case Disease::chronic_kidney:
            ok = !sodium && potassium && !phosphorus && !calcium && !carb;
            break;
        case Disease::final_stage:
            ok = !sodium && !potassium && phosphorus && calcium && !carb;
            break;
        case Disease::kidney_stone:
            ok = !sodium && !potassium && phosphorus && calcium && carb;
            break;
    }
    if (!ok) {
        throw ValidationError("target fields do not match the fitness equation of " +
                              to_string(disease));
    }
    for (double v : {targets.sodium_mg.value_or(1.0), targets.potassium_mg.value_or(1.0),
                     targets.phosphorus_mg.value_or(1.0),
                     targets.calcium_mg.value_or(1.0), targets.carb_g.value_or(1.0)}) {
        if (!(v > 0.0)) throw ValidationError("all present target values must be > 0");
    }
}

void GaConfig::validate() const {
    if (population_size < 2) throw ValidationError("population size must be >= 2");
    if (max_generations < 1) throw ValidationError("max generations must be >= 1");
    if (chromosome_length < 1) throw ValidationError("chromosome length must be >= 1");
    if (mode == ParamMode::fixed) {
        if (fixed_pc < 0.0 || fixed_pc > 1.0 || fixed_pm < 0.0 || fixed_pm > 1.0) {
            throw ValidationError("fixed pc/pm must lie in [0, 1]");
        }
    }
}

Population init_population(int population_size, int chromosome_length,
                           const FoodDatabase& db, Rng& rng) {
    if (db.empty()) throw ValidationError("cannot initialize from an empty food database");
    if (population_size < 1 || chromosome_length < 1) {
        throw ValidationError("population size and chromosome length must be >= 1");
    }
    const auto& indices = db.indices();
    Population pop(static_cast<std::size_t>(population_size));
    for (auto& chrom : pop) {
        chrom.resize(static_cast<std::size_t>(chromosome_length));
        for (auto& gene : chrom) {
            gene = indices[uniform_below(rng, indices.size())];
        }
    }
    return pop;
}

NutrientTotals nutrient_totals(const Chromosome& chrom, const FoodDatabase& db,
                               ScalingMode scaling) {
    // Accumulate in ascending gene order so totals do not depend on gene order.
    Chromosome sorted = chrom;
    std::sort(sorted.begin(), sorted.end());
    NutrientTotals t;
    for (std::int32_t gene : sorted) {
        const FoodRecord& r = db.get(gene);
        const double k = scaling == ScalingMode::per_serving ? r.serving_g / 100.0 : 1.0;
        t.energy_kcal += k * r.energy_kcal;
        t.protein_g += k * r.protein_g;
        t.fat_g += k * r.fat_g;
        t.carb_g += k * r.carb_g;
        t.calcium_mg += k * r.calcium_mg;
        t.phosphorus_mg += k * r.phosphorus_mg;
        t.sodium_mg += k * r.sodium_mg;
        t.potassium_mg += k * r.potassium_mg;
    }
    return t;
}

double tracked_deviation(const NutrientTotals& totals, const FitnessConfig& config) {
    const NutrientTargets& t = config.targets;
    double d = std::abs(t.energy_kcal - totals.energy_kcal) +
               std::abs(t.protein_g - totals.protein_g);
    if (config.disease == Disease::kidney_stone) {
        d += std::abs(*t.carb_g - totals.carb_g);
    }
    d += std::abs(t.fat_g - totals.fat_g);
    switch (config.disease) {
        case Disease::nephrotic_syndrome:
            d += std::abs(*t.sodium_mg - totals.sodium_mg);
            break;
        case Disease::acute_renal_failure:
            break;
        case Disease::chronic_kidney:
            d += std::abs(*t.potassium_mg - totals.potassium_mg);
            break;
        case Disease::final_stage:
        case Disease::kidney_stone:
            d += std::abs(*t.calcium_mg - totals.calcium_mg);
            d += std::abs(*t.phosphorus_mg - totals.phosphorus_mg);
            break;
    }
    return d;
}

double fitness(const Chromosome& chrom, const FoodDatabase& db,
               const FitnessConfig& config) {
    return 1.0 / (tracked_deviation(nutrient_totals(chrom, db, config.scaling), config) +
                  config.epsilon);
}

std::size_t roulette_select(std::span<const double> fitnesses, Rng& rng) {
    if (fitnesses.empty()) throw ValidationError("roulette selection over empty fitnesses");
    double total = 0.0;
    for (double f : fitnesses) {
        if (!(f > 0.0)) throw ValidationError("roulette selection requires positive fitness");
        total += f;
    }
    const double u = uniform_unit(rng) * total;
    double acc = 0.0;
    for (std::size_t i = 0; i < fitnesses.size(); ++i) {
        acc += fitnesses[i];
        if (u < acc) return i;
    }
    return fitnesses.size() - 1;
}

std::pair<Chromosome, Chromosome> crossover_at(const Chromosome& a, const Chromosome& b,
                                               int cut) {
    if (a.size() != b.size()) throw ValidationError("crossover requires equal lengths");
    if (cut < 1 || cut >= static_cast<int>(a.size())) {
        throw ValidationError("cut point must lie in [1, L-1]");
    }
    Chromosome c1 = a;
    Chromosome c2 = b;
    for (std::size_t i = static_cast<std::size_t>(cut); i < a.size(); ++i) {
        c1[i] = b[i];
        c2[i] = a[i];
    }
    return {std::move(c1), std::move(c2)};
}

std::pair<Chromosome, Chromosome> crossover_single_point(const Chromosome& a,
                                                         const Chromosome& b, double pc,
                                                         Rng& rng) {
    if (a.size() != b.size()) throw ValidationError("crossover requires equal lengths");
    if (a.size() < 2) return {a, b};
    if (uniform_unit(rng) < pc) {
        const int cut = 1 + static_cast<int>(uniform_below(rng, a.size() - 1));
        return crossover_at(a, b, cut);
    }
    return {a, b};
}

void mutate(Chromosome& chrom, double pm, std::span<const std::int32_t> pool_indices,
            Rng& rng) {
    if (pool_indices.empty()) throw ValidationError("mutation pool is empty");
    std::unordered_map<std::int32_t, int> present;
    for (std::int32_t gene : chrom) ++present[gene];

    std::vector<std::int32_t> candidates;
    candidates.reserve(pool_indices.size());
    for (std::int32_t& gene : chrom) {
        if (uniform_unit(rng) >= pm) continue;
        candidates.clear();
        for (std::int32_t idx : pool_indices) {
            auto it = present.find(idx);
            if (it == present.end() || it->second == 0) candidates.push_back(idx);
        }
        const std::span<const std::int32_t> pool =
            candidates.empty() ? pool_indices : std::span<const std::int32_t>(candidates);
        const std::int32_t pick = pool[uniform_below(rng, pool.size())];
        if (--present[gene] == 0) present.erase(gene);
        ++present[pick];
        gene = pick;
    }
}

namespace {

struct Best {
    Chromosome chrom;
    double fit = -1.0;
};

// Gen-best with ties resolved toward the lexicographically smallest genes.
Best best_of(const Population& pop, const std::vector<double>& fits) {
    Best best;
    for (std::size_t i = 0; i < pop.size(); ++i) {
        if (fits[i] > best.fit || (fits[i] == best.fit && pop[i] < best.chrom)) {
            best.chrom = pop[i];
            best.fit = fits[i];
        }
    }
    return best;
}

}  // namespace

RunResult evolve(const FoodDatabase& db, const FitnessConfig& fitness_config,
                 const GaConfig& ga_config, const GaParamController* controller) {
    fitness_config.validate();
    ga_config.validate();
    if (db.empty()) throw ValidationError("cannot evolve over an empty food database");
    if (ga_config.mode != ParamMode::fixed && controller == nullptr) {
        throw ValidationError("fuzzy parameter modes require a controller");
    }

    const int P = ga_config.population_size;
    const int G = ga_config.max_generations;
    Rng rng(ga_config.seed);

    Population pop = init_population(P, ga_config.chromosome_length, db, rng);

    // Mutation pool source: full index list, or the indices absent from the
    // initial population (falling back to the full list when none are absent).
    std::vector<std::int32_t> initial_absent;
    if (ga_config.pool == MutationPool::absent_from_initial_population) {
        std::unordered_map<std::int32_t, bool> seen;
        for (const auto& chrom : pop) {
            for (std::int32_t gene : chrom) seen[gene] = true;
        }
        for (std::int32_t idx : db.indices()) {
            if (!seen.count(idx)) initial_absent.push_back(idx);
        }
    }
    const std::span<const std::int32_t> pool_indices =
        initial_absent.empty() ? std::span<const std::int32_t>(db.indices())
                               : std::span<const std::int32_t>(initial_absent);

    auto evaluate = [&](const Population& p) {
        std::vector<double> fits(p.size());
        for (std::size_t i = 0; i < p.size(); ++i) {
            fits[i] = fitness(p[i], db, fitness_config);
        }
        return fits;
    };

    std::vector<double> fits = evaluate(pop);
    Best current = best_of(pop, fits);

    RunResult result;
    result.seed = ga_config.seed;
    result.best = current.chrom;
    result.best_fitness = current.fit;
    result.best_generation = 0;
    result.trace.reserve(static_cast<std::size_t>(G));

    ParamDecision params{ga_config.fixed_pc, ga_config.fixed_pm};
    if (ga_config.mode == ParamMode::static_fuzzy) {
        params = controller->decide(P, G);
    }

    for (int t = 1; t <= G; ++t) {
        if (ga_config.mode == ParamMode::dynamic_fuzzy) {
            params = controller->decide(P, t);
        }

        Population offspring;
        offspring.reserve(static_cast<std::size_t>(P));
        while (static_cast<int>(offspring.size()) < P) {
            const std::size_t ia = roulette_select(fits, rng);
            if (static_cast<int>(offspring.size()) + 1 == P) {
                // Odd population: the last selected parent passes through the
                // crossover stage as-is.
                Chromosome child = pop[ia];
                mutate(child, params.pm, pool_indices, rng);
                offspring.push_back(std::move(child));
                break;
            }
            const std::size_t ib = roulette_select(fits, rng);
            auto [c1, c2] = crossover_single_point(pop[ia], pop[ib], params.pc, rng);
            mutate(c1, params.pm, pool_indices, rng);
            mutate(c2, params.pm, pool_indices, rng);
            offspring.push_back(std::move(c1));
            offspring.push_back(std::move(c2));
        }

        std::vector<double> offspring_fits = evaluate(offspring);
        if (ga_config.elitism) {
            std::size_t worst = 0;
            for (std::size_t i = 1; i < offspring_fits.size(); ++i) {
                if (offspring_fits[i] < offspring_fits[worst]) worst = i;
            }
            offspring[worst] = current.chrom;
            offspring_fits[worst] = current.fit;
        }

        pop = std::move(offspring);
        fits = std::move(offspring_fits);
        current = best_of(pop, fits);

        const double mean =
            std::accumulate(fits.begin(), fits.end(), 0.0) / static_cast<double>(P);
        result.trace.push_back({t, current.fit, mean, params.pc, params.pm});

        if (current.fit > result.best_fitness) {
            result.best = current.chrom;
            result.best_fitness = current.fit;
            result.best_generation = t;
        }
    }
    return result;
}

namespace {

NutrientTotals scaled_contribution(const FoodRecord& r, ScalingMode scaling) {
    const double k = scaling == ScalingMode::per_serving ? r.serving_g / 100.0 : 1.0;
    return {k * r.energy_kcal, k * r.protein_g,  k * r.fat_g,
            k * r.carb_g,      k * r.calcium_mg, k * r.phosphorus_mg,
            k * r.sodium_mg,   k * r.potassium_mg};
}

}  // namespace

std::pair<Chromosome, double> brute_force_best(const FoodDatabase& db,
                                               const FitnessConfig& config,
                                               int chromosome_length) {
    config.validate();
    if (db.empty()) throw ValidationError("cannot enumerate an empty food database");
    if (chromosome_length < 1) throw ValidationError("chromosome length must be >= 1");

    double space = 1.0;
    for (int i = 0; i < chromosome_length; ++i) {
        space *= static_cast<double>(db.size());
        if (space > 1e7) {
            std::ostringstream msg;
            msg << "instance too large: " << db.size() << "^" << chromosome_length
                << " ordered chromosomes exceeds the 1e7 guard; use a smaller "
                   "chromosome length or database";
            throw GuardError(msg.str());
        }
    }

    std::vector<std::int32_t> sorted_indices = db.indices();
    std::sort(sorted_indices.begin(), sorted_indices.end());

    // Fitness is exactly permutation-invariant (totals accumulate in sorted
    // gene order), so enumerating non-decreasing tuples in lexicographic order
    // covers every fitness value; the first strict maximum found is the
    // lexicographically smallest maximizer over the full ordered space.
    std::vector<NutrientTotals> contrib;
    contrib.reserve(sorted_indices.size());
    for (std::int32_t idx : sorted_indices) {
        contrib.push_back(scaled_contribution(db.get(idx), config.scaling));
    }

    Chromosome current(static_cast<std::size_t>(chromosome_length));
    Chromosome best_chrom;
    double best_fit = -1.0;

    auto recurse = [&](auto&& self, int depth, std::size_t start,
                       const NutrientTotals& acc) -> void {
        if (depth == chromosome_length) {
            const double f = 1.0 / (tracked_deviation(acc, config) + config.epsilon);
            if (f > best_fit) {
                best_fit = f;
                best_chrom = current;
            }
            return;
        }
        for (std::size_t i = start; i < sorted_indices.size(); ++i) {
            current[static_cast<std::size_t>(depth)] = sorted_indices[i];
            const NutrientTotals& c = contrib[i];
            NutrientTotals next{acc.energy_kcal + c.energy_kcal,
                                acc.protein_g + c.protein_g,
                                acc.fat_g + c.fat_g,
                                acc.carb_g + c.carb_g,
                                acc.calcium_mg + c.calcium_mg,
                                acc.phosphorus_mg + c.phosphorus_mg,
                                acc.sodium_mg + c.sodium_mg,
                                acc.potassium_mg + c.potassium_mg};
            self(self, depth + 1, i, next);
        }
    };
    recurse(recurse, 0, 0, NutrientTotals{});
    return {best_chrom, best_fit};
}

}  // namespace fgdiet
