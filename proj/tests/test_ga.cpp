#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "fgdiet/ga.hpp"

using namespace fgdiet;

namespace {

const std::string kFixture12 = std::string(FGDIET_TEST_DATA_DIR) + "/foods12.csv";
const std::string kFixture400 = std::string(FGDIET_DATA_DIR) + "/foods.csv";

FoodRecord make_food(std::int32_t index, double energy, double protein, double fat,
                     double sodium) {
    FoodRecord r;
    r.index = index;
    r.code = "S" + std::to_string(index);
    r.name = "synthetic " + std::to_string(index);
    r.energy_kcal = energy;
    r.protein_g = protein;
    r.fat_g = fat;
    r.sodium_mg = sodium;
    r.serving_g = 100.0;
    return r;
}

// nephrotic-shaped targets with integer-exact planted sums
FitnessConfig planted_config() {
    NutrientTargets t;
    t.energy_kcal = 600.0;  // 100 + 200 + 300
    t.protein_g = 30.0;     // 5 + 10 + 15
    t.fat_g = 12.0;         // 2 + 4 + 6
    t.sodium_mg = 330.0;    // 30 + 100 + 200
    return {Disease::nephrotic_syndrome, t, 0.01, ScalingMode::per_100g};
}

FoodDatabase planted_db() {
    return FoodDatabase({
        make_food(1, 100, 5, 2, 30),
        make_food(2, 200, 10, 4, 100),
        make_food(3, 300, 15, 6, 200),
        make_food(4, 500, 2, 9, 400),
        make_food(5, 50, 20, 1, 10),
    });
}

FitnessConfig acute_config(double energy, double protein, double fat) {
    NutrientTargets t;
    t.energy_kcal = energy;
    t.protein_g = protein;
    t.fat_g = fat;
    return {Disease::acute_renal_failure, t, 0.01, ScalingMode::per_100g};
}

// Independent oracle: full odometer enumeration over ordered tuples in
// load-index order (a different iteration order from the library).
std::pair<Chromosome, double> enumerate_all(const FoodDatabase& db,
                                            const FitnessConfig& cfg, int L) {
    const auto& idx = db.indices();
    std::vector<std::size_t> digits(static_cast<std::size_t>(L), 0);
    Chromosome chrom(static_cast<std::size_t>(L));
    Chromosome best_chrom;
    double best = -1.0;
    while (true) {
        for (int i = 0; i < L; ++i) chrom[static_cast<std::size_t>(i)] = idx[digits[static_cast<std::size_t>(i)]];
        const double f = fitness(chrom, db, cfg);
        if (f > best) {
            best = f;
            best_chrom = chrom;
        }
        int pos = L - 1;
        while (pos >= 0 && ++digits[static_cast<std::size_t>(pos)] == idx.size()) {
            digits[static_cast<std::size_t>(pos)] = 0;
            --pos;
        }
        if (pos < 0) break;
    }
    return {best_chrom, best};
}

}  // namespace

TEST_CASE("initial population shape, determinism and forced outcome") {
    const auto db = FoodDatabase::load_csv(kFixture12);
    Rng rng(42);
    const auto pop = init_population(20, 10, db, rng);
    CHECK(pop.size() == 20);
    std::size_t genes = 0;
    for (const auto& c : pop) {
        CHECK(c.size() == 10);
        genes += c.size();
        for (auto g : c) CHECK(db.contains(g));
    }
    CHECK(genes == 200);

    Rng rng_a(42), rng_b(42);
    CHECK(init_population(20, 10, db, rng_a) == init_population(20, 10, db, rng_b));

    const FoodDatabase single({make_food(9, 100, 5, 2, 30)});
    Rng rng_c(7);
    const auto forced = init_population(1, 1, single, rng_c);
    CHECK(forced == Population{{9}});
}

TEST_CASE("nutrient totals of the canonical egg record") {
    const auto db = FoodDatabase::load_csv(kFixture400);
    const NutrientTotals t = nutrient_totals({229}, db, ScalingMode::per_100g);
    CHECK(t.energy_kcal == 174.0);
    CHECK(t.protein_g == 11.0);
    CHECK(t.fat_g == 14.0);
    CHECK(t.sodium_mg == 190.0);
    CHECK(t.potassium_mg == 141.0);
    CHECK(t.phosphorus_mg == 268.0);
    CHECK(t.calcium_mg == 68.0);
    CHECK(t.carb_g == 1.2);
}

TEST_CASE("totals of an all-zero food vanish and duplicates accumulate") {
    FoodRecord zero = make_food(1, 0, 0, 0, 0);
    const FoodDatabase db({zero});
    const NutrientTotals t = nutrient_totals({1, 1, 1, 1}, db, ScalingMode::per_100g);
    CHECK(t.energy_kcal == 0.0);
    CHECK(t.protein_g == 0.0);
    CHECK(t.sodium_mg == 0.0);
}

TEST_CASE("two-food totals agree with hand addition") {
    const auto db = FoodDatabase::load_csv(kFixture12);
    const NutrientTotals t = nutrient_totals({1, 2}, db, ScalingMode::per_100g);
    CHECK(t.energy_kcal == doctest::Approx(290.0).epsilon(1e-12));   // 130 + 160
    CHECK(t.protein_g == doctest::Approx(13.4).epsilon(1e-12));      // 2.4 + 11
    CHECK(t.fat_g == doctest::Approx(7.7).epsilon(1e-12));           // 0.2 + 7.5
    CHECK(t.carb_g == doctest::Approx(42.1).epsilon(1e-12));         // 28.6 + 13.5
    CHECK(t.potassium_mg == doctest::Approx(269.0).epsilon(1e-12));  // 35 + 234
}

TEST_CASE("per-serving scaling multiplies by serving grams over 100") {
    const auto db = FoodDatabase::load_csv(kFixture12);
    // food 9 (salted anchovy): 193 kcal per 100 g, 15 g serving
    const NutrientTotals t = nutrient_totals({9}, db, ScalingMode::per_serving);
    CHECK(t.energy_kcal == doctest::Approx(28.95).epsilon(1e-12));
    CHECK(t.sodium_mg == doctest::Approx(132.75).epsilon(1e-12));
}

TEST_CASE("unresolvable genes raise a lookup error") {
    const auto db = FoodDatabase::load_csv(kFixture12);
    CHECK_THROWS_AS(nutrient_totals({1, 999}, db, ScalingMode::per_100g), DataError);
    CHECK_THROWS_AS(fitness({0}, db, acute_config(100, 10, 5)), DataError);
}

TEST_CASE("fitness is the reciprocal of tracked deviation plus epsilon") {
    const auto db = planted_db();
    const auto cfg = planted_config();

    // exact targets met
    CHECK(fitness({1, 2, 3}, db, cfg) == 1.0 / cfg.epsilon);

    // the canonical egg against acute targets, replicated by hand
    const auto db400 = FoodDatabase::load_csv(kFixture400);
    const double fat_target = 0.25 * 1500.0 / 9.0;
    const auto acute = acute_config(1500.0, 40.0, fat_target);
    const double dev = (1500.0 - 174.0) + (40.0 - 11.0) + (fat_target - 14.0);
    CHECK(fitness({229}, db400, acute) == 1.0 / (dev + 0.01));
    CHECK(fitness({229}, db400, acute) ==
          doctest::Approx(1.0 / 1382.68).epsilon(1e-3));

    // reciprocal relation: a deviation of 143.3 with a tiny epsilon sits at
    // about 0.006978
    CHECK(1.0 / (143.3 + 0.01) == doctest::Approx(0.006978).epsilon(1e-3));
}

TEST_CASE("fitness bounds and permutation invariance") {
    const auto db = FoodDatabase::load_csv(kFixture12);
    const auto cfg = acute_config(455.0, 46.0, 11.0);
    Rng rng(99);
    for (int trial = 0; trial < 300; ++trial) {
        Chromosome c(5);
        for (auto& g : c) {
            g = db.indices()[uniform_below(rng, db.indices().size())];
        }
        const double f = fitness(c, db, cfg);
        CHECK(f > 0.0);
        CHECK(f <= 1.0 / cfg.epsilon);

        Chromosome shuffled = c;
        for (std::size_t i = shuffled.size(); i > 1; --i) {
            std::swap(shuffled[i - 1], shuffled[uniform_below(rng, i)]);
        }
        CHECK(fitness(shuffled, db, cfg) == f);
    }
}

TEST_CASE("fitness config validation rejects mismatched targets and bad epsilon") {
    auto cfg = planted_config();
    cfg.epsilon = 0.0;
    CHECK_THROWS_AS(cfg.validate(), ValidationError);

    auto crossed = planted_config();
    crossed.disease = Disease::chronic_kidney;  // sodium set, potassium missing
    CHECK_THROWS_AS(crossed.validate(), ValidationError);
}

TEST_CASE("roulette selection follows the fitness proportions") {
    SUBCASE("dominant mass wins essentially always") {
        const std::vector<double> fits = {1.0, 1e-12, 1e-12};
        Rng rng(5);
        int zero = 0;
        for (int i = 0; i < 1000; ++i) zero += roulette_select(fits, rng) == 0;
        CHECK(zero >= 995);
    }
    SUBCASE("uniform fitnesses pass a chi-square test at p > 0.01") {
        const std::vector<double> fits = {1.0, 1.0, 1.0, 1.0};
        Rng rng(1234);
        std::array<int, 4> counts{};
        const int n = 100000;
        for (int i = 0; i < n; ++i) counts[roulette_select(fits, rng)]++;
        double chi2 = 0.0;
        const double expected = n / 4.0;
        for (int c : counts) chi2 += (c - expected) * (c - expected) / expected;
        CHECK(chi2 < 11.345);  // df = 3 critical value at p = 0.01
    }
    SUBCASE("a 3:1 fitness ratio draws 3:1 within three sigma") {
        const std::vector<double> fits = {3.0, 1.0};
        Rng rng(17);
        int first = 0;
        const int n = 100000;
        for (int i = 0; i < n; ++i) first += roulette_select(fits, rng) == 0;
        const double sigma = std::sqrt(n * 0.75 * 0.25);
        CHECK(std::abs(first - 0.75 * n) <= 3.0 * sigma);
    }
    SUBCASE("nonpositive fitness is rejected") {
        const std::vector<double> fits = {1.0, 0.0};
        Rng rng(3);
        CHECK_THROWS_AS(roulette_select(fits, rng), ValidationError);
    }
}

TEST_CASE("single-point crossover splices and conserves genes") {
    const Chromosome p1 = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
    const Chromosome p2 = {11, 12, 13, 14, 15, 16, 17, 18, 19, 20};

    SUBCASE("closed gate returns the parents") {
        Rng rng(1);
        const auto [c1, c2] = crossover_single_point(p1, p2, 0.0, rng);
        CHECK(c1 == p1);
        CHECK(c2 == p2);
    }
    SUBCASE("a forced cut at 5 swaps the tails") {
        const auto [c1, c2] = crossover_at(p1, p2, 5);
        CHECK(c1 == Chromosome{1, 2, 3, 4, 5, 16, 17, 18, 19, 20});
        CHECK(c2 == Chromosome{11, 12, 13, 14, 15, 6, 7, 8, 9, 10});
    }
    SUBCASE("cut point bounds") {
        CHECK_THROWS_AS(crossover_at(p1, p2, 0), ValidationError);
        CHECK_THROWS_AS(crossover_at(p1, p2, 10), ValidationError);
        CHECK_THROWS_AS(crossover_at(p1, {1, 2}, 1), ValidationError);
    }
    SUBCASE("length-one chromosomes pass through") {
        Rng rng(1);
        const auto [c1, c2] = crossover_single_point({5}, {6}, 1.0, rng);
        CHECK(c1 == Chromosome{5});
        CHECK(c2 == Chromosome{6});
    }
    SUBCASE("gene multiset is conserved over ten thousand random pairs") {
        Rng rng(2024);
        for (int trial = 0; trial < 10000; ++trial) {
            Chromosome a(8), b(8);
            for (auto& g : a) g = static_cast<std::int32_t>(uniform_below(rng, 50)) + 1;
            for (auto& g : b) g = static_cast<std::int32_t>(uniform_below(rng, 50)) + 1;
            auto [c1, c2] = crossover_single_point(a, b, 1.0, rng);
            Chromosome combined_in = a, combined_out = c1;
            combined_in.insert(combined_in.end(), b.begin(), b.end());
            combined_out.insert(combined_out.end(), c2.begin(), c2.end());
            std::sort(combined_in.begin(), combined_in.end());
            std::sort(combined_out.begin(), combined_out.end());
            REQUIRE(combined_in == combined_out);
        }
    }
}

TEST_CASE("mutation draws unseen indices and falls back when the pool drains") {
    const auto db = FoodDatabase::load_csv(kFixture12);

    SUBCASE("closed gate leaves the chromosome alone") {
        Chromosome c = {1, 2, 3};
        Rng rng(1);
        mutate(c, 0.0, db.indices(), rng);
        CHECK(c == Chromosome{1, 2, 3});
    }
    SUBCASE("forced single replacement") {
        const FoodDatabase two({make_food(1, 10, 1, 1, 1), make_food(2, 20, 2, 2, 2)});
        Chromosome c = {1};
        Rng rng(1);
        mutate(c, 1.0, two.indices(), rng);
        CHECK(c == Chromosome{2});
    }
    SUBCASE("degenerate pool falls back to the full index range") {
        const FoodDatabase three({make_food(1, 10, 1, 1, 1), make_food(2, 20, 2, 2, 2),
                                  make_food(3, 30, 3, 3, 3)});
        Chromosome c = {1, 2, 3};  // every index present, pool starts empty
        Rng rng(9);
        mutate(c, 1.0, three.indices(), rng);
        CHECK(c.size() == 3);
        for (auto g : c) CHECK(three.contains(g));
    }
    SUBCASE("mutated genes resolve and avoid values already present") {
        Rng rng(77);
        for (int trial = 0; trial < 200; ++trial) {
            Chromosome c(6);
            for (auto& g : c) {
                g = db.indices()[uniform_below(rng, db.indices().size())];
            }
            const Chromosome before = c;
            mutate(c, 0.5, db.indices(), rng);
            CHECK(c.size() == before.size());
            for (std::size_t i = 0; i < c.size(); ++i) {
                CHECK(db.contains(c[i]));
                if (c[i] != before[i]) {
                    // a replacement never collides with the genes present at
                    // the moment it was drawn, so it is unique afterwards
                    CHECK(std::count(c.begin(), c.end(), c[i]) == 1);
                }
            }
        }
    }
}

TEST_CASE("evolution is deterministic, elitist and size-preserving") {
    const auto db = FoodDatabase::load_csv(kFixture12);
    const auto cfg = acute_config(455.0, 46.0, 11.0);
    const auto controller = GaParamController::with_default_config();

    GaConfig ga;
    ga.population_size = 21;  // odd on purpose
    ga.max_generations = 60;
    ga.chromosome_length = 3;
    ga.seed = 31337;

    const RunResult a = evolve(db, cfg, ga, &controller);
    const RunResult b = evolve(db, cfg, ga, &controller);

    CHECK(a.best == b.best);
    CHECK(a.best_fitness == b.best_fitness);
    CHECK(a.best_generation == b.best_generation);
    REQUIRE(a.trace.size() == 60);
    for (std::size_t i = 0; i < a.trace.size(); ++i) {
        CHECK(a.trace[i].best_fitness == b.trace[i].best_fitness);
        CHECK(a.trace[i].mean_fitness == b.trace[i].mean_fitness);
    }

    // monotone best under elitism, and the reported best matches the trace max
    double running = 0.0;
    for (const auto& row : a.trace) {
        CHECK(row.best_fitness >= running);
        running = row.best_fitness;
        CHECK(row.generation >= 1);
        CHECK(row.mean_fitness <= row.best_fitness);
    }
    CHECK(a.best_fitness == a.trace.back().best_fitness);
    for (auto g : a.best) CHECK(db.contains(g));
}

TEST_CASE("static mode pins the controller decision; dynamic mode follows it") {
    const auto db = FoodDatabase::load_csv(kFixture12);
    const auto cfg = acute_config(455.0, 46.0, 11.0);
    const auto controller = GaParamController::with_default_config();

    GaConfig ga;
    ga.population_size = 12;
    ga.max_generations = 40;
    ga.chromosome_length = 3;
    ga.seed = 5;

    const RunResult st = evolve(db, cfg, ga, &controller);
    const ParamDecision want = controller.decide(12, 40);
    for (const auto& row : st.trace) {
        CHECK(row.pc == want.pc);
        CHECK(row.pm == want.pm);
    }

    ga.mode = ParamMode::dynamic_fuzzy;
    const RunResult dy = evolve(db, cfg, ga, &controller);
    for (std::size_t i = 1; i < dy.trace.size(); ++i) {
        CHECK(dy.trace[i].pc >= dy.trace[i - 1].pc - 1e-6);
        CHECK(dy.trace[i].pm <= dy.trace[i - 1].pm + 1e-6);
    }
    CHECK(dy.trace.front().pc == controller.decide(12, 1).pc);
    CHECK(dy.trace.back().pc == controller.decide(12, 40).pc);
}

TEST_CASE("fixed mode with closed gates only resamples the initial genes") {
    const auto db = FoodDatabase::load_csv(kFixture12);
    const auto cfg = acute_config(455.0, 46.0, 11.0);

    GaConfig ga;
    ga.population_size = 10;
    ga.max_generations = 25;
    ga.chromosome_length = 3;
    ga.mode = ParamMode::fixed;
    ga.fixed_pc = 0.0;
    ga.fixed_pm = 0.0;
    ga.seed = 777;

    const RunResult r = evolve(db, cfg, ga, nullptr);
    for (const auto& row : r.trace) {
        CHECK(row.pc == 0.0);
        CHECK(row.pm == 0.0);
    }
    // no operator creates new individuals, so the best is already present at
    // initialization
    Rng rng(ga.seed);
    const Population initial = init_population(10, 3, db, rng);
    double init_best = 0.0;
    for (const auto& c : initial) init_best = std::max(init_best, fitness(c, db, cfg));
    CHECK(r.best_fitness == init_best);
    CHECK(r.best_generation == 0);
}

TEST_CASE("evolution validates its inputs") {
    const auto db = FoodDatabase::load_csv(kFixture12);
    const auto cfg = acute_config(455.0, 46.0, 11.0);
    const auto controller = GaParamController::with_default_config();

    GaConfig ga;
    ga.population_size = 1;
    CHECK_THROWS_AS(evolve(db, cfg, ga, &controller), ValidationError);

    ga = GaConfig{};
    CHECK_THROWS_AS(evolve(db, cfg, ga, nullptr), ValidationError);  // needs controller

    ga.mode = ParamMode::fixed;
    ga.fixed_pc = 1.5;
    CHECK_THROWS_AS(evolve(db, cfg, ga, nullptr), ValidationError);

    CHECK_THROWS_AS(evolve(FoodDatabase{}, cfg, GaConfig{}, &controller), ValidationError);
}

TEST_CASE("initial-population mutation pool variant stays valid") {
    const auto db = FoodDatabase::load_csv(kFixture400);
    const auto cfg = acute_config(1500.0, 40.0, 125.0 / 3.0);
    const auto controller = GaParamController::with_default_config();

    GaConfig ga;
    ga.population_size = 10;
    ga.max_generations = 30;
    ga.chromosome_length = 5;
    ga.pool = MutationPool::absent_from_initial_population;
    ga.seed = 404;

    const RunResult r = evolve(db, cfg, ga, &controller);
    for (auto g : r.best) CHECK(db.contains(g));
    CHECK(r.trace.size() == 30);
}

TEST_CASE("brute force enumerates the exact optimum") {
    SUBCASE("a single food forces the only chromosome") {
        const FoodDatabase one({make_food(4, 100, 5, 2, 30)});
        NutrientTargets t;
        t.energy_kcal = 200.0;
        t.protein_g = 10.0;
        t.fat_g = 4.0;
        const FitnessConfig cfg{Disease::acute_renal_failure, t, 0.01,
                                ScalingMode::per_100g};
        const auto [chrom, fit] = brute_force_best(one, cfg, 2);
        CHECK(chrom == Chromosome{4, 4});
        CHECK(fit == 1.0 / cfg.epsilon);
    }
    SUBCASE("planted optimum reaches the fitness ceiling") {
        const auto [chrom, fit] = brute_force_best(planted_db(), planted_config(), 3);
        CHECK(chrom == Chromosome{1, 2, 3});
        CHECK(fit == 1.0 / 0.01);
    }
    SUBCASE("guard trips on infeasible instances") {
        const auto db = FoodDatabase::load_csv(kFixture400);
        CHECK_THROWS_AS(brute_force_best(db, planted_config(), 10), GuardError);
    }
    SUBCASE("agrees with an independent enumeration in a different order") {
        const auto db = FoodDatabase::load_csv(kFixture12);
        for (const auto& cfg :
             {acute_config(455.0, 46.0, 11.0), acute_config(300.0, 12.0, 20.0)}) {
            const auto [lib_chrom, lib_fit] = brute_force_best(db, cfg, 3);
            const auto [ind_chrom, ind_fit] = enumerate_all(db, cfg, 3);
            CHECK(lib_fit == ind_fit);
            Chromosome sorted_ind = ind_chrom;
            std::sort(sorted_ind.begin(), sorted_ind.end());
            CHECK(fitness(sorted_ind, db, cfg) == fitness(lib_chrom, db, cfg));
        }
    }
}

TEST_CASE("the GA recovers the brute-force optimum on a small instance") {
    const auto db = FoodDatabase::load_csv(kFixture12);
    const auto cfg = acute_config(455.0, 46.0, 11.0);
    const auto controller = GaParamController::with_default_config();
    const auto [opt_chrom, opt_fit] = brute_force_best(db, cfg, 3);

    int hits = 0;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        GaConfig ga;
        ga.population_size = 30;
        ga.max_generations = 200;
        ga.chromosome_length = 3;
        ga.seed = seed;
        const RunResult r = evolve(db, cfg, ga, &controller);
        hits += r.best_fitness >= 0.99 * opt_fit;
    }
    CHECK(hits >= 8);
}
