#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <unordered_map>
#include <vector>

#include "fgdiet/errors.hpp"

namespace fgdiet {

/// One indexed food with per-100 g nutrient composition and a standard
/// serving size in grams.
struct FoodRecord {
    std::int32_t index = 0;
    std::string code;
    std::string name;
    double energy_kcal = 0.0;
    double protein_g = 0.0;
    double fat_g = 0.0;
    double carb_g = 0.0;
    double calcium_mg = 0.0;
    double phosphorus_mg = 0.0;
    double sodium_mg = 0.0;
    double potassium_mg = 0.0;
    double serving_g = 100.0;
};

/// Immutable after load; shareable read-only across GA runs.
///
/// CSV schema (normative, UTF-8):
///   index,code,name,energy_kcal,protein_g,fat_g,carb_g,calcium_mg,
///   phosphorus_mg,sodium_mg,potassium_mg,serving_g
/// Decimal commas inside quoted numeric fields ("13,7") are normalized to
/// decimal points at ingestion.
class FoodDatabase {
public:
    FoodDatabase() = default;
    explicit FoodDatabase(std::vector<FoodRecord> records);

    static FoodDatabase load_csv(const std::filesystem::path& path);
    void save_csv(const std::filesystem::path& path) const;

    /// Throws DataError for an unknown index (signals a corrupted chromosome).
    const FoodRecord& get(std::int32_t index) const;
    bool contains(std::int32_t index) const;

    std::size_t size() const { return records_.size(); }
    bool empty() const { return records_.empty(); }
    const std::vector<FoodRecord>& records() const { return records_; }

    /// All indices in load order.
    const std::vector<std::int32_t>& indices() const { return indices_; }

    static const char* csv_header();

private:
    void rebuild_lookup();

    std::vector<FoodRecord> records_;
    std::vector<std::int32_t> indices_;
    std::unordered_map<std::int32_t, std::size_t> by_index_;
};

}  // namespace fgdiet
