#include "fgdiet/food_db.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <sstream>

namespace fgdiet {

namespace {

constexpr const char* kHeader =
    "index,code,name,energy_kcal,protein_g,fat_g,carb_g,calcium_mg,phosphorus_mg,"
    "sodium_mg,potassium_mg,serving_g";

constexpr std::array<const char*, 12> kColumns = {
    "index",      "code",       "name",          "energy_kcal",
    "protein_g",  "fat_g",      "carb_g",        "calcium_mg",
    "phosphorus_mg", "sodium_mg", "potassium_mg", "serving_g"};

std::vector<std::string> split_csv_line(const std::string& line, int line_no) {
    std::vector<std::string> fields;
    std::string field;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    field.push_back('"');
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                field.push_back(c);
            }
        } else if (c == '"' && field.empty()) {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(std::move(field));
            field.clear();
        } else {
            field.push_back(c);
        }
    }
    if (quoted) {
        throw DataError("line " + std::to_string(line_no) + ": unterminated quote");
    }
    fields.push_back(std::move(field));
    return fields;
}

// Accepts "13,7" (decimal comma, reaches us only from quoted fields) as 13.7.
double parse_number(std::string text, int line_no, const char* column) {
    if (auto pos = text.find(','); pos != std::string::npos) {
        if (text.find(',', pos + 1) == std::string::npos) text[pos] = '.';
    }
    double value = 0.0;
    const char* begin = text.data();
    const char* end = begin + text.size();
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr != end) {
        throw DataError("line " + std::to_string(line_no) + ", column '" + column +
                        "': cannot parse number '" + text + "'");
    }
    return value;
}

std::int32_t parse_index(const std::string& text, int line_no) {
    std::int32_t value = 0;
    const char* begin = text.data();
    const char* end = begin + text.size();
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr != end) {
        throw DataError("line " + std::to_string(line_no) +
                        ", column 'index': cannot parse integer '" + text + "'");
    }
    return value;
}

std::string format_csv_double(double value) {
    std::array<char, 32> buf;
    auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    return std::string(buf.data(), ptr);
}

std::string quote_if_needed(const std::string& field) {
    if (field.find_first_of(",\"\n") == std::string::npos) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += "\"\"";
        else out.push_back(c);
    }
    out.push_back('"');
    return out;
}

}  // namespace

const char* FoodDatabase::csv_header() { return kHeader; }

FoodDatabase::FoodDatabase(std::vector<FoodRecord> records)
    : records_(std::move(records)) {
    rebuild_lookup();
}

void FoodDatabase::rebuild_lookup() {
    indices_.clear();
    by_index_.clear();
    indices_.reserve(records_.size());
    by_index_.reserve(records_.size());
    for (std::size_t row = 0; row < records_.size(); ++row) {
        const FoodRecord& r = records_[row];
        if (r.index <= 0) {
            throw DataError("row " + std::to_string(row + 1) + ": index " +
                            std::to_string(r.index) + " must be a positive integer");
        }
        auto [it, inserted] = by_index_.try_emplace(r.index, row);
        if (!inserted) {
            throw DataError("duplicate index " + std::to_string(r.index) + " in rows " +
                            std::to_string(it->second + 1) + " and " +
                            std::to_string(row + 1));
        }
        const std::array<std::pair<const char*, double>, 9> checked = {{
            {"energy_kcal", r.energy_kcal},
            {"protein_g", r.protein_g},
            {"fat_g", r.fat_g},
            {"carb_g", r.carb_g},
            {"calcium_mg", r.calcium_mg},
            {"phosphorus_mg", r.phosphorus_mg},
            {"sodium_mg", r.sodium_mg},
            {"potassium_mg", r.potassium_mg},
            {"serving_g", r.serving_g},
        }};
        for (const auto& [column, value] : checked) {
            if (value < 0.0) {
                throw DataError("row " + std::to_string(row + 1) + ", column '" + column +
                                "': negative value " + format_csv_double(value));
            }
        }
        if (!(r.serving_g > 0.0)) {
            throw DataError("row " + std::to_string(row + 1) +
                            ": serving_g must be > 0");
        }
        indices_.push_back(r.index);
    }
}

FoodDatabase FoodDatabase::load_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open food database: " + path.string());

    std::string line;
    if (!std::getline(in, line)) {
        throw DataError(path.string() + ": empty file, expected header '" +
                        std::string(kHeader) + "'");
    }
    if (!line.empty() && line.back() == '\r') line.pop_back();
    {
        const auto header_fields = split_csv_line(line, 1);
        if (header_fields.size() != kColumns.size()) {
            throw DataError(path.string() + ": header has " +
                            std::to_string(header_fields.size()) + " columns, expected " +
                            std::to_string(kColumns.size()));
        }
        for (std::size_t i = 0; i < kColumns.size(); ++i) {
            if (header_fields[i] != kColumns[i]) {
                throw DataError(path.string() + ": header column " + std::to_string(i + 1) +
                                " is '" + header_fields[i] + "', expected '" + kColumns[i] +
                                "'");
            }
        }
    }

    std::vector<FoodRecord> records;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto fields = split_csv_line(line, line_no);
        if (fields.size() != kColumns.size()) {
            throw DataError("line " + std::to_string(line_no) + ": has " +
                            std::to_string(fields.size()) + " fields, expected " +
                            std::to_string(kColumns.size()));
        }
        FoodRecord r;
        r.index = parse_index(fields[0], line_no);
        r.code = fields[1];
        r.name = fields[2];
        r.energy_kcal = parse_number(fields[3], line_no, "energy_kcal");
        r.protein_g = parse_number(fields[4], line_no, "protein_g");
        r.fat_g = parse_number(fields[5], line_no, "fat_g");
        r.carb_g = parse_number(fields[6], line_no, "carb_g");
        r.calcium_mg = parse_number(fields[7], line_no, "calcium_mg");
        r.phosphorus_mg = parse_number(fields[8], line_no, "phosphorus_mg");
        r.sodium_mg = parse_number(fields[9], line_no, "sodium_mg");
        r.potassium_mg = parse_number(fields[10], line_no, "potassium_mg");
        r.serving_g = parse_number(fields[11], line_no, "serving_g");
        records.push_back(std::move(r));
    }
    return FoodDatabase(std::move(records));
}

void FoodDatabase::save_csv(const std::filesystem::path& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write food database: " + path.string());
    out << kHeader << '\n';
    for (const FoodRecord& r : records_) {
        out << r.index << ',' << quote_if_needed(r.code) << ',' << quote_if_needed(r.name)
            << ',' << format_csv_double(r.energy_kcal) << ','
            << format_csv_double(r.protein_g) << ',' << format_csv_double(r.fat_g) << ','
            << format_csv_double(r.carb_g) << ',' << format_csv_double(r.calcium_mg)
            << ',' << format_csv_double(r.phosphorus_mg) << ','
            << format_csv_double(r.sodium_mg) << ',' << format_csv_double(r.potassium_mg)
            << ',' << format_csv_double(r.serving_g) << '\n';
    }
}

const FoodRecord& FoodDatabase::get(std::int32_t index) const {
    auto it = by_index_.find(index);
    if (it == by_index_.end()) {
        throw DataError("no food with index " + std::to_string(index));
    }
    return records_[it->second];
}

bool FoodDatabase::contains(std::int32_t index) const {
    return by_index_.count(index) != 0;
}

}  // namespace fgdiet
