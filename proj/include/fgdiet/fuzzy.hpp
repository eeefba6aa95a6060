#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "fgdiet/errors.hpp"

namespace fgdiet::fuzzy {

struct Universe {
    double lo = 0.0;
    double hi = 1.0;

    Universe() = default;
    Universe(double lo_, double hi_);

    double clamp(double x) const;
    double width() const { return hi - lo; }
    double midpoint() const { return 0.5 * (lo + hi); }
};

enum class Shape { shoulder_left, shoulder_right, pi };

/// Piecewise-quadratic spline membership curves. The underlying S-curve is
/// exactly 0 at its left foot, exactly 1 at its right foot and 0.5 at the
/// midpoint, so saturation values are exact rather than asymptotic.
class MembershipFunction {
public:
    static MembershipFunction shoulder_left(double plateau_end, double foot);
    static MembershipFunction shoulder_right(double foot, double plateau_start);
    static MembershipFunction pi(double left_foot, double left_shoulder,
                                 double right_shoulder, double right_foot);

    double eval(double x) const;

    Shape shape() const { return shape_; }
    const std::array<double, 4>& breakpoints() const { return pts_; }

    /// Midpoint of the mu==1 plateau, clamped into the given universe.
    /// Used for the ordered-label validation of linguistic variables.
    double plateau_center(const Universe& u) const;

private:
    MembershipFunction(Shape s, std::array<double, 4> pts);

    Shape shape_;
    std::array<double, 4> pts_;  // unused slots mirror the active ones
};

struct FuzzySet {
    std::string label;
    MembershipFunction mf;
};

class LinguisticVariable {
public:
    /// Validates full coverage (max membership > 0 on a 1001-point grid) and
    /// strictly increasing plateau centers in label order.
    LinguisticVariable(std::string name, Universe universe, std::vector<FuzzySet> sets);

    const std::string& name() const { return name_; }
    const Universe& universe() const { return universe_; }
    const std::vector<FuzzySet>& sets() const { return sets_; }

    const FuzzySet& set(const std::string& label) const;
    bool has_set(const std::string& label) const;

    /// Crisp input (clamped into the universe) -> one degree per set.
    std::map<std::string, double> fuzzify(double x) const;

private:
    std::string name_;
    Universe universe_;
    std::vector<FuzzySet> sets_;
};

struct Rule {
    // (variable, set label) pairs joined by AND.
    std::vector<std::pair<std::string, std::string>> antecedents;
    std::pair<std::string, std::string> consequent;
};

/// Aggregated output curve sampled on n equally spaced points over the
/// output universe, degrees in [0,1].
struct AggregatedOutput {
    std::string variable;
    Universe universe;
    std::vector<double> degrees;

    double x_at(std::size_t i) const {
        return universe.lo + static_cast<double>(i) * universe.width() /
                                 static_cast<double>(degrees.size() - 1);
    }
};

struct InferenceResult {
    double value = 0.0;
    /// False when no rule fired with positive strength and the universe
    /// midpoint fallback was used.
    bool any_rule_fired = true;
};

/// Sum(x_i * mu_i) / Sum(mu_i) over the sample grid.
/// Throws ValidationError when the curve carries no mass.
double defuzz_centroid(const AggregatedOutput& agg);

/// Mamdani max-min inference: MIN implication, MAX aggregation, centroid
/// defuzzification. Immutable after construction; infer() is pure.
class MamdaniEngine {
public:
    MamdaniEngine(std::vector<LinguisticVariable> variables, std::vector<Rule> rules,
                  int resolution = 1001);

    const LinguisticVariable& variable(const std::string& name) const;
    const std::vector<Rule>& rules() const { return rules_; }
    int resolution() const { return resolution_; }

    /// Clips every matching rule's consequent at its firing strength and
    /// aggregates by pointwise MAX.
    AggregatedOutput aggregate(const std::map<std::string, double>& inputs,
                               const std::string& output_variable) const;

    InferenceResult infer(const std::map<std::string, double>& inputs,
                          const std::string& output_variable) const;

private:
    std::vector<LinguisticVariable> variables_;
    std::vector<Rule> rules_;
    int resolution_;
};

}  // namespace fgdiet::fuzzy
