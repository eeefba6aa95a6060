#include "fgdiet/fuzzy.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace fgdiet::fuzzy {

namespace {

// Quadratic spline S-curve: 0 at a, 0.5 at the midpoint, 1 at b.
// Degenerate (a == b) collapses to a unit step at b.
double s_curve(double x, double a, double b) {
    if (x <= a) return x >= b ? 1.0 : 0.0;
    if (x >= b) return 1.0;
    const double u = (x - a) / (b - a);
    if (u <= 0.5) return 2.0 * u * u;
    const double v = 1.0 - u;
    return 1.0 - 2.0 * v * v;
}

}  // namespace

Universe::Universe(double lo_, double hi_) : lo(lo_), hi(hi_) {
    if (!(hi > lo)) {
        std::ostringstream msg;
        msg << "universe requires hi > lo, got [" << lo_ << ", " << hi_ << "]";
        throw ValidationError(msg.str());
    }
}

double Universe::clamp(double x) const {
    return std::min(hi, std::max(lo, x));
}

MembershipFunction::MembershipFunction(Shape s, std::array<double, 4> pts)
    : shape_(s), pts_(pts) {
    for (std::size_t i = 1; i < pts_.size(); ++i) {
        if (pts_[i] < pts_[i - 1]) {
            std::ostringstream msg;
            msg << "membership breakpoints must be non-decreasing, got "
                << pts_[i - 1] << " then " << pts_[i];
            throw ValidationError(msg.str());
        }
    }
}

MembershipFunction MembershipFunction::shoulder_left(double plateau_end, double foot) {
    return MembershipFunction(Shape::shoulder_left,
                              {plateau_end, plateau_end, foot, foot});
}

MembershipFunction MembershipFunction::shoulder_right(double foot, double plateau_start) {
    return MembershipFunction(Shape::shoulder_right,
                              {foot, plateau_start, plateau_start, plateau_start});
}

MembershipFunction MembershipFunction::pi(double left_foot, double left_shoulder,
                                          double right_shoulder, double right_foot) {
    return MembershipFunction(Shape::pi,
                              {left_foot, left_shoulder, right_shoulder, right_foot});
}

double MembershipFunction::eval(double x) const {
    switch (shape_) {
        case Shape::shoulder_left:
            return 1.0 - s_curve(x, pts_[0], pts_[2]);
        case Shape::shoulder_right:
            return s_curve(x, pts_[0], pts_[1]);
        case Shape::pi:
            if (x < pts_[1]) return s_curve(x, pts_[0], pts_[1]);
            if (x > pts_[2]) return 1.0 - s_curve(x, pts_[2], pts_[3]);
            return 1.0;
    }
    return 0.0;
}

double MembershipFunction::plateau_center(const Universe& u) const {
    switch (shape_) {
        case Shape::shoulder_left:
            return 0.5 * (u.lo + std::min(pts_[0], u.hi));
        case Shape::shoulder_right:
            return 0.5 * (std::max(pts_[1], u.lo) + u.hi);
        case Shape::pi:
            return 0.5 * (pts_[1] + pts_[2]);
    }
    return u.midpoint();
}

LinguisticVariable::LinguisticVariable(std::string name, Universe universe,
                                       std::vector<FuzzySet> sets)
    : name_(std::move(name)), universe_(universe), sets_(std::move(sets)) {
    if (sets_.empty()) {
        throw ValidationError("linguistic variable '" + name_ + "' has no sets");
    }
    double prev_center = -std::numeric_limits<double>::infinity();
    for (const auto& s : sets_) {
        const double c = s.mf.plateau_center(universe_);
        if (c <= prev_center) {
            throw ValidationError("variable '" + name_ + "': set '" + s.label +
                                  "' breaks the increasing-center order");
        }
        prev_center = c;
    }
    // Coverage: every point of the universe must belong to some set.
    constexpr int kGrid = 1001;
    for (int i = 0; i < kGrid; ++i) {
        const double x =
            universe_.lo + static_cast<double>(i) * universe_.width() / (kGrid - 1);
        double best = 0.0;
        for (const auto& s : sets_) best = std::max(best, s.mf.eval(x));
        if (!(best > 0.0)) {
            std::ostringstream msg;
            msg << "variable '" << name_ << "' has zero coverage at x = " << x;
            throw ValidationError(msg.str());
        }
    }
}

const FuzzySet& LinguisticVariable::set(const std::string& label) const {
    for (const auto& s : sets_) {
        if (s.label == label) return s;
    }
    throw ValidationError("variable '" + name_ + "' has no set '" + label + "'");
}

bool LinguisticVariable::has_set(const std::string& label) const {
    return std::any_of(sets_.begin(), sets_.end(),
                       [&](const FuzzySet& s) { return s.label == label; });
}

std::map<std::string, double> LinguisticVariable::fuzzify(double x) const {
    const double clamped = universe_.clamp(x);
    std::map<std::string, double> degrees;
    for (const auto& s : sets_) degrees[s.label] = s.mf.eval(clamped);
    return degrees;
}

double defuzz_centroid(const AggregatedOutput& agg) {
    if (agg.degrees.size() < 2) {
        throw ValidationError("aggregated output needs at least 2 samples");
    }
    double mass = 0.0;
    double moment = 0.0;
    for (std::size_t i = 0; i < agg.degrees.size(); ++i) {
        mass += agg.degrees[i];
        moment += agg.degrees[i] * agg.x_at(i);
    }
    if (!(mass > 0.0)) {
        throw ValidationError("centroid of an all-zero membership curve");
    }
    return agg.universe.clamp(moment / mass);
}

MamdaniEngine::MamdaniEngine(std::vector<LinguisticVariable> variables,
                             std::vector<Rule> rules, int resolution)
    : variables_(std::move(variables)), rules_(std::move(rules)),
      resolution_(resolution) {
    if (resolution_ < 2) {
        throw ValidationError("engine resolution must be at least 2");
    }
    for (const auto& rule : rules_) {
        if (rule.antecedents.empty()) {
            throw ValidationError("rule with empty antecedent list");
        }
        for (const auto& [var, label] : rule.antecedents) {
            if (!variable(var).has_set(label)) {
                throw ValidationError("rule references unknown set '" + label +
                                      "' of variable '" + var + "'");
            }
        }
        const auto& [cvar, clabel] = rule.consequent;
        if (!variable(cvar).has_set(clabel)) {
            throw ValidationError("rule references unknown consequent set '" +
                                  clabel + "' of variable '" + cvar + "'");
        }
    }
}

const LinguisticVariable& MamdaniEngine::variable(const std::string& name) const {
    for (const auto& v : variables_) {
        if (v.name() == name) return v;
    }
    throw ValidationError("unknown linguistic variable '" + name + "'");
}

AggregatedOutput MamdaniEngine::aggregate(const std::map<std::string, double>& inputs,
                                          const std::string& output_variable) const {
    const LinguisticVariable& out = variable(output_variable);

    // Fuzzify each supplied input once.
    std::map<std::string, std::map<std::string, double>> degrees;
    for (const auto& [name, x] : inputs) degrees[name] = variable(name).fuzzify(x);

    // Firing strength per consequent set: MIN over antecedents, MAX across rules.
    std::map<std::string, double> strengths;
    for (const auto& rule : rules_) {
        if (rule.consequent.first != output_variable) continue;
        double strength = 1.0;
        for (const auto& [var, label] : rule.antecedents) {
            auto it = degrees.find(var);
            if (it == degrees.end()) {
                throw ValidationError("missing crisp input for variable '" + var + "'");
            }
            strength = std::min(strength, it->second.at(label));
        }
        auto [slot, inserted] = strengths.try_emplace(rule.consequent.second, strength);
        if (!inserted) slot->second = std::max(slot->second, strength);
    }

    AggregatedOutput agg{output_variable, out.universe(),
                         std::vector<double>(static_cast<std::size_t>(resolution_), 0.0)};
    for (const auto& [label, strength] : strengths) {
        if (strength <= 0.0) continue;
        const MembershipFunction& mf = out.set(label).mf;
        for (std::size_t i = 0; i < agg.degrees.size(); ++i) {
            const double clipped = std::min(strength, mf.eval(agg.x_at(i)));
            agg.degrees[i] = std::max(agg.degrees[i], clipped);
        }
    }
    return agg;
}

InferenceResult MamdaniEngine::infer(const std::map<std::string, double>& inputs,
                                     const std::string& output_variable) const {
    const AggregatedOutput agg = aggregate(inputs, output_variable);
    const bool fired =
        std::any_of(agg.degrees.begin(), agg.degrees.end(),
                    [](double d) { return d > 0.0; });
    if (!fired) {
        return {agg.universe.midpoint(), false};
    }
    return {defuzz_centroid(agg), true};
}

}  // namespace fgdiet::fuzzy
