#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace hardchoice {

// Objectives are always maximised. Cost-like criteria are negated by whoever
// authors the scenario.
struct Objective {
    std::string name;

    friend bool operator==(const Objective&, const Objective&) = default;
};

struct OptionPoint {
    std::string name;
    std::vector<double> scores;

    friend bool operator==(const OptionPoint&, const OptionPoint&) = default;
};

struct ChoiceProblem {
    std::vector<Objective> objectives;
    std::vector<OptionPoint> options;

    std::size_t dimension() const noexcept { return objectives.size(); }
    std::size_t size() const noexcept { return options.size(); }

    // Throws UnknownOption.
    const OptionPoint& option(std::string_view name) const;
    std::size_t index_of(std::string_view name) const;

    friend bool operator==(const ChoiceProblem&, const ChoiceProblem&) = default;
};

/// Checks every structural invariant (d >= 1, n >= 2, unique names, matching
/// dimensions, finite scores) and returns the problem unchanged.
ChoiceProblem validate_problem(ChoiceProblem problem);

// An ordered pair of option names.
struct OptionPair {
    std::string first;
    std::string second;

    friend bool operator==(const OptionPair&, const OptionPair&) = default;
    friend auto operator<=>(const OptionPair&, const OptionPair&) = default;
};

enum class UtilityForm { Linear, CobbDouglas };

std::string_view to_string(UtilityForm form);
std::optional<UtilityForm> utility_form_from_string(std::string_view text);

inline constexpr double kWeightSumTolerance = 1e-9;
inline constexpr double kDefaultEpsilon = 1e-9;

// Rejects empty, negative, non-finite or non-normalised weight vectors.
void check_simplex_weights(std::span<const double> weights, std::string_view owner);

// Divides by the sum. Rejects negative entries and an all-zero vector.
std::vector<double> normalize_weights(std::span<const double> raw, std::string_view owner);

/// One permissible ordering of the options: a scalarised utility model with
/// its own indifference tolerance on utility differences.
class Juror {
public:
    Juror(std::string id, std::vector<double> weights, UtilityForm form = UtilityForm::Linear,
          double epsilon = kDefaultEpsilon);

    const std::string& id() const noexcept { return id_; }
    const std::vector<double>& weights() const noexcept { return weights_; }
    UtilityForm form() const noexcept { return form_; }
    double epsilon() const noexcept { return epsilon_; }
    std::size_t dimension() const noexcept { return weights_.size(); }

    Juror with_weights(std::vector<double> weights) const;

    friend bool operator==(const Juror&, const Juror&) = default;

private:
    std::string id_;
    std::vector<double> weights_;
    UtilityForm form_;
    double epsilon_;
};

class Jury {
public:
    explicit Jury(std::vector<Juror> jurors);

    std::size_t size() const noexcept { return jurors_.size(); }
    std::size_t dimension() const noexcept { return jurors_.front().dimension(); }
    const Juror& operator[](std::size_t i) const { return jurors_[i]; }
    const std::vector<Juror>& jurors() const noexcept { return jurors_; }
    auto begin() const noexcept { return jurors_.begin(); }
    auto end() const noexcept { return jurors_.end(); }

    bool all_linear() const noexcept;

    friend bool operator==(const Jury&, const Jury&) = default;

private:
    std::vector<Juror> jurors_;
};

enum class Relation { PreferredFirst, PreferredSecond, Equal, Incommensurable };

std::string_view to_string(Relation relation);
std::optional<Relation> relation_from_string(std::string_view text);

// Relation of (b, a) given the relation of (a, b).
constexpr Relation mirror(Relation r) noexcept {
    switch (r) {
        case Relation::PreferredFirst: return Relation::PreferredSecond;
        case Relation::PreferredSecond: return Relation::PreferredFirst;
        default: return r;
    }
}

struct Tolerances {
    double epsilon_default = kDefaultEpsilon;
    // Unit-bearing; deliberately has no default.
    std::optional<double> tau;
    // Small-improvement step, as a fraction of each objective's score range.
    double delta = 0.01;

    friend bool operator==(const Tolerances&, const Tolerances&) = default;
};

void validate_tolerances(const Tolerances& tolerances);

struct Instance {
    ChoiceProblem problem;
    Jury jury;
};

// CANON-2D: objectives (income, excitement), options A, B, A+, B+ and the
// two-juror jury alpha = (0.8, 0.2), beta = (0.3, 0.7).
Instance canonical_instance();

}  // namespace hardchoice
