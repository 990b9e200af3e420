#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hardchoice/ensemble.hpp"
#include "hardchoice/model.hpp"

namespace hardchoice {

enum class ResolutionMethod { Abandonment, Transformation, ArbitraryPick };
enum class Target { First, Second };

std::string_view to_string(ResolutionMethod method);
std::string_view to_string(Target target);

struct WeightChange {
    std::string juror_id;
    double magnitude;  // Euclidean distance between old and new weights

    friend bool operator==(const WeightChange&, const WeightChange&) = default;
};

struct ResolutionReport {
    ResolutionMethod method;
    ClassificationTrace before;
    ClassificationTrace after;
    Jury jury_after;
    std::vector<WeightChange> perturbation;  // one entry per juror in jury_after
    std::vector<std::string> removed;
};

/// Drops every juror whose verdict opposes the target. Indifferent and
/// supporting jurors survive with their weights untouched.
ResolutionReport resolve_by_abandonment(const Jury& jury, const OptionPoint& a, const OptionPoint& b,
                                        Target target);

/// Replaces each opposing juror's weights by the closest point of the
/// probability simplex (Euclidean) at which the target option leads the other
/// by at least margin + epsilon. Linear jurors only.
ResolutionReport resolve_by_transformation(const Jury& jury, const OptionPoint& a, const OptionPoint& b,
                                           Target target, double margin);

struct PickResult {
    std::string chosen;
    ResolutionReport report;
};

// Seeded, preference-free choice. Depends only on the two names (in either
// order) and the seed.
PickResult pick_arbitrarily(const Jury& jury, const OptionPoint& a, const OptionPoint& b,
                            std::uint64_t seed);

// Euclidean projection onto the probability simplex.
std::vector<double> project_onto_simplex(std::span<const double> v);

/// argmin |w - start| over the simplex subject to gap . w >= bound, or
/// nullopt when even the best vertex misses the bound. Closed form for two
/// objectives, otherwise a monotone search on the multiplier of the bound.
std::optional<std::vector<double>> project_onto_constrained_simplex(std::span<const double> start,
                                                                    std::span<const double> gap,
                                                                    double bound);

}  // namespace hardchoice
