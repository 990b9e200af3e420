#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "hardchoice/ensemble.hpp"
#include "hardchoice/model.hpp"

namespace hardchoice {

/// A single scalar reward: the predetermined-weights baseline.
class ScalarisedModel {
public:
    explicit ScalarisedModel(std::vector<double> weights, UtilityForm form = UtilityForm::Linear);

    // Accepts any nonnegative, nonzero weight vector and rescales it onto the simplex.
    static ScalarisedModel normalized(std::span<const double> raw_weights,
                                      UtilityForm form = UtilityForm::Linear);

    const std::vector<double>& weights() const noexcept { return weights_; }
    UtilityForm form() const noexcept { return form_; }
    std::size_t dimension() const noexcept { return weights_.size(); }

    double value(const OptionPoint& option) const;

    // The same model viewed as a juror with exact-tie semantics.
    Juror as_juror(std::string id = "scalarised") const;

    friend bool operator==(const ScalarisedModel&, const ScalarisedModel&) = default;

private:
    std::vector<double> weights_;
    UtilityForm form_;
};

struct TieGroup {
    double value;
    std::vector<std::string> options;  // problem order

    friend bool operator==(const TieGroup&, const TieGroup&) = default;
};

// Best group first. Always a complete relation: any two options are either
// in the same group (tied) or strictly ordered.
using Ranking = std::vector<TieGroup>;

Ranking scalarised_rank(const ScalarisedModel& model, const ChoiceProblem& problem);

// Relation between two options implied by a ranking (exact ties are Equal).
Relation ranked_relation(const Ranking& ranking, std::string_view a, std::string_view b);

/// Strict Pareto dominance for maximised objectives.
bool dominates(const OptionPoint& a, const OptionPoint& b);

struct ParetoResult {
    std::vector<std::string> front;                  // problem order
    std::map<std::string, std::string> dominated;    // option -> first dominator in problem order

    bool on_front(std::string_view name) const;

    friend bool operator==(const ParetoResult&, const ParetoResult&) = default;
};

// Pairwise O(n^2 d) sweep.
ParetoResult pareto_front(const ChoiceProblem& problem);

// HOLOCAUST-CAKE: objectives (harm_averted, pleasure); H = (1e6, 0), C = (0, 1).
ChoiceProblem holocaust_cake_problem();

struct MagnitudeDemo {
    ChoiceProblem problem;
    ParetoResult pareto;
    ClassificationTrace ensemble;  // H vs C under the CANON-2D jury
    // Pareto keeps both H and C while the jury has a strict preference.
    bool disagreement;
};

MagnitudeDemo failure_demo_magnitude();

// What Pareto optimisation can say about a single pair.
struct ParetoPairView {
    bool first_on_front;
    bool second_on_front;
    bool first_dominates;
    bool second_dominates;

    friend bool operator==(const ParetoPairView&, const ParetoPairView&) = default;
};

ParetoPairView pareto_pair_view(const ChoiceProblem& problem, std::string_view a, std::string_view b);

struct EqualityDemo {
    ChoiceProblem identical;   // X and X' with the same scores
    ParetoResult identical_front;
    Relation identical_relation;

    ChoiceProblem tradeoff;    // CANON-2D restricted to {A, B}
    ParetoResult tradeoff_front;
    Relation tradeoff_relation;

    // Pareto output on the two pairs cannot be told apart while the jury
    // separates Equal from Incommensurable.
    bool pareto_indistinguishable;
};

EqualityDemo failure_demo_equality();

struct ScalarisationWitnessed {
    std::vector<double> weights;
};
struct ScalarisationImpossible {
    std::size_t searched;
};
using ScalarisationOutcome = std::variant<ScalarisationWitnessed, ScalarisationImpossible>;

/// Sweeps `grid_resolution` evenly spaced weight vectors on the 1-simplex
/// (first weight ascending from 0 to 1) and returns the first whose complete
/// scalarised relation reproduces the jury's classification matrix. An
/// Incommensurable entry can never be reproduced by a complete relation.
/// Only d = 2 is supported.
ScalarisationOutcome scalarisation_impossibility(const ChoiceProblem& problem, const Jury& jury,
                                                 std::size_t grid_resolution);

}  // namespace hardchoice
