#include "hardchoice/model.hpp"

#include <cmath>
#include <numeric>
#include <set>

#include "hardchoice/errors.hpp"

namespace hardchoice {

const OptionPoint& ChoiceProblem::option(std::string_view name) const {
    return options[index_of(name)];
}

std::size_t ChoiceProblem::index_of(std::string_view name) const {
    for (std::size_t i = 0; i < options.size(); ++i) {
        if (options[i].name == name) return i;
    }
    throw Error(ErrorKind::UnknownOption, "no option named '" + std::string(name) + "'");
}

ChoiceProblem validate_problem(ChoiceProblem problem) {
    const std::size_t d = problem.objectives.size();
    if (d == 0) throw Error(ErrorKind::InvalidProblem, "a problem needs at least one objective");
    if (problem.options.size() < 2) {
        throw Error(ErrorKind::InvalidProblem, "a problem needs at least two options");
    }

    std::set<std::string, std::less<>> seen;
    for (const auto& objective : problem.objectives) {
        if (objective.name.empty()) throw Error(ErrorKind::InvalidProblem, "empty objective name");
        if (!seen.insert(objective.name).second) {
            throw Error(ErrorKind::DuplicateName, "objective '" + objective.name + "' appears twice");
        }
    }

    seen.clear();
    for (const auto& option : problem.options) {
        if (option.name.empty()) throw Error(ErrorKind::InvalidProblem, "empty option name");
        if (!seen.insert(option.name).second) {
            throw Error(ErrorKind::DuplicateName, "option '" + option.name + "' appears twice");
        }
        if (option.scores.size() != d) {
            throw Error(ErrorKind::DimensionMismatch,
                        "option '" + option.name + "' has " + std::to_string(option.scores.size()) +
                            " scores, expected " + std::to_string(d));
        }
        for (std::size_t k = 0; k < d; ++k) {
            if (!std::isfinite(option.scores[k])) {
                throw Error(ErrorKind::NonFiniteScore, "option '" + option.name +
                                                           "' has a non-finite score for objective '" +
                                                           problem.objectives[k].name + "'");
            }
        }
    }
    return problem;
}

std::string_view to_string(UtilityForm form) {
    return form == UtilityForm::Linear ? "linear" : "cobb_douglas";
}

std::optional<UtilityForm> utility_form_from_string(std::string_view text) {
    if (text == "linear") return UtilityForm::Linear;
    if (text == "cobb_douglas") return UtilityForm::CobbDouglas;
    return std::nullopt;
}

void check_simplex_weights(std::span<const double> weights, std::string_view owner) {
    const std::string who(owner);
    if (weights.empty()) throw Error(ErrorKind::InvalidWeights, who + ": empty weight vector");
    double sum = 0.0;
    for (double w : weights) {
        if (!std::isfinite(w)) throw Error(ErrorKind::InvalidWeights, who + ": non-finite weight");
        if (w < 0.0) throw Error(ErrorKind::InvalidWeights, who + ": negative weight");
        sum += w;
    }
    if (std::abs(sum - 1.0) > kWeightSumTolerance) {
        throw Error(ErrorKind::InvalidWeights, who + ": weights sum to " + std::to_string(sum) + ", not 1");
    }
}

std::vector<double> normalize_weights(std::span<const double> raw, std::string_view owner) {
    const std::string who(owner);
    double sum = 0.0;
    for (double w : raw) {
        if (!std::isfinite(w) || w < 0.0) {
            throw Error(ErrorKind::InvalidWeights, who + ": negative or non-finite weight");
        }
        sum += w;
    }
    if (!(sum > 0.0)) throw Error(ErrorKind::InvalidWeights, who + ": weights sum to zero");
    std::vector<double> out(raw.begin(), raw.end());
    for (double& w : out) w /= sum;
    return out;
}

Juror::Juror(std::string id, std::vector<double> weights, UtilityForm form, double epsilon)
    : id_(std::move(id)), weights_(std::move(weights)), form_(form), epsilon_(epsilon) {
    if (id_.empty()) throw Error(ErrorKind::InvalidWeights, "juror id must be nonempty");
    check_simplex_weights(weights_, "juror '" + id_ + "'");
    if (!std::isfinite(epsilon_) || epsilon_ < 0.0) {
        throw Error(ErrorKind::InvalidTolerance, "juror '" + id_ + "': epsilon must be finite and >= 0");
    }
}

Juror Juror::with_weights(std::vector<double> weights) const {
    return Juror(id_, std::move(weights), form_, epsilon_);
}

Jury::Jury(std::vector<Juror> jurors) : jurors_(std::move(jurors)) {
    if (jurors_.empty()) throw Error(ErrorKind::InvalidProblem, "a jury needs at least one juror");
    std::set<std::string, std::less<>> ids;
    for (const auto& juror : jurors_) {
        if (!ids.insert(juror.id()).second) {
            throw Error(ErrorKind::DuplicateName, "juror '" + juror.id() + "' appears twice");
        }
        if (juror.dimension() != jurors_.front().dimension()) {
            throw Error(ErrorKind::DimensionMismatch,
                        "juror '" + juror.id() + "' has a different dimension from '" +
                            jurors_.front().id() + "'");
        }
    }
}

bool Jury::all_linear() const noexcept {
    for (const auto& juror : jurors_) {
        if (juror.form() != UtilityForm::Linear) return false;
    }
    return true;
}

std::string_view to_string(Relation relation) {
    switch (relation) {
        case Relation::PreferredFirst: return "preferred_first";
        case Relation::PreferredSecond: return "preferred_second";
        case Relation::Equal: return "equal";
        case Relation::Incommensurable: return "incommensurable";
    }
    return "unknown";
}

std::optional<Relation> relation_from_string(std::string_view text) {
    for (Relation r : {Relation::PreferredFirst, Relation::PreferredSecond, Relation::Equal,
                       Relation::Incommensurable}) {
        if (to_string(r) == text) return r;
    }
    return std::nullopt;
}

void validate_tolerances(const Tolerances& t) {
    auto bad = [](double v) { return !std::isfinite(v) || v < 0.0; };
    if (bad(t.epsilon_default)) {
        throw Error(ErrorKind::InvalidTolerance, "epsilon_default must be finite and >= 0");
    }
    if (t.tau && bad(*t.tau)) throw Error(ErrorKind::InvalidTolerance, "tau must be finite and >= 0");
    if (!std::isfinite(t.delta) || t.delta <= 0.0) {
        throw Error(ErrorKind::InvalidTolerance, "delta must be finite and > 0");
    }
}

Instance canonical_instance() {
    ChoiceProblem problem{
        {{"income"}, {"excitement"}},
        {
            {"A", {10.0, 2.0}},
            {"B", {4.0, 8.0}},
            {"A+", {10.5, 2.2}},
            {"B+", {4.2, 8.4}},
        },
    };
    Jury jury({
        Juror("alpha", {0.8, 0.2}, UtilityForm::Linear, kDefaultEpsilon),
        Juror("beta", {0.3, 0.7}, UtilityForm::Linear, kDefaultEpsilon),
    });
    return {validate_problem(std::move(problem)), std::move(jury)};
}

}  // namespace hardchoice
