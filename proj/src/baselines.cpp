#include "hardchoice/baselines.hpp"

#include <algorithm>
#include <numeric>

#include "hardchoice/errors.hpp"

namespace hardchoice {

ScalarisedModel::ScalarisedModel(std::vector<double> weights, UtilityForm form)
    : weights_(std::move(weights)), form_(form) {
    check_simplex_weights(weights_, "scalarised model");
}

ScalarisedModel ScalarisedModel::normalized(std::span<const double> raw_weights, UtilityForm form) {
    return ScalarisedModel(normalize_weights(raw_weights, "scalarised model"), form);
}

double ScalarisedModel::value(const OptionPoint& option) const {
    return juror_value(as_juror(), option);
}

Juror ScalarisedModel::as_juror(std::string id) const {
    return Juror(std::move(id), weights_, form_, 0.0);
}

Ranking scalarised_rank(const ScalarisedModel& model, const ChoiceProblem& problem) {
    const Juror juror = model.as_juror();
    std::vector<std::pair<double, std::size_t>> scored;
    scored.reserve(problem.size());
    for (std::size_t i = 0; i < problem.size(); ++i) {
        scored.emplace_back(juror_value(juror, problem.options[i]), i);
    }
    std::stable_sort(scored.begin(), scored.end(),
                     [](const auto& x, const auto& y) { return x.first > y.first; });

    Ranking ranking;
    for (const auto& [value, index] : scored) {
        if (ranking.empty() || ranking.back().value != value) ranking.push_back({value, {}});
        ranking.back().options.push_back(problem.options[index].name);
    }
    return ranking;
}

Relation ranked_relation(const Ranking& ranking, std::string_view a, std::string_view b) {
    auto position = [&](std::string_view name) {
        for (std::size_t g = 0; g < ranking.size(); ++g) {
            const auto& names = ranking[g].options;
            if (std::find(names.begin(), names.end(), name) != names.end()) return g;
        }
        throw Error(ErrorKind::UnknownOption, "'" + std::string(name) + "' is not in the ranking");
    };
    const std::size_t pa = position(a);
    const std::size_t pb = position(b);
    if (pa == pb) return Relation::Equal;
    return pa < pb ? Relation::PreferredFirst : Relation::PreferredSecond;
}

bool dominates(const OptionPoint& a, const OptionPoint& b) {
    if (a.scores.size() != b.scores.size()) {
        throw Error(ErrorKind::DimensionMismatch,
                    "cannot compare '" + a.name + "' and '" + b.name + "': different dimensions");
    }
    bool strictly_better_somewhere = false;
    for (std::size_t k = 0; k < a.scores.size(); ++k) {
        if (a.scores[k] < b.scores[k]) return false;
        if (a.scores[k] > b.scores[k]) strictly_better_somewhere = true;
    }
    return strictly_better_somewhere;
}

bool ParetoResult::on_front(std::string_view name) const {
    return std::find(front.begin(), front.end(), name) != front.end();
}

ParetoResult pareto_front(const ChoiceProblem& problem) {
    ParetoResult result;
    for (const auto& candidate : problem.options) {
        const OptionPoint* witness = nullptr;
        for (const auto& other : problem.options) {
            if (&other != &candidate && dominates(other, candidate)) {
                witness = &other;
                break;
            }
        }
        if (witness) {
            result.dominated.emplace(candidate.name, witness->name);
        } else {
            result.front.push_back(candidate.name);
        }
    }
    return result;
}

ChoiceProblem holocaust_cake_problem() {
    return validate_problem({
        {{"harm_averted"}, {"pleasure"}},
        {{"H", {1e6, 0.0}}, {"C", {0.0, 1.0}}},
    });
}

MagnitudeDemo failure_demo_magnitude() {
    MagnitudeDemo demo{holocaust_cake_problem(), {}, {}, false};
    const Jury jury = canonical_instance().jury;
    demo.pareto = pareto_front(demo.problem);
    demo.ensemble = jury_classify(jury, demo.problem.option("H"), demo.problem.option("C"));
    const bool pareto_keeps_both = demo.pareto.on_front("H") && demo.pareto.on_front("C");
    const bool jury_decides = demo.ensemble.relation == Relation::PreferredFirst ||
                              demo.ensemble.relation == Relation::PreferredSecond;
    demo.disagreement = pareto_keeps_both && jury_decides;
    return demo;
}

ParetoPairView pareto_pair_view(const ChoiceProblem& problem, std::string_view a, std::string_view b) {
    const ParetoResult front = pareto_front(problem);
    const OptionPoint& pa = problem.option(a);
    const OptionPoint& pb = problem.option(b);
    return {front.on_front(a), front.on_front(b), dominates(pa, pb), dominates(pb, pa)};
}

EqualityDemo failure_demo_equality() {
    const Instance canon = canonical_instance();
    EqualityDemo demo{
        validate_problem({canon.problem.objectives, {{"X", {7.0, 5.0}}, {"X'", {7.0, 5.0}}}}),
        {},
        Relation::Equal,
        validate_problem({canon.problem.objectives, {canon.problem.option("A"), canon.problem.option("B")}}),
        {},
        Relation::Equal,
        false,
    };
    demo.identical_front = pareto_front(demo.identical);
    demo.identical_relation =
        jury_classify(canon.jury, demo.identical.options[0], demo.identical.options[1]).relation;
    demo.tradeoff_front = pareto_front(demo.tradeoff);
    demo.tradeoff_relation =
        jury_classify(canon.jury, demo.tradeoff.options[0], demo.tradeoff.options[1]).relation;

    const auto view_identical = pareto_pair_view(demo.identical, "X", "X'");
    const auto view_tradeoff = pareto_pair_view(demo.tradeoff, "A", "B");
    demo.pareto_indistinguishable = view_identical == view_tradeoff &&
                                    demo.identical_relation != demo.tradeoff_relation;
    return demo;
}

namespace {

bool reproduces(const RelationMatrix& jury_matrix, const std::vector<double>& values) {
    const std::size_t n = jury_matrix.size();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            bool ok = false;
            switch (jury_matrix.at(i, j)) {
                case Relation::Incommensurable: ok = false; break;
                case Relation::Equal: ok = values[i] == values[j]; break;
                case Relation::PreferredFirst: ok = values[i] > values[j]; break;
                case Relation::PreferredSecond: ok = values[i] < values[j]; break;
            }
            if (!ok) return false;
        }
    }
    return true;
}

}  // namespace

ScalarisationOutcome scalarisation_impossibility(const ChoiceProblem& problem, const Jury& jury,
                                                 std::size_t grid_resolution) {
    if (problem.dimension() != 2 || jury.dimension() != 2) {
        throw Error(ErrorKind::UnsupportedDimension,
                    "scalarisation search only supports 2 objectives, got " +
                        std::to_string(problem.dimension()));
    }
    if (grid_resolution == 0) throw Error(ErrorKind::InvalidTolerance, "grid_resolution must be > 0");

    const RelationMatrix target = classification_matrix(jury, problem);
    std::vector<double> values(problem.size());
    for (std::size_t k = 0; k < grid_resolution; ++k) {
        const double w1 = grid_resolution == 1
                              ? 0.5
                              : static_cast<double>(k) / static_cast<double>(grid_resolution - 1);
        std::vector<double> weights{w1, 1.0 - w1};
        const Juror scalar("grid", weights, UtilityForm::Linear, 0.0);
        for (std::size_t i = 0; i < problem.size(); ++i) values[i] = juror_value(scalar, problem.options[i]);
        if (reproduces(target, values)) return ScalarisationWitnessed{std::move(weights)};
    }
    return ScalarisationImpossible{grid_resolution};
}

}  // namespace hardchoice
