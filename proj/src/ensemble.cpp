#include "hardchoice/ensemble.hpp"

#include <algorithm>
#include <cmath>

#include "hardchoice/errors.hpp"

namespace hardchoice {

std::string_view to_string(Verdict verdict) {
    switch (verdict) {
        case Verdict::FirstBetter: return "first_better";
        case Verdict::SecondBetter: return "second_better";
        case Verdict::Indifferent: return "indifferent";
    }
    return "unknown";
}

double juror_value(const Juror& juror, const OptionPoint& option) {
    const auto& w = juror.weights();
    if (option.scores.size() != w.size()) {
        throw Error(ErrorKind::DimensionMismatch,
                    "option '" + option.name + "' has " + std::to_string(option.scores.size()) +
                        " scores but juror '" + juror.id() + "' has " + std::to_string(w.size()) +
                        " weights");
    }
    double value = 0.0;
    if (juror.form() == UtilityForm::Linear) {
        for (std::size_t i = 0; i < w.size(); ++i) value += w[i] * option.scores[i];
    } else {
        value = 1.0;
        for (std::size_t i = 0; i < w.size(); ++i) {
            if (!(option.scores[i] > 0.0)) {
                throw Error(ErrorKind::NonPositiveScoreForLogForm,
                            "juror '" + juror.id() + "' is cobb_douglas but option '" + option.name +
                                "' has a score <= 0");
            }
            value *= std::pow(option.scores[i], w[i]);
        }
    }
    if (!std::isfinite(value)) {
        throw Error(ErrorKind::NonFiniteScore,
                    "juror '" + juror.id() + "' value of '" + option.name + "' is not finite");
    }
    return value;
}

JurorVerdict juror_compare(const Juror& juror, const OptionPoint& a, const OptionPoint& b) {
    const double margin = juror_value(juror, a) - juror_value(juror, b);
    Verdict verdict = Verdict::Indifferent;
    if (margin > juror.epsilon()) {
        verdict = Verdict::FirstBetter;
    } else if (margin < -juror.epsilon()) {
        verdict = Verdict::SecondBetter;
    }
    return {juror.id(), verdict, margin};
}

ClassificationTrace jury_classify(const Jury& jury, const OptionPoint& a, const OptionPoint& b) {
    ClassificationTrace trace{Relation::Equal, {}};
    trace.verdicts.reserve(jury.size());
    bool any_first = false;
    bool any_second = false;
    for (const auto& juror : jury) {
        auto v = juror_compare(juror, a, b);
        any_first = any_first || v.verdict == Verdict::FirstBetter;
        any_second = any_second || v.verdict == Verdict::SecondBetter;
        trace.verdicts.push_back(std::move(v));
    }
    if (any_first && any_second) {
        trace.relation = Relation::Incommensurable;
    } else if (any_first) {
        trace.relation = Relation::PreferredFirst;
    } else if (any_second) {
        trace.relation = Relation::PreferredSecond;
    }
    return trace;
}

RelationMatrix::RelationMatrix(std::vector<std::string> names, std::vector<Relation> cells)
    : names_(std::move(names)), cells_(std::move(cells)) {
    if (cells_.size() != names_.size() * names_.size()) {
        throw Error(ErrorKind::DimensionMismatch, "relation matrix is not square");
    }
}

RelationMatrix classification_matrix(const Jury& jury, const ChoiceProblem& problem) {
    const std::size_t n = problem.size();
    std::vector<std::string> names;
    names.reserve(n);
    for (const auto& o : problem.options) names.push_back(o.name);

    std::vector<Relation> cells(n * n, Relation::Equal);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const Relation r = jury_classify(jury, problem.options[i], problem.options[j]).relation;
            cells[i * n + j] = r;
            cells[j * n + i] = mirror(r);
        }
    }
    return RelationMatrix(std::move(names), std::move(cells));
}

std::vector<double> improvement_step(const ChoiceProblem& problem, double delta) {
    std::vector<double> step(problem.dimension(), 0.0);
    for (std::size_t k = 0; k < step.size(); ++k) {
        auto [lo, hi] = std::minmax_element(
            problem.options.begin(), problem.options.end(),
            [k](const OptionPoint& x, const OptionPoint& y) { return x.scores[k] < y.scores[k]; });
        double range = hi->scores[k] - lo->scores[k];
        if (range == 0.0) range = 1.0;
        step[k] = delta * range;
    }
    return step;
}

OptionPoint improved(const OptionPoint& option, const std::vector<double>& step) {
    OptionPoint out{option.name + "+", option.scores};
    for (std::size_t k = 0; k < out.scores.size() && k < step.size(); ++k) out.scores[k] += step[k];
    return out;
}

namespace {

// Empty string when a+ beats a but not b; otherwise the reason it failed.
std::string one_sided_check(const Jury& jury, const OptionPoint& a, const OptionPoint& b,
                            const std::vector<double>& step) {
    const OptionPoint a_plus = improved(a, step);
    if (jury_classify(jury, a_plus, a).relation != Relation::PreferredFirst) {
        return "improved '" + a.name + "' is not unanimously preferred to '" + a.name + "'";
    }
    if (jury_classify(jury, a_plus, b).relation == Relation::PreferredFirst) {
        return "improved '" + a.name + "' is preferred to '" + b.name + "'";
    }
    return {};
}

}  // namespace

SmallImprovementResult small_improvement_test(const Jury& jury, const ChoiceProblem& problem,
                                              const OptionPoint& a, const OptionPoint& b,
                                              double delta) {
    if (!std::isfinite(delta) || delta <= 0.0) {
        throw Error(ErrorKind::InvalidTolerance, "small-improvement delta must be > 0");
    }
    const Relation r = jury_classify(jury, a, b).relation;
    if (r == Relation::Equal) return {false, "pair is Equal"};
    if (r == Relation::PreferredFirst) return {false, "pair already PreferredFirst"};
    if (r == Relation::PreferredSecond) return {false, "pair already PreferredSecond"};

    const auto step = improvement_step(problem, delta);
    if (auto why = one_sided_check(jury, a, b, step); !why.empty()) return {false, why};
    if (auto why = one_sided_check(jury, b, a, step); !why.empty()) return {false, why};
    return {true, {}};
}

}  // namespace hardchoice
