#include "hardchoice/oracle.hpp"

#include <cmath>

#include "hardchoice/errors.hpp"

namespace hardchoice::oracle {

namespace {

double utility(const Juror& juror, const std::vector<double>& scores) {
    const auto& w = juror.weights();
    if (w.size() != scores.size()) throw Error(ErrorKind::DimensionMismatch, "oracle: dimension");
    if (juror.form() == UtilityForm::Linear) {
        double total = 0.0;
        for (std::size_t i = 0; i < w.size(); ++i) total += w[i] * scores[i];
        return total;
    }
    double total = 1.0;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (scores[i] <= 0.0) throw Error(ErrorKind::NonPositiveScoreForLogForm, "oracle: score <= 0");
        total *= std::pow(scores[i], w[i]);
    }
    return total;
}

}  // namespace

Relation brute_force_relation(const Jury& jury, const OptionPoint& a, const OptionPoint& b) {
    int votes_for_a = 0;
    int votes_for_b = 0;
    for (std::size_t j = 0; j < jury.size(); ++j) {
        const double gap = utility(jury[j], a.scores) - utility(jury[j], b.scores);
        if (std::abs(gap) <= jury[j].epsilon()) continue;
        (gap > 0.0 ? votes_for_a : votes_for_b) += 1;
    }
    static constexpr Relation table[2][2] = {
        {Relation::Equal, Relation::PreferredSecond},
        {Relation::PreferredFirst, Relation::Incommensurable},
    };
    return table[votes_for_a > 0][votes_for_b > 0];
}

}  // namespace hardchoice::oracle
