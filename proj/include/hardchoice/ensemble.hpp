#pragma once

#include <string>
#include <vector>

#include "hardchoice/model.hpp"

namespace hardchoice {

enum class Verdict { FirstBetter, SecondBetter, Indifferent };

std::string_view to_string(Verdict verdict);

struct JurorVerdict {
    std::string juror_id;
    Verdict verdict;
    double margin;  // value(first) - value(second)

    friend bool operator==(const JurorVerdict&, const JurorVerdict&) = default;
};

struct ClassificationTrace {
    Relation relation;
    std::vector<JurorVerdict> verdicts;  // jury order

    friend bool operator==(const ClassificationTrace&, const ClassificationTrace&) = default;
};

/// Utility of an option under one juror: sum(w_i * s_i) for the linear form,
/// prod(s_i ^ w_i) for Cobb-Douglas. The latter rejects any score <= 0.
double juror_value(const Juror& juror, const OptionPoint& option);

JurorVerdict juror_compare(const Juror& juror, const OptionPoint& a, const OptionPoint& b);

/// Unanimity rule over juror verdicts:
///  - everyone indifferent                          -> Equal
///  - some prefer a, nobody prefers b               -> PreferredFirst
///  - some prefer b, nobody prefers a               -> PreferredSecond
///  - at least one juror on each side               -> Incommensurable
ClassificationTrace jury_classify(const Jury& jury, const OptionPoint& a, const OptionPoint& b);

// Row-major n x n; entry (i, j) is the relation of option i to option j.
class RelationMatrix {
public:
    RelationMatrix(std::vector<std::string> names, std::vector<Relation> cells);

    std::size_t size() const noexcept { return names_.size(); }
    const std::vector<std::string>& names() const noexcept { return names_; }
    Relation at(std::size_t i, std::size_t j) const { return cells_[i * names_.size() + j]; }

    friend bool operator==(const RelationMatrix&, const RelationMatrix&) = default;

private:
    std::vector<std::string> names_;
    std::vector<Relation> cells_;
};

RelationMatrix classification_matrix(const Jury& jury, const ChoiceProblem& problem);

struct SmallImprovementResult {
    bool confirmed;
    std::string reason;  // empty when confirmed
};

// The step applied to every coordinate by small_improvement_test:
// delta * (score range of that objective across the problem's options), with
// a range of 0 replaced by 1.
std::vector<double> improvement_step(const ChoiceProblem& problem, double delta);

OptionPoint improved(const OptionPoint& option, const std::vector<double>& step);

/// Small-improvement diagnostic for a pair of options of `problem`. The pair
/// must first be Incommensurable under the jury. Then a+ (a improved on every
/// coordinate) has to beat a unanimously while still not beating b, and the
/// same with the roles of a and b swapped.
SmallImprovementResult small_improvement_test(const Jury& jury, const ChoiceProblem& problem,
                                              const OptionPoint& a, const OptionPoint& b,
                                              double delta);

}  // namespace hardchoice
