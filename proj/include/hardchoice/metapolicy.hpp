#pragma once

#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "hardchoice/baselines.hpp"
#include "hardchoice/model.hpp"

namespace hardchoice {

// Closed vocabulary of choice contexts. The affinity is a prior for how often
// people find choices in that context hard (investment rarely, career often).
struct ContextTag {
    std::string_view name;
    double affinity;
};

std::span<const ContextTag> context_vocabulary();

// Throws UnknownContextTag.
double context_affinity(std::string_view tag);

struct GateFeatures {
    double affinity = 0.0;
    // Mean over options of the spread of that option's range-normalised scores.
    double dispersion = 0.0;
    // Fraction of (option pair, objective pair) combinations ordered in
    // opposite directions by the two objectives.
    double disagreement = 0.0;

    friend bool operator==(const GateFeatures&, const GateFeatures&) = default;
};

GateFeatures compute_gate_features(const ChoiceProblem& problem, std::string_view context_tag);

/// Logistic gate estimating how likely a choice is to involve
/// incommensurability. The disagreement weight is kept nonnegative so the
/// probability is monotone in rank disagreement.
struct GateOneModel {
    double w_affinity = 0.0;
    double w_dispersion = 0.0;
    double w_disagreement = 0.0;
    double bias = 0.0;
    double threshold = 0.5;

    friend bool operator==(const GateOneModel&, const GateOneModel&) = default;
};

void validate_gate_model(const GateOneModel& model);

double gate1_likelihood(const GateOneModel& model, const GateFeatures& features);

// Convenience: likelihood >= threshold.
bool gate1_says_likely(const GateOneModel& model, const GateFeatures& features);

struct LabeledFeatures {
    GateFeatures features;
    bool hard;
};

struct Gate1TrainingOptions {
    double l2 = 1e-3;
    int iterations = 40;
    double threshold = 0.5;
};

// Damped Newton fit of an L2-regularised logistic model. Deterministic.
// Throws DegenerateCorpus when only one class is present.
GateOneModel train_gate1(std::span<const LabeledFeatures> corpus, const Gate1TrainingOptions& options = {});

double gate1_accuracy(const GateOneModel& model, std::span<const LabeledFeatures> corpus);

struct Gate2Result {
    bool same_neighbourhood;
    double margin;
};

Gate2Result gate2_neighbourhood(const ScalarisedModel& reference, const OptionPoint& a,
                                const OptionPoint& b, double tau);

enum class Route { Scalarised, Pareto };

std::string_view to_string(Route route);

struct PairMargin {
    OptionPair pair;
    double margin;
};

struct PipelineTrace {
    GateFeatures features;
    double gate1_probability = 0.0;
    std::vector<PairMargin> gate2_margins;  // every option pair, problem order
    double min_gate2_margin = 0.0;
    // Jury classification of each labelled pair, for auditing the labels.
    std::vector<Relation> label_relations;
};

struct PipelineOutcome {
    Route route;
    std::variant<Ranking, ParetoResult> result;
    std::vector<OptionPair> labels;  // pairs labelled "incommensurable"
    PipelineTrace trace;
};

/// Three-step meta-policy: gate 1 on the whole choice, gate 2 on every option
/// pair under the reference model, then scalarised ranking or a Pareto front
/// whose same-neighbourhood pairs are labelled incommensurable. The jury is
/// only consulted to audit the labels; it never changes the route.
PipelineOutcome pipeline_dispatch(const GateOneModel& gate1, const ScalarisedModel& reference,
                                  const Jury& jury_for_labels, const ChoiceProblem& problem,
                                  const Tolerances& tolerances, std::string_view context_tag);

// Labelled pairs that the jury classifies as Equal.
std::vector<OptionPair> mislabeled_equal_pairs(const PipelineOutcome& outcome);

}  // namespace hardchoice
