#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hardchoice/baselines.hpp"
#include "hardchoice/metapolicy.hpp"
#include "hardchoice/resolution.hpp"
#include "hardchoice/scenario.hpp"

namespace hardchoice {

// What a method says about one pair. Undecided is Pareto's "both survive":
// it abstains rather than choosing between Equal and Incommensurable.
enum class MethodVerdict { PreferredFirst, PreferredSecond, Equal, Incommensurable, Undecided };

std::string_view to_string(MethodVerdict verdict);
MethodVerdict to_method_verdict(Relation relation);

// Identical verdicts agree; Undecided is compatible with Equal, Incommensurable
// and Undecided, never with a strict preference.
bool compatible(MethodVerdict x, MethodVerdict y);

enum class Method { Ensemble, Scalarised, Pareto, Metapolicy };

std::string_view to_string(Method method);

struct PairRow {
    OptionPair pair;
    std::vector<MethodVerdict> verdicts;  // aligned with ComparisonReport::methods
    bool disagreement;                    // some method incompatible with the ensemble
};

struct ResolutionRequest {
    OptionPair pair;
    Target target;
    ResolutionMethod method;
    double margin = 0.0;
    std::uint64_t seed = 0;
};

struct ComparisonOptions {
    std::optional<GateOneModel> gate1;  // falls back to the scenario's own block
    bool include_demos = false;
    std::vector<ResolutionRequest> resolutions;
};

struct ComparisonReport {
    std::vector<Method> methods;
    std::vector<PairRow> rows;  // every unordered pair once, problem order
    ScalarisedModel scalarised_model;
    Ranking scalarised_ranking;
    ParetoResult pareto;
    std::optional<PipelineOutcome> pipeline;
    // agreement[m][k]: rows on which methods m and k give compatible verdicts.
    std::vector<std::vector<std::size_t>> agreement;
    std::optional<MagnitudeDemo> magnitude_demo;
    std::optional<EqualityDemo> equality_demo;
    std::vector<ResolutionReport> resolutions;

    std::size_t column(Method method) const;
    const PairRow& row(std::string_view a, std::string_view b) const;
};

/// Classifies every pair with the ensemble, the scalarised reference model
/// (uniform weights when the scenario has none), Pareto dominance and, when
/// a gate-1 model and tau are available, the meta-policy pipeline.
ComparisonReport run_comparison(const Scenario& scenario, const ComparisonOptions& options = {});

enum class OutputFormat { Table, Csv };

// Aligned plain-text table or RFC-4180-style CSV.
std::string render_table(const std::vector<std::string>& header,
                         const std::vector<std::vector<std::string>>& rows, OutputFormat format);

std::string render_report(const ComparisonReport& report, OutputFormat format);

}  // namespace hardchoice
