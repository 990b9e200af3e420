#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "hardchoice/baselines.hpp"
#include "hardchoice/metapolicy.hpp"
#include "hardchoice/model.hpp"

namespace hardchoice {

struct Scenario {
    ChoiceProblem problem;
    Jury jury;
    Tolerances tolerances;
    std::string context_tag = "generic";
    std::map<OptionPair, Relation> ground_truth;
    std::optional<ScalarisedModel> reference_model;
    std::optional<GateOneModel> gate1;

    friend bool operator==(const Scenario&, const Scenario&) = default;
};

// Throws SemanticError naming the violated invariant.
void validate_scenario(const Scenario& scenario);

Scenario canonical_scenario();

/// Line-oriented scenario text; see docs/scenario-format.md.
/// Throws SyntaxError (with line and column) or SemanticError.
Scenario parse_scenario(std::string_view text);
std::string serialize_scenario(const Scenario& scenario);

// A document holding only a [gate1] block.
GateOneModel parse_gate_model(std::string_view text);
std::string serialize_gate_model(const GateOneModel& model);

// Shortest decimal (never exponent) text that parses back to the same double.
std::string format_decimal(double value);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, std::string_view text);

}  // namespace hardchoice
