#pragma once

#include <optional>
#include <string>

#include "hardchoice/model.hpp"
#include "hardchoice/scenario.hpp"

namespace hardchoice {

/// Standalone SVG of a two-objective scenario: every option as a labelled
/// point and, per juror, the indifference curves through the two options of
/// `pair` and through their mid level. When `resolved` is given a second
/// panel draws the same curves for that jury. Output is byte-deterministic.
/// Throws UnsupportedDimension unless the problem has exactly two objectives.
std::string render_plot_svg(const Scenario& scenario, const OptionPair& pair,
                            const std::optional<Jury>& resolved = std::nullopt);

void emit_plot(const Scenario& scenario, const OptionPair& pair, const std::string& path,
               const std::optional<Jury>& resolved = std::nullopt);

}  // namespace hardchoice
