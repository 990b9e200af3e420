#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "hardchoice/metapolicy.hpp"
#include "hardchoice/scenario.hpp"

namespace hardchoice {

// Relation of the focal pair (the first two options) a scenario is built around.
enum class ScenarioClass { Hard, Easy, Equal };

std::string_view to_string(ScenarioClass c);

struct ClassMix {
    double hard = 0.3;
    double easy = 0.6;
    double equal = 0.1;
};

enum class DistractorMode {
    // Extra options form a chain strictly dominated by both focal options, so
    // only the focal pair can carry a trade-off.
    DominatedChain,
    // Extra options are drawn uniformly; trade-offs appear everywhere.
    Uniform,
};

struct GeneratorConfig {
    std::size_t scenarios = 1000;
    std::size_t dimension = 2;
    std::size_t options = 6;
    std::size_t jurors = 3;
    // Half-width of the uniform jitter applied to the shared base weights.
    double weight_spread = 0.2;
    double score_scale = 10.0;
    ClassMix mix;
    DistractorMode distractors = DistractorMode::DominatedChain;
    // Probability that the context tag is drawn from the class-typical tags
    // rather than from the whole vocabulary.
    double context_signal = 0.8;
    double epsilon = kDefaultEpsilon;
    double tau = 0.5;
    double delta = 0.01;
};

// JSON object whose keys mirror GeneratorConfig; unspecified keys keep their defaults.
GeneratorConfig parse_generator_config(std::string_view json_text);

/// Synthetic labelled scenarios. Ground truth for every option pair comes from
/// the brute-force oracle. Class counts are allocated by rounding the mix, then
/// shuffled, so the empirical mix matches the config to within 1 / scenarios.
/// Throws InfeasibleMix when a requested class cannot be built.
std::vector<Scenario> generate_corpus(const GeneratorConfig& config, std::uint64_t seed);

ScenarioClass focal_class(const Scenario& scenario);

// Gate-1 training label: some pair in the ground truth is incommensurable.
bool involves_incommensurability(const Scenario& scenario);

std::vector<LabeledFeatures> gate_training_set(const std::vector<Scenario>& corpus);

// Writes scenario_00000.scn, scenario_00001.scn, ... into `directory`.
void write_corpus(const std::vector<Scenario>& corpus, const std::string& directory);
std::vector<Scenario> read_corpus(const std::string& directory);

}  // namespace hardchoice
