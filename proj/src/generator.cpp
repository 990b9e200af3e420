#include "hardchoice/generator.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <json.hpp>
#include <random>

#include "hardchoice/errors.hpp"
#include "hardchoice/oracle.hpp"

namespace hardchoice {

std::string_view to_string(ScenarioClass c) {
    switch (c) {
        case ScenarioClass::Hard: return "hard";
        case ScenarioClass::Easy: return "easy";
        case ScenarioClass::Equal: return "equal";
    }
    return "unknown";
}

GeneratorConfig parse_generator_config(std::string_view json_text) {
    using nlohmann::json;
    GeneratorConfig c;
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw Error(ErrorKind::SyntaxError, std::string("generator config: ") + e.what());
    }
    if (!j.is_object()) throw Error(ErrorKind::SemanticError, "generator config must be a JSON object");
    try {
        for (const auto& [key, value] : j.items()) {
            if (key == "scenarios") c.scenarios = value.get<std::size_t>();
            else if (key == "dimension") c.dimension = value.get<std::size_t>();
            else if (key == "options") c.options = value.get<std::size_t>();
            else if (key == "jurors") c.jurors = value.get<std::size_t>();
            else if (key == "weight_spread") c.weight_spread = value.get<double>();
            else if (key == "score_scale") c.score_scale = value.get<double>();
            else if (key == "context_signal") c.context_signal = value.get<double>();
            else if (key == "epsilon") c.epsilon = value.get<double>();
            else if (key == "tau") c.tau = value.get<double>();
            else if (key == "delta") c.delta = value.get<double>();
            else if (key == "mix") {
                c.mix = {value.value("hard", 0.0), value.value("easy", 0.0), value.value("equal", 0.0)};
            } else if (key == "distractors") {
                const auto mode = value.get<std::string>();
                if (mode == "dominated_chain") c.distractors = DistractorMode::DominatedChain;
                else if (mode == "uniform") c.distractors = DistractorMode::Uniform;
                else throw Error(ErrorKind::SemanticError, "unknown distractor mode '" + mode + "'");
            } else {
                throw Error(ErrorKind::SemanticError, "unknown generator config key '" + key + "'");
            }
        }
    } catch (const json::exception& e) {
        throw Error(ErrorKind::SemanticError, std::string("generator config: ") + e.what());
    }
    return c;
}

namespace {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    std::size_t index(std::size_t n) { return static_cast<std::size_t>(engine_() % n); }

private:
    std::mt19937_64 engine_;
};

void check_config(const GeneratorConfig& c) {
    auto fail = [](const std::string& msg) { throw Error(ErrorKind::SemanticError, "generator config: " + msg); };
    if (c.dimension < 1) fail("dimension must be >= 1");
    if (c.options < 2) fail("options must be >= 2");
    if (c.jurors < 1) fail("jurors must be >= 1");
    if (!(c.weight_spread >= 0.0)) fail("weight_spread must be >= 0");
    if (!(c.score_scale > 0.0)) fail("score_scale must be > 0");
    if (!(c.context_signal >= 0.0 && c.context_signal <= 1.0)) fail("context_signal must lie in [0, 1]");
    validate_tolerances({c.epsilon, c.tau, c.delta});

    const auto& m = c.mix;
    if (m.hard < 0.0 || m.easy < 0.0 || m.equal < 0.0 || std::abs(m.hard + m.easy + m.equal - 1.0) > 1e-9) {
        throw Error(ErrorKind::InfeasibleMix, "class mix must be nonnegative and sum to 1");
    }
    if (m.hard > 0.0) {
        if (c.jurors < 2) {
            throw Error(ErrorKind::InfeasibleMix, "incommensurable scenarios need at least two jurors");
        }
        if (c.dimension < 2) {
            throw Error(ErrorKind::InfeasibleMix, "incommensurable scenarios need at least two objectives");
        }
        if (c.weight_spread == 0.0) {
            throw Error(ErrorKind::InfeasibleMix, "identical jurors cannot disagree; weight_spread is 0");
        }
    }
}

Jury make_jury(const GeneratorConfig& c, Rng& rng) {
    std::vector<double> base(c.dimension);
    for (double& b : base) b = -std::log(1.0 - rng.uniform());
    base = normalize_weights(base, "generator");

    std::vector<Juror> jurors;
    for (std::size_t j = 0; j < c.jurors; ++j) {
        std::vector<double> w(c.dimension);
        for (std::size_t k = 0; k < w.size(); ++k) {
            w[k] = std::max(1e-3, base[k] + c.weight_spread * (2.0 * rng.uniform() - 1.0));
        }
        jurors.emplace_back("j" + std::to_string(j + 1), normalize_weights(w, "generator"),
                            UtilityForm::Linear, c.epsilon);
    }
    return Jury(std::move(jurors));
}

double norm(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

// A direction that juror a values positively and juror b negatively:
// w_a/|w_a| - w_b/|w_b|. Empty when the two coincide.
std::vector<double> split_direction(const Juror& a, const Juror& b) {
    const double na = norm(a.weights());
    const double nb = norm(b.weights());
    std::vector<double> v(a.dimension());
    for (std::size_t k = 0; k < v.size(); ++k) v[k] = a.weights()[k] / na - b.weights()[k] / nb;
    const double nv = norm(v);
    if (nv < 1e-9) return {};
    for (double& x : v) x /= nv;
    return v;
}

std::optional<std::pair<OptionPoint, OptionPoint>> make_focal_pair(const GeneratorConfig& c, const Jury& jury,
                                                                   ScenarioClass klass, Rng& rng) {
    const double scale = c.score_scale;
    OptionPoint p{"P", std::vector<double>(c.dimension)};
    for (double& s : p.scores) s = rng.uniform(0.4, 0.8) * scale;
    OptionPoint q{"Q", p.scores};

    switch (klass) {
        case ScenarioClass::Equal: break;
        case ScenarioClass::Easy: {
            for (double& s : q.scores) s -= rng.uniform(0.05, 0.2) * scale;
            if (rng.uniform() < 0.5) std::swap(p.scores, q.scores);
            break;
        }
        case ScenarioClass::Hard: {
            std::size_t far = 1;
            double best = -1.0;
            for (std::size_t j = 1; j < jury.size(); ++j) {
                std::vector<double> diff(c.dimension);
                for (std::size_t k = 0; k < diff.size(); ++k) diff[k] = jury[j].weights()[k] - jury[0].weights()[k];
                if (norm(diff) > best) {
                    best = norm(diff);
                    far = j;
                }
            }
            const auto v = split_direction(jury[0], jury[far]);
            if (v.empty()) return std::nullopt;
            const double step = rng.uniform(0.1, 0.3) * scale;
            for (std::size_t k = 0; k < v.size(); ++k) q.scores[k] += step * v[k];
            break;
        }
    }
    return std::make_pair(std::move(p), std::move(q));
}

Relation expected_relation(ScenarioClass klass, const OptionPoint& p, const OptionPoint& q) {
    switch (klass) {
        case ScenarioClass::Hard: return Relation::Incommensurable;
        case ScenarioClass::Equal: return Relation::Equal;
        case ScenarioClass::Easy: return p.scores[0] > q.scores[0] ? Relation::PreferredFirst : Relation::PreferredSecond;
    }
    return Relation::Equal;
}

std::string pick_tag(const GeneratorConfig& c, ScenarioClass klass, Rng& rng) {
    static constexpr std::array<std::string_view, 2> hard_tags{"career", "leisure"};
    static constexpr std::array<std::string_view, 2> easy_tags{"investment", "logistics"};
    const auto vocab = context_vocabulary();
    if (rng.uniform() < c.context_signal) {
        const auto& pool = klass == ScenarioClass::Hard ? hard_tags : easy_tags;
        return std::string(pool[rng.index(pool.size())]);
    }
    return std::string(vocab[rng.index(vocab.size())].name);
}

Scenario make_scenario(const GeneratorConfig& c, ScenarioClass klass, Rng& rng) {
    for (int attempt = 0; attempt < 64; ++attempt) {
        Jury jury = make_jury(c, rng);
        auto focal = make_focal_pair(c, jury, klass, rng);
        if (!focal) continue;
        auto& [p, q] = *focal;
        if (oracle::brute_force_relation(jury, p, q) != expected_relation(klass, p, q)) continue;

        ChoiceProblem problem;
        for (std::size_t k = 0; k < c.dimension; ++k) problem.objectives.push_back({"f" + std::to_string(k + 1)});
        std::vector<double> floor(c.dimension);
        for (std::size_t k = 0; k < c.dimension; ++k) floor[k] = std::min(p.scores[k], q.scores[k]);
        problem.options.push_back(std::move(p));
        problem.options.push_back(std::move(q));
        for (std::size_t i = 2; i < c.options; ++i) {
            OptionPoint extra{"D" + std::to_string(i - 1), std::vector<double>(c.dimension)};
            for (std::size_t k = 0; k < c.dimension; ++k) {
                if (c.distractors == DistractorMode::DominatedChain) {
                    floor[k] -= rng.uniform(0.05, 0.2) * c.score_scale;
                    extra.scores[k] = floor[k];
                } else {
                    extra.scores[k] = rng.uniform(0.0, 1.2) * c.score_scale;
                }
            }
            problem.options.push_back(std::move(extra));
        }

        std::vector<double> mean(c.dimension, 0.0);
        for (const auto& juror : jury) {
            for (std::size_t k = 0; k < mean.size(); ++k) mean[k] += juror.weights()[k];
        }

        Scenario s{validate_problem(std::move(problem)), std::move(jury), {c.epsilon, c.tau, c.delta},
                   pick_tag(c, klass, rng), {}, ScalarisedModel::normalized(mean), std::nullopt};
        for (std::size_t i = 0; i < s.problem.size(); ++i) {
            for (std::size_t j = i + 1; j < s.problem.size(); ++j) {
                s.ground_truth.emplace(OptionPair{s.problem.options[i].name, s.problem.options[j].name},
                                       oracle::brute_force_relation(s.jury, s.problem.options[i], s.problem.options[j]));
            }
        }
        return s;
    }
    throw Error(ErrorKind::InfeasibleMix,
                "could not build a " + std::string(to_string(klass)) + " scenario with this configuration");
}

}  // namespace

std::vector<Scenario> generate_corpus(const GeneratorConfig& config, std::uint64_t seed) {
    check_config(config);
    const auto count = [&](double fraction) {
        return static_cast<std::size_t>(std::llround(fraction * static_cast<double>(config.scenarios)));
    };
    const std::size_t hard = std::min(count(config.mix.hard), config.scenarios);
    const std::size_t equal = std::min(count(config.mix.equal), config.scenarios - hard);

    std::vector<ScenarioClass> classes(config.scenarios, ScenarioClass::Easy);
    std::fill_n(classes.begin(), hard, ScenarioClass::Hard);
    std::fill_n(classes.begin() + static_cast<std::ptrdiff_t>(hard), equal, ScenarioClass::Equal);

    Rng rng(seed);
    for (std::size_t i = classes.size(); i > 1; --i) std::swap(classes[i - 1], classes[rng.index(i)]);

    std::vector<Scenario> corpus;
    corpus.reserve(classes.size());
    for (ScenarioClass klass : classes) corpus.push_back(make_scenario(config, klass, rng));
    return corpus;
}

ScenarioClass focal_class(const Scenario& scenario) {
    if (scenario.problem.size() < 2) throw Error(ErrorKind::InvalidProblem, "scenario has no focal pair");
    const OptionPair focal{scenario.problem.options[0].name, scenario.problem.options[1].name};
    auto it = scenario.ground_truth.find(focal);
    if (it == scenario.ground_truth.end()) {
        throw Error(ErrorKind::SemanticError, "scenario has no ground truth for its focal pair");
    }
    switch (it->second) {
        case Relation::Incommensurable: return ScenarioClass::Hard;
        case Relation::Equal: return ScenarioClass::Equal;
        default: return ScenarioClass::Easy;
    }
}

bool involves_incommensurability(const Scenario& scenario) {
    if (scenario.ground_truth.empty()) {
        throw Error(ErrorKind::SemanticError, "scenario carries no ground truth labels");
    }
    return std::any_of(scenario.ground_truth.begin(), scenario.ground_truth.end(),
                       [](const auto& entry) { return entry.second == Relation::Incommensurable; });
}

std::vector<LabeledFeatures> gate_training_set(const std::vector<Scenario>& corpus) {
    std::vector<LabeledFeatures> out;
    out.reserve(corpus.size());
    for (const auto& s : corpus) {
        out.push_back({compute_gate_features(s.problem, s.context_tag), involves_incommensurability(s)});
    }
    return out;
}

void write_corpus(const std::vector<Scenario>& corpus, const std::string& directory) {
    std::error_code ec;
    std::filesystem::create_directories(directory, ec);
    if (ec) throw Error(ErrorKind::Io, "cannot create '" + directory + "': " + ec.message());
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        char name[32];
        std::snprintf(name, sizeof name, "scenario_%05zu.scn", i);
        write_text_file((std::filesystem::path(directory) / name).string(), serialize_scenario(corpus[i]));
    }
}

std::vector<Scenario> read_corpus(const std::string& directory) {
    std::vector<std::filesystem::path> files;
    std::error_code ec;
    for (const auto& entry : std::filesystem::directory_iterator(directory, ec)) {
        if (entry.is_regular_file() && entry.path().extension() == ".scn") files.push_back(entry.path());
    }
    if (ec) throw Error(ErrorKind::Io, "cannot list '" + directory + "': " + ec.message());
    std::sort(files.begin(), files.end());
    std::vector<Scenario> corpus;
    for (const auto& f : files) {
        try {
            corpus.push_back(parse_scenario(read_text_file(f.string())));
        } catch (const SyntaxError& e) {
            throw SyntaxError(e.line(), e.column(), f.filename().string() + ": " + e.what());
        } catch (const Error& e) {
            throw Error(e.kind(), f.filename().string() + ": " + e.what());
        }
    }
    return corpus;
}

}  // namespace hardchoice
