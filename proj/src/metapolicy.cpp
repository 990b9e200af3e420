#include "hardchoice/metapolicy.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "hardchoice/ensemble.hpp"
#include "hardchoice/errors.hpp"

namespace hardchoice {

namespace {

constexpr std::array<ContextTag, 5> kVocabulary{{
    {"investment", 0.1},
    {"logistics", 0.2},
    {"generic", 0.5},
    {"leisure", 0.7},
    {"career", 0.9},
}};

double sigmoid(double z) {
    if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
    const double e = std::exp(z);
    return e / (1.0 + e);
}

}  // namespace

std::span<const ContextTag> context_vocabulary() { return kVocabulary; }

double context_affinity(std::string_view tag) {
    for (const auto& entry : kVocabulary) {
        if (entry.name == tag) return entry.affinity;
    }
    throw Error(ErrorKind::UnknownContextTag, "context tag '" + std::string(tag) + "' is not in the vocabulary");
}

GateFeatures compute_gate_features(const ChoiceProblem& problem, std::string_view context_tag) {
    GateFeatures f;
    f.affinity = context_affinity(context_tag);

    const std::size_t n = problem.size();
    const std::size_t d = problem.dimension();
    if (n == 0 || d == 0) return f;

    std::vector<double> lo(d, std::numeric_limits<double>::infinity());
    std::vector<double> hi(d, -std::numeric_limits<double>::infinity());
    for (const auto& o : problem.options) {
        for (std::size_t k = 0; k < d; ++k) {
            lo[k] = std::min(lo[k], o.scores[k]);
            hi[k] = std::max(hi[k], o.scores[k]);
        }
    }
    double spread_total = 0.0;
    for (const auto& o : problem.options) {
        double mn = 1.0;
        double mx = 0.0;
        for (std::size_t k = 0; k < d; ++k) {
            const double range = hi[k] - lo[k];
            const double v = range > 0.0 ? (o.scores[k] - lo[k]) / range : 0.0;
            mn = std::min(mn, v);
            mx = std::max(mx, v);
        }
        spread_total += mx - mn;
    }
    f.dispersion = spread_total / static_cast<double>(n);

    if (d >= 2 && n >= 2) {
        std::size_t discordant = 0;
        std::size_t total = 0;
        for (std::size_t k = 0; k < d; ++k) {
            for (std::size_t l = k + 1; l < d; ++l) {
                for (std::size_t i = 0; i < n; ++i) {
                    for (std::size_t j = i + 1; j < n; ++j) {
                        const double dk = problem.options[i].scores[k] - problem.options[j].scores[k];
                        const double dl = problem.options[i].scores[l] - problem.options[j].scores[l];
                        if (dk * dl < 0.0) ++discordant;
                        ++total;
                    }
                }
            }
        }
        f.disagreement = static_cast<double>(discordant) / static_cast<double>(total);
    }
    return f;
}

void validate_gate_model(const GateOneModel& m) {
    for (double v : {m.w_affinity, m.w_dispersion, m.w_disagreement, m.bias}) {
        if (!std::isfinite(v)) throw Error(ErrorKind::SemanticError, "gate-1 model has a non-finite parameter");
    }
    if (m.w_disagreement < 0.0) {
        throw Error(ErrorKind::SemanticError, "gate-1 disagreement weight must be >= 0");
    }
    if (!(m.threshold > 0.0 && m.threshold < 1.0)) {
        throw Error(ErrorKind::SemanticError, "gate-1 threshold must lie in (0, 1)");
    }
}

double gate1_likelihood(const GateOneModel& m, const GateFeatures& f) {
    return sigmoid(m.w_affinity * f.affinity + m.w_dispersion * f.dispersion +
                   m.w_disagreement * f.disagreement + m.bias);
}

bool gate1_says_likely(const GateOneModel& model, const GateFeatures& features) {
    return gate1_likelihood(model, features) >= model.threshold;
}

GateOneModel train_gate1(std::span<const LabeledFeatures> corpus, const Gate1TrainingOptions& options) {
    const auto positives = std::count_if(corpus.begin(), corpus.end(), [](const auto& e) { return e.hard; });
    if (positives == 0 || positives == static_cast<std::ptrdiff_t>(corpus.size())) {
        throw Error(ErrorKind::DegenerateCorpus, "training corpus contains a single class");
    }

    const Eigen::Index n = static_cast<Eigen::Index>(corpus.size());
    Eigen::MatrixXd x(n, 4);
    Eigen::VectorXd y(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const auto& e = corpus[static_cast<std::size_t>(i)];
        x.row(i) << e.features.affinity, e.features.dispersion, e.features.disagreement, 1.0;
        y(i) = e.hard ? 1.0 : 0.0;
    }
    // Fit on z-scored features so the penalty treats them alike; constant
    // columns get a zero weight.
    Eigen::Vector3d mean = x.leftCols<3>().colwise().mean().transpose();
    Eigen::Vector3d scale;
    for (int k = 0; k < 3; ++k) {
        const double sd = std::sqrt((x.col(k).array() - mean(k)).square().mean());
        scale(k) = sd > 1e-12 ? sd : 0.0;
        if (scale(k) > 0.0) {
            x.col(k) = (x.col(k).array() - mean(k)) / sd;
        } else {
            x.col(k).setZero();
        }
    }
    // Bias is not regularised.
    const Eigen::Vector4d penalty(options.l2, options.l2, options.l2, 0.0);
    const double inv_n = 1.0 / static_cast<double>(n);

    auto objective = [&](const Eigen::Vector4d& theta) {
        const Eigen::VectorXd z = x * theta;
        double loss = 0.0;
        for (Eigen::Index i = 0; i < n; ++i) {
            // log(1 + exp(z)) - y z, evaluated stably
            const double zi = z(i);
            loss += (zi > 0 ? zi + std::log1p(std::exp(-zi)) : std::log1p(std::exp(zi))) - y(i) * zi;
        }
        return loss * inv_n + 0.5 * theta.cwiseProduct(penalty).dot(theta);
    };

    Eigen::Vector4d theta = Eigen::Vector4d::Zero();
    double current = objective(theta);
    for (int iter = 0; iter < options.iterations; ++iter) {
        const Eigen::VectorXd z = x * theta;
        Eigen::VectorXd p(n);
        Eigen::VectorXd s(n);
        for (Eigen::Index i = 0; i < n; ++i) {
            p(i) = sigmoid(z(i));
            s(i) = p(i) * (1.0 - p(i));
        }
        const Eigen::Vector4d grad = x.transpose() * (p - y) * inv_n + penalty.cwiseProduct(theta);
        Eigen::Matrix4d hess = x.transpose() * s.asDiagonal() * x * inv_n;
        hess.diagonal() += penalty + Eigen::Vector4d::Constant(1e-10);
        const Eigen::Vector4d step = hess.ldlt().solve(grad);

        double t = 1.0;
        bool improved = false;
        for (int halving = 0; halving < 30; ++halving, t *= 0.5) {
            Eigen::Vector4d candidate = theta - t * step;
            candidate(2) = std::max(0.0, candidate(2));
            const double value = objective(candidate);
            if (value < current) {
                theta = candidate;
                current = value;
                improved = true;
                break;
            }
        }
        if (!improved) break;
    }

    Eigen::Vector3d raw = Eigen::Vector3d::Zero();
    for (int k = 0; k < 3; ++k) {
        if (scale(k) > 0.0) raw(k) = theta(k) / scale(k);
    }
    GateOneModel model{raw(0), raw(1), raw(2), theta(3) - raw.dot(mean), options.threshold};
    validate_gate_model(model);
    return model;
}

double gate1_accuracy(const GateOneModel& model, std::span<const LabeledFeatures> corpus) {
    if (corpus.empty()) return 0.0;
    std::size_t correct = 0;
    for (const auto& e : corpus) {
        if (gate1_says_likely(model, e.features) == e.hard) ++correct;
    }
    return static_cast<double>(correct) / static_cast<double>(corpus.size());
}

Gate2Result gate2_neighbourhood(const ScalarisedModel& reference, const OptionPoint& a,
                                const OptionPoint& b, double tau) {
    if (!std::isfinite(tau) || tau < 0.0) throw Error(ErrorKind::InvalidTolerance, "tau must be >= 0");
    const double margin = std::abs(reference.value(a) - reference.value(b));
    return {margin <= tau, margin};
}

std::string_view to_string(Route route) { return route == Route::Scalarised ? "scalarised" : "pareto"; }

PipelineOutcome pipeline_dispatch(const GateOneModel& gate1, const ScalarisedModel& reference,
                                  const Jury& jury_for_labels, const ChoiceProblem& problem,
                                  const Tolerances& tolerances, std::string_view context_tag) {
    if (!tolerances.tau) throw Error(ErrorKind::InvalidTolerance, "the pipeline needs tau to be set");
    const double tau = *tolerances.tau;

    PipelineTrace trace;
    trace.features = compute_gate_features(problem, context_tag);
    trace.gate1_probability = gate1_likelihood(gate1, trace.features);

    bool any_same = false;
    trace.min_gate2_margin = std::numeric_limits<double>::infinity();
    std::vector<bool> same(problem.size() * problem.size(), false);
    for (std::size_t i = 0; i < problem.size(); ++i) {
        for (std::size_t j = i + 1; j < problem.size(); ++j) {
            const auto g2 = gate2_neighbourhood(reference, problem.options[i], problem.options[j], tau);
            trace.gate2_margins.push_back({{problem.options[i].name, problem.options[j].name}, g2.margin});
            trace.min_gate2_margin = std::min(trace.min_gate2_margin, g2.margin);
            same[i * problem.size() + j] = g2.same_neighbourhood;
            any_same = any_same || g2.same_neighbourhood;
        }
    }

    const bool unlikely = trace.gate1_probability < gate1.threshold;
    if (unlikely || !any_same) {
        return {Route::Scalarised, scalarised_rank(reference, problem), {}, std::move(trace)};
    }

    ParetoResult front = pareto_front(problem);
    std::vector<OptionPair> labels;
    if (front.front.size() > 1) {
        for (std::size_t i = 0; i < problem.size(); ++i) {
            if (!front.on_front(problem.options[i].name)) continue;
            for (std::size_t j = i + 1; j < problem.size(); ++j) {
                if (!front.on_front(problem.options[j].name) || !same[i * problem.size() + j]) continue;
                labels.push_back({problem.options[i].name, problem.options[j].name});
                trace.label_relations.push_back(
                    jury_classify(jury_for_labels, problem.options[i], problem.options[j]).relation);
            }
        }
    }
    return {Route::Pareto, std::move(front), std::move(labels), std::move(trace)};
}

std::vector<OptionPair> mislabeled_equal_pairs(const PipelineOutcome& outcome) {
    std::vector<OptionPair> out;
    for (std::size_t i = 0; i < outcome.labels.size(); ++i) {
        if (outcome.trace.label_relations[i] == Relation::Equal) out.push_back(outcome.labels[i]);
    }
    return out;
}

}  // namespace hardchoice
