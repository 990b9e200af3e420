#include "hardchoice/resolution.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

#include "hardchoice/errors.hpp"

namespace hardchoice {

std::string_view to_string(ResolutionMethod method) {
    switch (method) {
        case ResolutionMethod::Abandonment: return "abandonment";
        case ResolutionMethod::Transformation: return "transformation";
        case ResolutionMethod::ArbitraryPick: return "arbitrary_pick";
    }
    return "unknown";
}

std::string_view to_string(Target target) { return target == Target::First ? "first" : "second"; }

namespace {

Verdict supporting(Target target) {
    return target == Target::First ? Verdict::FirstBetter : Verdict::SecondBetter;
}

Verdict opposing(Target target) {
    return target == Target::First ? Verdict::SecondBetter : Verdict::FirstBetter;
}

ClassificationTrace require_hard(const Jury& jury, const OptionPoint& a, const OptionPoint& b) {
    auto trace = jury_classify(jury, a, b);
    if (trace.relation != Relation::Incommensurable) {
        throw Error(ErrorKind::NotHard, "pair ('" + a.name + "', '" + b.name + "') is " +
                                            std::string(to_string(trace.relation)) +
                                            ", not incommensurable");
    }
    return trace;
}

void require_support(const ClassificationTrace& trace, Target target) {
    const bool any = std::any_of(trace.verdicts.begin(), trace.verdicts.end(),
                                 [&](const JurorVerdict& v) { return v.verdict == supporting(target); });
    if (!any) {
        throw Error(ErrorKind::NoSupportingJuror,
                    "no juror prefers the " + std::string(to_string(target)) + " option");
    }
}

double distance(std::span<const double> x, std::span<const double> y) {
    double sum = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) sum += (x[i] - y[i]) * (x[i] - y[i]);
    return std::sqrt(sum);
}

double dot(std::span<const double> x, std::span<const double> y) {
    return std::inner_product(x.begin(), x.end(), y.begin(), 0.0);
}

}  // namespace

ResolutionReport resolve_by_abandonment(const Jury& jury, const OptionPoint& a, const OptionPoint& b,
                                        Target target) {
    auto before = require_hard(jury, a, b);
    require_support(before, target);

    std::vector<Juror> kept;
    std::vector<std::string> removed;
    for (std::size_t j = 0; j < jury.size(); ++j) {
        if (before.verdicts[j].verdict == opposing(target)) {
            removed.push_back(jury[j].id());
        } else {
            kept.push_back(jury[j]);
        }
    }
    Jury after_jury(std::move(kept));
    std::vector<WeightChange> perturbation;
    for (const auto& juror : after_jury) perturbation.push_back({juror.id(), 0.0});
    auto after = jury_classify(after_jury, a, b);
    return {ResolutionMethod::Abandonment, std::move(before), std::move(after), std::move(after_jury),
            std::move(perturbation), std::move(removed)};
}

std::vector<double> project_onto_simplex(std::span<const double> v) {
    std::vector<double> u(v.begin(), v.end());
    std::sort(u.begin(), u.end(), std::greater<>());
    double running = 0.0;
    double theta = 0.0;
    for (std::size_t j = 0; j < u.size(); ++j) {
        running += u[j];
        const double candidate = (running - 1.0) / static_cast<double>(j + 1);
        if (u[j] - candidate > 0.0) theta = candidate;
    }
    std::vector<double> w(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) w[i] = std::max(v[i] - theta, 0.0);
    return w;
}

std::optional<std::vector<double>> project_onto_constrained_simplex(std::span<const double> start,
                                                                    std::span<const double> gap,
                                                                    double bound) {
    const std::size_t d = start.size();
    if (gap.size() != d || d == 0) throw Error(ErrorKind::DimensionMismatch, "projection: dimension");
    if (dot(start, gap) >= bound) return std::vector<double>(start.begin(), start.end());

    const auto best = static_cast<std::size_t>(std::max_element(gap.begin(), gap.end()) - gap.begin());
    if (gap[best] < bound) return std::nullopt;

    std::vector<double> w;
    if (d == 2) {
        // On the segment (t, 1 - t) the bound is one linear inequality in t,
        // and start violates it, so the nearest feasible point is the boundary.
        if (gap[0] == gap[1]) {
            w.assign(start.begin(), start.end());
        } else {
            const double t = std::clamp((bound - gap[1]) / (gap[0] - gap[1]), 0.0, 1.0);
            w = {t, 1.0 - t};
        }
    } else {
        // The minimiser is P(start + lambda * gap) for the smallest lambda >= 0
        // meeting the bound; gap . P(start + lambda * gap) is nondecreasing.
        auto at = [&](double lambda) {
            std::vector<double> shifted(d);
            for (std::size_t i = 0; i < d; ++i) shifted[i] = start[i] + lambda * gap[i];
            return project_onto_simplex(shifted);
        };
        double lo = 0.0;
        double hi = 1.0;
        for (int i = 0; i < 2000 && dot(at(hi), gap) < bound; ++i) hi *= 2.0;
        for (int i = 0; i < 200; ++i) {
            const double mid = 0.5 * (lo + hi);
            if (mid <= lo || mid >= hi) break;
            (dot(at(mid), gap) >= bound ? hi : lo) = mid;
        }
        w = at(hi);
    }

    // Rounding can leave the point a few ulps short of the bound; slide it
    // toward the best vertex just far enough.
    if (dot(w, gap) < bound) {
        auto blend = [&](double s) {
            std::vector<double> out(d);
            for (std::size_t i = 0; i < d; ++i) out[i] = (1.0 - s) * w[i] + (i == best ? s : 0.0);
            return out;
        };
        double lo = 0.0;
        double hi = 1.0;
        for (int i = 0; i < 200; ++i) {
            const double mid = 0.5 * (lo + hi);
            if (mid <= lo || mid >= hi) break;
            (dot(blend(mid), gap) >= bound ? hi : lo) = mid;
        }
        w = blend(hi);
    }
    return w;
}

ResolutionReport resolve_by_transformation(const Jury& jury, const OptionPoint& a, const OptionPoint& b,
                                           Target target, double margin) {
    if (!jury.all_linear()) {
        throw Error(ErrorKind::UnsupportedForm, "transformation needs every juror to be linear");
    }
    if (!std::isfinite(margin) || margin < 0.0) {
        throw Error(ErrorKind::InvalidTolerance, "transformation margin must be >= 0");
    }
    auto before = require_hard(jury, a, b);
    require_support(before, target);

    const OptionPoint& winner = target == Target::First ? a : b;
    const OptionPoint& loser = target == Target::First ? b : a;
    if (winner.scores.size() != jury.dimension() || loser.scores.size() != jury.dimension()) {
        throw Error(ErrorKind::DimensionMismatch, "option and jury dimensions differ");
    }
    std::vector<double> gap(jury.dimension());
    for (std::size_t k = 0; k < gap.size(); ++k) gap[k] = winner.scores[k] - loser.scores[k];

    std::vector<Juror> jurors;
    std::vector<WeightChange> perturbation;
    for (std::size_t j = 0; j < jury.size(); ++j) {
        const Juror& juror = jury[j];
        if (before.verdicts[j].verdict != opposing(target)) {
            jurors.push_back(juror);
            perturbation.push_back({juror.id(), 0.0});
            continue;
        }
        auto projected = project_onto_constrained_simplex(juror.weights(), gap, margin + juror.epsilon());
        if (!projected) {
            throw Error(ErrorKind::InfeasibleTransformation,
                        "no weights let '" + winner.name + "' lead '" + loser.name + "' by " +
                            std::to_string(margin) + " for juror '" + juror.id() + "'");
        }
        perturbation.push_back({juror.id(), distance(juror.weights(), *projected)});
        jurors.push_back(juror.with_weights(std::move(*projected)));
    }
    Jury after_jury(std::move(jurors));
    auto after = jury_classify(after_jury, a, b);
    return {ResolutionReport{ResolutionMethod::Transformation, std::move(before), std::move(after),
                             std::move(after_jury), std::move(perturbation), {}}};
}

namespace {

std::uint64_t fnv1a(std::string_view text, std::uint64_t h = 0xcbf29ce484222325ULL) {
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

}  // namespace

PickResult pick_arbitrarily(const Jury& jury, const OptionPoint& a, const OptionPoint& b,
                            std::uint64_t seed) {
    const auto& [low, high] = std::minmax(a.name, b.name);
    std::uint64_t h = fnv1a(low);
    h = fnv1a(std::string_view("\x1f", 1), h);
    h = fnv1a(high, h);
    const bool take_high = (splitmix64(h ^ splitmix64(seed)) >> 63) != 0;

    auto trace = jury_classify(jury, a, b);
    std::vector<WeightChange> perturbation;
    for (const auto& juror : jury) perturbation.push_back({juror.id(), 0.0});
    return {take_high ? high : low,
            ResolutionReport{ResolutionMethod::ArbitraryPick, trace, trace, jury, std::move(perturbation), {}}};
}

}  // namespace hardchoice
