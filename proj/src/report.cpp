#include "hardchoice/report.hpp"

#include <algorithm>
#include <sstream>

#include "hardchoice/ensemble.hpp"
#include "hardchoice/errors.hpp"

namespace hardchoice {

std::string_view to_string(MethodVerdict v) {
    switch (v) {
        case MethodVerdict::PreferredFirst: return "preferred_first";
        case MethodVerdict::PreferredSecond: return "preferred_second";
        case MethodVerdict::Equal: return "equal";
        case MethodVerdict::Incommensurable: return "incommensurable";
        case MethodVerdict::Undecided: return "undecided";
    }
    return "unknown";
}

MethodVerdict to_method_verdict(Relation r) {
    switch (r) {
        case Relation::PreferredFirst: return MethodVerdict::PreferredFirst;
        case Relation::PreferredSecond: return MethodVerdict::PreferredSecond;
        case Relation::Equal: return MethodVerdict::Equal;
        case Relation::Incommensurable: return MethodVerdict::Incommensurable;
    }
    return MethodVerdict::Undecided;
}

bool compatible(MethodVerdict x, MethodVerdict y) {
    if (x == y) return true;
    auto abstains_with = [](MethodVerdict u, MethodVerdict other) {
        return u == MethodVerdict::Undecided &&
               (other == MethodVerdict::Equal || other == MethodVerdict::Incommensurable);
    };
    return abstains_with(x, y) || abstains_with(y, x);
}

std::string_view to_string(Method m) {
    switch (m) {
        case Method::Ensemble: return "ensemble";
        case Method::Scalarised: return "scalarised";
        case Method::Pareto: return "pareto";
        case Method::Metapolicy: return "metapolicy";
    }
    return "unknown";
}

std::size_t ComparisonReport::column(Method method) const {
    auto it = std::find(methods.begin(), methods.end(), method);
    if (it == methods.end()) {
        throw Error(ErrorKind::InvalidProblem, "report has no " + std::string(to_string(method)) + " column");
    }
    return static_cast<std::size_t>(it - methods.begin());
}

const PairRow& ComparisonReport::row(std::string_view a, std::string_view b) const {
    for (const auto& r : rows) {
        if ((r.pair.first == a && r.pair.second == b) || (r.pair.first == b && r.pair.second == a)) return r;
    }
    throw Error(ErrorKind::UnknownOption, "no row for (" + std::string(a) + ", " + std::string(b) + ")");
}

namespace {

MethodVerdict pareto_verdict(const OptionPoint& a, const OptionPoint& b) {
    if (dominates(a, b)) return MethodVerdict::PreferredFirst;
    if (dominates(b, a)) return MethodVerdict::PreferredSecond;
    return MethodVerdict::Undecided;
}

MethodVerdict pipeline_verdict(const PipelineOutcome& outcome, const OptionPoint& a, const OptionPoint& b) {
    if (outcome.route == Route::Scalarised) {
        return to_method_verdict(ranked_relation(std::get<Ranking>(outcome.result), a.name, b.name));
    }
    for (const auto& label : outcome.labels) {
        if ((label.first == a.name && label.second == b.name) || (label.first == b.name && label.second == a.name)) {
            return MethodVerdict::Incommensurable;
        }
    }
    return pareto_verdict(a, b);
}

ScalarisedModel reference_or_uniform(const Scenario& s) {
    if (s.reference_model) return *s.reference_model;
    return ScalarisedModel::normalized(std::vector<double>(s.problem.dimension(), 1.0));
}

}  // namespace

ComparisonReport run_comparison(const Scenario& scenario, const ComparisonOptions& options) {
    validate_scenario(scenario);
    const auto& problem = scenario.problem;

    ComparisonReport report{{Method::Ensemble, Method::Scalarised, Method::Pareto},
                            {},
                            reference_or_uniform(scenario),
                            {},
                            pareto_front(problem),
                            std::nullopt,
                            {},
                            std::nullopt,
                            std::nullopt,
                            {}};
    report.scalarised_ranking = scalarised_rank(report.scalarised_model, problem);

    const auto gate = options.gate1 ? options.gate1 : scenario.gate1;
    if (gate && scenario.tolerances.tau) {
        report.pipeline = pipeline_dispatch(*gate, report.scalarised_model, scenario.jury, problem,
                                            scenario.tolerances, scenario.context_tag);
        report.methods.push_back(Method::Metapolicy);
    }

    for (std::size_t i = 0; i < problem.size(); ++i) {
        for (std::size_t j = i + 1; j < problem.size(); ++j) {
            const auto& a = problem.options[i];
            const auto& b = problem.options[j];
            PairRow row{{a.name, b.name}, {}, false};
            row.verdicts.push_back(to_method_verdict(jury_classify(scenario.jury, a, b).relation));
            row.verdicts.push_back(to_method_verdict(ranked_relation(report.scalarised_ranking, a.name, b.name)));
            row.verdicts.push_back(pareto_verdict(a, b));
            if (report.pipeline) row.verdicts.push_back(pipeline_verdict(*report.pipeline, a, b));
            for (std::size_t m = 1; m < row.verdicts.size(); ++m) {
                row.disagreement = row.disagreement || !compatible(row.verdicts[0], row.verdicts[m]);
            }
            report.rows.push_back(std::move(row));
        }
    }

    const std::size_t k = report.methods.size();
    report.agreement.assign(k, std::vector<std::size_t>(k, 0));
    for (const auto& row : report.rows) {
        for (std::size_t x = 0; x < k; ++x) {
            for (std::size_t y = 0; y < k; ++y) {
                if (compatible(row.verdicts[x], row.verdicts[y])) ++report.agreement[x][y];
            }
        }
    }

    if (options.include_demos) {
        report.magnitude_demo = failure_demo_magnitude();
        report.equality_demo = failure_demo_equality();
    }

    for (const auto& request : options.resolutions) {
        const auto& a = problem.option(request.pair.first);
        const auto& b = problem.option(request.pair.second);
        switch (request.method) {
            case ResolutionMethod::Abandonment:
                report.resolutions.push_back(resolve_by_abandonment(scenario.jury, a, b, request.target));
                break;
            case ResolutionMethod::Transformation:
                report.resolutions.push_back(
                    resolve_by_transformation(scenario.jury, a, b, request.target, request.margin));
                break;
            case ResolutionMethod::ArbitraryPick:
                report.resolutions.push_back(pick_arbitrarily(scenario.jury, a, b, request.seed).report);
                break;
        }
    }
    return report;
}

namespace {

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::string weights_text(const std::vector<double>& w) {
    std::string out = "(";
    for (std::size_t i = 0; i < w.size(); ++i) out += (i ? ", " : "") + format_decimal(w[i]);
    return out + ")";
}

std::string names_text(const std::vector<std::string>& names) {
    std::string out = "{";
    for (std::size_t i = 0; i < names.size(); ++i) out += (i ? ", " : "") + names[i];
    return out + "}";
}

}  // namespace

std::string render_table(const std::vector<std::string>& header,
                         const std::vector<std::vector<std::string>>& rows, OutputFormat format) {
    std::ostringstream out;
    if (format == OutputFormat::Csv) {
        auto line = [&](const std::vector<std::string>& cells) {
            for (std::size_t i = 0; i < cells.size(); ++i) out << (i ? "," : "") << csv_field(cells[i]);
            out << '\n';
        };
        line(header);
        for (const auto& r : rows) line(r);
        return out.str();
    }
    std::vector<std::size_t> width(header.size(), 0);
    for (std::size_t c = 0; c < header.size(); ++c) width[c] = header[c].size();
    for (const auto& r : rows) {
        for (std::size_t c = 0; c < r.size() && c < width.size(); ++c) width[c] = std::max(width[c], r[c].size());
    }
    auto line = [&](const std::vector<std::string>& cells) {
        std::string text;
        for (std::size_t c = 0; c < cells.size(); ++c) {
            text += cells[c];
            if (c + 1 < cells.size()) text += std::string(width[c] - cells[c].size() + 2, ' ');
        }
        out << text << '\n';
    };
    line(header);
    std::vector<std::string> rule;
    for (std::size_t w : width) rule.emplace_back(w, '-');
    line(rule);
    for (const auto& r : rows) line(r);
    return out.str();
}

std::string render_report(const ComparisonReport& report, OutputFormat format) {
    std::ostringstream out;
    const bool table = format == OutputFormat::Table;
    auto section = [&](const std::string& title) {
        if (table) out << "== " << title << " ==\n";
    };

    section("pair classifications");
    std::vector<std::string> header{"first", "second"};
    for (Method m : report.methods) header.emplace_back(to_string(m));
    header.emplace_back("disagreement");
    std::vector<std::vector<std::string>> rows;
    for (const auto& r : report.rows) {
        std::vector<std::string> cells{r.pair.first, r.pair.second};
        for (auto v : r.verdicts) cells.emplace_back(to_string(v));
        cells.emplace_back(r.disagreement ? "yes" : "no");
        rows.push_back(std::move(cells));
    }
    out << render_table(header, rows, format) << '\n';

    section("agreement (pairs with compatible verdicts)");
    header = {"method"};
    for (Method m : report.methods) header.emplace_back(to_string(m));
    rows.clear();
    for (std::size_t x = 0; x < report.methods.size(); ++x) {
        std::vector<std::string> cells{std::string(to_string(report.methods[x]))};
        for (std::size_t y = 0; y < report.methods.size(); ++y) cells.push_back(std::to_string(report.agreement[x][y]));
        rows.push_back(std::move(cells));
    }
    out << render_table(header, rows, format) << '\n';

    section("baselines");
    rows = {{"scalarised_weights", weights_text(report.scalarised_model.weights())},
            {"pareto_front", names_text(report.pareto.front)}};
    if (report.pipeline) {
        rows.push_back({"pipeline_route", std::string(to_string(report.pipeline->route))});
        rows.push_back({"gate1_probability", format_decimal(report.pipeline->trace.gate1_probability)});
        rows.push_back({"min_gate2_margin", format_decimal(report.pipeline->trace.min_gate2_margin)});
        rows.push_back({"pipeline_labels", std::to_string(report.pipeline->labels.size())});
        rows.push_back({"mislabeled_equal_pairs", std::to_string(mislabeled_equal_pairs(*report.pipeline).size())});
    }
    out << render_table({"item", "value"}, rows, format) << '\n';

    if (report.magnitude_demo || report.equality_demo) {
        section("failure demonstrations");
        rows.clear();
        if (const auto& d = report.magnitude_demo) {
            rows.push_back({"magnitude", "pareto_front", names_text(d->pareto.front)});
            rows.push_back({"magnitude", "ensemble(H,C)", std::string(to_string(d->ensemble.relation))});
            rows.push_back({"magnitude", "disagreement", d->disagreement ? "yes" : "no"});
        }
        if (const auto& d = report.equality_demo) {
            rows.push_back({"equality", "identical_front", names_text(d->identical_front.front)});
            rows.push_back({"equality", "identical_relation", std::string(to_string(d->identical_relation))});
            rows.push_back({"equality", "tradeoff_front", names_text(d->tradeoff_front.front)});
            rows.push_back({"equality", "tradeoff_relation", std::string(to_string(d->tradeoff_relation))});
            rows.push_back({"equality", "pareto_indistinguishable", d->pareto_indistinguishable ? "yes" : "no"});
        }
        out << render_table({"demo", "item", "value"}, rows, format) << '\n';
    }

    if (!report.resolutions.empty()) {
        section("resolutions");
        rows.clear();
        for (const auto& r : report.resolutions) {
            std::string changes;
            for (const auto& c : r.perturbation) {
                changes += (changes.empty() ? "" : " ") + c.juror_id + ":" + format_decimal(c.magnitude);
            }
            rows.push_back({std::string(to_string(r.method)), std::string(to_string(r.before.relation)),
                            std::string(to_string(r.after.relation)), names_text(r.removed), changes});
        }
        out << render_table({"method", "before", "after", "removed", "perturbation"}, rows, format) << '\n';
    }
    return out.str();
}

}  // namespace hardchoice
