// Command-line front end for the hard-choice engine.
//
// Exit codes: 0 success, 1 domain error, 2 usage error.

#include <CLI11.hpp>
#include <iostream>
#include <string>
#include <vector>

#include "hardchoice/baselines.hpp"
#include "hardchoice/ensemble.hpp"
#include "hardchoice/errors.hpp"
#include "hardchoice/generator.hpp"
#include "hardchoice/metapolicy.hpp"
#include "hardchoice/plot.hpp"
#include "hardchoice/report.hpp"
#include "hardchoice/resolution.hpp"
#include "hardchoice/scenario.hpp"

using namespace hardchoice;

namespace {

std::string format_name = "table";

OutputFormat output_format() { return format_name == "csv" ? OutputFormat::Csv : OutputFormat::Table; }

void add_format(CLI::App* cmd) {
    cmd->add_option("--format", format_name, "Output format")->check(CLI::IsMember({"table", "csv"}));
}

Scenario load(const std::string& path) { return parse_scenario(read_text_file(path)); }

std::string weights_text(const std::vector<double>& w) {
    std::string out;
    for (std::size_t i = 0; i < w.size(); ++i) out += (i ? " " : "") + format_decimal(w[i]);
    return out;
}

char relation_symbol(Relation r) {
    switch (r) {
        case Relation::PreferredFirst: return '>';
        case Relation::PreferredSecond: return '<';
        case Relation::Equal: return '=';
        case Relation::Incommensurable: return '?';
    }
    return ' ';
}

int cmd_classify(const std::string& file) {
    const Scenario s = load(file);
    const RelationMatrix m = classification_matrix(s.jury, s.problem);
    std::vector<std::string> header{""};
    for (const auto& n : m.names()) header.push_back(n);
    std::vector<std::vector<std::string>> rows;
    for (std::size_t i = 0; i < m.size(); ++i) {
        std::vector<std::string> row{m.names()[i]};
        for (std::size_t j = 0; j < m.size(); ++j) {
            row.push_back(output_format() == OutputFormat::Csv ? std::string(to_string(m.at(i, j)))
                                                               : std::string(1, relation_symbol(m.at(i, j))));
        }
        rows.push_back(std::move(row));
    }
    std::cout << render_table(header, rows, output_format());
    if (output_format() == OutputFormat::Table) {
        std::cout << "\n(row vs column)  > preferred  < dispreferred  = equal  ? incommensurable\n";
    }
    return 0;
}

int cmd_front(const std::string& file) {
    const Scenario s = load(file);
    const ParetoResult r = pareto_front(s.problem);
    std::vector<std::vector<std::string>> rows;
    for (const auto& o : s.problem.options) {
        auto it = r.dominated.find(o.name);
        rows.push_back({o.name, it == r.dominated.end() ? "front" : "dominated",
                        it == r.dominated.end() ? "" : it->second});
    }
    std::cout << render_table({"option", "status", "dominated_by"}, rows, output_format());
    return 0;
}

int cmd_sift(const std::string& file, const std::vector<std::string>& pair, std::optional<double> delta) {
    const Scenario s = load(file);
    const auto& a = s.problem.option(pair.at(0));
    const auto& b = s.problem.option(pair.at(1));
    const double d = delta.value_or(s.tolerances.delta);
    const auto trace = jury_classify(s.jury, a, b);
    const auto result = small_improvement_test(s.jury, s.problem, a, b, d);
    std::vector<std::vector<std::string>> rows{
        {"pair", a.name + " " + b.name},
        {"relation", std::string(to_string(trace.relation))},
        {"delta", format_decimal(d)},
        {"result", result.confirmed ? "confirmed_incommensurable" : "not_confirmed"},
    };
    if (!result.confirmed) rows.push_back({"reason", result.reason});
    std::cout << render_table({"item", "value"}, rows, output_format());
    return 0;
}

int cmd_resolve(const std::string& file, const std::vector<std::string>& pair, const std::string& target_name,
                const std::string& method, double margin, std::uint64_t seed, const std::string& plot) {
    const Scenario s = load(file);
    const auto& a = s.problem.option(pair.at(0));
    const auto& b = s.problem.option(pair.at(1));
    const Target target = target_name == "first" ? Target::First : Target::Second;

    std::optional<std::string> chosen;
    auto report = [&] {
        if (method == "abandon") return resolve_by_abandonment(s.jury, a, b, target);
        if (method == "transform") return resolve_by_transformation(s.jury, a, b, target, margin);
        auto picked = pick_arbitrarily(s.jury, a, b, seed);
        chosen = picked.chosen;
        return std::move(picked.report);
    }();

    std::vector<std::vector<std::string>> rows{
        {"method", std::string(to_string(report.method))},
        {"before", std::string(to_string(report.before.relation))},
        {"after", std::string(to_string(report.after.relation))},
    };
    if (chosen) rows.push_back({"chosen", *chosen});
    for (const auto& id : report.removed) rows.push_back({"removed", id});
    for (std::size_t j = 0; j < report.jury_after.size(); ++j) {
        const auto& juror = report.jury_after[j];
        rows.push_back({"juror " + juror.id(), weights_text(juror.weights()) + " (moved " +
                                                   format_decimal(report.perturbation[j].magnitude) + ")"});
    }
    std::cout << render_table({"item", "value"}, rows, output_format());
    if (!plot.empty()) emit_plot(s, {a.name, b.name}, plot, report.jury_after);
    return 0;
}

int cmd_pipeline(const std::string& file, const std::string& model_file, std::optional<double> tau) {
    Scenario s = load(file);
    if (tau) s.tolerances.tau = *tau;
    validate_tolerances(s.tolerances);
    if (!s.reference_model) {
        throw Error(ErrorKind::SemanticError, "the pipeline needs a [reference_model] in the scenario");
    }
    const GateOneModel gate = parse_gate_model(read_text_file(model_file));
    const auto outcome = pipeline_dispatch(gate, *s.reference_model, s.jury, s.problem, s.tolerances, s.context_tag);

    std::vector<std::vector<std::string>> rows{
        {"route", std::string(to_string(outcome.route))},
        {"gate1_probability", format_decimal(outcome.trace.gate1_probability)},
        {"min_gate2_margin", format_decimal(outcome.trace.min_gate2_margin)},
    };
    if (const auto* ranking = std::get_if<Ranking>(&outcome.result)) {
        for (std::size_t g = 0; g < ranking->size(); ++g) {
            std::string names;
            for (const auto& n : (*ranking)[g].options) names += (names.empty() ? "" : " ") + n;
            rows.push_back({"rank " + std::to_string(g + 1), names + " @ " + format_decimal((*ranking)[g].value)});
        }
    } else {
        const auto& front = std::get<ParetoResult>(outcome.result);
        std::string names;
        for (const auto& n : front.front) names += (names.empty() ? "" : " ") + n;
        rows.push_back({"front", names});
        for (std::size_t i = 0; i < outcome.labels.size(); ++i) {
            rows.push_back({"incommensurable", outcome.labels[i].first + " " + outcome.labels[i].second +
                                                   " (jury: " +
                                                   std::string(to_string(outcome.trace.label_relations[i])) + ")"});
        }
    }
    std::cout << render_table({"item", "value"}, rows, output_format());
    return 0;
}

int cmd_gen(const std::string& config_file, std::uint64_t seed, const std::string& out_dir) {
    const auto config = parse_generator_config(read_text_file(config_file));
    const auto corpus = generate_corpus(config, seed);
    write_corpus(corpus, out_dir);
    std::size_t counts[3] = {0, 0, 0};
    for (const auto& s : corpus) ++counts[static_cast<int>(focal_class(s))];
    std::cout << render_table({"class", "scenarios"},
                              {{"hard", std::to_string(counts[0])},
                               {"easy", std::to_string(counts[1])},
                               {"equal", std::to_string(counts[2])}},
                              output_format());
    return 0;
}

int cmd_train(const std::string& corpus_dir, const std::string& out_file) {
    const auto corpus = read_corpus(corpus_dir);
    const auto data = gate_training_set(corpus);
    const auto model = train_gate1(data);
    write_text_file(out_file, serialize_gate_model(model));
    std::cout << render_table({"item", "value"},
                              {{"scenarios", std::to_string(data.size())},
                               {"training_accuracy", format_decimal(gate1_accuracy(model, data))},
                               {"w_affinity", format_decimal(model.w_affinity)},
                               {"w_dispersion", format_decimal(model.w_dispersion)},
                               {"w_disagreement", format_decimal(model.w_disagreement)},
                               {"bias", format_decimal(model.bias)}},
                              output_format());
    return 0;
}

int cmd_report(const std::string& file, const std::string& plot, const std::string& model_file, bool demos,
               const std::vector<std::string>& pair) {
    const Scenario s = load(file);
    ComparisonOptions options;
    options.include_demos = demos;
    if (!model_file.empty()) options.gate1 = parse_gate_model(read_text_file(model_file));
    const auto report = run_comparison(s, options);
    std::cout << render_report(report, output_format());

    if (!plot.empty()) {
        OptionPair focus{s.problem.options[0].name, s.problem.options[1].name};
        if (pair.size() == 2) {
            focus = {pair[0], pair[1]};
        } else {
            const std::size_t col = report.column(Method::Ensemble);
            for (const auto& row : report.rows) {
                if (row.verdicts[col] == MethodVerdict::Incommensurable) {
                    focus = row.pair;
                    break;
                }
            }
        }
        emit_plot(s, focus, plot);
    }
    return 0;
}

int cmd_demo(const std::string& which, std::size_t resolution) {
    std::vector<std::vector<std::string>> rows;
    if (which == "holocaust-cake") {
        const auto d = failure_demo_magnitude();
        std::string front;
        for (const auto& n : d.pareto.front) front += (front.empty() ? "" : " ") + n;
        rows = {{"pareto_front", front}, {"ensemble(H,C)", std::string(to_string(d.ensemble.relation))}};
        for (const auto& v : d.ensemble.verdicts) {
            rows.push_back({"juror " + v.juror_id, std::string(to_string(v.verdict)) + " margin " + format_decimal(v.margin)});
        }
        rows.push_back({"disagreement", d.disagreement ? "yes" : "no"});
    } else if (which == "equality") {
        const auto d = failure_demo_equality();
        auto front = [](const ParetoResult& r) {
            std::string out;
            for (const auto& n : r.front) out += (out.empty() ? "" : " ") + n;
            return out;
        };
        rows = {{"identical_front", front(d.identical_front)},
                {"identical_relation", std::string(to_string(d.identical_relation))},
                {"tradeoff_front", front(d.tradeoff_front)},
                {"tradeoff_relation", std::string(to_string(d.tradeoff_relation))},
                {"pareto_indistinguishable", d.pareto_indistinguishable ? "yes" : "no"}};
    } else {
        const Instance canon = canonical_instance();
        const auto outcome = scalarisation_impossibility(canon.problem, canon.jury, resolution);
        if (const auto* w = std::get_if<ScalarisationWitnessed>(&outcome)) {
            rows = {{"result", "witnessed"}, {"weights", weights_text(w->weights)}};
        } else {
            rows = {{"result", "impossible"},
                    {"searched", std::to_string(std::get<ScalarisationImpossible>(outcome).searched)}};
        }
    }
    std::cout << render_table({"item", "value"}, rows, output_format());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Detect, explain and resolve hard choices between multi-objective options"};
    app.require_subcommand(1);

    std::string file;
    std::vector<std::string> pair;

    auto* classify = app.add_subcommand("classify", "Jury classification matrix of every option pair");
    classify->add_option("file", file, "Scenario file")->required();
    add_format(classify);

    auto* front = app.add_subcommand("front", "Pareto front with dominance witnesses");
    front->add_option("file", file, "Scenario file")->required();
    add_format(front);

    std::optional<double> delta;
    auto* sift = app.add_subcommand("sift", "Small-improvement test on one pair");
    sift->add_option("file", file, "Scenario file")->required();
    sift->add_option("--pair", pair, "Two option names")->expected(2)->required();
    sift->add_option("--delta", delta, "Improvement step as a fraction of each objective's range");
    add_format(sift);

    std::string target = "first";
    std::string method = "transform";
    double margin = 0.0;
    std::uint64_t seed = 0;
    std::string plot;
    auto* resolve = app.add_subcommand("resolve", "Resolve an incommensurable pair");
    resolve->add_option("file", file, "Scenario file")->required();
    resolve->add_option("--pair", pair, "Two option names")->expected(2)->required();
    resolve->add_option("--target", target, "Option that should win")->check(CLI::IsMember({"first", "second"}));
    resolve->add_option("--method", method, "Resolution method")
        ->check(CLI::IsMember({"abandon", "transform", "pick"}));
    resolve->add_option("--margin", margin, "Required utility lead after transformation")
        ->check(CLI::NonNegativeNumber);
    resolve->add_option("--seed", seed, "Seed for arbitrary picking");
    resolve->add_option("--plot", plot, "Write a before/after SVG");
    add_format(resolve);

    std::string model_file;
    std::optional<double> tau;
    auto* pipeline = app.add_subcommand("pipeline", "Run the three-step meta-policy");
    pipeline->add_option("file", file, "Scenario file")->required();
    pipeline->add_option("--gate1", model_file, "Gate-1 model file")->required();
    pipeline->add_option("--tau", tau, "Neighbourhood threshold (overrides the scenario)");
    add_format(pipeline);

    std::string config_file;
    std::string out;
    auto* gen = app.add_subcommand("gen", "Generate a labelled synthetic corpus");
    gen->add_option("--config", config_file, "Generator config (JSON)")->required();
    gen->add_option("--seed", seed, "Random seed");
    gen->add_option("--out", out, "Output directory")->required();
    add_format(gen);

    std::string corpus_dir;
    auto* train = app.add_subcommand("train-gate1", "Fit the gate-1 model on a corpus");
    train->add_option("--corpus", corpus_dir, "Corpus directory")->required();
    train->add_option("--out", out, "Model file to write")->required();
    add_format(train);

    bool demos = false;
    auto* report = app.add_subcommand("report", "Compare every method on one scenario");
    report->add_option("file", file, "Scenario file")->required();
    report->add_option("--plot", plot, "Write an indifference-curve SVG");
    report->add_option("--pair", pair, "Pair to plot")->expected(2);
    report->add_option("--gate1", model_file, "Gate-1 model file");
    report->add_flag("--demos", demos, "Append the failure demonstrations");
    add_format(report);

    std::string which;
    std::size_t resolution = 10000;
    auto* demo = app.add_subcommand("demo", "Built-in demonstrations");
    demo->add_option("name", which, "Demonstration")
        ->required()
        ->check(CLI::IsMember({"holocaust-cake", "equality", "impossibility"}));
    demo->add_option("--resolution", resolution, "Grid size for the impossibility search")
        ->check(CLI::PositiveNumber);
    add_format(demo);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*classify) return cmd_classify(file);
        if (*front) return cmd_front(file);
        if (*sift) return cmd_sift(file, pair, delta);
        if (*resolve) return cmd_resolve(file, pair, target, method, margin, seed, plot);
        if (*pipeline) return cmd_pipeline(file, model_file, tau);
        if (*gen) return cmd_gen(config_file, seed, out);
        if (*train) return cmd_train(corpus_dir, out);
        if (*report) return cmd_report(file, plot, model_file, demos, pair);
        if (*demo) return cmd_demo(which, resolution);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}
