#include <doctest.h>

#include "hardchoice/errors.hpp"
#include "hardchoice/report.hpp"
#include "test_support.hpp"

using namespace hardchoice;

namespace {

using V = MethodVerdict;

MethodVerdict verdict(const ComparisonReport& r, std::string_view a, std::string_view b, Method m) {
    return r.row(a, b).verdicts[r.column(m)];
}

Scenario scenario_of(ChoiceProblem problem, Jury jury) {
    Scenario s{std::move(problem), std::move(jury), {}, "generic", {}, std::nullopt, std::nullopt};
    s.tolerances.tau = 0.5;
    return s;
}

}  // namespace

TEST_CASE("compatibility of verdicts") {
    CHECK(compatible(V::Equal, V::Equal));
    CHECK(compatible(V::Undecided, V::Incommensurable));
    CHECK(compatible(V::Equal, V::Undecided));
    CHECK_FALSE(compatible(V::Undecided, V::PreferredFirst));
    CHECK_FALSE(compatible(V::Equal, V::Incommensurable));
    CHECK_FALSE(compatible(V::PreferredSecond, V::PreferredFirst));
}

TEST_CASE("comparison on CANON-2D") {
    const auto r = run_comparison(canonical_scenario());
    CHECK(r.methods == std::vector<Method>{Method::Ensemble, Method::Scalarised, Method::Pareto});
    CHECK(r.rows.size() == 6);
    CHECK(verdict(r, "A", "B", Method::Ensemble) == V::Incommensurable);
    CHECK(verdict(r, "A", "B", Method::Scalarised) == V::Equal);
    CHECK(verdict(r, "A", "B", Method::Pareto) == V::Undecided);
    CHECK(r.row("A", "B").disagreement);
    CHECK(verdict(r, "A+", "A", Method::Ensemble) == V::PreferredSecond);
    CHECK_FALSE(r.row("A", "A+").disagreement);
    CHECK(r.pareto.front == std::vector<std::string>{"A+", "B+"});
    CHECK(r.agreement[0][2] == 6);
    CHECK(r.agreement[0][1] == 2);
    CHECK(r.agreement[1][2] == 3);
    CHECK_THROWS_AS(r.row("A", "Z"), Error);
}

TEST_CASE("comparison adds the pipeline when a gate is available") {
    ComparisonOptions opts;
    opts.gate1 = GateOneModel{10, 0, 0, -5, 0.5};
    const auto r = run_comparison(canonical_scenario(), opts);
    REQUIRE(r.methods.size() == 4);
    REQUIRE(r.pipeline.has_value());
    CHECK(r.pipeline->route == Route::Pareto);
    CHECK(verdict(r, "A+", "B+", Method::Metapolicy) == V::Incommensurable);
    CHECK(verdict(r, "A", "A+", Method::Metapolicy) == V::PreferredSecond);

    Scenario no_tau = canonical_scenario();
    no_tau.tolerances.tau.reset();
    CHECK(run_comparison(no_tau, opts).methods.size() == 3);
}

TEST_CASE("comparison flags the magnitude failure") {
    const auto r = run_comparison(scenario_of(holocaust_cake_problem(), Jury({Juror("a", {0.8, 0.2}), Juror("b", {0.3, 0.7})})));
    CHECK(verdict(r, "H", "C", Method::Ensemble) == V::PreferredFirst);
    CHECK(verdict(r, "H", "C", Method::Pareto) == V::Undecided);
    CHECK(r.row("H", "C").disagreement);
}

TEST_CASE("identical options produce no disagreement") {
    const ChoiceProblem same{{{"x"}, {"y"}}, {{"p", {2, 3}}, {"q", {2, 3}}, {"r", {2, 3}}}};
    const auto r = run_comparison(scenario_of(same, Jury({Juror("a", {0.8, 0.2}), Juror("b", {0.3, 0.7})})));
    for (const auto& row : r.rows) {
        CHECK_FALSE(row.disagreement);
        CHECK(row.verdicts[0] == V::Equal);
    }
}

TEST_CASE("property: report columns match direct calls") {
    testing::Engine rng(79);
    for (int i = 0; i < 300; ++i) {
        const std::size_t d = testing::pick(rng, 1, 4);
        auto p = testing::random_problem(rng, testing::pick(rng, 2, 7), d, i % 2 == 0);
        auto jury = testing::random_jury(rng, testing::pick(rng, 1, 4), d, false);
        const Scenario s = scenario_of(p, jury);
        const auto r = run_comparison(s);
        const auto uniform = ScalarisedModel::normalized(std::vector<double>(d, 1.0));
        const auto ranking = scalarised_rank(uniform, p);
        for (const auto& row : r.rows) {
            const auto& a = p.option(row.pair.first);
            const auto& b = p.option(row.pair.second);
            CHECK(row.verdicts[0] == to_method_verdict(jury_classify(jury, a, b).relation));
            CHECK(row.verdicts[1] == to_method_verdict(ranked_relation(ranking, a.name, b.name)));
            const V pv = dominates(a, b) ? V::PreferredFirst : dominates(b, a) ? V::PreferredSecond : V::Undecided;
            CHECK(row.verdicts[2] == pv);
            bool any = false;
            for (std::size_t m = 1; m < row.verdicts.size(); ++m) any = any || !compatible(row.verdicts[0], row.verdicts[m]);
            CHECK(row.disagreement == any);
        }
    }
}

TEST_CASE("resolution requests and demos are carried through") {
    ComparisonOptions opts;
    opts.include_demos = true;
    opts.resolutions.push_back({{"A", "B"}, Target::First, ResolutionMethod::Abandonment});
    opts.resolutions.push_back({{"A", "B"}, Target::Second, ResolutionMethod::Transformation, 0.0});
    const auto r = run_comparison(canonical_scenario(), opts);
    REQUIRE(r.resolutions.size() == 2);
    CHECK(r.resolutions[0].after.relation == Relation::PreferredFirst);
    CHECK(r.resolutions[1].after.relation == Relation::PreferredSecond);
    CHECK(r.magnitude_demo.has_value());
    CHECK(r.equality_demo.has_value());
    const auto text = render_report(r, OutputFormat::Table);
    CHECK(text.find("incommensurable") != std::string::npos);
    CHECK(render_report(r, OutputFormat::Table) == text);
}

TEST_CASE("render_table") {
    const std::vector<std::string> header{"name", "value"};
    const std::vector<std::vector<std::string>> rows{{"a", "1"}, {"with,comma", "say \"hi\""}};
    CHECK(render_table(header, rows, OutputFormat::Csv) == "name,value\na,1\n\"with,comma\",\"say \"\"hi\"\"\"\n");
    const auto table = render_table(header, rows, OutputFormat::Table);
    CHECK(table.find("name        value") == 0);
}
