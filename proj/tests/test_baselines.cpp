#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <ranges>

#include "hardchoice/baselines.hpp"
#include "hardchoice/errors.hpp"
#include "test_support.hpp"

using namespace hardchoice;
using doctest::Approx;

namespace {

// Definition-level oracle: an option is on the front iff no other option is
// at least as good everywhere and strictly better somewhere.
std::vector<std::string> front_by_definition(const ChoiceProblem& p) {
    std::vector<std::string> out;
    for (const auto& x : p.options) {
        const bool beaten = std::ranges::any_of(p.options, [&](const OptionPoint& y) {
            const auto idx = std::views::iota(std::size_t{0}, x.scores.size());
            return std::ranges::all_of(idx, [&](std::size_t k) { return y.scores[k] >= x.scores[k]; }) &&
                   std::ranges::any_of(idx, [&](std::size_t k) { return y.scores[k] > x.scores[k]; });
        });
        if (!beaten) out.push_back(x.name);
    }
    return out;
}

const Instance kCanon = canonical_instance();

}  // namespace

TEST_CASE("scalarised_rank on CANON-2D with equal weights") {
    const auto ranking = scalarised_rank(ScalarisedModel({0.5, 0.5}), kCanon.problem);
    REQUIRE(ranking.size() == 3);
    CHECK(ranking[0].options == std::vector<std::string>{"A+"});
    CHECK(ranking[0].value == Approx(6.35));
    CHECK(ranking[1].options == std::vector<std::string>{"B+"});
    CHECK(ranking[1].value == Approx(6.3));
    CHECK(ranking[2].options == std::vector<std::string>{"A", "B"});
    CHECK(ranking[2].value == 6.0);
    CHECK(ranked_relation(ranking, "A", "B") == Relation::Equal);
    CHECK(ranked_relation(ranking, "A+", "B") == Relation::PreferredFirst);
}

TEST_CASE("scalarised_rank with degenerate weights orders by one objective") {
    const auto ranking = scalarised_rank(ScalarisedModel({1.0, 0.0}), kCanon.problem);
    std::vector<std::string> order;
    for (const auto& g : ranking) order.insert(order.end(), g.options.begin(), g.options.end());
    CHECK(order == std::vector<std::string>{"A+", "A", "B+", "B"});

    const ChoiceProblem twins{{{"x"}, {"y"}}, {{"p", {3, 4}}, {"q", {3, 4}}}};
    const auto tied = scalarised_rank(ScalarisedModel({0.3, 0.7}), twins);
    REQUIRE(tied.size() == 1);
    CHECK(tied[0].options.size() == 2);
}

TEST_CASE("scalarised model normalisation") {
    const std::vector<double> raw{2.0, 6.0};
    CHECK(ScalarisedModel::normalized(raw).weights() == std::vector<double>{0.25, 0.75});
    CHECK_THROWS_AS(ScalarisedModel({0.5, 0.6}), Error);
    CHECK_THROWS_AS(ScalarisedModel::normalized(std::vector<double>{0.0, 0.0}), Error);
}

TEST_CASE("property: scalarised ranking is complete and invariant to weight rescaling") {
    testing::Engine rng(17);
    for (int i = 0; i < 500; ++i) {
        const std::size_t d = testing::pick(rng, 1, 4);
        const auto p = testing::random_problem(rng, testing::pick(rng, 2, 10), d, i % 2 == 0);
        std::vector<double> raw(d);
        for (double& w : raw) w = testing::uniform(rng, 0.1, 1.0);
        std::vector<double> scaled = raw;
        const double factor = testing::uniform(rng, 0.5, 20.0);
        for (double& w : scaled) w *= factor;

        const auto r1 = scalarised_rank(ScalarisedModel::normalized(raw), p);
        const auto r2 = scalarised_rank(ScalarisedModel::normalized(scaled), p);
        std::size_t listed = 0;
        for (const auto& g : r1) listed += g.options.size();
        CHECK(listed == p.size());
        for (std::size_t a = 0; a < p.size(); ++a) {
            for (std::size_t b = 0; b < p.size(); ++b) {
                const auto rel = ranked_relation(r1, p.options[a].name, p.options[b].name);
                CHECK(rel != Relation::Incommensurable);
                // order, not value: tie structure may shift by rounding only when values are within an ulp
                const auto rel2 = ranked_relation(r2, p.options[a].name, p.options[b].name);
                if (rel != rel2) {
                    const double va = ScalarisedModel::normalized(raw).value(p.options[a]);
                    const double vb = ScalarisedModel::normalized(raw).value(p.options[b]);
                    CHECK(std::abs(va - vb) <= 1e-12 * (1.0 + std::abs(va)));
                }
            }
        }
    }
}

TEST_CASE("dominates") {
    CHECK(dominates(kCanon.problem.option("A+"), kCanon.problem.option("A")));
    CHECK_FALSE(dominates(kCanon.problem.option("A"), kCanon.problem.option("B")));
    CHECK_FALSE(dominates(kCanon.problem.option("B"), kCanon.problem.option("A")));
    CHECK_FALSE(dominates(kCanon.problem.option("A"), kCanon.problem.option("A")));
    CHECK_THROWS_AS(dominates({"a", {1, 2}}, {"b", {1}}), Error);
}

TEST_CASE("property: dominance is a strict partial order") {
    testing::Engine rng(23);
    for (int i = 0; i < 5000; ++i) {
        const std::size_t d = testing::pick(rng, 1, 4);
        const auto p = testing::random_problem(rng, 3, d, true);
        const auto& [a, b, c] = std::tie(p.options[0], p.options[1], p.options[2]);
        CHECK_FALSE(dominates(a, a));
        CHECK_FALSE((dominates(a, b) && dominates(b, a)));
        if (dominates(a, b) && dominates(b, c)) CHECK(dominates(a, c));
    }
}

TEST_CASE("pareto_front on fixed instances") {
    const auto canon = pareto_front(kCanon.problem);
    CHECK(canon.front == std::vector<std::string>{"A+", "B+"});
    CHECK(canon.dominated.at("A") == "A+");
    CHECK(canon.dominated.at("B") == "B+");

    const ChoiceProblem same{{{"x"}, {"y"}}, {{"p", {1, 1}}, {"q", {1, 1}}, {"r", {1, 1}}}};
    CHECK(pareto_front(same).front.size() == 3);

    CHECK(pareto_front(holocaust_cake_problem()).front == std::vector<std::string>{"H", "C"});
}

TEST_CASE("property: pareto_front matches the definition and its invariants") {
    testing::Engine rng(29);
    for (int i = 0; i < 1000; ++i) {
        const auto p = testing::random_problem(rng, testing::pick(rng, 2, 20), testing::pick(rng, 1, 5), i % 2 == 0);
        const auto r = pareto_front(p);
        CHECK(r.front == front_by_definition(p));
        CHECK_FALSE(r.front.empty());
        for (const auto& x : r.front) {
            for (const auto& y : r.front) CHECK_FALSE(dominates(p.option(x), p.option(y)));
        }
        CHECK(r.front.size() + r.dominated.size() == p.size());
        for (const auto& [loser, winner] : r.dominated) CHECK(dominates(p.option(winner), p.option(loser)));
    }
}

TEST_CASE("property: front membership survives a monotone transform of one column") {
    testing::Engine rng(31);
    for (int i = 0; i < 500; ++i) {
        auto p = testing::random_problem(rng, testing::pick(rng, 2, 12), testing::pick(rng, 1, 4), i % 2 == 0);
        const auto before = pareto_front(p).front;
        const auto k = testing::pick(rng, 0, p.dimension() - 1);
        for (auto& o : p.options) o.scores[k] = std::exp(0.3 * o.scores[k]) + 2.0 * o.scores[k];
        CHECK(pareto_front(p).front == before);
    }
}

TEST_CASE("property: a unanimous winner is never dominated") {
    testing::Engine rng(37);
    int winners = 0;
    for (int i = 0; i < 1000; ++i) {
        const std::size_t d = testing::pick(rng, 1, 4);
        const auto p = testing::random_problem(rng, testing::pick(rng, 2, 8), d, i % 2 == 0);
        const auto jury = testing::random_jury(rng, testing::pick(rng, 1, 4), d, false, true);
        const auto front = pareto_front(p);
        for (std::size_t a = 0; a < p.size(); ++a) {
            bool beats_all = true;
            for (std::size_t b = 0; b < p.size() && beats_all; ++b) {
                if (a != b) beats_all = jury_classify(jury, p.options[a], p.options[b]).relation == Relation::PreferredFirst;
            }
            if (beats_all) {
                ++winners;
                CHECK(front.on_front(p.options[a].name));
            }
        }
    }
    CHECK(winners > 50);
}

TEST_CASE("failure demo: magnitude") {
    const auto demo = failure_demo_magnitude();
    CHECK(demo.pareto.front == std::vector<std::string>{"H", "C"});
    CHECK(demo.ensemble.relation == Relation::PreferredFirst);
    CHECK(demo.ensemble.verdicts[0].verdict == Verdict::FirstBetter);
    CHECK(demo.ensemble.verdicts[0].margin == Approx(8e5 - 0.2));
    CHECK(demo.ensemble.verdicts[1].verdict == Verdict::FirstBetter);
    CHECK(demo.ensemble.verdicts[1].margin == Approx(3e5 - 0.7));
    CHECK(demo.disagreement);
}

TEST_CASE("failure demo: equality") {
    const auto demo = failure_demo_equality();
    CHECK(demo.identical_front.front == std::vector<std::string>{"X", "X'"});
    CHECK(demo.identical_relation == Relation::Equal);
    CHECK(demo.tradeoff_front.front == std::vector<std::string>{"A", "B"});
    CHECK(demo.tradeoff_relation == Relation::Incommensurable);
    CHECK(pareto_pair_view(demo.identical, "X", "X'") == pareto_pair_view(demo.tradeoff, "A", "B"));
    CHECK(demo.pareto_indistinguishable);
}

TEST_CASE("scalarisation_impossibility") {
    const auto canon = scalarisation_impossibility(kCanon.problem, kCanon.jury, 10000);
    REQUIRE(std::holds_alternative<ScalarisationImpossible>(canon));
    CHECK(std::get<ScalarisationImpossible>(canon).searched == 10000);

    // One-ordering jury: only w = (0.5, 0.5) ties p and q, and the grid of 11 contains it.
    const ChoiceProblem tie{{{"x"}, {"y"}}, {{"p", {1, 0}}, {"q", {0, 1}}, {"r", {0, 0}}}};
    const Jury twins({Juror("a", {0.5, 0.5}), Juror("b", {0.5, 0.5})});
    const auto witnessed = scalarisation_impossibility(tie, twins, 11);
    REQUIRE(std::holds_alternative<ScalarisationWitnessed>(witnessed));
    CHECK(std::get<ScalarisationWitnessed>(witnessed).weights == std::vector<double>{0.5, 0.5});

    // Identical options: the lexicographically smallest grid weight already ties them.
    const ChoiceProblem same{{{"x"}, {"y"}}, {{"p", {2, 3}}, {"q", {2, 3}}}};
    const auto any = scalarisation_impossibility(same, kCanon.jury, 101);
    REQUIRE(std::holds_alternative<ScalarisationWitnessed>(any));
    CHECK(std::get<ScalarisationWitnessed>(any).weights == std::vector<double>{0.0, 1.0});

    const ChoiceProblem three_d{{{"x"}, {"y"}, {"z"}}, {{"p", {1, 0, 0}}, {"q", {0, 1, 0}}}};
    try {
        scalarisation_impossibility(three_d, Jury({Juror("a", {0.2, 0.3, 0.5})}), 10);
        FAIL("no throw");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::UnsupportedDimension);
    }
}

TEST_CASE("scalarisation grid search oracle: no grid weight reproduces CANON-2D's A/B dispute") {
    // Independent of the jury matrix: any complete relation must either tie A and B
    // or order them, and each weight's ordering of (A, B) contradicts one juror.
    for (int k = 0; k <= 1000; ++k) {
        const double w = k / 1000.0;
        const double va = w * 10 + (1 - w) * 2;
        const double vb = w * 4 + (1 - w) * 8;
        const double vap = w * 10.5 + (1 - w) * 2.2;
        const bool alpha_agrees = va > vb;   // alpha: A over B
        const bool beta_agrees = va < vb;    // beta: B over A
        const bool tie_consistent = va == vb && !(vap > vb);  // A+ > A = B would force A+ > B
        CHECK_FALSE((alpha_agrees && beta_agrees));
        CHECK_FALSE(tie_consistent);
    }
}
