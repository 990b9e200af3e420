#include <doctest.h>

#include <cmath>
#include <set>

#include "hardchoice/ensemble.hpp"
#include "hardchoice/errors.hpp"
#include "hardchoice/oracle.hpp"
#include "test_support.hpp"

using namespace hardchoice;
using doctest::Approx;

namespace {

// Test-local oracle: collect the set of strict directions some juror
// permits, then read the relation off that set.
Relation permissible_directions_oracle(const Jury& jury, const OptionPoint& a, const OptionPoint& b) {
    std::set<int> directions;
    for (const auto& juror : jury) {
        double ua = 0.0, ub = 0.0;
        if (juror.form() == UtilityForm::Linear) {
            for (std::size_t k = 0; k < a.scores.size(); ++k) {
                ua += juror.weights()[k] * a.scores[k];
                ub += juror.weights()[k] * b.scores[k];
            }
        } else {
            ua = ub = 1.0;
            for (std::size_t k = 0; k < a.scores.size(); ++k) {
                ua *= std::pow(a.scores[k], juror.weights()[k]);
                ub *= std::pow(b.scores[k], juror.weights()[k]);
            }
        }
        const double gap = ua - ub;
        if (gap > juror.epsilon()) directions.insert(+1);
        if (gap < -juror.epsilon()) directions.insert(-1);
    }
    if (directions.size() == 2) return Relation::Incommensurable;
    if (directions.empty()) return Relation::Equal;
    return *directions.begin() > 0 ? Relation::PreferredFirst : Relation::PreferredSecond;
}

const Instance kCanon = canonical_instance();
const OptionPoint& A = kCanon.problem.option("A");
const OptionPoint& B = kCanon.problem.option("B");
const OptionPoint& Ap = kCanon.problem.option("A+");
const OptionPoint& Bp = kCanon.problem.option("B+");
const Juror& alpha = kCanon.jury[0];
const Juror& beta = kCanon.jury[1];

}  // namespace

TEST_CASE("juror_value on CANON-2D matches hand arithmetic") {
    CHECK(juror_value(alpha, A) == Approx(8.4).epsilon(1e-12));
    CHECK(juror_value(alpha, B) == Approx(4.8).epsilon(1e-12));
    CHECK(juror_value(beta, A) == Approx(4.4).epsilon(1e-12));
    CHECK(juror_value(beta, B) == Approx(6.8).epsilon(1e-12));
    CHECK(juror_value(alpha, Ap) == Approx(8.84).epsilon(1e-12));
    CHECK(juror_value(beta, Ap) == Approx(4.69).epsilon(1e-12));
}

TEST_CASE("juror_value degenerate cases") {
    CHECK(juror_value(alpha, {"zero", {0.0, 0.0}}) == 0.0);
    CHECK(juror_value(Juror("pick", {1.0, 0.0}), {"x", {7.0, 123.0}}) == 7.0);

    const Juror cd("cd", {0.5, 0.5}, UtilityForm::CobbDouglas);
    CHECK(juror_value(cd, {"x", {4.0, 9.0}}) == Approx(6.0));
    CHECK_THROWS_AS(juror_value(cd, {"x", {0.0, 9.0}}), Error);
    try {
        juror_value(cd, {"x", {-1.0, 9.0}});
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NonPositiveScoreForLogForm);
    }
    try {
        juror_value(alpha, {"x", {1.0}});
        FAIL("no throw");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::DimensionMismatch);
    }
}

TEST_CASE("juror_compare verdicts and margins") {
    const auto a_on_ab = juror_compare(alpha, A, B);
    CHECK(a_on_ab.verdict == Verdict::FirstBetter);
    CHECK(a_on_ab.margin == Approx(3.6).epsilon(1e-12));
    const auto b_on_ab = juror_compare(beta, A, B);
    CHECK(b_on_ab.verdict == Verdict::SecondBetter);
    CHECK(b_on_ab.margin == Approx(-2.4).epsilon(1e-12));
    const auto same = juror_compare(beta, A, A);
    CHECK(same.verdict == Verdict::Indifferent);
    CHECK(same.margin == 0.0);
}

TEST_CASE("verdict is Indifferent exactly when |margin| <= epsilon") {
    const Juror tolerant("t", {0.5, 0.5}, UtilityForm::Linear, 0.5);
    CHECK(juror_compare(tolerant, {"a", {1.0, 0.0}}, {"b", {0.0, 0.0}}).verdict == Verdict::Indifferent);
    CHECK(juror_compare(tolerant, {"a", {1.5, 0.0}}, {"b", {0.0, 0.0}}).verdict == Verdict::FirstBetter);
    CHECK(juror_compare(tolerant, {"a", {0.0, 0.0}}, {"b", {1.5, 0.0}}).verdict == Verdict::SecondBetter);
}

TEST_CASE("jury_classify on CANON-2D") {
    const auto ab = jury_classify(kCanon.jury, A, B);
    CHECK(ab.relation == Relation::Incommensurable);
    REQUIRE(ab.verdicts.size() == 2);
    CHECK(ab.verdicts[0].juror_id == "alpha");
    CHECK(ab.verdicts[0].verdict == Verdict::FirstBetter);
    CHECK(ab.verdicts[1].verdict == Verdict::SecondBetter);

    CHECK(jury_classify(kCanon.jury, Ap, A).relation == Relation::PreferredFirst);
    CHECK(jury_classify(kCanon.jury, Ap, B).relation == Relation::Incommensurable);
    CHECK(jury_classify(kCanon.jury, A, A).relation == Relation::Equal);
}

TEST_CASE("mixed indifferent/strict verdicts classify as a preference") {
    const Jury jury({Juror("lazy", {0.5, 0.5}, UtilityForm::Linear, 10.0), Juror("keen", {1.0, 0.0})});
    CHECK(jury_classify(jury, {"a", {2.0, 0.0}}, {"b", {1.0, 0.0}}).relation == Relation::PreferredFirst);
    CHECK(jury_classify(jury, {"a", {1.0, 0.0}}, {"b", {2.0, 0.0}}).relation == Relation::PreferredSecond);
}

TEST_CASE("classification_matrix on CANON-2D") {
    const auto m = classification_matrix(kCanon.jury, kCanon.problem);
    REQUIRE(m.size() == 4);
    const auto iA = kCanon.problem.index_of("A");
    const auto iB = kCanon.problem.index_of("B");
    const auto iAp = kCanon.problem.index_of("A+");
    CHECK(m.at(iA, iB) == Relation::Incommensurable);
    CHECK(m.at(iAp, iA) == Relation::PreferredFirst);
    CHECK(m.at(iA, iAp) == Relation::PreferredSecond);
    for (std::size_t i = 0; i < 4; ++i) CHECK(m.at(i, i) == Relation::Equal);

    const ChoiceProblem triple{{{"x"}, {"y"}}, {{"p", {1, 2}}, {"q", {1, 2}}, {"r", {1, 2}}}};
    const auto all_equal = classification_matrix(kCanon.jury, triple);
    for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = 0; j < 3; ++j) CHECK(all_equal.at(i, j) == Relation::Equal);
    }
}

TEST_CASE("small_improvement_test on CANON-2D") {
    const auto r = small_improvement_test(kCanon.jury, kCanon.problem, A, B, 0.05);
    CHECK(r.confirmed);
    CHECK(r.reason.empty());

    const auto eq = small_improvement_test(kCanon.jury, kCanon.problem, A, A, 0.05);
    CHECK_FALSE(eq.confirmed);
    CHECK(eq.reason == "pair is Equal");

    const auto pref = small_improvement_test(kCanon.jury, kCanon.problem, Ap, A, 0.05);
    CHECK_FALSE(pref.confirmed);
    CHECK(pref.reason == "pair already PreferredFirst");

    CHECK_THROWS_AS(small_improvement_test(kCanon.jury, kCanon.problem, A, B, 0.0), Error);
}

TEST_CASE("small-improvement insensitivity below the derived flip threshold") {
    // Score ranges over CANON-2D: income 10.5 - 4 = 6.5, excitement 8.4 - 2 = 6.4.
    // A improved by delta*(6.5, 6.4): beta's value climbs 0.3*6.5 + 0.7*6.4 = 6.43 per
    // unit delta from 4.4 toward B's 6.8, so beta flips at delta = 2.4 / 6.43.
    // B improved: alpha climbs 0.8*6.5 + 0.2*6.4 = 6.48 per unit from 4.8 toward 8.4,
    // flipping at 3.6 / 6.48. The smaller one ends the insensitive range.
    const double threshold = std::min(2.4 / 6.43, 3.6 / 6.48);
    CHECK(threshold == Approx(0.37325).epsilon(1e-4));

    for (int i = 1; i <= 200; ++i) {
        const double delta = threshold * 0.995 * i / 200.0;
        CAPTURE(delta);
        CHECK(small_improvement_test(kCanon.jury, kCanon.problem, A, B, delta).confirmed);
    }
    const auto above = small_improvement_test(kCanon.jury, kCanon.problem, A, B, threshold * 1.01);
    CHECK_FALSE(above.confirmed);
    CHECK(above.reason.find("preferred to 'B'") != std::string::npos);
}

TEST_CASE("improvement_step floors a zero range at 1") {
    const ChoiceProblem flat{{{"x"}, {"y"}}, {{"p", {1, 2}}, {"q", {3, 2}}}};
    const auto step = improvement_step(flat, 0.1);
    CHECK(step[0] == Approx(0.2));
    CHECK(step[1] == Approx(0.1));
}

TEST_CASE("property: single-juror juries never report incommensurability") {
    testing::Engine rng(101);
    for (int i = 0; i < 2000; ++i) {
        const std::size_t d = testing::pick(rng, 1, 5);
        const bool positive = rng() % 2 == 0;
        const auto p = testing::random_problem(rng, testing::pick(rng, 2, 8), d, i % 2 == 0, positive);
        const auto jury = testing::random_jury(rng, 1, d, positive);
        for (std::size_t a = 0; a < p.size(); ++a) {
            for (std::size_t b = 0; b < p.size(); ++b) {
                CHECK(jury_classify(jury, p.options[a], p.options[b]).relation != Relation::Incommensurable);
            }
        }
    }
}

TEST_CASE("property: classification is antisymmetric") {
    testing::Engine rng(202);
    for (int i = 0; i < 2000; ++i) {
        const std::size_t d = testing::pick(rng, 1, 4);
        const auto p = testing::random_problem(rng, 2, d, i % 2 == 0, true);
        const auto jury = testing::random_jury(rng, testing::pick(rng, 1, 4), d, true);
        const auto ab = jury_classify(jury, p.options[0], p.options[1]).relation;
        const auto ba = jury_classify(jury, p.options[1], p.options[0]).relation;
        CHECK(ba == mirror(ab));
    }
}

TEST_CASE("property: strict preference is transitive at epsilon 0") {
    testing::Engine rng(303);
    int chains = 0;
    for (int i = 0; i < 4000; ++i) {
        const std::size_t d = testing::pick(rng, 1, 4);
        const auto p = testing::random_problem(rng, 3, d, i % 2 == 0);
        const auto jury = testing::random_jury(rng, testing::pick(rng, 1, 4), d, false, false, 0.0);
        const auto& [a, b, c] = std::tie(p.options[0], p.options[1], p.options[2]);
        if (jury_classify(jury, a, b).relation == Relation::PreferredFirst &&
            jury_classify(jury, b, c).relation == Relation::PreferredFirst) {
            ++chains;
            CHECK(jury_classify(jury, a, c).relation == Relation::PreferredFirst);
        }
    }
    CHECK(chains > 100);
}

TEST_CASE("property: clear dominance implies unanimous preference") {
    testing::Engine rng(404);
    for (int i = 0; i < 2000; ++i) {
        const std::size_t d = testing::pick(rng, 1, 5);
        const auto jury = testing::random_jury(rng, testing::pick(rng, 1, 5), d, false, true);
        double min_w = 1.0, max_eps = 0.0;
        for (const auto& j : jury) {
            for (double w : j.weights()) min_w = std::min(min_w, w);
            max_eps = std::max(max_eps, j.epsilon());
        }
        OptionPoint b{"b", testing::random_scores(rng, d, false, false)};
        OptionPoint a{"a", b.scores};
        for (double& s : a.scores) s += rng() % 2 ? 0.0 : testing::uniform(rng, 0.0, 1.0);
        const auto k = testing::pick(rng, 0, d - 1);
        a.scores[k] = b.scores[k] + max_eps / min_w + testing::uniform(rng, 0.01, 1.0);
        CHECK(jury_classify(jury, a, b).relation == Relation::PreferredFirst);
    }
}

TEST_CASE("property: jury_classify agrees with two independent oracles") {
    testing::Engine rng(505);
    for (int i = 0; i < 3000; ++i) {
        const std::size_t d = testing::pick(rng, 1, 5);
        const bool positive = rng() % 2 == 0;
        const auto p = testing::random_problem(rng, 2, d, i % 2 == 0, positive);
        const auto jury = testing::random_jury(rng, testing::pick(rng, 1, 6), d, positive);
        const auto got = jury_classify(jury, p.options[0], p.options[1]).relation;
        CHECK(got == permissible_directions_oracle(jury, p.options[0], p.options[1]));
        CHECK(got == oracle::brute_force_relation(jury, p.options[0], p.options[1]));
    }
}

TEST_CASE("traces are deterministic") {
    CHECK(jury_classify(kCanon.jury, A, B) == jury_classify(kCanon.jury, A, B));
    CHECK(classification_matrix(kCanon.jury, kCanon.problem) == classification_matrix(kCanon.jury, kCanon.problem));
}
