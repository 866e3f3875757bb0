#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "tcr/analysis.hpp"
#include "tcr/errors.hpp"

using namespace tcr;
using namespace tcr::analysis;

namespace {

double rel(double a, double b) { return std::fabs(a - b) / std::fabs(b); }

// Independent per-voter ledger of the idealized setting: every engaged voter
// votes, informed are right, uninformed wrong, stake = sigma * T_UE.
struct BruteForce {
    std::vector<double> ie, ue, id, ud;
};

BruteForce brute_force(const AnalysisParams& p, std::size_t k) {
    BruteForce b{std::vector<double>(p.n_ie, p.t0), std::vector<double>(p.n_ue, p.t0),
                 std::vector<double>(p.n_id, p.t0), std::vector<double>(p.n_ud, p.t0)};
    for (std::size_t round = 0; round < k; ++round) {
        const double stake = p.sigma * b.ue.front();
        const double pool = stake * static_cast<double>(p.n_ie + p.n_ue);
        for (auto& x : b.ie) x = (x - stake + pool / static_cast<double>(p.n_ie)) * (1.0 + p.delta);
        for (auto& x : b.ue) x = (x - stake) * (1.0 + p.delta);
    }
    return b;
}

}  // namespace

TEST_CASE("disengaged holdings are constant") {
    AnalysisParams p;
    CHECK(tokens_disengaged(p, 0) == 100.0);
    CHECK(tokens_disengaged(p, 50) == 100.0);
    p.t0 = 7.5;
    CHECK(tokens_disengaged(p, 3) == 7.5);
}

TEST_CASE("uninformed-engaged holdings") {
    AnalysisParams p;
    CHECK(tokens_uninformed_engaged(p, 1) == doctest::Approx(96.9));
    CHECK(tokens_uninformed_engaged(p, 0) == 100.0);

    p.delta = p.sigma / (1.0 - p.sigma);  // (1+delta) == 1/(1-sigma)
    for (std::size_t k : {1u, 10u, 100u, 1000u}) CHECK(rel(tokens_uninformed_engaged(p, k), 100.0) < 1e-12);
}

TEST_CASE("informed-engaged holdings") {
    AnalysisParams p;  // t0=100, sigma=0.05, delta=0.02, n_ue=20, n_ie=30
    CHECK(tokens_informed_engaged(p, 1) == doctest::Approx(105.4));
    CHECK(tokens_informed_engaged(p, 0) == 100.0);
    const double approx = 100.0 * std::pow(1.02, 200) * (5.0 / 3.0);
    CHECK(rel(tokens_informed_engaged(p, 200), approx) <= 1e-3);
    CHECK(tokens_informed_engaged_asymptotic(p, 200) == doctest::Approx(approx).epsilon(1e-12));
}

TEST_CASE("closed form equals the recursion up to k=1000") {
    for (double delta : {0.0, 0.02, 0.05}) {
        for (double sigma : {0.01, 0.05, 0.3}) {
            AnalysisParams p;
            p.delta = delta;
            p.sigma = sigma;
            const auto rec = tokens_informed_engaged_by_recursion(p, 1000);
            REQUIRE(rec.size() == 1001);
            for (std::size_t k = 0; k <= 1000; ++k) CHECK(rel(tokens_informed_engaged(p, k), rec[k]) <= 1e-12);
        }
    }
}

TEST_CASE("closed forms agree with a brute-force per-voter ledger") {
    AnalysisParams p;
    p.n_ie = 7;
    p.n_ue = 4;
    p.n_id = 3;
    p.n_ud = 2;
    for (std::size_t k : {0u, 1u, 2u, 17u, 200u}) {
        const auto b = brute_force(p, k);
        CHECK(rel(b.ie.front(), tokens_informed_engaged(p, k)) < 1e-12);
        CHECK(rel(b.ue.front(), tokens_uninformed_engaged(p, k)) < 1e-12);
        double total = 0.0;
        for (const auto* v : {&b.ie, &b.ue, &b.id, &b.ud}) {
            for (double x : *v) total += x;
        }
        CHECK(rel(total, total_tokens(p, k)) < 1e-12);
    }
}

TEST_CASE("asymptotic error stays within the geometric remainder bound") {
    AnalysisParams p;
    for (std::size_t k = 0; k <= 500; k += 7) {
        // the bound is attained exactly; allow rounding relative to the operands
        const double exact = tokens_informed_engaged(p, k);
        const double err = std::fabs(tokens_informed_engaged_asymptotic(p, k) - exact);
        CHECK(err <= asymptotic_error_bound(p, k) + 1e-12 * exact);
    }
}

TEST_CASE("total tokens") {
    AnalysisParams p;
    CHECK(total_tokens(p, 0) == doctest::Approx(100.0 * 100));
    p.delta = 0.0;
    CHECK(total_tokens(p, 1) == doctest::Approx(total_tokens(p, 0)).epsilon(1e-14));
    for (std::size_t k : {0u, 5u, 50u}) {
        const auto s = series_at(AnalysisParams{}, k);
        CHECK(rel(s.t_total, 30 * s.t_ie + 20 * s.t_ue + 30 * s.t_id + 20 * s.t_ud) < 1e-12);
    }
}

TEST_CASE("value per token") {
    AnalysisParams p;
    CHECK(value_per_token(p, 0) == 0.0);
    CHECK(value_per_token(p, 400) < value_per_token(p, 200));

    p.delta = 0.0;
    const double total = total_tokens(p, 0);
    for (std::size_t k : {1u, 10u, 100u}) {
        CHECK(value_per_token(p, k) == doctest::Approx(static_cast<double>(k) / total));
    }
}

TEST_CASE("informed-engaged wealth grows linearly") {
    AnalysisParams p;
    double previous_gap = 1.0;
    for (std::size_t k : {100u, 200u, 400u, 800u}) {
        const double ratio = class_wealth(p, VoterClass::InformedEngaged, 2 * k) /
                             class_wealth(p, VoterClass::InformedEngaged, k);
        const double gap = std::fabs(ratio - 2.0);
        CHECK(gap < previous_gap);
        previous_gap = gap;
    }
    CHECK(previous_gap < 0.01);
}

TEST_CASE("trend classification") {
    AnalysisParams p;
    auto r = asymptotic_classification(p);
    CHECK(r.covered);
    CHECK(r.trend(VoterClass::InformedEngaged) == Trend::LinearGrowth);
    CHECK(r.trend(VoterClass::UninformedEngaged) == Trend::TendsToZero);
    CHECK(r.trend(VoterClass::InformedDisengaged) == Trend::TendsToZero);
    CHECK(r.trend(VoterClass::UninformedDisengaged) == Trend::TendsToZero);
    CHECK(r.ue_tokens == UeTokenDirection::Decreasing);
    CHECK(class_wealth(p, VoterClass::InformedDisengaged, 2000) < 1e-6);

    p.delta = 0.2;
    r = asymptotic_classification(p);
    CHECK(r.ue_tokens == UeTokenDirection::Increasing);
    CHECK(r.trend(VoterClass::UninformedEngaged) == Trend::RisesThenTendsToZero);
    CHECK(class_wealth(p, VoterClass::UninformedEngaged, 10) > class_wealth(p, VoterClass::UninformedEngaged, 1));
    CHECK(class_wealth(p, VoterClass::UninformedEngaged, 3000) < 1e-6);

    p.delta = p.sigma / (1.0 - p.sigma);
    r = asymptotic_classification(p);
    CHECK(r.ue_tokens == UeTokenDirection::Constant);
    CHECK(r.trend(VoterClass::UninformedEngaged) == Trend::TendsToZero);

    p.delta = 0.0;
    r = asymptotic_classification(p);
    CHECK_FALSE(r.covered);
    CHECK(r.note.find("no inflation") != std::string::npos);
}

TEST_CASE("premise checks") {
    AnalysisParams p;
    p.n_ie = 20;
    p.n_ue = 30;
    CHECK_THROWS_AS(validate(p), ConfigError);
    p.n_ie = p.n_ue;
    CHECK_THROWS_AS(validate(p), ConfigError);
    AnalysisParams q;
    q.sigma = 0.0;
    CHECK_THROWS_AS(validate(q), ConfigError);
    q = {};
    q.delta = -1.0;
    CHECK_THROWS_AS(validate(q), ConfigError);
}
