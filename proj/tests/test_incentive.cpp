#include <doctest.h>

#include <cmath>
#include <random>

#include "philos/errors.hpp"
#include "philos/incentive.hpp"

using namespace philos;

namespace {

const TrustParams ref = TrustParams::reference();

SabotageScenario scenario(double t1, double rest, double outside, std::size_t m, std::int64_t s_m) {
    SabotageScenario s;
    s.member_trusts.push_back(t1);
    for (std::size_t i = 1; i < m; ++i) s.member_trusts.push_back(rest / static_cast<double>(m - 1));
    s.outside_trust = outside;
    s.s_m = s_m;
    return s;
}

}  // namespace

TEST_CASE("utility branches") {
    SUBCASE("symmetric pair sits on the boundary") {
        const auto s = scenario(1, 1, 0, 2, 1);
        CHECK(utility(s, Action::Honest) == doctest::Approx(0.5));
        CHECK(utility(s, Action::Sabotage) == doctest::Approx(0.5));
        const auto r = brute_force_incentive_check(s);
        CHECK(r.boundary);
        CHECK(r.agree);
    }
    SUBCASE("heavy member profits from sabotage") {
        const auto s = scenario(3, 1, 0, 2, 1);
        CHECK(utility(s, Action::Honest) == doctest::Approx(4.0 / 6.0));
        CHECK(utility(s, Action::Sabotage) == doctest::Approx(0.75));
        const auto r = brute_force_incentive_check(s);
        CHECK(r.scaled_fraction == doctest::Approx(1.5));
        CHECK_FALSE(r.predicted_honest);
        CHECK(r.sabotage_utility > r.honest_utility);
        CHECK(r.agree);
    }
    SUBCASE("light member in a big system stays honest") {
        const auto s = scenario(1, 2, 7, 3, 5);
        const auto r = brute_force_incentive_check(s);
        CHECK(r.scaled_fraction == doctest::Approx(0.3));
        CHECK(r.predicted_honest);
        CHECK(r.honest_utility >= r.sabotage_utility);
        CHECK(r.agree);
    }
    SUBCASE("no primaries at stake collapses both branches") {
        auto s = scenario(5, 4, 3, 3, 0);
        CHECK(utility(s, Action::Honest) == utility(s, Action::Sabotage));
        CHECK_THROWS_AS(brute_force_incentive_check(s), PreconditionError);
    }
    SUBCASE("zero total trust") {
        const auto s = scenario(0, 0, 0, 3, 2);
        CHECK_THROWS_AS(utility(s, Action::Sabotage), UndefinedFractionError);
        CHECK(utility(s, Action::Honest) == doctest::Approx(1.0 / 3.0));
        const auto none = scenario(0, 0, 0, 3, 0);
        CHECK_THROWS_AS(utility(none, Action::Honest), UndefinedFractionError);
    }
    SUBCASE("invalid scenarios") {
        SabotageScenario empty;
        CHECK_THROWS_AS(utility(empty, Action::Honest), PreconditionError);
        auto bad = scenario(1, 1, 0, 2, 1);
        bad.target = 5;
        CHECK_THROWS_AS(utility(bad, Action::Honest), PreconditionError);
        bad = scenario(-1, 1, 0, 2, 1);
        CHECK_THROWS_AS(utility(bad, Action::Honest), PreconditionError);
    }
}

TEST_CASE("honesty condition") {
    CHECK(is_honesty_incentivized(0.2, 3));
    CHECK(is_honesty_incentivized(0.5, 2));
    CHECK_FALSE(is_honesty_incentivized(0.75, 2));
}

TEST_CASE("target other than the first member") {
    SabotageScenario s;
    s.member_trusts = {1, 9, 1};
    s.outside_trust = 2;
    s.s_m = 4;
    s.target = 1;
    const auto r = brute_force_incentive_check(s);
    CHECK(r.sabotage_utility == doctest::Approx(9.0 / 13.0));
    CHECK(r.honest_utility == doctest::Approx(13.0 / 25.0));
    CHECK_FALSE(r.predicted_honest);
    CHECK(r.agree);
}

TEST_CASE("safe list size bounds") {
    const double t_star = equilibrium_trust(ref);
    CHECK(max_safe_list_size(100 * t_star, ref) == 100);
    CHECK(max_safe_list_size(t_star, ref) == 1);
    CHECK(max_safe_list_size(t_star / 2, ref) == 0);
    CHECK(max_safe_list_size(2.9 * t_star, ref) == 2);
    CHECK_THROWS_AS(max_safe_list_size(0.0, ref), PreconditionError);

    CHECK(max_safe_list_size_avg(50, t_star, ref) == 50);
    CHECK(max_safe_list_size_avg(50, t_star / 2, ref) == 25);
    CHECK(max_safe_list_size_avg(50, 0.0, ref) == 0);
    CHECK_THROWS_AS(max_safe_list_size_avg(0, 1.0, ref), PreconditionError);

    // Same bound when the total is written as peers times average.
    std::mt19937_64 rng(23);
    std::uniform_int_distribution<std::int64_t> n(1, 500);
    std::uniform_real_distribution<double> avg(1e-3, t_star);
    for (int i = 0; i < 2000; ++i) {
        const auto peers = n(rng);
        const double a = avg(rng);
        CHECK(max_safe_list_size_avg(peers, a, ref) ==
              max_safe_list_size(static_cast<double>(peers) * a, ref));
    }
}

TEST_CASE("brute force matches the pointwise condition on random scenarios") {
    std::mt19937_64 rng(99);
    const double t_star = equilibrium_trust(ref);
    std::uniform_real_distribution<double> t(0.0, t_star);
    std::uniform_int_distribution<std::size_t> m(2, 20);
    std::uniform_int_distribution<std::int64_t> s_m(1, 48);
    int honest = 0, sabotage = 0;
    for (int i = 0; i < 3000; ++i) {
        SabotageScenario s;
        s.member_trusts.resize(m(rng));
        for (auto& v : s.member_trusts) v = t(rng);
        s.outside_trust = t(rng) * std::uniform_int_distribution<int>(0, 10)(rng);
        s.s_m = s_m(rng);
        const auto r = brute_force_incentive_check(s);
        CHECK(r.agree);
        CHECK(utility(s, Action::Honest) == doctest::Approx(r.honest_utility).epsilon(1e-12));
        CHECK(utility(s, Action::Sabotage) == doctest::Approx(r.sabotage_utility).epsilon(1e-12));
        (r.predicted_honest ? honest : sabotage)++;
    }
    // Both regions are exercised.
    CHECK(honest > 100);
    CHECK(sabotage > 100);
}
