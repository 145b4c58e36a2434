#include <doctest.h>

#include <omp.h>

#include <random>
#include <vector>

#include "philos/errors.hpp"
#include "philos/sweep.hpp"

using namespace philos;

namespace {

const TrustParams ref = TrustParams::reference();

}  // namespace

TEST_CASE("item seeds are deterministic and distinct") {
    CHECK(sweep::item_seed(7, 0) == sweep::item_seed(7, 0));
    CHECK(sweep::item_seed(7, 0) != sweep::item_seed(7, 1));
    CHECK(sweep::item_seed(7, 0) != sweep::item_seed(8, 0));
}

TEST_CASE("random scenarios respect their ranges") {
    const double t_star = equilibrium_trust(ref);
    for (std::uint64_t i = 0; i < 500; ++i) {
        const auto s = sweep::random_scenario(7, i, ref);
        CHECK(s.list_size() >= 2);
        CHECK(s.list_size() <= 20);
        CHECK(s.s_m >= 1);
        CHECK(s.s_m <= 48);
        CHECK(s.target < s.list_size());
        for (double t : s.member_trusts) {
            CHECK(t >= 0.0);
            CHECK(t <= t_star);
        }
        CHECK(s.total() > 0.0);
    }
}

TEST_CASE("boundary scenarios sit exactly on the condition") {
    for (std::uint64_t i = 0; i < 200; ++i) {
        const auto s = sweep::boundary_scenario(3, i);
        CHECK(static_cast<double>(s.list_size()) * s.target_trust() == s.total());
        const auto r = brute_force_incentive_check(s);
        CHECK(r.boundary);
        CHECK(r.agree);
        CHECK(std::fabs(r.honest_utility - r.sabotage_utility) <=
              1e-12 * std::max(r.honest_utility, r.sabotage_utility));
    }
}

TEST_CASE("incentive sweep: parallel equals serial") {
    const auto serial = sweep::incentive_reports_serial(2000, 7, ref, 25);
    for (int threads : {1, 2, 4}) {
        omp_set_num_threads(threads);
        const auto parallel = sweep::incentive_reports_parallel(2000, 7, ref, 25);
        REQUIRE(parallel.size() == serial.size());
        for (std::size_t i = 0; i < serial.size(); ++i) {
            CHECK(parallel[i].honest_utility == serial[i].honest_utility);
            CHECK(parallel[i].sabotage_utility == serial[i].sabotage_utility);
            CHECK(parallel[i].agree == serial[i].agree);
        }
    }
    const auto summary = sweep::summarize(serial);
    CHECK(summary.checked == 2000);
    CHECK(summary.counterexamples == 0);
    CHECK(summary.boundary_cases >= 25);
    CHECK_FALSE(summary.first_counterexample);
}

TEST_CASE("summary counts counterexamples") {
    std::vector<IncentiveReport> reports(4);
    for (auto& r : reports) r.agree = true;
    reports[2].agree = false;
    const auto s = sweep::summarize(reports);
    CHECK(s.counterexamples == 1);
    CHECK(s.first_counterexample == 2u);
}

TEST_CASE("list size bound sweep: sound, witnessed, and identical in parallel") {
    const auto serial = sweep::list_bound_serial(12, 11, ref);
    omp_set_num_threads(4);
    const auto parallel = sweep::list_bound_parallel(12, 11, ref);
    CHECK(serial == parallel);
    for (const auto& r : serial) {
        CHECK(r.bound >= 1);
        CHECK(r.profitable == 0);
        CHECK(r.disagreements == 0);
        CHECK(r.lists_checked == 2 * static_cast<std::size_t>(std::min<std::int64_t>(
                                         r.bound, static_cast<std::int64_t>(r.peers))));
        CHECK(r.witness_size > static_cast<std::size_t>(r.bound));
        CHECK(r.witness_profitable);
    }
}

TEST_CASE("list size bound on a system of equals") {
    // Everyone at T*: bound is the peer count, and no list can be broken.
    const double t_star = equilibrium_trust(ref);
    const std::vector<double> equals(10, t_star);
    const auto r = sweep::check_list_bound(equals, 1, ref);
    CHECK(r.bound == 10);
    CHECK(r.profitable == 0);
    CHECK(r.witness_size == 0);
}

TEST_CASE("batched trust update: parallel equals serial") {
    std::mt19937_64 rng(1);
    const double t_star = equilibrium_trust(ref);
    std::vector<double> prev(20000);
    std::vector<BridgeObservation> obs(prev.size());
    for (std::size_t i = 0; i < prev.size(); ++i) {
        prev[i] = std::uniform_real_distribution<double>(0.0, t_star)(rng);
        const auto n = std::uniform_int_distribution<std::int64_t>(1, 200)(rng);
        obs[i] = {1000 + n, 1000,
                  std::uniform_int_distribution<std::int64_t>(0, std::min<std::int64_t>(n, 48))(rng)};
    }
    std::vector<double> a(prev.size()), b(prev.size());
    sweep::update_trust_batch_serial(prev, obs, ref, a);
    sweep::update_trust_batch_parallel(prev, obs, ref, b);
    CHECK(a == b);

    obs[17].s_m = 49;
    CHECK_THROWS_AS(sweep::update_trust_batch_parallel(prev, obs, ref, b), PreconditionError);
    std::vector<double> short_out(3);
    CHECK_THROWS_AS(sweep::update_trust_batch_serial(prev, obs, ref, short_out), PreconditionError);
}
