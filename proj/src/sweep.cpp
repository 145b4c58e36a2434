#include "philos/sweep.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <string>

#include "philos/errors.hpp"

namespace philos::sweep {

std::uint64_t item_seed(std::uint64_t seed, std::uint64_t index) {
    // splitmix64 finalizer over the pair.
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

SabotageScenario random_scenario(std::uint64_t seed, std::uint64_t index,
                                 const TrustParams& params) {
    std::mt19937_64 rng(item_seed(seed, index));
    const double ceiling = equilibrium_trust(params);
    std::uniform_int_distribution<std::size_t> size_dist(2, 20);
    std::uniform_int_distribution<std::size_t> outside_dist(0, 40);
    std::uniform_real_distribution<double> trust_dist(0.0, ceiling);
    std::uniform_int_distribution<std::int64_t> sm_dist(1, params.delta);

    SabotageScenario s;
    s.member_trusts.resize(size_dist(rng));
    for (auto& t : s.member_trusts) t = trust_dist(rng);
    const std::size_t outside = outside_dist(rng);
    for (std::size_t j = 0; j < outside; ++j) s.outside_trust += trust_dist(rng);
    s.s_m = sm_dist(rng);
    s.target = std::uniform_int_distribution<std::size_t>(0, s.member_trusts.size() - 1)(rng);
    if (s.total() <= 0.0) s.member_trusts[s.target] = 1.0;
    return s;
}

SabotageScenario boundary_scenario(std::uint64_t seed, std::uint64_t index) {
    std::mt19937_64 rng(item_seed(seed ^ 0xb0b0b0b0ULL, index));
    std::uniform_int_distribution<std::int64_t> size_dist(2, 20);
    std::uniform_int_distribution<std::int64_t> t1_dist(1, 5000);
    std::uniform_int_distribution<std::int64_t> sm_dist(1, 48);

    const std::int64_t m = size_dist(rng);
    const std::int64_t t1 = t1_dist(rng);
    // Remaining trust (m - 1) * t1 split over the other members and the outside.
    std::int64_t remaining = (m - 1) * t1;
    SabotageScenario s;
    s.member_trusts.push_back(static_cast<double>(t1));
    for (std::int64_t i = 1; i < m; ++i) {
        const std::int64_t take =
            std::uniform_int_distribution<std::int64_t>(0, std::min(remaining, 2 * t1))(rng);
        s.member_trusts.push_back(static_cast<double>(take));
        remaining -= take;
    }
    s.outside_trust = static_cast<double>(remaining);
    s.s_m = sm_dist(rng);
    s.target = 0;
    return s;
}

SabotageScenario sweep_scenario(std::uint64_t seed, std::uint64_t index,
                                const TrustParams& params, std::uint64_t boundary_count) {
    return index < boundary_count ? boundary_scenario(seed, index)
                                  : random_scenario(seed, index, params);
}

std::vector<IncentiveReport> incentive_reports_serial(std::uint64_t count, std::uint64_t seed,
                                                      const TrustParams& params,
                                                      std::uint64_t boundary_count) {
    std::vector<IncentiveReport> out(count);
    for (std::uint64_t i = 0; i < count; ++i) {
        out[i] = brute_force_incentive_check(sweep_scenario(seed, i, params, boundary_count));
    }
    return out;
}

std::vector<IncentiveReport> incentive_reports_parallel(std::uint64_t count, std::uint64_t seed,
                                                        const TrustParams& params,
                                                        std::uint64_t boundary_count) {
    params.validate();
    std::vector<IncentiveReport> out(count);
    const auto n = static_cast<std::int64_t>(count);
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < n; ++i) {
        const auto idx = static_cast<std::uint64_t>(i);
        out[idx] = brute_force_incentive_check(sweep_scenario(seed, idx, params, boundary_count));
    }
    return out;
}

IncentiveSummary summarize(std::span<const IncentiveReport> reports) {
    IncentiveSummary s;
    for (std::size_t i = 0; i < reports.size(); ++i) {
        const auto& r = reports[i];
        ++s.checked;
        if (r.agree) {
            ++s.agreements;
        } else {
            ++s.counterexamples;
            if (!s.first_counterexample) s.first_counterexample = i;
        }
        if (r.boundary) ++s.boundary_cases;
        if (r.predicted_honest) ++s.honest_predicted;
    }
    return s;
}

std::vector<double> random_system(std::uint64_t seed, std::uint64_t index,
                                  const TrustParams& params) {
    std::mt19937_64 rng(item_seed(seed, index));
    std::uniform_int_distribution<std::size_t> n_dist(20, 120);
    std::uniform_real_distribution<double> trust_dist(0.0, equilibrium_trust(params));
    std::vector<double> trusts(n_dist(rng));
    for (auto& t : trusts) t = trust_dist(rng);
    return trusts;
}

namespace {

// Checks every member of `list` (indices into trusts) as the deciding peer.
void check_list(std::span<const double> trusts, std::span<const std::size_t> list,
                std::int64_t s_m, ListBoundResult& result) {
    std::vector<bool> in_list(trusts.size(), false);
    for (std::size_t i : list) in_list[i] = true;

    SabotageScenario s;
    s.s_m = s_m;
    for (std::size_t i : list) s.member_trusts.push_back(trusts[i]);
    for (std::size_t j = 0; j < trusts.size(); ++j) {
        if (!in_list[j]) s.outside_trust += trusts[j];
    }
    ++result.lists_checked;
    for (std::size_t t = 0; t < list.size(); ++t) {
        s.target = t;
        const auto r = brute_force_incentive_check(s);
        ++result.member_checks;
        if (r.sabotage_utility > r.honest_utility * (1.0 + incentive_tolerance)) {
            ++result.profitable;
        }
        if (!r.agree) ++result.disagreements;
    }
}

}  // namespace

ListBoundResult check_list_bound(std::span<const double> trusts, std::uint64_t seed,
                                  const TrustParams& params) {
    ListBoundResult result;
    result.peers = trusts.size();
    result.total_trust = std::accumulate(trusts.begin(), trusts.end(), 0.0);
    result.bound = max_safe_list_size(result.total_trust, params);

    std::vector<std::size_t> by_trust(trusts.size());
    std::iota(by_trust.begin(), by_trust.end(), std::size_t{0});
    std::stable_sort(by_trust.begin(), by_trust.end(),
                     [&](std::size_t a, std::size_t b) { return trusts[a] > trusts[b]; });

    std::mt19937_64 rng(item_seed(seed, 0x5eed));
    std::uniform_int_distribution<std::int64_t> sm_dist(1, params.delta);
    const auto max_size =
        std::min<std::int64_t>(result.bound, static_cast<std::int64_t>(trusts.size()));
    for (std::int64_t m = 1; m <= max_size; ++m) {
        const auto size = static_cast<std::size_t>(m);
        check_list(trusts, std::span(by_trust).first(size), sm_dist(rng), result);

        std::vector<std::size_t> shuffled(by_trust);
        std::shuffle(shuffled.begin(), shuffled.end(), rng);
        check_list(trusts, std::span(shuffled).first(size), sm_dist(rng), result);
    }

    // Smallest list in which the top peer has |M| * fraction > 1.
    if (!trusts.empty() && trusts[by_trust.front()] > 0.0) {
        const double top = trusts[by_trust.front()];
        auto witness = static_cast<std::size_t>(std::floor(result.total_trust / top)) + 1;
        if (witness <= trusts.size()) {
            SabotageScenario s;
            s.s_m = params.delta;
            for (std::size_t i = 0; i < witness; ++i) s.member_trusts.push_back(trusts[by_trust[i]]);
            for (std::size_t i = witness; i < by_trust.size(); ++i) {
                s.outside_trust += trusts[by_trust[i]];
            }
            const auto r = brute_force_incentive_check(s);
            result.witness_size = witness;
            result.witness_profitable = r.sabotage_utility > r.honest_utility && r.agree;
        }
    }
    return result;
}

std::vector<ListBoundResult> list_bound_serial(std::uint64_t systems, std::uint64_t seed,
                                                const TrustParams& params) {
    std::vector<ListBoundResult> out(systems);
    for (std::uint64_t i = 0; i < systems; ++i) {
        const auto trusts = random_system(seed, i, params);
        out[i] = check_list_bound(trusts, item_seed(seed, i), params);
    }
    return out;
}

std::vector<ListBoundResult> list_bound_parallel(std::uint64_t systems, std::uint64_t seed,
                                                  const TrustParams& params) {
    params.validate();
    std::vector<ListBoundResult> out(systems);
    const auto n = static_cast<std::int64_t>(systems);
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t i = 0; i < n; ++i) {
        const auto idx = static_cast<std::uint64_t>(i);
        const auto trusts = random_system(seed, idx, params);
        out[idx] = check_list_bound(trusts, item_seed(seed, idx), params);
    }
    return out;
}

namespace {

void check_batch_shapes(std::span<const double> prev, std::span<const BridgeObservation> obs,
                        std::span<double> out) {
    if (prev.size() != obs.size() || out.size() != obs.size()) {
        throw PreconditionError("batch spans differ in length");
    }
}

}  // namespace

void update_trust_batch_serial(std::span<const double> prev,
                               std::span<const BridgeObservation> obs,
                               const TrustParams& params, std::span<double> out) {
    check_batch_shapes(prev, obs, out);
    for (std::size_t i = 0; i < obs.size(); ++i) out[i] = update_trust(prev[i], obs[i], params);
}

void update_trust_batch_parallel(std::span<const double> prev,
                                 std::span<const BridgeObservation> obs,
                                 const TrustParams& params, std::span<double> out) {
    check_batch_shapes(prev, obs, out);
    params.validate();
    // Validate up front: exceptions may not leave an OpenMP region.
    for (std::size_t i = 0; i < obs.size(); ++i) check_bridge_inputs(prev[i], obs[i], params);
    const auto n = static_cast<std::int64_t>(obs.size());
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < n; ++i) {
        const auto& o = obs[static_cast<std::size_t>(i)];
        const PrimeStep elapsed = o.elapsed();
        out[static_cast<std::size_t>(i)] =
            prev[static_cast<std::size_t>(i)] * decay_factor(params.beta, elapsed) +
            bridge_reward(o.s_m, elapsed, params.delta);
    }
}

}  // namespace philos::sweep
