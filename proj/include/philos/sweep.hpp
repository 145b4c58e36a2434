#pragma once

// Data-parallel verification kernels. Each kernel has a serial reference
// and an OpenMP version that must produce identical results; every work
// item draws from its own generator seeded by (seed, index), so results do
// not depend on thread count or scheduling.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "philos/incentive.hpp"
#include "philos/trust.hpp"

namespace philos::sweep {

std::uint64_t item_seed(std::uint64_t seed, std::uint64_t index);

/// |M| in [2,20], member and outside-peer trusts in [0, T*], s_m in [1, delta].
SabotageScenario random_scenario(std::uint64_t seed, std::uint64_t index,
                                 const TrustParams& params);

/// Integer-valued scenario with |M| * T1 == L exactly.
SabotageScenario boundary_scenario(std::uint64_t seed, std::uint64_t index);

/// The first `boundary_count` indices are boundary scenarios, the rest random.
SabotageScenario sweep_scenario(std::uint64_t seed, std::uint64_t index,
                                const TrustParams& params, std::uint64_t boundary_count);

struct IncentiveSummary {
    std::size_t checked = 0;
    std::size_t agreements = 0;
    std::size_t counterexamples = 0;
    std::size_t boundary_cases = 0;
    std::size_t honest_predicted = 0;
    std::optional<std::uint64_t> first_counterexample;

    friend bool operator==(const IncentiveSummary&, const IncentiveSummary&) = default;
};

std::vector<IncentiveReport> incentive_reports_serial(std::uint64_t count, std::uint64_t seed,
                                                      const TrustParams& params,
                                                      std::uint64_t boundary_count = 0);
std::vector<IncentiveReport> incentive_reports_parallel(std::uint64_t count, std::uint64_t seed,
                                                        const TrustParams& params,
                                                        std::uint64_t boundary_count = 0);

IncentiveSummary summarize(std::span<const IncentiveReport> reports);

/// Peer count in [20,120], each trust uniform in [0, T*].
std::vector<double> random_system(std::uint64_t seed, std::uint64_t index,
                                  const TrustParams& params);

struct ListBoundResult {
    std::size_t peers = 0;
    double total_trust = 0.0;
    std::int64_t bound = 0;
    std::size_t lists_checked = 0;
    std::size_t member_checks = 0;
    std::size_t profitable = 0;  ///< must be zero
    std::size_t disagreements = 0;
    std::size_t witness_size = 0;  ///< 0 when no witness list fits in the system
    bool witness_profitable = false;

    friend bool operator==(const ListBoundResult&, const ListBoundResult&) = default;
};

/// For every size up to the certified bound, checks every member of the
/// highest-trust list and of a random list of that size. Then builds a
/// list just large enough for the top peer to break |M| * fraction <= 1.
ListBoundResult check_list_bound(std::span<const double> trusts, std::uint64_t seed,
                                  const TrustParams& params);

std::vector<ListBoundResult> list_bound_serial(std::uint64_t systems, std::uint64_t seed,
                                                const TrustParams& params);
std::vector<ListBoundResult> list_bound_parallel(std::uint64_t systems, std::uint64_t seed,
                                                  const TrustParams& params);

void update_trust_batch_serial(std::span<const double> prev,
                               std::span<const BridgeObservation> obs,
                               const TrustParams& params, std::span<double> out);
void update_trust_batch_parallel(std::span<const double> prev,
                                 std::span<const BridgeObservation> obs,
                                 const TrustParams& params, std::span<double> out);

}  // namespace philos::sweep
