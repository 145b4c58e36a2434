#pragma once

#include <cstdint>
#include <vector>

#include "philos/trust.hpp"

namespace philos {

/// A would-be bridge seen from one member of a sync list. All trusts are
/// already-decayed hypothetical values; outside peers are held constant.
struct SabotageScenario {
    std::vector<double> member_trusts;  ///< index `target` is the deciding peer
    double outside_trust = 0.0;         ///< sum over peers not in the list
    std::int64_t s_m = 1;               ///< primaries at stake, credited to every member
    std::size_t target = 0;

    std::size_t list_size() const { return member_trusts.size(); }
    double target_trust() const { return member_trusts.at(target); }
    /// Sum of the other members' trusts.
    double rest_of_list() const;
    /// Total hypothetical system trust L.
    double total() const;

    void validate() const;
};

enum class Action { Honest, Sabotage };

/// Honest: (T1 + S)/(T1 + |M| S + T_M + T_s). Sabotage: T1/(T1 + T_M + T_s).
double utility(const SabotageScenario& s, Action a);

/// True iff list_size * frac_hyp <= 1.
bool is_honesty_incentivized(double frac_hyp, std::size_t list_size);

/// floor(L (1 - beta^delta) / delta): every list of at most this size is safe.
std::int64_t max_safe_list_size(double total_trust, const TrustParams& params);

/// floor(|N| T_ave / T*).
std::int64_t max_safe_list_size_avg(std::int64_t n_peers, double avg_trust,
                                     const TrustParams& params);

struct IncentiveReport {
    double honest_utility = 0.0;
    double sabotage_utility = 0.0;
    double scaled_fraction = 0.0;     ///< |M| times hypothetical fractional trust
    bool predicted_honest = false;    ///< scaled_fraction <= 1
    bool boundary = false;            ///< scaled_fraction == 1 within tolerance
    bool agree = false;
};

/// Relative tolerance separating "equal" from strictly ordered quantities.
inline constexpr double incentive_tolerance = 1e-12;

/// Builds every peer's post-bridge trust under both actions, takes the
/// target's share of the total directly, and checks the comparison against
/// the |M| * fraction <= 1 prediction. Throws PreconditionError when s_m == 0
/// (both actions coincide and the check is inconclusive).
IncentiveReport brute_force_incentive_check(const SabotageScenario& s);

}  // namespace philos
