#pragma once

#include <cstdint>
#include <span>

namespace philos {

/// Global prime-step counter k. One prime step is one primary consensus interval.
using PrimeStep = std::int64_t;

/// Chain-wide trust constants.
struct TrustParams {
    double beta = 0.9999111696;       ///< decay base per prime step, 0 < beta < 1
    std::int64_t delta = 48;          ///< max bridge interval, prime steps
    double prime_step_minutes = 10.0; ///< K

    /// Throws PreconditionError unless 0 < beta < 1, delta >= 1, K > 0.
    void validate() const;

    static TrustParams reference() { return {}; }
};

/// What a peer's list reports at a bridge: current step k, the peer's last
/// bridge b and the list's count of successful primaries since then.
struct BridgeObservation {
    PrimeStep k = 0;
    PrimeStep b = 0;
    std::int64_t s_m = 0;

    PrimeStep elapsed() const { return k - b; }
    void validate() const;
};

/// beta^n evaluated as exp(n ln beta).
double decay_factor(double beta, std::int64_t n);

/// Reward credited at a bridge: s_m * min(1, elapsed / delta).
double bridge_reward(std::int64_t s_m, PrimeStep elapsed, std::int64_t delta);

/// Throws PreconditionError unless prev >= 0, k > b and 0 <= s_m <= min(k-b, delta).
void check_bridge_inputs(double prev, const BridgeObservation& obs, const TrustParams& params);

/// T := T^- beta^(k-b) + s_m min(1, (k-b)/delta).
double update_trust(double prev, const BridgeObservation& obs, const TrustParams& params);

/// Trust a peer would record if its bridge credited no primaries (pure decay).
double hypothetical_trust(double prev, PrimeStep k, PrimeStep b, const TrustParams& params);

/// T_i / sum(T). Throws UndefinedFractionError when the total is zero.
double fractional_trust(std::span<const double> all_trusts, std::size_t i);

/// delta / (1 - beta^delta): the fixed point of perfect bridging and the
/// ceiling on any raw trust.
double equilibrium_trust(const TrustParams& params);

/// Decay base so that perfect bridging reaches fraction `pct` of the
/// equilibrium after `months` thirty-day months.
double calibrate_beta(double months, double pct, double prime_step_minutes);

}  // namespace philos
