#include "philos/trust.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "philos/errors.hpp"

namespace philos {

void TrustParams::validate() const {
    if (!(beta > 0.0 && beta < 1.0)) {
        throw PreconditionError("beta must satisfy 0 < beta < 1, got " + std::to_string(beta));
    }
    if (delta < 1) {
        throw PreconditionError("delta must be >= 1, got " + std::to_string(delta));
    }
    if (!(prime_step_minutes > 0.0)) {
        throw PreconditionError("prime step length must be positive");
    }
}

void BridgeObservation::validate() const {
    if (k <= b) {
        throw PreconditionError("bridge at k=" + std::to_string(k) +
                                " does not follow previous bridge b=" + std::to_string(b));
    }
    if (s_m < 0 || s_m > k - b) {
        throw PreconditionError("s_m=" + std::to_string(s_m) + " outside [0, k-b=" +
                                std::to_string(k - b) + "]");
    }
}

double decay_factor(double beta, std::int64_t n) {
    return std::exp(static_cast<double>(n) * std::log(beta));
}

double bridge_reward(std::int64_t s_m, PrimeStep elapsed, std::int64_t delta) {
    const double ratio = static_cast<double>(elapsed) / static_cast<double>(delta);
    return static_cast<double>(s_m) * std::min(1.0, ratio);
}

void check_bridge_inputs(double prev, const BridgeObservation& obs, const TrustParams& params) {
    obs.validate();
    if (prev < 0.0) {
        throw PreconditionError("raw trust must be nonnegative");
    }
    if (obs.s_m > params.delta) {
        // The list counter wraps at delta; a larger count cannot come from the protocol.
        throw PreconditionError("s_m=" + std::to_string(obs.s_m) + " exceeds delta=" +
                                std::to_string(params.delta));
    }
}

double update_trust(double prev, const BridgeObservation& obs, const TrustParams& params) {
    check_bridge_inputs(prev, obs, params);
    const PrimeStep n = obs.elapsed();
    return prev * decay_factor(params.beta, n) + bridge_reward(obs.s_m, n, params.delta);
}

double hypothetical_trust(double prev, PrimeStep k, PrimeStep b, const TrustParams& params) {
    return update_trust(prev, BridgeObservation{k, b, 0}, params);
}

double fractional_trust(std::span<const double> all_trusts, std::size_t i) {
    if (all_trusts.empty() || i >= all_trusts.size()) {
        throw PreconditionError("peer index out of range");
    }
    if (std::any_of(all_trusts.begin(), all_trusts.end(), [](double t) { return t < 0.0; })) {
        throw PreconditionError("raw trust must be nonnegative");
    }
    const double total = std::accumulate(all_trusts.begin(), all_trusts.end(), 0.0);
    if (total <= 0.0) {
        throw UndefinedFractionError("total system trust is zero");
    }
    return all_trusts[i] / total;
}

double equilibrium_trust(const TrustParams& params) {
    params.validate();
    const double d = static_cast<double>(params.delta);
    // 1 - beta^delta via expm1 keeps precision when beta is close to 1.
    const double one_minus = -std::expm1(d * std::log(params.beta));
    return d / one_minus;
}

double calibrate_beta(double months, double pct, double prime_step_minutes) {
    if (!(pct > 0.0 && pct < 1.0)) {
        throw DomainError("P must lie in (0,1), got " + std::to_string(pct));
    }
    if (!(months > 0.0)) {
        throw DomainError("months must be positive");
    }
    if (!(prime_step_minutes > 0.0)) {
        throw DomainError("prime step length must be positive");
    }
    const double minutes = months * 60.0 * 24.0 * 30.0;
    return std::pow(1.0 - pct, prime_step_minutes / minutes);
}

}  // namespace philos
