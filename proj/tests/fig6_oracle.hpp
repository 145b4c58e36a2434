#pragma once

// Closed-loop re-implementation of one peer's year, written directly from
// the update rule and the counter rule without the state machine, event log
// or engine. Used to cross-check simulated trajectories.

#include <cmath>
#include <cstdint>
#include <map>
#include <vector>

namespace oracle {

struct PhaseSpec {
    std::int64_t start_day, end_day, interval;
};

struct YearTrace {
    std::vector<double> end_of_day;  // index d holds trust at the end of day d+1
    std::vector<double> bridge_deltas;
};

inline YearTrace peer_year(double beta, std::int64_t delta, std::int64_t steps_per_day,
                           std::int64_t days, const std::vector<PhaseSpec>& phases,
                           const std::map<std::int64_t, std::int64_t>& miss_then_unmatched) {
    YearTrace out;
    double trust = 0.0;
    std::int64_t last_bridge = 0, anchor = 0, counter = 0;
    bool matched = true;
    std::int64_t rejoin = -1;
    for (std::int64_t k = 1; k <= days * steps_per_day; ++k) {
        std::int64_t interval = phases.back().interval;
        for (const auto& p : phases) {
            if (k > p.start_day * steps_per_day && k <= p.end_day * steps_per_day) {
                interval = p.interval;
                break;
            }
        }
        if (matched) {
            if (auto it = miss_then_unmatched.find(k); it != miss_then_unmatched.end()) {
                matched = false;
                rejoin = k + it->second;
            } else {
                counter = counter % delta + 1;
                if (k - anchor >= interval) {
                    const auto n = k - last_bridge;
                    const double next = trust * std::pow(beta, static_cast<double>(n)) +
                                        counter * std::min(1.0, double(n) / double(delta));
                    out.bridge_deltas.push_back(next - trust);
                    trust = next;
                    last_bridge = anchor = k;
                    counter = 0;
                }
            }
        }
        if (!matched && k == rejoin) {
            matched = true;
            counter = 0;
            anchor = k;
        }
        if (k % steps_per_day == 0) out.end_of_day.push_back(trust);
    }
    return out;
}

inline YearTrace blue_year(double beta) {
    return peer_year(beta, 48, 144, 365, {{0, 365, 48}}, {});
}
inline YearTrace red_year(double beta) {
    return peer_year(beta, 48, 144, 365, {{0, 90, 48}, {90, 120, 24}, {120, 365, 48}},
                     {{120 * 144 + 1, 1008}});
}
inline YearTrace green_year(double beta) {
    return peer_year(beta, 48, 144, 365,
                     {{0, 90, 48}, {90, 120, 54}, {120, 150, 18}, {150, 365, 48}}, {});
}

}  // namespace oracle
