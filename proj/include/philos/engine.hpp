#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "philos/event_log.hpp"
#include "philos/scenario_config.hpp"
#include "philos/state_machine.hpp"

namespace philos {

struct TrajectorySample {
    PrimeStep k = 0;
    double day = 0.0;
    double raw_trust = 0.0;
    std::optional<double> fractional_trust;  // nullopt while the system holds no trust
    bool at_bridge = false;
};

struct RunSummary {
    double final_trust = 0.0;
    double max_drawdown = 0.0;         ///< largest peak-to-trough fall of raw trust
    double largest_bridge_drop = 0.0;  ///< largest single-bridge decrease (0 if none)
    PrimeStep largest_drop_at = -1;
    std::size_t bridges = 0;
    std::size_t primaries_missed = 0;
};

/// One policy's peer simulated in its own system together with its filler peers.
struct SubjectRun {
    std::string id;
    PeerId subject;
    std::vector<TrajectorySample> trajectory;
    RunSummary summary;
    SystemState final_state;
};

struct SimulationResult {
    std::vector<SubjectRun> runs;

    static constexpr std::string_view trajectory_header =
        "peer_id,k,day,raw_trust,fractional_trust";
    void write_trajectory_csv(std::ostream& os) const;
    void write_summary(std::ostream& os) const;
};

/// Runs one policy. Samples at every bridge of the subject and every
/// `config.stride()` steps. Throws InvariantError if any state invariant
/// breaks mid-run.
SubjectRun simulate_peer(const ScenarioConfig& config, std::size_t policy_index);

/// Every policy as an independent simulation, one after another.
SimulationResult simulate_serial(const ScenarioConfig& config);

/// Every policy as an independent simulation, in parallel. Same result as
/// simulate_serial.
SimulationResult simulate_parallel(const ScenarioConfig& config);

}  // namespace philos
