#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "philos/trust.hpp"

namespace philos {

/// Bridging regime over the days (start_day, end_day]. A list in this regime
/// bridges as soon as `bridge_interval` prime steps have passed since it
/// formed or last bridged.
struct Phase {
    std::int64_t start_day = 0;
    std::int64_t end_day = 0;
    std::int64_t bridge_interval = 48;
};

/// The list misses the primary at step day * steps_per_day + step_offset and
/// disbands; the peer sits out `unmatched_steps` further steps and joins a
/// new list at the end of the last of them.
struct MissSpec {
    std::int64_t day = 0;
    std::int64_t step_offset = 1;
    std::int64_t unmatched_steps = 0;
};

struct PeerPolicy {
    std::string id;
    std::vector<Phase> phases;
    std::vector<MissSpec> misses;
};

enum class Matching {
    Fresh,   // always new filler peers
    Random,  // fillers drawn at random from idle peers, topped up with new ones
};

struct ScenarioConfig {
    TrustParams params;
    std::int64_t horizon_steps = 0;
    std::size_t list_size = 3;
    std::int64_t sample_stride = 0;  // 0: once per day
    Matching matching = Matching::Fresh;
    std::uint64_t seed = 0;
    std::vector<PeerPolicy> peers;

    std::int64_t steps_per_day() const;
    std::int64_t stride() const { return sample_stride > 0 ? sample_stride : steps_per_day(); }
    PrimeStep miss_step(const MissSpec& m) const { return m.day * steps_per_day() + m.step_offset; }

    /// Throws ConfigError naming the offending peer/field.
    void validate() const;
};

/// Parses the YAML scenario format. Errors carry `source` and a line number.
ScenarioConfig parse_scenario(std::string_view text, const std::string& source = "<string>");
ScenarioConfig load_scenario(const std::filesystem::path& path);

}  // namespace philos
