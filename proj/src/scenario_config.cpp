#include "philos/scenario_config.hpp"

#include <yaml-cpp/yaml.h>

#include <cmath>
#include <fstream>
#include <sstream>

#include "philos/errors.hpp"

namespace philos {

std::int64_t ScenarioConfig::steps_per_day() const {
    const double per_day = 24.0 * 60.0 / params.prime_step_minutes;
    return static_cast<std::int64_t>(std::llround(per_day));
}

void ScenarioConfig::validate() const {
    try {
        params.validate();
    } catch (const PreconditionError& e) {
        throw ConfigError(std::string("params: ") + e.what());
    }
    const double per_day = 24.0 * 60.0 / params.prime_step_minutes;
    if (std::fabs(per_day - std::round(per_day)) > 1e-9 || per_day < 1.0) {
        throw ConfigError("params.prime_step_minutes: a day must hold a whole number of steps");
    }
    if (horizon_steps < 0) throw ConfigError("horizon: must be nonnegative");
    if (list_size < 2) throw ConfigError("list_size: must be at least 2");
    if (sample_stride < 0) throw ConfigError("sample_stride_steps: must be nonnegative");
    if (peers.empty()) throw ConfigError("peers: scenario defines no peers");

    const std::int64_t spd = steps_per_day();
    const std::int64_t horizon_days = (horizon_steps + spd - 1) / spd;
    for (const auto& p : peers) {
        const std::string where = "peers[" + p.id + "]";
        if (p.id.empty()) throw ConfigError("peers: every peer needs an id");
        if (p.phases.empty()) throw ConfigError(where + ".phases: at least one phase required");
        std::int64_t cursor = 0;
        for (const auto& ph : p.phases) {
            if (ph.bridge_interval < 1) {
                throw ConfigError(where + ".phases: bridge_interval must be >= 1");
            }
            if (ph.start_day != cursor) {
                throw ConfigError(where + ".phases: phase starting at day " +
                                  std::to_string(ph.start_day) + " should start at day " +
                                  std::to_string(cursor) + " (phases must be ordered and contiguous)");
            }
            if (ph.end_day <= ph.start_day) {
                throw ConfigError(where + ".phases: end_day must exceed start_day");
            }
            cursor = ph.end_day;
        }
        if (cursor < horizon_days) {
            throw ConfigError(where + ".phases: cover only " + std::to_string(cursor) +
                              " of " + std::to_string(horizon_days) + " days");
        }
        PrimeStep free_from = 1;
        for (const auto& m : p.misses) {
            if (m.step_offset < 1 || m.step_offset > spd) {
                throw ConfigError(where + ".misses: step_offset must lie in [1, " +
                                  std::to_string(spd) + "]");
            }
            if (m.unmatched_steps < 0 || m.day < 0) {
                throw ConfigError(where + ".misses: day and unmatched_steps must be nonnegative");
            }
            const PrimeStep at = miss_step(m);
            if (at < free_from) {
                throw ConfigError(where + ".misses: miss at step " + std::to_string(at) +
                                  " falls before the peer is matched again (step " +
                                  std::to_string(free_from) + ")");
            }
            free_from = at + m.unmatched_steps + 1;
        }
    }
}

namespace {

std::string located(const std::string& source, const YAML::Node& node, const std::string& msg) {
    std::ostringstream os;
    os << source;
    if (node.Mark().line >= 0) os << ':' << node.Mark().line + 1;
    os << ": " << msg;
    return os.str();
}

template <typename T>
T read(const YAML::Node& parent, const char* key, const std::string& source, T fallback) {
    const auto node = parent[key];
    if (!node) return fallback;
    try {
        return node.as<T>();
    } catch (const YAML::Exception&) {
        throw ConfigError(located(source, node, std::string("field '") + key + "' has an invalid value"));
    }
}

template <typename T>
T require(const YAML::Node& parent, const char* key, const std::string& source) {
    if (!parent[key]) {
        throw ConfigError(located(source, parent, std::string("missing field '") + key + "'"));
    }
    return read<T>(parent, key, source, T{});
}

}  // namespace

ScenarioConfig parse_scenario(std::string_view text, const std::string& source) {
    YAML::Node root;
    try {
        root = YAML::Load(std::string(text));
    } catch (const YAML::ParserException& e) {
        throw ConfigError(source + ":" + std::to_string(e.mark.line + 1) + ": " + e.msg);
    }
    if (!root || root.IsNull()) throw ConfigError(source + ": empty scenario");
    if (!root.IsMap()) throw ConfigError(located(source, root, "scenario must be a mapping"));

    ScenarioConfig cfg;
    if (const auto p = root["params"]) {
        cfg.params.beta = read<double>(p, "beta", source, cfg.params.beta);
        cfg.params.delta = read<std::int64_t>(p, "delta", source, cfg.params.delta);
        cfg.params.prime_step_minutes =
            read<double>(p, "prime_step_minutes", source, cfg.params.prime_step_minutes);
    }
    const bool has_days = static_cast<bool>(root["horizon_days"]);
    const bool has_steps = static_cast<bool>(root["horizon_steps"]);
    if (has_days && has_steps) {
        throw ConfigError(located(source, root, "give horizon_days or horizon_steps, not both"));
    }
    if (!has_days && !has_steps) {
        throw ConfigError(located(source, root, "missing field 'horizon_days' or 'horizon_steps'"));
    }
    cfg.list_size = read<std::size_t>(root, "list_size", source, cfg.list_size);
    cfg.sample_stride = read<std::int64_t>(root, "sample_stride_steps", source, 0);
    cfg.seed = read<std::uint64_t>(root, "seed", source, 0);
    const auto matching = read<std::string>(root, "matching", source, "fresh");
    if (matching == "fresh") {
        cfg.matching = Matching::Fresh;
    } else if (matching == "random") {
        cfg.matching = Matching::Random;
    } else {
        throw ConfigError(located(source, root["matching"], "matching must be 'fresh' or 'random'"));
    }

    const auto peers = root["peers"];
    if (peers && !peers.IsSequence()) {
        throw ConfigError(located(source, peers, "'peers' must be a list"));
    }
    for (const auto& pn : peers) {
        PeerPolicy policy;
        policy.id = require<std::string>(pn, "id", source);
        const auto phases = pn["phases"];
        if (!phases || !phases.IsSequence()) {
            throw ConfigError(located(source, pn, "peer '" + policy.id + "' needs a 'phases' list"));
        }
        for (const auto& ph : phases) {
            policy.phases.push_back(Phase{require<std::int64_t>(ph, "start_day", source),
                                          require<std::int64_t>(ph, "end_day", source),
                                          require<std::int64_t>(ph, "bridge_interval", source)});
        }
        if (const auto misses = pn["misses"]) {
            for (const auto& mn : misses) {
                policy.misses.push_back(MissSpec{require<std::int64_t>(mn, "day", source),
                                                 read<std::int64_t>(mn, "step_offset", source, 1),
                                                 read<std::int64_t>(mn, "unmatched_steps", source, 0)});
            }
        }
        cfg.peers.push_back(std::move(policy));
    }

    // Needs params to be known to convert days.
    if (has_days) {
        const auto days = read<std::int64_t>(root, "horizon_days", source, 0);
        try {
            cfg.params.validate();
        } catch (const PreconditionError& e) {
            throw ConfigError(located(source, root["params"], e.what()));
        }
        cfg.horizon_steps = days * cfg.steps_per_day();
    } else {
        cfg.horizon_steps = read<std::int64_t>(root, "horizon_steps", source, 0);
    }

    try {
        cfg.validate();
    } catch (const ConfigError& e) {
        throw ConfigError(source + ": " + e.what());
    }
    return cfg;
}

ScenarioConfig load_scenario(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError(path.string() + ": cannot open scenario file");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scenario(buf.str(), path.string());
}

}  // namespace philos
