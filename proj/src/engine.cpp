#include "philos/engine.hpp"

#include <algorithm>
#include <exception>
#include <ostream>
#include <random>

#include "philos/csv.hpp"
#include "philos/errors.hpp"
#include "philos/sweep.hpp"

namespace philos {

namespace {

class PeerDriver {
public:
    PeerDriver(const ScenarioConfig& config, std::size_t policy_index)
        : config_(config),
          policy_(config.peers.at(policy_index)),
          state_(config.params, 0, config.list_size),
          rng_(sweep::item_seed(config.seed, policy_index)),
          steps_per_day_(config.steps_per_day()),
          ceiling_(equilibrium_trust(config.params)) {
        subject_ = state_.add_peer();
        form_list();
    }

    SubjectRun run() {
        auto next_miss = policy_.misses.begin();
        for (PrimeStep k = 1; k <= config_.horizon_steps; ++k) {
            state_.advance_clock();
            bool bridged = false;
            if (list_) {
                if (next_miss != policy_.misses.end() && config_.miss_step(*next_miss) == k) {
                    state_.miss_primary(*list_, subject_);
                    list_.reset();
                    rematch_at_ = k + next_miss->unmatched_steps;
                    ++summary_.primaries_missed;
                    ++next_miss;
                } else {
                    state_.primary_sync(*list_);
                    if (k - anchor_ >= interval_at(k)) {
                        const double before = subject_trust();
                        state_.bridge_sync(*list_);
                        anchor_ = k;
                        bridged = true;
                        ++summary_.bridges;
                        const double drop = before - subject_trust();
                        if (drop > summary_.largest_bridge_drop) {
                            summary_.largest_bridge_drop = drop;
                            summary_.largest_drop_at = k;
                        }
                    }
                }
            }
            if (!list_ && rematch_at_ == k) form_list();

            check(k);
            if (bridged || k % config_.stride() == 0) sample(k, bridged);
        }

        summary_.final_trust = subject_trust();
        return SubjectRun{policy_.id, subject_, std::move(trajectory_), summary_,
                          std::move(state_)};
    }

private:
    double subject_trust() const { return state_.peer(subject_).trust; }

    std::int64_t interval_at(PrimeStep k) const {
        for (const auto& ph : policy_.phases) {
            if (k > ph.start_day * steps_per_day_ && k <= ph.end_day * steps_per_day_) {
                return ph.bridge_interval;
            }
        }
        return policy_.phases.back().bridge_interval;
    }

    void form_list() {
        std::vector<PeerId> members{subject_};
        if (config_.matching == Matching::Random) {
            std::vector<PeerId> idle;
            for (const auto& p : state_.peers()) {
                if (!p.matched() && p.id != subject_) idle.push_back(p.id);
            }
            std::shuffle(idle.begin(), idle.end(), rng_);
            for (PeerId id : idle) {
                if (members.size() == config_.list_size) break;
                members.push_back(id);
            }
        }
        while (members.size() < config_.list_size) members.push_back(state_.add_peer());
        list_ = state_.form_sync_list(members);
        anchor_ = state_.clock();
    }

    void check(PrimeStep k) {
        try {
            state_.check_invariants();
        } catch (const InvariantError& e) {
            throw InvariantError("peer '" + policy_.id + "' at step " + std::to_string(k) + ": " +
                                 e.what());
        }
    }

    void sample(PrimeStep k, bool at_bridge) {
        TrajectorySample s;
        s.k = k;
        s.day = static_cast<double>(k) / static_cast<double>(steps_per_day_);
        s.raw_trust = subject_trust();
        const double total = state_.total_trust();
        if (total > 0.0) s.fractional_trust = s.raw_trust / total;
        s.at_bridge = at_bridge;
        if (s.raw_trust > ceiling_ * (1.0 + 1e-12)) {
            throw InvariantError("peer '" + policy_.id + "' exceeds T* at step " +
                                 std::to_string(k));
        }
        peak_ = std::max(peak_, s.raw_trust);
        summary_.max_drawdown = std::max(summary_.max_drawdown, peak_ - s.raw_trust);
        trajectory_.push_back(s);
    }

    const ScenarioConfig& config_;
    const PeerPolicy& policy_;
    SystemState state_;
    std::mt19937_64 rng_;
    std::int64_t steps_per_day_;
    double ceiling_;
    PeerId subject_;
    std::optional<ListId> list_;
    PrimeStep anchor_ = 0;
    std::optional<PrimeStep> rematch_at_;
    double peak_ = 0.0;
    RunSummary summary_;
    std::vector<TrajectorySample> trajectory_;
};

}  // namespace

SubjectRun simulate_peer(const ScenarioConfig& config, std::size_t policy_index) {
    config.validate();
    return PeerDriver(config, policy_index).run();
}

SimulationResult simulate_serial(const ScenarioConfig& config) {
    config.validate();
    SimulationResult result;
    for (std::size_t i = 0; i < config.peers.size(); ++i) {
        result.runs.push_back(PeerDriver(config, i).run());
    }
    return result;
}

SimulationResult simulate_parallel(const ScenarioConfig& config) {
    config.validate();
    const auto n = static_cast<std::int64_t>(config.peers.size());
    std::vector<std::optional<SubjectRun>> slots(config.peers.size());
    std::vector<std::exception_ptr> errors(config.peers.size());
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t i = 0; i < n; ++i) {
        const auto idx = static_cast<std::size_t>(i);
        try {
            slots[idx].emplace(PeerDriver(config, idx).run());
        } catch (...) {
            errors[idx] = std::current_exception();
        }
    }
    SimulationResult result;
    for (std::size_t i = 0; i < slots.size(); ++i) {
        if (errors[i]) std::rethrow_exception(errors[i]);
        result.runs.push_back(std::move(*slots[i]));
    }
    return result;
}

void SimulationResult::write_trajectory_csv(std::ostream& os) const {
    os << trajectory_header << '\n';
    for (const auto& run : runs) {
        for (const auto& s : run.trajectory) {
            os << run.id << ',' << s.k << ',' << csv::real(s.day) << ',' << csv::real(s.raw_trust)
               << ',' << csv::real(s.fractional_trust) << '\n';
        }
    }
}

void SimulationResult::write_summary(std::ostream& os) const {
    os << "peer_id,final_trust,max_drawdown,largest_bridge_drop,largest_drop_k,bridges,"
          "primaries_missed\n";
    for (const auto& run : runs) {
        const auto& s = run.summary;
        os << run.id << ',' << csv::real(s.final_trust) << ',' << csv::real(s.max_drawdown) << ','
           << csv::real(s.largest_bridge_drop) << ',' << s.largest_drop_at << ',' << s.bridges
           << ',' << s.primaries_missed << '\n';
    }
}

}  // namespace philos
