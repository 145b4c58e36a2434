#include "philos/state_machine.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <string>

#include "philos/errors.hpp"

namespace philos {

namespace {

std::string list_name(ListId id) { return "list " + std::to_string(id.value); }
std::string peer_name(PeerId id) { return "peer " + std::to_string(id.value); }

}  // namespace

SystemState::SystemState(TrustParams params, PrimeStep start_clock, std::size_t min_list_size)
    : params_(params), min_list_size_(min_list_size), clock_(start_clock) {
    params_.validate();
    if (start_clock < 0) {
        throw PreconditionError("clock cannot start before step 0");
    }
    if (min_list_size_ < 2) {
        throw PreconditionError("minimum sync list size must be at least 2");
    }
}

PeerId SystemState::add_peer() {
    const PeerId id{static_cast<std::uint32_t>(peers_.size())};
    peers_.push_back(PeerLedger{id, 0.0, clock_, std::nullopt});
    log_.append(EventRecord{clock_, EventKind::Join, std::nullopt, id, clock_, 0, 0, 0.0, 0.0});
    return id;
}

const PeerLedger& SystemState::peer(PeerId id) const {
    if (id.value >= peers_.size()) throw NotFoundError("unknown " + peer_name(id));
    return peers_[id.value];
}

PeerLedger& SystemState::peer_mut(PeerId id) {
    if (id.value >= peers_.size()) throw NotFoundError("unknown " + peer_name(id));
    return peers_[id.value];
}

const SyncList& SystemState::list(ListId id) const {
    auto it = lists_.find(id);
    if (it == lists_.end()) throw NotFoundError("unknown " + list_name(id));
    return it->second;
}

SyncList& SystemState::list_mut(ListId id) {
    auto it = lists_.find(id);
    if (it == lists_.end()) throw NotFoundError("unknown " + list_name(id));
    return it->second;
}

void SystemState::log_member(EventKind kind, const SyncList& list, const PeerLedger& p,
                             std::int64_t s_m, double before, double after) {
    log_.append(EventRecord{clock_, kind, list.id, p.id, p.last_bridge, clock_ - p.last_bridge,
                            s_m, before, after});
}

ListId SystemState::form_sync_list(std::span<const PeerId> peer_ids) {
    std::set<PeerId> unique(peer_ids.begin(), peer_ids.end());
    if (unique.size() != peer_ids.size()) {
        throw ConflictError("a peer appears twice in the same sync list");
    }
    if (peer_ids.size() < min_list_size_) {
        throw SizeError("sync list needs at least " + std::to_string(min_list_size_) +
                        " peers, got " + std::to_string(peer_ids.size()));
    }
    for (PeerId id : peer_ids) {
        const auto& p = peer(id);
        if (p.matched()) {
            throw ConflictError(peer_name(id) + " already belongs to " + list_name(*p.list));
        }
    }

    SyncList list;
    list.id = ListId{next_list_id_++};
    list.members.assign(peer_ids.begin(), peer_ids.end());
    list.formed_at = clock_;
    for (PeerId id : peer_ids) {
        auto& p = peer_mut(id);
        p.list = list.id;
        log_member(EventKind::Form, list, p, 0, p.trust, p.trust);
    }
    const ListId id = list.id;
    lists_.emplace(id, std::move(list));
    return id;
}

const SyncList& SystemState::primary_sync(ListId id) {
    auto& list = list_mut(id);
    if (list.formed_at >= clock_) {
        throw ProtocolError(list_name(id) + " formed at step " + std::to_string(list.formed_at) +
                            " has no primary due before step " +
                            std::to_string(list.formed_at + 1));
    }
    if (list.last_primary == clock_) {
        throw ProtocolError(list_name(id) + " already synced at step " + std::to_string(clock_));
    }
    list.s_m = (list.s_m % params_.delta) + 1;
    list.last_primary = clock_;
    list.last_event_was_bridge = false;
    for (PeerId pid : list.members) {
        const auto& p = peer(pid);
        log_member(EventKind::Primary, list, p, list.s_m, p.trust, p.trust);
    }
    return list;
}

void SystemState::bridge_sync(ListId id) {
    auto& list = list_mut(id);
    if (list.s_m < 1) {
        throw ProtocolError(list_name(id) + " has no successful primaries to bridge");
    }
    if (list.last_primary != clock_) {
        throw ProtocolError(list_name(id) + " must complete the primary of step " +
                            std::to_string(clock_) + " before bridging");
    }
    for (PeerId pid : list.members) {
        auto& p = peer_mut(pid);
        const double before = p.trust;
        const double after =
            update_trust(before, BridgeObservation{clock_, p.last_bridge, list.s_m}, params_);
        p.trust = after;
        log_member(EventKind::Bridge, list, p, list.s_m, before, after);
        p.last_bridge = clock_;
    }
    list.s_m = 0;
    list.last_event_was_bridge = true;
}

void SystemState::release_members(const SyncList& list) {
    for (PeerId pid : list.members) peer_mut(pid).list.reset();
}

void SystemState::miss_primary(ListId id, std::optional<PeerId> saboteur) {
    const auto& target = list(id);
    if (target.formed_at >= clock_) {
        throw ProtocolError(list_name(id) + " has no primary due at step " +
                            std::to_string(clock_));
    }
    if (target.last_primary == clock_) {
        throw ProtocolError(list_name(id) + " already synced at step " + std::to_string(clock_));
    }
    if (saboteur && std::find(target.members.begin(), target.members.end(), *saboteur) ==
                        target.members.end()) {
        throw ConflictError(peer_name(*saboteur) + " is not a member of " + list_name(id));
    }
    for (PeerId pid : target.members) {
        const auto& p = peer(pid);
        const auto kind = (saboteur == pid) ? EventKind::Sabotage : EventKind::Miss;
        log_member(kind, target, p, target.s_m, p.trust, p.trust);
    }
    release_members(target);
    lists_.erase(id);
}

void SystemState::request_dissolution(ListId id) {
    const auto& target = list(id);
    if (!target.last_event_was_bridge) {
        throw ProtocolError(list_name(id) + " may only dissolve right after a bridge");
    }
    for (PeerId pid : target.members) {
        const auto& p = peer(pid);
        log_member(EventKind::Dissolve, target, p, target.s_m, p.trust, p.trust);
    }
    release_members(target);
    lists_.erase(id);
}

void SystemState::advance_clock() {
    for (const auto& [id, list] : lists_) {
        if (list.formed_at < clock_ && list.last_primary != clock_) {
            throw ProtocolError(list_name(id) + " skipped the primary of step " +
                                std::to_string(clock_) + " without recording a miss");
        }
    }
    ++clock_;
}

std::vector<double> SystemState::trusts() const {
    std::vector<double> out;
    out.reserve(peers_.size());
    for (const auto& p : peers_) out.push_back(p.trust);
    return out;
}

double SystemState::total_trust() const {
    return std::accumulate(peers_.begin(), peers_.end(), 0.0,
                           [](double acc, const PeerLedger& p) { return acc + p.trust; });
}

void SystemState::check_invariants() const {
    const double ceiling = equilibrium_trust(params_) * (1.0 + 1e-12);
    for (const auto& p : peers_) {
        if (p.trust < 0.0 || p.trust > ceiling) {
            throw InvariantError(peer_name(p.id) + " trust " + std::to_string(p.trust) +
                                 " outside [0, T*]");
        }
        if (p.last_bridge > clock_) {
            throw InvariantError(peer_name(p.id) + " last bridge is in the future");
        }
        if (p.list) {
            auto it = lists_.find(*p.list);
            if (it == lists_.end() ||
                std::find(it->second.members.begin(), it->second.members.end(), p.id) ==
                    it->second.members.end()) {
                throw InvariantError(peer_name(p.id) + " points at a list that does not hold it");
            }
        }
    }
    std::set<PeerId> seen;
    for (const auto& [id, list] : lists_) {
        if (list.s_m < 0 || list.s_m > params_.delta) {
            throw InvariantError(list_name(id) + " counter outside [0, delta]");
        }
        for (PeerId pid : list.members) {
            if (!seen.insert(pid).second) {
                throw InvariantError(peer_name(pid) + " belongs to two lists");
            }
            if (peer(pid).list != id) {
                throw InvariantError(peer_name(pid) + " not marked as member of " + list_name(id));
            }
        }
    }
}

}  // namespace philos
