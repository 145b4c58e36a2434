#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "philos/event_log.hpp"
#include "philos/ids.hpp"
#include "philos/trust.hpp"

namespace philos {

struct PeerLedger {
    PeerId id;
    double trust = 0.0;
    PrimeStep last_bridge = 0;
    std::optional<ListId> list;  // nullopt while unmatched

    bool matched() const { return list.has_value(); }
};

struct SyncList {
    ListId id;
    std::vector<PeerId> members;
    std::int64_t s_m = 0;
    PrimeStep formed_at = 0;
    std::optional<PrimeStep> last_primary;
    bool last_event_was_bridge = false;
};

/// Peers, live sync lists, the prime-step clock and the event log.
///
/// Within one prime step the driver calls, in order: advance_clock(), then
/// primary_sync() or miss_primary() for every list formed before this step,
/// then any bridge_sync(), then formations and dissolutions. Trust is only
/// ever modified inside bridge_sync().
///
/// Single writer. Copying the object yields an independent snapshot.
class SystemState {
public:
    static constexpr std::size_t default_min_list_size = 3;

    explicit SystemState(TrustParams params, PrimeStep start_clock = 0,
                         std::size_t min_list_size = default_min_list_size);

    /// New peer with zero trust whose last bridge is the current step.
    PeerId add_peer();

    ListId form_sync_list(std::span<const PeerId> peer_ids);
    const SyncList& primary_sync(ListId id);
    void bridge_sync(ListId id);
    void miss_primary(ListId id, std::optional<PeerId> saboteur = std::nullopt);
    void request_dissolution(ListId id);

    /// Moves to the next prime step. Throws ProtocolError if a list that was
    /// due a primary in the current step neither synced nor missed.
    void advance_clock();

    PrimeStep clock() const { return clock_; }
    const TrustParams& params() const { return params_; }
    std::size_t min_list_size() const { return min_list_size_; }

    const PeerLedger& peer(PeerId id) const;
    const SyncList& list(ListId id) const;
    bool has_list(ListId id) const { return lists_.contains(id); }

    const std::vector<PeerLedger>& peers() const { return peers_; }
    const std::map<ListId, SyncList>& lists() const { return lists_; }
    const EventLog& log() const { return log_; }

    std::vector<double> trusts() const;
    double total_trust() const;

    /// Throws InvariantError describing the first violated invariant.
    void check_invariants() const;

private:
    PeerLedger& peer_mut(PeerId id);
    SyncList& list_mut(ListId id);
    void release_members(const SyncList& list);
    void log_member(EventKind kind, const SyncList& list, const PeerLedger& p,
                    std::int64_t s_m, double before, double after);

    TrustParams params_;
    std::size_t min_list_size_;
    PrimeStep clock_;
    std::vector<PeerLedger> peers_;
    std::map<ListId, SyncList> lists_;
    std::uint32_t next_list_id_ = 0;
    EventLog log_;
};

}  // namespace philos
