#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string_view>
#include <vector>

#include "philos/ids.hpp"
#include "philos/trust.hpp"

namespace philos {

enum class EventKind {
    Join,      // peer created, trust 0
    Form,      // sync list formed, s_m = 0
    Primary,   // successful primary sync
    Bridge,    // bridge sync, trust updated
    Miss,      // missed primary, list disbanded
    Sabotage,  // Miss row for the member the miss is attributed to
    Dissolve,  // requested dissolution after a bridge
};

std::string_view to_string(EventKind kind);

/// One row per affected peer. For Bridge rows `b` and `k_minus_b` are the
/// values fed to the trust update (before `b` moves to k) and `s_m` is the
/// credited count. For Miss rows `s_m` is the discarded pending count.
struct EventRecord {
    PrimeStep k = 0;
    EventKind kind = EventKind::Join;
    std::optional<ListId> list;
    PeerId peer;
    PrimeStep b = 0;
    PrimeStep k_minus_b = 0;
    std::int64_t s_m = 0;
    double trust_before = 0.0;
    double trust_after = 0.0;
};

class EventLog {
public:
    void append(const EventRecord& r) { records_.push_back(r); }

    const std::vector<EventRecord>& records() const { return records_; }
    std::size_t size() const { return records_.size(); }
    bool empty() const { return records_.empty(); }

    static constexpr std::string_view csv_header =
        "k,event,list_id,peer_id,b,k_minus_b,s_m,trust_before,trust_after";

    void write_csv(std::ostream& os) const;

private:
    std::vector<EventRecord> records_;
};

}  // namespace philos
