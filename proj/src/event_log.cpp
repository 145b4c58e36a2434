#include "philos/event_log.hpp"

#include <ostream>

#include "philos/csv.hpp"

namespace philos {

std::string_view to_string(EventKind kind) {
    switch (kind) {
        case EventKind::Join: return "join";
        case EventKind::Form: return "form";
        case EventKind::Primary: return "primary";
        case EventKind::Bridge: return "bridge";
        case EventKind::Miss: return "miss";
        case EventKind::Sabotage: return "sabotage";
        case EventKind::Dissolve: return "dissolve";
    }
    return "unknown";
}

void EventLog::write_csv(std::ostream& os) const {
    os << csv_header << '\n';
    for (const auto& r : records_) {
        os << r.k << ',' << to_string(r.kind) << ',';
        if (r.list) os << r.list->value;
        os << ',' << r.peer.value << ',' << r.b << ',' << r.k_minus_b << ',' << r.s_m << ','
           << csv::real(r.trust_before) << ',' << csv::real(r.trust_after) << '\n';
    }
}

}  // namespace philos
