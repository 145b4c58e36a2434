#include "philos/figures.hpp"

#include <algorithm>
#include <map>
#include <ostream>

#include "philos/errors.hpp"

namespace philos {

std::optional<Figure> parse_figure(std::string_view name) {
    if (name == "fig3") return Figure::PerfectBridging;
    if (name == "fig4") return Figure::EarlyAndMissed;
    if (name == "fig5") return Figure::LateBridging;
    return std::nullopt;
}

std::string_view figure_name(Figure f) {
    switch (f) {
        case Figure::PerfectBridging: return "fig3";
        case Figure::EarlyAndMissed: return "fig4";
        case Figure::LateBridging: return "fig5";
    }
    return "?";
}

std::string TrustCalc::expression(std::int64_t delta) const {
    std::string out = "T_i^- beta^{" + std::to_string(exponent) + "} + " + std::to_string(s_m);
    if (clamped(delta)) {
        out += "(1)";
    } else {
        out += "(" + std::to_string(exponent) + "/Delta)";
    }
    return out;
}

std::string describe(const TraceEntry& e, std::int64_t delta) {
    if (const auto* row = std::get_if<TraceRow>(&e)) {
        return "k=" + std::to_string(row->k) + " b=" + std::to_string(row->b) +
               " k-b=" + std::to_string(row->k_minus_b) +
               " S_M=" + (row->s_m ? std::to_string(*row->s_m) : std::string("--"));
    }
    const auto& calc = std::get<TrustCalc>(e);
    return "after k=" + std::to_string(calc.after_k) + ": " + calc.expression(delta);
}

void TraceTable::write_csv(std::ostream& os) const {
    os << csv_header << '\n';
    for (const auto& e : entries) {
        if (const auto* row = std::get_if<TraceRow>(&e)) {
            os << row->k << ',' << row->b << ',' << row->k_minus_b << ','
               << (row->s_m ? std::to_string(*row->s_m) : std::string("--")) << ",\n";
        } else {
            os << ",,,," << std::get<TrustCalc>(e).expression(delta) << '\n';
        }
    }
}

TraceTable trace_table(const EventLog& log, PeerId subject, PrimeStep from, PrimeStep to,
                       std::int64_t delta) {
    std::map<PrimeStep, TraceRow> primaries;
    std::map<PrimeStep, TrustCalc> bridges;
    std::optional<PrimeStep> joined_at;

    for (const auto& r : log.records()) {
        if (r.peer != subject || r.k > to) continue;
        switch (r.kind) {
            case EventKind::Join:
                joined_at = r.k;
                break;
            case EventKind::Primary:
                primaries[r.k] = TraceRow{r.k, r.b, r.k_minus_b, r.s_m};
                break;
            case EventKind::Bridge:
                bridges[r.k] = TrustCalc{r.k, r.k_minus_b, r.s_m};
                break;
            default:
                break;
        }
    }
    if (!joined_at) {
        throw NotFoundError("peer " + std::to_string(subject.value) + " has no join record");
    }

    // Last bridge as of the end of step k.
    auto last_bridge = [&](PrimeStep k) {
        auto it = bridges.upper_bound(k);
        return it == bridges.begin() ? *joined_at : std::prev(it)->first;
    };

    TraceTable table;
    table.delta = delta;
    for (PrimeStep k = std::max(from, *joined_at); k <= to; ++k) {
        if (auto it = primaries.find(k); it != primaries.end()) {
            table.entries.emplace_back(it->second);
        } else {
            const PrimeStep b = last_bridge(k);
            table.entries.emplace_back(TraceRow{k, b, k - b, std::nullopt});
        }
        if (auto it = bridges.find(k); it != bridges.end()) {
            table.entries.emplace_back(it->second);
        }
    }
    return table;
}

FigureScript figure_script(Figure f) {
    // Each history starts right after a bridge at step 52 with every primary completed since.
    switch (f) {
        case Figure::PerfectBridging:
            return FigureScript{52, 98, 152, {100, 148}, {}, {}};
        case Figure::EarlyAndMissed:
            return FigureScript{52, 98, 113, {100, 103, 112}, {107}, {109}};
        case Figure::LateBridging:
            return FigureScript{52, 98, 154, {100, 152}, {}, {}};
    }
    throw PreconditionError("unknown figure");
}

namespace {

ListId form_with_fresh_peers(SystemState& state, PeerId subject) {
    std::vector<PeerId> members{subject};
    while (members.size() < state.min_list_size()) members.push_back(state.add_peer());
    return state.form_sync_list(members);
}

}  // namespace

ReplayResult run_script(const FigureScript& script, const TrustParams& params) {
    if (script.end < script.first_row || script.first_row <= script.start) {
        throw PreconditionError("figure script window is empty");
    }
    SystemState state(params, script.start);
    const PeerId subject = state.add_peer();
    std::optional<ListId> list = form_with_fresh_peers(state, subject);

    while (state.clock() < script.end) {
        state.advance_clock();
        const PrimeStep k = state.clock();
        if (list) {
            if (script.miss_at.contains(k)) {
                state.miss_primary(*list);
                list.reset();
            } else {
                state.primary_sync(*list);
                if (script.bridge_after.contains(k)) state.bridge_sync(*list);
            }
        }
        if (!list && script.rematch_after.contains(k)) {
            list = form_with_fresh_peers(state, subject);
        }
        state.check_invariants();
    }

    auto table = trace_table(state.log(), subject, script.first_row, script.end, params.delta);
    return ReplayResult{std::move(state), subject, std::move(table)};
}

ReplayResult replay_figure(Figure f, const TrustParams& params) {
    return run_script(figure_script(f), params);
}

namespace {

TraceRow row(PrimeStep k, PrimeStep b, PrimeStep kb, std::int64_t s_m) { return {k, b, kb, s_m}; }
TraceRow unmatched(PrimeStep k, PrimeStep b, PrimeStep kb) { return {k, b, kb, std::nullopt}; }
TrustCalc calc(PrimeStep after, PrimeStep exponent, std::int64_t s_m) {
    return {after, exponent, s_m};
}

}  // namespace

TraceTable expected_table(Figure f) {
    TraceTable t;
    t.delta = 48;
    switch (f) {
        case Figure::PerfectBridging:
            t.entries = {row(98, 52, 46, 46),   row(99, 52, 47, 47),   row(100, 52, 48, 48),
                         calc(100, 48, 48),     row(101, 100, 1, 1),   row(102, 100, 2, 2),
                         row(103, 100, 3, 3),   row(104, 100, 4, 4),   row(147, 100, 47, 47),
                         row(148, 100, 48, 48), calc(148, 48, 48),     row(149, 148, 1, 1),
                         row(150, 148, 2, 2),   row(151, 148, 3, 3),   row(152, 148, 4, 4)};
            break;
        case Figure::EarlyAndMissed:
            // While unmatched the peer keeps its last bridge (103); only k-b advances.
            t.entries = {row(98, 52, 46, 46),     row(99, 52, 47, 47),     row(100, 52, 48, 48),
                         calc(100, 48, 48),       row(101, 100, 1, 1),     row(102, 100, 2, 2),
                         row(103, 100, 3, 3),     calc(103, 3, 3),         row(104, 103, 1, 1),
                         row(105, 103, 2, 2),     row(106, 103, 3, 3),     unmatched(107, 103, 4),
                         unmatched(108, 103, 5),  unmatched(109, 103, 6),  row(110, 103, 7, 1),
                         row(111, 103, 8, 2),     row(112, 103, 9, 3),     calc(112, 9, 3),
                         row(113, 112, 1, 1)};
            break;
        case Figure::LateBridging:
            // The counter reaches delta at 148 and wraps to 1 on the following primary.
            t.entries = {row(98, 52, 46, 46),    row(99, 52, 47, 47),    row(100, 52, 48, 48),
                         calc(100, 48, 48),      row(101, 100, 1, 1),    row(102, 100, 2, 2),
                         row(103, 100, 3, 3),    row(104, 100, 4, 4),    row(147, 100, 47, 47),
                         row(148, 100, 48, 48),  row(149, 100, 49, 1),   row(150, 100, 50, 2),
                         row(151, 100, 51, 3),   row(152, 100, 52, 4),   calc(152, 52, 4),
                         row(153, 152, 1, 1),    row(154, 152, 2, 2)};
            break;
    }
    return t;
}

std::optional<TableMismatch> compare_tables(const TraceTable& expected, const TraceTable& actual) {
    std::set<PrimeStep> listed_rows;
    for (const auto& e : expected.entries) {
        if (const auto* r = std::get_if<TraceRow>(&e)) listed_rows.insert(r->k);
    }
    std::vector<TraceEntry> filtered;
    for (const auto& e : actual.entries) {
        const auto* r = std::get_if<TraceRow>(&e);
        if (!r || listed_rows.contains(r->k)) filtered.push_back(e);
    }

    const std::size_t n = std::max(expected.entries.size(), filtered.size());
    for (std::size_t i = 0; i < n; ++i) {
        const bool have_exp = i < expected.entries.size();
        const bool have_act = i < filtered.size();
        if (have_exp && have_act && expected.entries[i] == filtered[i]) continue;
        return TableMismatch{i,
                             have_exp ? describe(expected.entries[i], expected.delta) : "<none>",
                             have_act ? describe(filtered[i], actual.delta) : "<none>"};
    }
    return std::nullopt;
}

}  // namespace philos
