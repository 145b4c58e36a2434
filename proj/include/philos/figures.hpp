#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "philos/event_log.hpp"
#include "philos/state_machine.hpp"

namespace philos {

enum class Figure { PerfectBridging, EarlyAndMissed, LateBridging };

/// "fig3" | "fig4" | "fig5".
std::optional<Figure> parse_figure(std::string_view name);
std::string_view figure_name(Figure f);

/// Per-step view of one peer after the step's primary: last bridge, steps
/// since it, and the list counter (nullopt while unmatched).
struct TraceRow {
    PrimeStep k = 0;
    PrimeStep b = 0;
    PrimeStep k_minus_b = 0;
    std::optional<std::int64_t> s_m;

    friend bool operator==(const TraceRow&, const TraceRow&) = default;
};

/// Symbolic form of a bridge's trust update: T^- beta^exponent + s_m * min(1, exponent/delta).
struct TrustCalc {
    PrimeStep after_k = 0;
    PrimeStep exponent = 0;
    std::int64_t s_m = 0;

    bool clamped(std::int64_t delta) const { return exponent >= delta; }
    std::string expression(std::int64_t delta) const;

    friend bool operator==(const TrustCalc&, const TrustCalc&) = default;
};

using TraceEntry = std::variant<TraceRow, TrustCalc>;

struct TraceTable {
    std::int64_t delta = 48;
    std::vector<TraceEntry> entries;

    static constexpr std::string_view csv_header = "k,b,k_minus_b,s_m,trust_calc";
    void write_csv(std::ostream& os) const;
};

std::string describe(const TraceEntry& e, std::int64_t delta);

/// Rebuilds the step-by-step table for `subject` over [from, to] from the
/// event log alone.
TraceTable trace_table(const EventLog& log, PeerId subject, PrimeStep from, PrimeStep to,
                       std::int64_t delta);

/// A scripted single-list history: the list forms at `start` right after a
/// bridge, syncs every step, bridges after the listed steps, misses the
/// listed primaries, and re-forms with fresh peers at the end of the listed
/// steps.
struct FigureScript {
    PrimeStep start = 0;
    PrimeStep first_row = 0;
    PrimeStep end = 0;
    std::set<PrimeStep> bridge_after;
    std::set<PrimeStep> miss_at;
    std::set<PrimeStep> rematch_after;
};

FigureScript figure_script(Figure f);

struct ReplayResult {
    SystemState state;
    PeerId subject;
    TraceTable table;
};

ReplayResult run_script(const FigureScript& script, const TrustParams& params);
ReplayResult replay_figure(Figure f, const TrustParams& params = TrustParams::reference());

/// Reference rows of each figure. Elided stretches are absent.
TraceTable expected_table(Figure f);

struct TableMismatch {
    std::size_t index = 0;
    std::string expected;
    std::string actual;
};

/// Compares `actual` against the reference: every reference row must match
/// the replayed row with the same k, and the bridge calculations must match
/// one for one.
std::optional<TableMismatch> compare_tables(const TraceTable& expected, const TraceTable& actual);

}  // namespace philos
