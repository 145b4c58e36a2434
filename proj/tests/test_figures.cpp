#include <doctest.h>

#include <sstream>

#include "philos/figures.hpp"

using namespace philos;

namespace {

TraceRow row_at(const TraceTable& t, PrimeStep k) {
    for (const auto& e : t.entries) {
        if (const auto* r = std::get_if<TraceRow>(&e); r && r->k == k) return *r;
    }
    FAIL("no row for k=" << k);
    return {};
}

std::vector<TrustCalc> calcs(const TraceTable& t) {
    std::vector<TrustCalc> out;
    for (const auto& e : t.entries) {
        if (const auto* c = std::get_if<TrustCalc>(&e)) out.push_back(*c);
    }
    return out;
}

}  // namespace

TEST_CASE("perfect bridging replay") {
    const auto r = replay_figure(Figure::PerfectBridging);
    CHECK_FALSE(compare_tables(expected_table(Figure::PerfectBridging), r.table));
    const auto c = calcs(r.table);
    REQUIRE(c.size() == 2);
    CHECK(c[0].expression(48) == "T_i^- beta^{48} + 48(1)");
    CHECK(c[1].expression(48) == "T_i^- beta^{48} + 48(1)");
    // Elided middle rows follow the same pattern.
    for (PrimeStep k = 105; k <= 146; ++k) {
        CHECK(row_at(r.table, k) == TraceRow{k, 100, k - 100, k - 100});
    }
    CHECK(r.state.peer(r.subject).last_bridge == 148);
}

TEST_CASE("early and missed bridging replay") {
    const auto r = replay_figure(Figure::EarlyAndMissed);
    CHECK_FALSE(compare_tables(expected_table(Figure::EarlyAndMissed), r.table));
    const auto c = calcs(r.table);
    REQUIRE(c.size() == 3);
    CHECK(c[1].expression(48) == "T_i^- beta^{3} + 3(3/Delta)");
    CHECK(c[2].expression(48) == "T_i^- beta^{9} + 3(9/Delta)");
    CHECK(c[2].exponent == 9);
    CHECK_FALSE(row_at(r.table, 108).s_m.has_value());
}

TEST_CASE("late bridging replay") {
    const auto r = replay_figure(Figure::LateBridging);
    CHECK_FALSE(compare_tables(expected_table(Figure::LateBridging), r.table));
    const auto c = calcs(r.table);
    REQUIRE(c.size() == 2);
    CHECK(c[1].expression(48) == "T_i^- beta^{52} + 4(1)");
    CHECK(row_at(r.table, 148).s_m == 48);
    CHECK(row_at(r.table, 149).s_m == 1);
}

TEST_CASE("replayed trust values follow the calc rows") {
    const auto r = replay_figure(Figure::EarlyAndMissed);
    const auto& params = r.state.params();
    double t = 0.0;
    for (const auto& rec : r.state.log().records()) {
        if (rec.peer != r.subject || rec.kind != EventKind::Bridge) continue;
        CHECK(rec.trust_before == t);
        t = t * decay_factor(params.beta, rec.k_minus_b) +
            bridge_reward(rec.s_m, rec.k_minus_b, params.delta);
        CHECK(rec.trust_after == doctest::Approx(t).epsilon(1e-15));
    }
    CHECK(t == r.state.peer(r.subject).trust);
}

TEST_CASE("comparison reports the first differing entry") {
    auto actual = replay_figure(Figure::LateBridging).table;
    // Drop the calc row after 152.
    std::erase_if(actual.entries, [](const TraceEntry& e) {
        const auto* c = std::get_if<TrustCalc>(&e);
        return c && c->after_k == 152;
    });
    const auto m = compare_tables(expected_table(Figure::LateBridging), actual);
    REQUIRE(m);
    CHECK(m->expected.find("after k=152") != std::string::npos);

    // The perfect-bridging reference does not fit the late-bridging replay.
    CHECK(compare_tables(expected_table(Figure::PerfectBridging),
                         replay_figure(Figure::LateBridging).table));
}

TEST_CASE("replay CSV layout") {
    std::ostringstream os;
    replay_figure(Figure::EarlyAndMissed).table.write_csv(os);
    const auto text = os.str();
    CHECK(text.rfind("k,b,k_minus_b,s_m,trust_calc\n98,52,46,46,\n", 0) == 0);
    CHECK(text.find("107,103,4,--,\n") != std::string::npos);
    CHECK(text.find(",,,,T_i^- beta^{9} + 3(9/Delta)\n") != std::string::npos);
}

TEST_CASE("figure names") {
    CHECK(parse_figure("fig3") == Figure::PerfectBridging);
    CHECK(parse_figure("fig4") == Figure::EarlyAndMissed);
    CHECK(parse_figure("fig5") == Figure::LateBridging);
    CHECK_FALSE(parse_figure("fig6"));
    CHECK(figure_name(Figure::LateBridging) == "fig5");
}
