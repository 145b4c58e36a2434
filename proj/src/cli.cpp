#include "philos/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>

#include "philos/csv.hpp"
#include "philos/engine.hpp"
#include "philos/errors.hpp"
#include "philos/figures.hpp"
#include "philos/incentive.hpp"
#include "philos/scenario_config.hpp"
#include "philos/sweep.hpp"
#include "philos/trust.hpp"

namespace philos::cli {

std::string default_output_dir() {
    const char* env = std::getenv("PHILOS_OUT_DIR");
    return (env && *env) ? env : ".";
}

namespace {

std::string fixed(double v, int decimals) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
    return buf;
}

struct ParamOverrides {
    std::optional<double> beta;
    std::optional<std::int64_t> delta;
    std::optional<double> prime_minutes;

    void add_to(CLI::App& app) {
        app.add_option("--beta", beta, "Decay base (default 0.9999111696)");
        app.add_option("--delta", delta, "Max bridge interval in prime steps (default 48)");
        app.add_option("--prime-min", prime_minutes, "Prime step length K in minutes (default 10)");
    }

    TrustParams resolve() const {
        TrustParams p = TrustParams::reference();
        if (beta) p.beta = *beta;
        if (delta) p.delta = *delta;
        if (prime_minutes) p.prime_step_minutes = *prime_minutes;
        p.validate();
        return p;
    }
};

// ---- params ---------------------------------------------------------------

struct ParamsCmd {
    double months = 6.0;
    double pct = 90.0;
    double prime_minutes = 10.0;
    std::int64_t delta = 48;

    int run(std::ostream& out, std::ostream& err) const {
        double beta = 0.0;
        try {
            beta = calibrate_beta(months, pct / 100.0, prime_minutes);
        } catch (const DomainError& e) {
            err << "error: " << e.what() << "\n"
                << "hint: --pct is a percentage strictly between 0 and 100, --months and "
                   "--prime-min must be positive\n";
            return exit_usage;
        }
        TrustParams p{beta, delta, prime_minutes};
        try {
            p.validate();
        } catch (const PreconditionError& e) {
            err << "error: " << e.what() << "\n";
            return exit_usage;
        }
        const double beta_delta = decay_factor(beta, delta);
        const double steps = months * 30.0 * 24.0 * 60.0 / prime_minutes;
        out << "beta = " << fixed(beta, 10) << "\n"
            << "T* = " << csv::real(equilibrium_trust(p)) << "\n"
            << "beta^delta = " << csv::real(beta_delta) << "\n"
            << "delta = " << delta << " prime steps (" << csv::real(delta * prime_minutes / 60.0)
            << " h)\n"
            << "prime steps to reach " << csv::real(pct) << "% of T* = " << csv::real(steps)
            << "\n"
            << "perfect bridges to reach " << csv::real(pct) << "% of T* = "
            << csv::real(steps / static_cast<double>(delta)) << "\n";
        return exit_ok;
    }
};

// ---- replay ---------------------------------------------------------------

struct ReplayCmd {
    std::string figure;
    std::string out_path;
    std::string events_path;
    std::optional<double> beta;

    int run(std::ostream& out, std::ostream& err) const {
        const auto fig = parse_figure(figure);
        if (!fig) {
            err << "error: unknown figure '" << figure << "' (expected fig3, fig4 or fig5)\n";
            return exit_usage;
        }
        TrustParams params = TrustParams::reference();
        if (beta) params.beta = *beta;
        try {
            params.validate();
        } catch (const PreconditionError& e) {
            err << "error: " << e.what() << "\n";
            return exit_usage;
        }

        const auto replay = replay_figure(*fig, params);
        if (out_path.empty()) {
            replay.table.write_csv(out);
        } else {
            std::ofstream f(out_path);
            if (!f) {
                err << "error: cannot write " << out_path << "\n";
                return exit_failed;
            }
            replay.table.write_csv(f);
        }
        if (!events_path.empty()) {
            std::ofstream f(events_path);
            if (!f) {
                err << "error: cannot write " << events_path << "\n";
                return exit_failed;
            }
            replay.state.log().write_csv(f);
        }

        if (auto mismatch = compare_tables(expected_table(*fig), replay.table)) {
            err << figure_name(*fig) << ": mismatch at entry " << mismatch->index
                << ": expected " << mismatch->expected << ", got " << mismatch->actual << "\n";
            return exit_failed;
        }
        err << figure_name(*fig) << ": all rows match\n";
        return exit_ok;
    }
};

// ---- simulate -------------------------------------------------------------

struct SimulateCmd {
    std::string config_path;
    std::string out_dir;
    bool serial = false;

    int run(std::ostream& out, std::ostream& err) const {
        ScenarioConfig config;
        try {
            config = load_scenario(config_path);
        } catch (const ConfigError& e) {
            err << "config error: " << e.what() << "\n";
            return exit_usage;
        }

        SimulationResult result;
        try {
            result = serial ? simulate_serial(config) : simulate_parallel(config);
        } catch (const InvariantError& e) {
            err << "simulation aborted: " << e.what() << "\n";
            return exit_failed;
        }

        const std::filesystem::path dir = out_dir.empty() ? default_output_dir() : out_dir;
        std::error_code ec;
        std::filesystem::create_directories(dir, ec);
        if (ec) {
            err << "error: cannot create " << dir.string() << ": " << ec.message() << "\n";
            return exit_failed;
        }
        auto open = [&](const std::filesystem::path& p) {
            std::ofstream f(p);
            if (!f) throw std::runtime_error("cannot write " + p.string());
            return f;
        };
        try {
            auto traj = open(dir / "trajectory.csv");
            result.write_trajectory_csv(traj);
            auto summary = open(dir / "summary.csv");
            result.write_summary(summary);
            for (const auto& run : result.runs) {
                auto events = open(dir / ("events_" + run.id + ".csv"));
                run.final_state.log().write_csv(events);
            }
        } catch (const std::runtime_error& e) {
            err << "error: " << e.what() << "\n";
            return exit_failed;
        }
        result.write_summary(out);
        return exit_ok;
    }
};

// ---- incentive ------------------------------------------------------------

struct IncentiveCmd {
    std::optional<std::uint64_t> random;
    std::uint64_t seed = 7;
    std::uint64_t boundary = 0;
    std::string report_path;
    bool bound = false;
    std::optional<double> total_trust;
    std::optional<std::int64_t> peers;
    std::optional<double> avg_trust;
    std::optional<std::uint64_t> systems;
    ParamOverrides overrides;

    int run(std::ostream& out, std::ostream& err) const {
        if (!random && !bound && !systems) {
            err << "error: nothing to do; give --random N, --bound or --systems N\n";
            return exit_usage;
        }
        if (random && *random < 1) {
            err << "error: --random needs at least one scenario\n";
            return exit_usage;
        }
        if (systems && *systems < 1) {
            err << "error: --systems needs at least one system\n";
            return exit_usage;
        }
        if (random && boundary > *random) {
            err << "error: --boundary cannot exceed --random\n";
            return exit_usage;
        }
        TrustParams params;
        try {
            params = overrides.resolve();
        } catch (const PreconditionError& e) {
            err << "error: " << e.what() << "\n";
            return exit_usage;
        }

        bool ok = true;
        if (bound) {
            if (!total_trust && !(peers && avg_trust)) {
                err << "error: --bound needs --total-trust L and/or --peers N --avg-trust T\n";
                return exit_usage;
            }
            try {
                if (total_trust) {
                    out << "safe list size for total trust " << csv::real(*total_trust)
                        << ": " << max_safe_list_size(*total_trust, params) << "\n";
                }
                if (peers && avg_trust) {
                    out << "safe list size for " << *peers << " peers at average trust "
                        << csv::real(*avg_trust) << ": "
                        << max_safe_list_size_avg(*peers, *avg_trust, params) << "\n";
                }
            } catch (const PreconditionError& e) {
                err << "error: " << e.what() << "\n";
                return exit_usage;
            }
        }
        if (random) {
            const auto reports = sweep::incentive_reports_parallel(*random, seed, params, boundary);
            if (!report_path.empty()) {
                std::ofstream f(report_path);
                if (!f) {
                    err << "error: cannot write " << report_path << "\n";
                    return exit_failed;
                }
                write_report(f, reports, params);
            }
            const auto s = sweep::summarize(reports);
            out << s.agreements << "/" << s.checked << " agree, " << s.counterexamples
                << " counterexamples (" << s.boundary_cases << " boundary, "
                << s.honest_predicted << " honest predicted)\n";
            if (s.counterexamples != 0) {
                err << "first counterexample: scenario " << *s.first_counterexample << "\n";
                ok = false;
            }
        }
        if (systems) {
            const auto results = sweep::list_bound_parallel(*systems, seed, params);
            std::size_t profitable = 0, checks = 0, witnesses = 0;
            for (const auto& r : results) {
                profitable += r.profitable + r.disagreements;
                checks += r.member_checks;
                if (r.witness_profitable) ++witnesses;
            }
            out << "list size bound: " << results.size() << " systems, " << checks
                << " member checks, " << profitable << " profitable deviations, " << witnesses
                << "/" << results.size() << " witnesses above the bound\n";
            ok = ok && profitable == 0 && witnesses == results.size();
        }
        return ok ? exit_ok : exit_failed;
    }

    void write_report(std::ostream& os, const std::vector<IncentiveReport>& reports,
                      const TrustParams& params) const {
        os << "# seed " << seed << ", " << reports.size() << " scenarios, first " << boundary
           << " constructed on the boundary\n";
        for (std::size_t i = 0; i < reports.size(); ++i) {
            const auto s = sweep::sweep_scenario(seed, i, params, boundary);
            const auto& r = reports[i];
            os << "scenario=" << i << " list_size=" << s.list_size() << " s_m=" << s.s_m
               << " target_trust=" << csv::real(s.target_trust())
               << " rest_of_list=" << csv::real(s.rest_of_list())
               << " outside=" << csv::real(s.outside_trust)
               << " honest=" << csv::real(r.honest_utility)
               << " sabotage=" << csv::real(r.sabotage_utility)
               << " scaled_fraction=" << csv::real(r.scaled_fraction)
               << " predicted=" << (r.predicted_honest ? "honest" : "sabotage")
               << " agree=" << (r.agree ? "yes" : "no") << "\n";
        }
    }
};

// ---- verify ---------------------------------------------------------------

int run_verify(std::ostream& out) {
    int failures = 0;
    auto line = [&](bool pass, const std::string& what) {
        out << (pass ? "PASS " : "FAIL ") << what << "\n";
        if (!pass) ++failures;
    };

    const double b6 = calibrate_beta(6, 0.9, 10);
    const double b12 = calibrate_beta(12, 0.9, 10);
    line(std::fabs(b6 - 0.9999111696) <= 1e-9 && std::fabs(b12 - 0.9999555838) <= 1e-9,
         "calibration beta(6 months)=" + fixed(b6, 10) + " beta(12 months)=" + fixed(b12, 10));

    for (Figure f : {Figure::PerfectBridging, Figure::EarlyAndMissed, Figure::LateBridging}) {
        const auto mismatch = compare_tables(expected_table(f), replay_figure(f).table);
        line(!mismatch, std::string("replay ") + std::string(figure_name(f)));
    }

    const auto params = TrustParams::reference();
    const double t_star = equilibrium_trust(params);
    const double fixed_point =
        update_trust(t_star, BridgeObservation{params.delta, 0, params.delta}, params);
    line(std::fabs(fixed_point - t_star) <= 1e-12 * t_star, "equilibrium is a fixed point");

    const auto s = sweep::summarize(sweep::incentive_reports_parallel(1000, 7, params, 10));
    line(s.counterexamples == 0, "sabotage condition " + std::to_string(s.agreements) + "/" +
                                     std::to_string(s.checked) + " agree");

    const auto systems = sweep::list_bound_parallel(20, 7, params);
    bool sound = true;
    for (const auto& r : systems) sound = sound && r.profitable == 0 && r.witness_profitable;
    line(sound, "list size bound sound on 20 random systems");

    return failures == 0 ? exit_ok : exit_failed;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Trust update, sync-list state machine and sabotage-incentive toolkit", "philos"};
    app.require_subcommand(1);

    ParamsCmd params_cmd;
    auto* params = app.add_subcommand("params", "Calibrate beta and print derived constants");
    params->add_option("--months", params_cmd.months, "Months to reach P of T*")->capture_default_str();
    params->add_option("--pct", params_cmd.pct, "P as a percentage")->capture_default_str();
    params->add_option("--prime-min", params_cmd.prime_minutes, "Prime step length in minutes")
        ->capture_default_str();
    params->add_option("--delta", params_cmd.delta, "Max bridge interval")->capture_default_str();

    ReplayCmd replay_cmd;
    auto* replay = app.add_subcommand("replay", "Replay a worked bridging example as CSV");
    replay->add_option("figure", replay_cmd.figure, "fig3 | fig4 | fig5")->required();
    replay->add_option("--out,-o", replay_cmd.out_path, "CSV path (default stdout)");
    replay->add_option("--events", replay_cmd.events_path, "Also write the event log CSV");
    replay->add_option("--beta", replay_cmd.beta, "Decay base");

    SimulateCmd sim_cmd;
    auto* simulate = app.add_subcommand("simulate", "Run a scenario config");
    simulate->add_option("config", sim_cmd.config_path, "Scenario file")->required();
    simulate->add_option("--out-dir,-o", sim_cmd.out_dir,
                         "Output directory (default $PHILOS_OUT_DIR or .)");
    simulate->add_flag("--serial", sim_cmd.serial, "Run policies one after another");

    IncentiveCmd inc_cmd;
    auto* incentive = app.add_subcommand("incentive", "Sabotage-incentive checks and list size bounds");
    incentive->add_option("--random", inc_cmd.random, "Number of random scenarios to check");
    incentive->add_option("--seed", inc_cmd.seed, "Sweep seed")->capture_default_str();
    incentive->add_option("--boundary", inc_cmd.boundary,
                          "How many of the scenarios sit exactly on |M| * fraction = 1");
    incentive->add_option("--report", inc_cmd.report_path, "Per-scenario report file");
    incentive->add_flag("--bound", inc_cmd.bound, "Print safe list size bounds");
    incentive->add_option("--total-trust", inc_cmd.total_trust, "Total system trust L");
    incentive->add_option("--peers", inc_cmd.peers, "Number of peers |N|");
    incentive->add_option("--avg-trust", inc_cmd.avg_trust, "Average raw trust");
    incentive->add_option("--systems", inc_cmd.systems,
                          "Check the size bound on N random systems");
    inc_cmd.overrides.add_to(*incentive);

    auto* verify = app.add_subcommand("verify", "Run the built-in self checks");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n" << "run 'philos --help' for usage\n";
        return exit_usage;
    }

    if (params->parsed()) return params_cmd.run(out, err);
    if (replay->parsed()) return replay_cmd.run(out, err);
    if (simulate->parsed()) return sim_cmd.run(out, err);
    if (incentive->parsed()) return inc_cmd.run(out, err);
    if (verify->parsed()) return run_verify(out);
    return exit_usage;
}

}  // namespace philos::cli
