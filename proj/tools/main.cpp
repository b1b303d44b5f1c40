#include "jetgeo/action_angle.hpp"
#include "jetgeo/config.hpp"
#include "jetgeo/errors.hpp"
#include "jetgeo/flow.hpp"
#include "jetgeo/hill.hpp"
#include "jetgeo/holonomy.hpp"
#include "jetgeo/random_instances.hpp"
#include "jetgeo/report_io.hpp"

#include <CLI11.hpp>

#include <atomic>
#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

namespace {

using namespace jetgeo;

/// Exit codes are part of the public contract:
///   1 config / usage error          4 internal consistency violation
///   2 no Hill interval              5 integrator / numerics failure
///   3 critical endpoint (no smooth loop on the selected interval)
constexpr int kExitConfig = 1;
constexpr int kExitNoHill = 2;
constexpr int kExitCriticalEndpoint = 3;
constexpr int kExitInconsistent = 4;
constexpr int kExitIntegrator = 5;

struct CliOptions {
    std::string config_path;
    std::string out_path;
    std::optional<double> t_end;
    std::optional<double> tol;
    std::optional<std::uint64_t> seed;
    int count = 100;
    int jobs = 1;
    std::string kind;
};

void apply_tol(ScenarioConfig& cfg, const std::optional<double>& tol) {
    if (!tol)
        return;
    if (!(*tol > 0.0))
        throw ConfigError("--tol must be positive");
    cfg.ode_tol = *tol;
    cfg.quadrature.rel_tol = *tol;
    cfg.quadrature.abs_tol = std::min(cfg.quadrature.abs_tol, *tol * 1e-2);
}

void emit(const std::string& out_path, const std::string& content) {
    if (out_path.empty())
        std::cout << content;
    else
        write_text_file(out_path, content);
}

int run_hill(const CliOptions& opt) {
    const ScenarioConfig cfg = load_scenario(opt.config_path);
    const Polynomial f = cfg.polynomial();
    const auto intervals = hill_intervals(f);
    std::cout << "F: degree " << f.degree() << ", bound " << f.bound() << "\n";
    std::cout << intervals.size() << (intervals.size() == 1 ? " Hill interval\n" : " Hill intervals\n");
    for (std::size_t i = 0; i < intervals.size(); ++i) {
        const HillInterval& h = intervals[i];
        std::cout << "  [" << i << "] [" << format_double(h.lo) << ", " << format_double(h.hi)
                  << "]  endpoints " << to_string(h.lo_kind) << "/" << to_string(h.hi_kind)
                  << "  class " << to_string(h.geo_class) << "\n";
    }
    if (!opt.out_path.empty())
        write_text_file(opt.out_path, hill_report_json(f, intervals));
    return 0;
}

int run_certify(const CliOptions& opt) {
    ScenarioConfig cfg = load_scenario(opt.config_path);
    apply_tol(cfg, opt.tol);
    const Polynomial f = cfg.polynomial();
    const auto intervals = hill_intervals(f);
    const HillInterval& h = select_interval(intervals, cfg.interval_hint);
    const PeriodReport r = certify_interval(h, cfg.quadrature);
    std::cout << "interval [" << format_double(h.lo) << ", " << format_double(h.hi) << "] class "
              << to_string(h.geo_class) << "\n";
    std::cout << "period            " << format_double(r.period) << "\n";
    std::cout << "action            " << format_double(r.action) << "\n";
    std::cout << "lambda_min        " << format_double(r.lambda_min) << "\n";
    std::cout << "margin            " << format_double(r.margin) << "\n";
    std::cout << "gram_residual     " << format_double(r.gram_residual) << "\n";
    std::cout << "identity_residual " << format_double(r.identity_residual) << "\n";
    std::cout << "delta_theta       [";
    for (std::size_t i = 0; i < r.delta_theta.size(); ++i)
        std::cout << (i ? ", " : "") << format_double(r.delta_theta[i]);
    std::cout << "]\n";
    std::cout << "verdict           " << to_string(r.verdict) << "\n";
    if (!opt.out_path.empty())
        write_text_file(opt.out_path, period_report_json(r));
    return 0;
}

/// On-shell start state for an interval: left endpoint for a closed loop
/// (p_x = 0 there), interval midpoint otherwise (origin for line cases).
State default_start(const Polynomial& f, const HillInterval& h) {
    State s;
    s.thetas.assign(static_cast<std::size_t>(f.bound()) + 1, 0.0);
    if (h.geo_class == GeoClass::XPeriodic) {
        s.x = h.lo;
        s.px = 0.0;
    } else if (h.bounded()) {
        s.x = h.midpoint();
        s.px = level_momentum(f, s.x);
    } else {
        s.x = 0.0;
        s.px = (h.geo_class == GeoClass::HorizontalLine) ? level_momentum(f, 0.0) : 0.0;
    }
    return s;
}

int run_geodesic(const CliOptions& opt) {
    ScenarioConfig cfg = load_scenario(opt.config_path);
    apply_tol(cfg, opt.tol);
    const Polynomial f = cfg.polynomial();
    const auto intervals = hill_intervals(f);
    const HillInterval& h = select_interval(intervals, cfg.interval_hint);
    const State start = default_start(f, h);

    double t_end = opt.t_end.value_or(-1.0);
    if (!opt.t_end) {
        t_end = (h.geo_class == GeoClass::XPeriodic) ? period(h, cfg.quadrature) : 1.0;
    } else if (t_end < 0.0) {
        throw ConfigError("--t-end must be non-negative");
    }

    Trajectory traj;
    if (t_end == 0.0) {
        traj.samples.push_back(start);  // nothing to integrate; emit the start row
    } else {
        traj = integrate_geodesic(f, start, t_end, cfg.ode_tol, cfg.samples_per_period);
    }
    emit(opt.out_path, trajectory_csv(f, traj));
    std::cerr << "steps accepted " << traj.stats.accepted << ", rejected " << traj.stats.rejected
              << ", max energy drift " << format_double(traj.stats.max_energy_drift) << "\n";
    return 0;
}

int run_plot(const CliOptions& opt) {
    ScenarioConfig cfg = load_scenario(opt.config_path);
    apply_tol(cfg, opt.tol);
    const Polynomial f = cfg.polynomial();
    const auto intervals = hill_intervals(f);
    const HillInterval& h = select_interval(intervals, cfg.interval_hint);

    if (opt.kind == "phase") {
        emit(opt.out_path, svg_phase(h));
        return 0;
    }
    // projection: (x(t), theta_0(t)), two loops when the motion is periodic
    if (h.geo_class == GeoClass::EndpointCritical)
        std::cerr << "warning: critical endpoint; the projection is an open curve\n";
    const State start = default_start(f, h);
    double t_end;
    int samples = cfg.samples_per_period;
    if (opt.t_end) {
        if (!(*opt.t_end > 0.0))
            throw ConfigError("--t-end must be positive for plots");
        t_end = *opt.t_end;
    } else if (h.geo_class == GeoClass::XPeriodic) {
        t_end = 2.0 * period(h, cfg.quadrature);
        samples = 2 * cfg.samples_per_period;
    } else {
        t_end = 1.0;
    }
    const Trajectory traj = integrate_geodesic(f, start, t_end, cfg.ode_tol, samples);
    emit(opt.out_path, svg_projection(traj));
    return 0;
}

int run_sweep(const CliOptions& opt) {
    ScenarioConfig cfg;  // defaults; sweep works without a scenario file
    cfg.k = 8;
    if (!opt.config_path.empty()) {
        cfg = load_scenario(opt.config_path);
        if (cfg.k < 1)
            throw ConfigError("sweep needs k >= 1 as the maximum degree");
    }
    apply_tol(cfg, opt.tol);
    const std::uint64_t seed = opt.seed.value_or(cfg.seed);
    const int count = opt.count;

    // Draw serially so the stream consumption is independent of --jobs.
    InstanceRng rng(seed);
    std::vector<Polynomial> drawn;
    drawn.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i)
        drawn.push_back(random_instance(rng, cfg.k));

    enum class Kind { Skipped, Kept, Failed };
    struct Result {
        Kind kind = Kind::Skipped;
        SweepRow row;
        std::string error;
    };
    std::vector<Result> results(static_cast<std::size_t>(count));

    const auto work = [&](int i) {
        Result& res = results[static_cast<std::size_t>(i)];
        const Polynomial& f = drawn[static_cast<std::size_t>(i)];
        try {
            const auto intervals = hill_intervals(f);
            const HillInterval* loop = nullptr;
            for (const auto& h : intervals) {
                if (h.geo_class == GeoClass::XPeriodic) {
                    loop = &h;
                    break;
                }
            }
            if (!loop)
                return;  // attempted but not kept
            const PeriodReport r = certify_interval(*loop, cfg.quadrature);
            res.row = SweepRow{i,
                               f.degree(),
                               r.period,
                               r.action,
                               r.lambda_min,
                               r.identity_residual,
                               to_string(r.verdict)};
            res.kind = Kind::Kept;
        } catch (const NoHillIntervalError&) {
            // attempted but not kept
        } catch (const std::exception& e) {
            res.kind = Kind::Failed;
            res.error = e.what();
        }
    };

    const int jobs = std::max(1, opt.jobs);
    if (jobs == 1 || count <= 1) {
        for (int i = 0; i < count; ++i)
            work(i);
    } else {
        std::atomic<int> next{0};
        std::vector<std::thread> pool;
        const int n_threads = std::min(jobs, count);
        pool.reserve(static_cast<std::size_t>(n_threads));
        for (int t = 0; t < n_threads; ++t) {
            pool.emplace_back([&] {
                for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1))
                    work(i);
            });
        }
        for (auto& th : pool)
            th.join();
    }

    std::vector<SweepRow> rows;
    int failures = 0;
    for (const Result& res : results) {
        if (res.kind == Kind::Kept) {
            rows.push_back(res.row);
        } else if (res.kind == Kind::Failed) {
            ++failures;
            std::cerr << "instance " << (&res - results.data()) << " failed: " << res.error
                      << "\n";
        }
    }

    for (const SweepRow& row : rows) {
        std::cout << "instance " << row.index << ": degree " << row.degree << "  period "
                  << format_double(row.period) << "  action " << format_double(row.action)
                  << "  lambda_min " << format_double(row.lambda_min) << "  identity_residual "
                  << format_double(row.identity_residual) << "  " << row.verdict << "\n";
    }
    std::cout << "kept " << rows.size() << " of " << count << " attempts, " << failures
              << " failures\n";
    if (!rows.empty()) {
        double min_lambda = rows.front().lambda_min;
        double max_residual = rows.front().identity_residual;
        for (const SweepRow& row : rows) {
            min_lambda = std::min(min_lambda, row.lambda_min);
            max_residual = std::max(max_residual, row.identity_residual);
        }
        std::cout << "min lambda_min        " << format_double(min_lambda) << "\n";
        std::cout << "max identity_residual " << format_double(max_residual) << "\n";
    }
    if (!opt.out_path.empty())
        write_text_file(opt.out_path, sweep_report_json(seed, count, rows, failures));
    return failures == 0 ? 0 : kExitInconsistent;
}

int dispatch(const CLI::App& app, const CliOptions& opt) {
    if (app.got_subcommand("hill"))
        return run_hill(opt);
    if (app.got_subcommand("certify"))
        return run_certify(opt);
    if (app.got_subcommand("geodesic"))
        return run_geodesic(opt);
    if (app.got_subcommand("sweep"))
        return run_sweep(opt);
    if (app.got_subcommand("plot"))
        return run_plot(opt);
    return kExitConfig;  // unreachable: require_subcommand(1)
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Hill intervals, holonomy certificates, and geodesic traces for jet space"};
    app.require_subcommand(1);
    CliOptions opt;

    double t_end_raw = 0.0;
    double tol_raw = 0.0;
    std::uint64_t seed_raw = 0;

    auto* hill = app.add_subcommand("hill", "enumerate Hill intervals and their classes");
    auto* certify = app.add_subcommand("certify", "certificate for the selected interval");
    auto* geodesic = app.add_subcommand("geodesic", "integrate one geodesic, write CSV samples");
    auto* sweep = app.add_subcommand("sweep", "certify random instances, summarize");
    auto* plot = app.add_subcommand("plot", "SVG phase loop or fiber projection");

    for (auto* cmd : {hill, certify, geodesic, plot})
        cmd->add_option("--config", opt.config_path, "scenario JSON file")->required();
    sweep->add_option("--config", opt.config_path,
                      "optional scenario file (k = maximum degree, seed, tolerances)");
    for (auto* cmd : {hill, certify, geodesic, sweep, plot})
        cmd->add_option("--out", opt.out_path, "write the report/CSV/SVG here");
    for (auto* cmd : {certify, geodesic, sweep, plot})
        cmd->add_option("--tol", tol_raw, "override ode_tol and the quadrature rel_tol");
    for (auto* cmd : {geodesic, plot})
        cmd->add_option("--t-end", t_end_raw, "integration end time");
    sweep->add_option("--count", opt.count, "instances to attempt")->check(CLI::NonNegativeNumber);
    sweep->add_option("--seed", seed_raw, "random seed (overrides the scenario seed)");
    sweep->add_option("--jobs", opt.jobs, "worker threads")->check(CLI::PositiveNumber);
    plot->add_option("--kind", opt.kind, "phase | projection")
        ->required()
        ->check(CLI::IsMember({"phase", "projection"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfig;
    }

    for (auto* cmd : {certify, geodesic, sweep, plot}) {
        if (cmd->count("--tol"))
            opt.tol = tol_raw;
    }
    for (auto* cmd : {geodesic, plot}) {
        if (cmd->count("--t-end"))
            opt.t_end = t_end_raw;
    }
    if (sweep->count("--seed"))
        opt.seed = seed_raw;

    try {
        return dispatch(app, opt);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const NoHillIntervalError& e) {
        std::cerr << "no Hill interval: " << e.what() << "\n";
        return kExitNoHill;
    } catch (const CriticalEndpointError& e) {
        std::cerr << "critical endpoint: " << e.what() << "\n";
        return kExitCriticalEndpoint;
    } catch (const UnboundedIntervalError& e) {
        std::cerr << "unbounded interval: " << e.what() << "\n";
        return kExitCriticalEndpoint;
    } catch (const InconsistentComputationError& e) {
        std::cerr << "inconsistency: " << e.what() << "\n";
        return kExitInconsistent;
    } catch (const PerturbationLeavesClassError& e) {
        std::cerr << "inconsistency: " << e.what() << "\n";
        return kExitInconsistent;
    } catch (const BadInitialEnergyError& e) {
        std::cerr << "integrator: " << e.what() << "\n";
        return kExitIntegrator;
    } catch (const StepSizeUnderflowError& e) {
        std::cerr << "integrator: " << e.what() << "\n";
        return kExitIntegrator;
    } catch (const NoConvergenceError& e) {
        std::cerr << "integrator: " << e.what() << "\n";
        return kExitIntegrator;
    } catch (const OutsideHillError& e) {
        std::cerr << "integrator: " << e.what() << "\n";
        return kExitIntegrator;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInconsistent;
    }
}
