// acon_main.cpp
// Batch front door: run simulations from config files, self-check the
// discretization on the configured problem, and compare schemes from
// identical initial data.

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "acon/constraint.hpp"
#include "acon/diagnostics.hpp"
#include "acon/dynamics.hpp"
#include "acon/init.hpp"
#include "acon/rng.hpp"
#include "acon/run_config.hpp"
#include "acon/run_log.hpp"
#include "acon/snapshot.hpp"
#include "acon/spectral.hpp"

namespace fs = std::filesystem;
using namespace acon;

namespace {

// Stable exit codes, one per error family; messages carry the error name.
enum ExitCode : int {
    kOk = 0,
    kCheckFailed = 1,
    kConfigError = 2,
    kIoError = 3,
    kDegenerateConstraint = 4,
    kProjectionFailed = 5,
    kInnerSolveFailed = 6,
    kBlowUp = 7,
    kUnreachableTarget = 8,
    kConfigMismatch = 9,
};

struct Options {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    bool quiet = false;
};

std::string with_output_dir(const std::string& path) {
    const char* base = std::getenv("ACON_OUTPUT_DIR");
    if (!base || !*base) return path;
    fs::path p(path);
    if (p.is_absolute()) return path;
    return (fs::path(base) / p).string();
}

void ensure_parent_dir(const std::string& path) {
    const fs::path parent = fs::path(path).parent_path();
    if (parent.empty()) return;
    std::error_code ec;
    fs::create_directories(parent, ec);
    if (ec) throw IoError("cannot create output directory '" + parent.string() +
                          "': " + ec.message());
}

RunConfig load_config(const Options& opt) {
    RunConfig cfg = RunConfig::parse_file(opt.config_path);
    if (opt.seed) cfg.init.seed = *opt.seed;
    return cfg;
}

int cmd_run(const Options& opt) {
    RunConfig cfg = load_config(opt);
    PeriodicGrid grid = cfg.make_grid();
    PhaseState state = generate(cfg.init, grid, cfg.model);

    Trajectory traj = run(state, cfg.stepping, cfg.horizon, cfg.snapshot_every);

    const std::string log_path = with_output_dir(cfg.log_path);
    ensure_parent_dir(log_path);
    write_run_log(log_path, traj, cfg.precision);

    if (cfg.snapshot_every > 0 && !traj.snapshots.empty()) {
        const fs::path dir = with_output_dir(cfg.snapshot_dir);
        std::error_code ec;
        fs::create_directories(dir, ec);
        if (ec) throw IoError("cannot create snapshot directory '" +
                              dir.string() + "': " + ec.message());
        for (const auto& [step_index, snap] : traj.snapshots) {
            char name[32];
            std::snprintf(name, sizeof(name), "snapshot_%08lld.acon",
                          static_cast<long long>(step_index));
            write_snapshot((dir / name).string(), snap);
        }
    }

    if (!opt.quiet) {
        const DiagnosticsReport d = summarize(traj);
        std::cout << "steps: " << traj.reports.size() << "\n";
        if (!traj.reports.empty()) {
            std::cout << "energy: "
                      << format_double(traj.reports.front().energy_before, 10)
                      << " -> "
                      << format_double(traj.reports.back().energy_after, 10)
                      << "\n";
        }
        std::cout << "max volume residual: "
                  << format_double(d.max_volume_residual, 3) << "\n"
                  << "dissipation audit: "
                  << format_double(dissipation_audit(traj), 3) << "\n"
                  << "log: " << log_path << "\n";
    }
    return kOk;
}

struct CheckRow {
    std::string name;
    double lhs = 0.0;
    double rhs = 0.0;
    bool pass = false;
    bool skipped = false;
    std::string note;
};

int cmd_check(const Options& opt, bool corrupt_gradient) {
    RunConfig cfg = load_config(opt);

    // Desk-size replica of the configured problem.
    std::vector<int> points = cfg.points;
    for (int& n : points) n = std::min(n, 16);
    PeriodicGrid grid(points, cfg.half_lengths);
    PhaseState state = generate(cfg.init, grid, cfg.model);

    std::vector<CheckRow> rows;
    Xoshiro256PlusPlus rng(cfg.init.seed ^ 0x9e3779b97f4a7c15ULL);

    // Variational derivative against central differences of the energy.
    {
        auto vd = variational_derivatives(state);
        if (corrupt_gradient)
            for (double& v : vd[0].values()) v += 1e-3; // test hook
        const double h = 1e-5;
        double worst = 0.0;
        for (int trial = 0; trial < 5; ++trial) {
            ScalarField v1(grid), v2(grid);
            for (double& v : v1.values()) v = rng.uniform(-1.0, 1.0);
            for (double& v : v2.values()) v = rng.uniform(-1.0, 1.0);
            PhaseState plus = state, minus = state;
            for (std::size_t i = 0; i < v1.size(); ++i) {
                plus.phi1[i] += h * v1[i];
                plus.phi2[i] += h * v2[i];
                minus.phi1[i] -= h * v1[i];
                minus.phi2[i] -= h * v2[i];
            }
            const double fd =
                (energy(plus).total - energy(minus).total) / (2.0 * h);
            const double pairing = inner(vd[0], v1) + inner(vd[1], v2);
            worst = std::max(worst, std::abs(pairing - fd) /
                                        (1.0 + std::abs(pairing)));
        }
        rows.push_back({"gradient_vs_fd", worst, 1e-5, worst <= 1e-5, false, ""});
    }

    // Green-function pairing identity.
    {
        ScalarField w(grid);
        for (double& v : w.values()) v = rng.uniform(-1.0, 1.0);
        auto [lhs, rhs] = check_hls_identity(w);
        const double rel = std::abs(lhs - rhs) / std::max(1e-300, std::abs(rhs));
        rows.push_back({"hls_identity", lhs, rhs, rel <= 1e-10, false, ""});
    }

    // Normalized H1 bound, when the configuration admits it.
    {
        CheckRow row;
        row.name = "h1_bound";
        try {
            const H1BoundCheck c = check_h1_bound(state);
            row.lhs = c.lhs;
            row.rhs = c.rhs;
            row.pass = c.ok;
        } catch (const ConfigMismatch&) {
            row.skipped = true;
            row.note = "skipped (ConfigMismatch: needs epsilon = 1, |box| = 1)";
        }
        rows.push_back(row);
    }

    // Constraint projection drives the residual to tolerance.
    {
        ScalarField f(grid);
        for (double& v : f.values())
            v = indicator_inverse(cfg.model.omega[0]) + 0.1 * rng.uniform(-1.0, 1.0);
        ScalarField proj = project_constraint(f, cfg.model.omega[0],
                                              cfg.stepping.guard);
        const double res = std::abs(volume_residual(proj, cfg.model.omega[0]));
        rows.push_back({"projection_residual", res, 1e-12, res <= 1e-12, false, ""});
    }

    bool all_pass = true;
    if (!opt.quiet)
        std::cout << "check                 lhs             rhs             result\n";
    for (const CheckRow& r : rows) {
        if (!r.skipped) all_pass = all_pass && r.pass;
        if (opt.quiet) continue;
        std::cout << r.name;
        for (std::size_t i = r.name.size(); i < 22; ++i) std::cout << ' ';
        if (r.skipped) {
            std::cout << r.note << "\n";
            continue;
        }
        std::string lhs = format_double(r.lhs, 6), rhs = format_double(r.rhs, 6);
        std::cout << lhs;
        for (std::size_t i = lhs.size(); i < 16; ++i) std::cout << ' ';
        std::cout << rhs;
        for (std::size_t i = rhs.size(); i < 16; ++i) std::cout << ' ';
        std::cout << (r.pass ? "pass" : "FAIL") << "\n";
    }
    return all_pass ? kOk : kCheckFailed;
}

int cmd_compare(const Options& opt, const std::vector<std::string>& scheme_names) {
    RunConfig cfg = load_config(opt);
    if (scheme_names.size() < 2)
        throw ConfigError("compare needs at least two scheme names");

    std::vector<StepConfig> cfgs;
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < scheme_names.size(); ++i) {
        StepConfig sc = cfg.stepping;
        sc.scheme = scheme_from_name(scheme_names[i]);
        cfgs.push_back(sc);
        labels.push_back(scheme_names[i] + std::to_string(i + 1));
        if (sc.scheme == Scheme::Penalty &&
            sc.tau * cfg.model.penalty_m > 1.0 && !opt.quiet)
            std::cerr << "warning: tau * M = " << sc.tau * cfg.model.penalty_m
                      << " exceeds the soft stability limit 1 for the penalty "
                         "scheme\n";
    }

    PeriodicGrid grid = cfg.make_grid();
    const PhaseState initial = generate(cfg.init, grid, cfg.model);
    std::vector<PhaseState> states(scheme_names.size(), initial);

    const std::string path = with_output_dir(cfg.log_path);
    ensure_parent_dir(path);
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw IoError("cannot open comparison log '" + path + "'");
    out << "step,time";
    for (const auto& label : labels)
        out << ",energy_" << label << ",maxvolres_" << label;
    for (std::size_t a = 0; a < labels.size(); ++a)
        for (std::size_t b = a + 1; b < labels.size(); ++b)
            out << ",dist_" << labels[a] << "_" << labels[b];
    out << "\n";

    auto distance = [](const PhaseState& x, const PhaseState& y) {
        double sq = 0.0;
        for (int i = 0; i < 2; ++i) {
            ScalarField d = x.phase(i);
            for (std::size_t n = 0; n < d.size(); ++n) d[n] -= y.phase(i)[n];
            sq += l2_norm_sq(d);
        }
        return std::sqrt(sq);
    };

    const auto steps = static_cast<std::int64_t>(
        std::floor(cfg.horizon / cfg.stepping.tau + 1e-9));
    std::vector<double> final_dist;
    for (std::int64_t k = 0; k < steps; ++k) {
        out << (k + 1) << ','
            << format_double(static_cast<double>(k + 1) * cfg.stepping.tau,
                             cfg.precision);
        for (std::size_t s = 0; s < states.size(); ++s) {
            try {
                auto [next, rep] = step(states[s], cfgs[s]);
                states[s] = std::move(next);
                out << ',' << format_double(rep.energy_after, cfg.precision) << ','
                    << format_double(std::max(std::abs(rep.volume_residuals[0]),
                                              std::abs(rep.volume_residuals[1])),
                                     cfg.precision);
            } catch (const Error& e) {
                throw std::runtime_error(labels[s] + " failed at step " +
                                         std::to_string(k + 1) + ": " + e.what());
            }
        }
        final_dist.clear();
        for (std::size_t a = 0; a < states.size(); ++a)
            for (std::size_t b = a + 1; b < states.size(); ++b) {
                const double d = distance(states[a], states[b]);
                final_dist.push_back(d);
                out << ',' << format_double(d, cfg.precision);
            }
        out << "\n";
    }
    if (!out) throw IoError("failed writing comparison log '" + path + "'");

    if (!opt.quiet) {
        std::size_t idx = 0;
        for (std::size_t a = 0; a < states.size(); ++a)
            for (std::size_t b = a + 1; b < states.size(); ++b, ++idx)
                std::cout << "terminal distance " << labels[a] << " vs "
                          << labels[b] << ": "
                          << format_double(
                                 final_dist.empty() ? 0.0 : final_dist[idx], 6)
                          << "\n";
        std::cout << "log: " << path << "\n";
    }
    return kOk;
}

int dispatch(int argc, char** argv) {
    CLI::App app{"Ternary constrained phase-field simulator"};
    app.require_subcommand(1);

    Options run_opt, check_opt, compare_opt;
    bool corrupt_gradient = false;
    std::vector<std::string> compare_schemes;

    CLI::App* c_run = app.add_subcommand("run", "Run a simulation from a config");
    c_run->add_option("--config", run_opt.config_path, "Config file path")
        ->required();
    c_run->add_option("--seed", run_opt.seed, "Override the init seed");
    c_run->add_flag("--quiet", run_opt.quiet, "Suppress the summary");

    CLI::App* c_check = app.add_subcommand(
        "check", "Run the discretization self-checks on the configured problem");
    c_check->add_option("--config", check_opt.config_path, "Config file path")
        ->required();
    c_check->add_option("--seed", check_opt.seed, "Override the init seed");
    c_check->add_flag("--quiet", check_opt.quiet, "Suppress the table");
    c_check->add_flag("--corrupt-gradient", corrupt_gradient)->group("");

    CLI::App* c_compare = app.add_subcommand(
        "compare", "Run several schemes from identical initial data");
    c_compare->add_option("--config", compare_opt.config_path, "Config file path")
        ->required();
    c_compare->add_option("--seed", compare_opt.seed, "Override the init seed");
    c_compare->add_flag("--quiet", compare_opt.quiet, "Suppress the summary");
    c_compare
        ->add_option("schemes", compare_schemes,
                     "Scheme names (multiplier, penalty, mm); at least two")
        ->expected(-2);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    if (c_run->parsed()) return cmd_run(run_opt);
    if (c_check->parsed()) return cmd_check(check_opt, corrupt_gradient);
    return cmd_compare(compare_opt, compare_schemes);
}

} // namespace

int main(int argc, char** argv) {
    try {
        return dispatch(argc, argv);
    } catch (const ConfigMismatch& e) {
        std::cerr << "error (ConfigMismatch): " << e.what() << "\n";
        return kConfigMismatch;
    } catch (const UnreachableTarget& e) {
        std::cerr << "error (UnreachableTarget): " << e.what() << "\n";
        return kUnreachableTarget;
    } catch (const BlowUp& e) {
        std::cerr << "error (BlowUp): " << e.what() << "\n";
        return kBlowUp;
    } catch (const InnerSolveFailed& e) {
        std::cerr << "error (InnerSolveFailed): " << e.what() << "\n";
        return kInnerSolveFailed;
    } catch (const ProjectionFailed& e) {
        std::cerr << "error (ProjectionFailed): " << e.what() << "\n";
        return kProjectionFailed;
    } catch (const DegenerateConstraint& e) {
        std::cerr << "error (DegenerateConstraint): " << e.what() << "\n";
        return kDegenerateConstraint;
    } catch (const IoError& e) {
        std::cerr << "error (IoError): " << e.what() << "\n";
        return kIoError;
    } catch (const ConfigError& e) {
        std::cerr << "error (ConfigError): " << e.what() << "\n";
        return kConfigError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kCheckFailed;
    }
}
