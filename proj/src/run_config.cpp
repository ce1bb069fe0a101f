// run_config.cpp
// Sectioned key-value config parser and canonical serializer.

#include "acon/run_config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "acon/run_log.hpp"

namespace acon {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

struct Cursor {
    const std::string& name;
    int line;

    [[noreturn]] void fail(const std::string& msg) const {
        throw ConfigError(name + ":" + std::to_string(line) + ": " + msg);
    }

    double number(const std::string& v) const {
        try {
            std::size_t used = 0;
            const double x = std::stod(v, &used);
            if (used != v.size()) fail("trailing characters after number '" + v + "'");
            if (!std::isfinite(x)) fail("number '" + v + "' is not finite");
            return x;
        } catch (const ConfigError&) {
            throw;
        } catch (...) {
            fail("expected a number, got '" + v + "'");
        }
    }

    long long integer(const std::string& v) const {
        try {
            std::size_t used = 0;
            const long long x = std::stoll(v, &used);
            if (used != v.size()) fail("trailing characters after integer '" + v + "'");
            return x;
        } catch (const ConfigError&) {
            throw;
        } catch (...) {
            fail("expected an integer, got '" + v + "'");
        }
    }

    std::uint64_t unsigned64(const std::string& v) const {
        try {
            std::size_t used = 0;
            const unsigned long long x = std::stoull(v, &used);
            if (used != v.size() || v[0] == '-')
                fail("expected an unsigned integer, got '" + v + "'");
            return x;
        } catch (const ConfigError&) {
            throw;
        } catch (...) {
            fail("expected an unsigned integer, got '" + v + "'");
        }
    }

    bool boolean(const std::string& v) const {
        if (v == "true" || v == "1") return true;
        if (v == "false" || v == "0") return false;
        fail("expected true or false, got '" + v + "'");
    }

    template <class T>
    std::vector<T> list(const std::string& v, T (Cursor::*one)(const std::string&) const) const {
        std::vector<T> out;
        std::istringstream in(v);
        std::string tok;
        while (in >> tok) out.push_back((this->*one)(tok));
        if (out.empty()) fail("expected a space-separated list");
        return out;
    }
};

} // namespace

PeriodicGrid RunConfig::make_grid() const {
    return PeriodicGrid(points, half_lengths);
}

std::string RunConfig::serialize() const {
    std::ostringstream out;
    auto num = [](double x) { return format_double(x, 17); };

    out << "[grid]\n";
    out << "dim = " << dim << "\n";
    out << "points =";
    for (int n : points) out << " " << n;
    out << "\nhalf_lengths =";
    for (double x : half_lengths) out << " " << num(x);
    out << "\ndealias = " << (dealias ? "true" : "false") << "\n\n";

    out << "[model]\n";
    out << "epsilon = " << num(model.epsilon) << "\n";
    out << "gamma11 = " << num(model.gamma[0][0]) << "\n";
    out << "gamma12 = " << num(model.gamma[0][1]) << "\n";
    out << "gamma22 = " << num(model.gamma[1][1]) << "\n";
    out << "omega1 = " << num(model.omega[0]) << "\n";
    out << "omega2 = " << num(model.omega[1]) << "\n";
    out << "penalty_m = " << num(model.penalty_m) << "\n\n";

    out << "[stepping]\n";
    out << "scheme = " << scheme_name(stepping.scheme) << "\n";
    out << "tau = " << num(stepping.tau) << "\n";
    out << "horizon = " << num(horizon) << "\n";
    out << "project_each_step = " << (stepping.project_each_step ? "true" : "false")
        << "\n";
    out << "inner_tol_grad = " << num(stepping.inner_tol_grad) << "\n";
    out << "inner_tol_constraint = " << num(stepping.inner_tol_constraint) << "\n";
    out << "inner_max_iters = " << stepping.inner_max_iters << "\n";
    out << "beta_min = " << num(stepping.guard.beta_min) << "\n\n";

    out << "[init]\n";
    out << "kind = " << init_kind_name(init.kind) << "\n";
    out << "seed = " << init.seed << "\n";
    out << "amplitude = " << num(init.amplitude) << "\n";
    out << "base1 = " << num(init.base_levels[0]) << "\n";
    out << "base2 = " << num(init.base_levels[1]) << "\n";
    out << "stripe_count = " << init.stripe_count << "\n";
    out << "spot_count = " << init.spot_count << "\n";
    out << "spot_radius = " << num(init.spot_radius) << "\n\n";

    out << "[output]\n";
    out << "log_path = " << log_path << "\n";
    out << "snapshot_dir = " << snapshot_dir << "\n";
    out << "snapshot_every = " << snapshot_every << "\n";
    out << "precision = " << precision << "\n";
    return out.str();
}

RunConfig RunConfig::parse_string(const std::string& text, const std::string& name) {
    RunConfig cfg;
    std::istringstream in(text);
    std::string raw;
    std::string section;
    Cursor cur{name, 0};
    int grid_line = 0, model_line = 0, step_line = 0, init_line = 0;

    while (std::getline(in, raw)) {
        ++cur.line;
        std::string line = trim(raw);
        if (line.empty() || line[0] == '#' || line[0] == ';') continue;

        if (line.front() == '[') {
            if (line.back() != ']') cur.fail("unterminated section header");
            section = trim(line.substr(1, line.size() - 2));
            if (section != "grid" && section != "model" && section != "stepping" &&
                section != "init" && section != "output")
                cur.fail("unknown section [" + section + "]");
            if (section == "grid") grid_line = cur.line;
            if (section == "model") model_line = cur.line;
            if (section == "stepping") step_line = cur.line;
            if (section == "init") init_line = cur.line;
            continue;
        }

        const auto eq = line.find('=');
        if (eq == std::string::npos) cur.fail("expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (section.empty()) cur.fail("key '" + key + "' outside any section");
        if (value.empty()) cur.fail("missing value for '" + key + "'");

        if (section == "grid") {
            if (key == "dim") {
                cfg.dim = static_cast<int>(cur.integer(value));
                if (cfg.dim != 2 && cfg.dim != 3) cur.fail("dim must be 2 or 3");
            } else if (key == "points") {
                const auto xs = cur.list<long long>(value, &Cursor::integer);
                cfg.points.assign(xs.begin(), xs.end());
                for (int n : cfg.points)
                    if (n < 4) cur.fail("points per axis must be >= 4");
            } else if (key == "half_lengths") {
                cfg.half_lengths = cur.list<double>(value, &Cursor::number);
                for (double x : cfg.half_lengths)
                    if (!(x > 0.0)) cur.fail("half-lengths must be positive");
            } else if (key == "dealias") {
                cfg.dealias = cur.boolean(value);
                if (cfg.dealias)
                    cur.fail("dealias = true is reserved and not implemented");
            } else {
                cur.fail("unknown key '" + key + "' in [grid]");
            }
        } else if (section == "model") {
            if (key == "epsilon") {
                cfg.model.epsilon = cur.number(value);
                if (!(cfg.model.epsilon > 0.0)) cur.fail("epsilon must be positive");
            } else if (key == "gamma11") {
                cfg.model.gamma[0][0] = cur.number(value);
                model_line = cur.line;
            } else if (key == "gamma12") {
                cfg.model.gamma[0][1] = cfg.model.gamma[1][0] = cur.number(value);
                model_line = cur.line;
            } else if (key == "gamma22") {
                cfg.model.gamma[1][1] = cur.number(value);
                model_line = cur.line;
            } else if (key == "omega1" || key == "omega2") {
                const double w = cur.number(value);
                if (w == 0.0 || w == 1.0)
                    cur.fail("omega must differ from 0 and 1 (no species may fill "
                             "the box)");
                cfg.model.omega[key == "omega1" ? 0 : 1] = w;
            } else if (key == "penalty_m") {
                cfg.model.penalty_m = cur.number(value);
                if (!(cfg.model.penalty_m > 0.0))
                    cur.fail("penalty_m must be positive");
            } else {
                cur.fail("unknown key '" + key + "' in [model]");
            }
        } else if (section == "stepping") {
            if (key == "scheme") {
                try {
                    cfg.stepping.scheme = scheme_from_name(value);
                } catch (const ConfigError& e) {
                    cur.fail(e.what());
                }
            } else if (key == "tau") {
                cfg.stepping.tau = cur.number(value);
                if (!(cfg.stepping.tau > 0.0)) cur.fail("tau must be positive");
            } else if (key == "horizon") {
                cfg.horizon = cur.number(value);
                if (!(cfg.horizon > 0.0)) cur.fail("horizon must be positive");
            } else if (key == "project_each_step") {
                cfg.stepping.project_each_step = cur.boolean(value);
            } else if (key == "inner_tol_grad") {
                cfg.stepping.inner_tol_grad = cur.number(value);
            } else if (key == "inner_tol_constraint") {
                cfg.stepping.inner_tol_constraint = cur.number(value);
            } else if (key == "inner_max_iters") {
                cfg.stepping.inner_max_iters = static_cast<int>(cur.integer(value));
            } else if (key == "beta_min") {
                cfg.stepping.guard.beta_min = cur.number(value);
            } else {
                cur.fail("unknown key '" + key + "' in [stepping]");
            }
        } else if (section == "init") {
            if (key == "kind") {
                try {
                    cfg.init.kind = init_kind_from_name(value);
                } catch (const ConfigError& e) {
                    cur.fail(e.what());
                }
            } else if (key == "seed") {
                cfg.init.seed = cur.unsigned64(value);
            } else if (key == "amplitude") {
                cfg.init.amplitude = cur.number(value);
            } else if (key == "base1") {
                cfg.init.base_levels[0] = cur.number(value);
            } else if (key == "base2") {
                cfg.init.base_levels[1] = cur.number(value);
            } else if (key == "stripe_count") {
                cfg.init.stripe_count = static_cast<int>(cur.integer(value));
            } else if (key == "spot_count") {
                cfg.init.spot_count = static_cast<int>(cur.integer(value));
            } else if (key == "spot_radius") {
                cfg.init.spot_radius = cur.number(value);
            } else {
                cur.fail("unknown key '" + key + "' in [init]");
            }
        } else { // output
            if (key == "log_path") {
                cfg.log_path = value;
            } else if (key == "snapshot_dir") {
                cfg.snapshot_dir = value;
            } else if (key == "snapshot_every") {
                cfg.snapshot_every = cur.integer(value);
                if (cfg.snapshot_every < 0)
                    cur.fail("snapshot_every must be >= 0");
            } else if (key == "precision") {
                cfg.precision = static_cast<int>(cur.integer(value));
                if (cfg.precision < 1 || cfg.precision > 17)
                    cur.fail("precision must be in [1, 17]");
            } else {
                cur.fail("unknown key '" + key + "' in [output]");
            }
        }
    }

    // Cross-key validation, attributed to the owning section.
    auto fail_at = [&](int line, const std::string& msg) {
        throw ConfigError(name + ":" + std::to_string(line > 0 ? line : 1) + ": " + msg);
    };
    if (static_cast<int>(cfg.points.size()) != cfg.dim ||
        static_cast<int>(cfg.half_lengths.size()) != cfg.dim)
        fail_at(grid_line, "points and half_lengths must list one entry per axis "
                           "(dim = " + std::to_string(cfg.dim) + ")");
    try {
        cfg.model.validate();
    } catch (const ConfigError& e) {
        fail_at(model_line, e.what());
    }
    try {
        cfg.stepping.validate();
    } catch (const ConfigError& e) {
        fail_at(step_line, e.what());
    }
    try {
        cfg.init.validate();
    } catch (const ConfigError& e) {
        fail_at(init_line, e.what());
    }
    return cfg;
}

RunConfig RunConfig::parse_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_string(buf.str(), path);
}

} // namespace acon
