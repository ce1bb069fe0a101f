// run_config.hpp
// The flat sectioned key-value configuration file driving the CLI, and its
// parser/serializer. Grammar: "[section]" headers, "key = value" pairs,
// "#" or ";" comments, blank lines ignored; list values are space separated.

#ifndef ACON_RUN_CONFIG_HPP
#define ACON_RUN_CONFIG_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "acon/dynamics.hpp"
#include "acon/init.hpp"

namespace acon {

struct RunConfig {
    // [grid]
    int dim = 2;
    std::vector<int> points{64, 64};
    std::vector<double> half_lengths{0.5, 0.5};
    /// Reserved: dealiasing of the cubic nonlinearities is not implemented;
    /// parsing accepts only "false".
    bool dealias = false;

    // [model]
    ModelParams model{};

    // [stepping]
    StepConfig stepping{};
    double horizon = 0.1;

    // [init]
    InitSpec init{};

    // [output]
    std::string log_path = "run_log.csv";
    std::string snapshot_dir = "snapshots";
    std::int64_t snapshot_every = 0;
    int precision = 17;

    PeriodicGrid make_grid() const;

    /// Canonical text form; parsing it back reproduces this configuration.
    std::string serialize() const;

    /// Throws ConfigError with "<name>:<line>: ..." positions, IoError on
    /// unreadable files.
    static RunConfig parse_string(const std::string& text,
                                  const std::string& name = "<config>");
    static RunConfig parse_file(const std::string& path);
};

} // namespace acon

#endif
