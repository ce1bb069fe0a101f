// run_log.hpp
// CSV trajectory log. The header is part of the stable external interface.

#ifndef ACON_RUN_LOG_HPP
#define ACON_RUN_LOG_HPP

#include <string>

#include "acon/dynamics.hpp"

namespace acon {

inline constexpr const char* kRunLogHeader =
    "step,time,energy_total,energy_interfacial,energy_potential,"
    "energy_longrange,lambda1,lambda2,volres1,volres2,inc1_l2,inc2_l2,"
    "inner_iters,mm_slack";

/// Shortest-exact decimal at the given significant digits (17 re-parses
/// to the identical double).
std::string format_double(double x, int precision = 17);

/// One row per completed step. Throws IoError when the file cannot be
/// written.
void write_run_log(const std::string& path, const Trajectory& traj,
                   int precision = 17);

} // namespace acon

#endif
