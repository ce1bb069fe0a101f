// run_log.cpp

#include "acon/run_log.hpp"

#include <cstdio>
#include <fstream>

namespace acon {

std::string format_double(double x, int precision) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*g", precision, x);
    return buf;
}

void write_run_log(const std::string& path, const Trajectory& traj,
                   int precision) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw IoError("cannot open log file '" + path + "' for writing");

    out << kRunLogHeader << "\n";
    auto num = [&](double x) { return format_double(x, precision); };
    for (std::size_t k = 0; k < traj.reports.size(); ++k) {
        const StepReport& r = traj.reports[k];
        out << (k + 1) << ',' << num(traj.times[k]) << ','
            << num(r.breakdown_after.total) << ','
            << num(r.breakdown_after.interfacial) << ','
            << num(r.breakdown_after.potential) << ','
            << num(r.breakdown_after.longrange) << ',' << num(r.lambda[0]) << ','
            << num(r.lambda[1]) << ',' << num(r.volume_residuals[0]) << ','
            << num(r.volume_residuals[1]) << ',' << num(r.increment_l2[0]) << ','
            << num(r.increment_l2[1]) << ',' << r.inner_iters << ','
            << num(r.mm_inequality_slack) << "\n";
    }
    if (!out) throw IoError("failed writing log file '" + path + "'");
}

} // namespace acon
