// grid.cpp

#include "acon/grid.hpp"

#include <cmath>
#include <cstdlib>

namespace acon {

PeriodicGrid::PeriodicGrid(std::vector<int> points_per_axis,
                           std::vector<double> box_half_lengths)
    : points_(std::move(points_per_axis)), half_lengths_(std::move(box_half_lengths)) {
    const int d = static_cast<int>(points_.size());
    if (d != 2 && d != 3)
        throw ConfigError("PeriodicGrid: dimension must be 2 or 3, got " +
                          std::to_string(d));
    if (half_lengths_.size() != points_.size())
        throw ConfigError("PeriodicGrid: need one half-length per axis");

    nodes_ = 1;
    cell_volume_ = 1.0;
    total_volume_ = 1.0;
    for (int a = 0; a < d; ++a) {
        if (points_[a] < 4)
            throw ConfigError("PeriodicGrid: need at least 4 points per axis");
        if (!(half_lengths_[a] > 0.0) || !std::isfinite(half_lengths_[a]))
            throw ConfigError("PeriodicGrid: box half-lengths must be positive");
        nodes_ *= points_[a];
        cell_volume_ *= 2.0 * half_lengths_[a] / points_[a];
        total_volume_ *= 2.0 * half_lengths_[a];
    }
    // cell * node_count must reproduce the box volume.
    if (std::abs(cell_volume_ * static_cast<double>(nodes_) - total_volume_) >
        1e-12 * total_volume_)
        throw ConfigError("PeriodicGrid: inconsistent cell volume");
}

bool all_finite(const ScalarField& f) {
    for (double v : f.values())
        if (!std::isfinite(v)) return false;
    return true;
}

double max_abs(const ScalarField& f) {
    double m = 0.0;
    for (double v : f.values()) m = std::max(m, std::abs(v));
    return m;
}

double compensated_sum(const double* x, std::size_t n) {
    double sum = 0.0;
    double comp = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double t = sum + x[i];
        if (std::abs(sum) >= std::abs(x[i]))
            comp += (sum - t) + x[i];
        else
            comp += (x[i] - t) + sum;
        sum = t;
    }
    return sum + comp;
}

} // namespace acon
