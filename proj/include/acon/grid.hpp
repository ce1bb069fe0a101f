// grid.hpp
// Uniform periodic lattices and real scalar fields sampled on them.

#ifndef ACON_GRID_HPP
#define ACON_GRID_HPP

#include <cstdint>
#include <vector>

#include "acon/errors.hpp"

namespace acon {

/// Uniform lattice on the periodic box prod_i [-X_i, X_i], 2D or 3D.
/// Node j along axis i sits at -X_i + j * (2 X_i / n_i).
class PeriodicGrid {
public:
    PeriodicGrid(std::vector<int> points_per_axis,
                 std::vector<double> box_half_lengths);

    int dim() const { return static_cast<int>(points_.size()); }
    const std::vector<int>& points_per_axis() const { return points_; }
    const std::vector<double>& box_half_lengths() const { return half_lengths_; }
    std::int64_t node_count() const { return nodes_; }
    double cell_volume() const { return cell_volume_; }
    double total_volume() const { return total_volume_; }

    double spacing(int axis) const {
        return 2.0 * half_lengths_[axis] / points_[axis];
    }
    double coordinate(int axis, int index) const {
        return -half_lengths_[axis] + spacing(axis) * index;
    }

    bool same_layout(const PeriodicGrid& other) const {
        return points_ == other.points_ && half_lengths_ == other.half_lengths_;
    }
    bool operator==(const PeriodicGrid& other) const { return same_layout(other); }

private:
    std::vector<int> points_;
    std::vector<double> half_lengths_;
    std::int64_t nodes_ = 0;
    double cell_volume_ = 0.0;
    double total_volume_ = 0.0;
};

/// Real-valued samples of a scalar field, one per grid node, row-major
/// (last axis fastest).
class ScalarField {
public:
    ScalarField(PeriodicGrid grid, double fill_value = 0.0)
        : grid_(std::move(grid)),
          values_(static_cast<std::size_t>(grid_.node_count()), fill_value) {}

    ScalarField(PeriodicGrid grid, std::vector<double> values)
        : grid_(std::move(grid)), values_(std::move(values)) {
        if (values_.size() != static_cast<std::size_t>(grid_.node_count()))
            throw ConfigError("ScalarField: value count does not match grid");
    }

    const PeriodicGrid& grid() const { return grid_; }
    std::size_t size() const { return values_.size(); }

    double operator[](std::size_t i) const { return values_[i]; }
    double& operator[](std::size_t i) { return values_[i]; }

    const std::vector<double>& values() const { return values_; }
    std::vector<double>& values() { return values_; }
    const double* data() const { return values_.data(); }
    double* data() { return values_.data(); }

private:
    PeriodicGrid grid_;
    std::vector<double> values_;
};

/// True when every entry is finite.
bool all_finite(const ScalarField& f);

/// Max |f| over all nodes.
double max_abs(const ScalarField& f);

/// Compensated (Neumaier) sum of a raw array.
double compensated_sum(const double* x, std::size_t n);

} // namespace acon

#endif
