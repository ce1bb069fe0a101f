// module.cpp
// Python bindings for the simulator core: grids/fields with numpy interop,
// the energy and its derivatives, constraint machinery, the three steppers,
// initial data, diagnostics, and snapshot/config I/O.

#include <pybind11/pybind11.h>
#include <pybind11/numpy.h>
#include <pybind11/stl.h>

#include "acon/constraint.hpp"
#include "acon/diagnostics.hpp"
#include "acon/dynamics.hpp"
#include "acon/init.hpp"
#include "acon/run_config.hpp"
#include "acon/run_log.hpp"
#include "acon/snapshot.hpp"
#include "acon/spectral.hpp"

namespace py = pybind11;
using namespace acon;

namespace {

std::vector<py::ssize_t> grid_shape(const PeriodicGrid& g) {
    std::vector<py::ssize_t> shape;
    for (int n : g.points_per_axis()) shape.push_back(n);
    return shape;
}

ScalarField field_from_array(
    const PeriodicGrid& grid,
    const py::array_t<double, py::array::c_style | py::array::forcecast>& arr) {
    if (arr.size() != grid.node_count())
        throw ConfigError("array size does not match the grid node count");
    std::vector<double> values(arr.data(), arr.data() + arr.size());
    return ScalarField(grid, std::move(values));
}

py::array_t<double> field_to_numpy(const ScalarField& f) {
    py::array_t<double> out(grid_shape(f.grid()));
    std::memcpy(out.mutable_data(), f.data(), f.size() * sizeof(double));
    return out;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Pseudo-spectral simulator for the constrained ternary "
              "phase-field system";

    py::register_exception<ConfigError>(m, "ConfigError");
    py::register_exception<IoError>(m, "IoError");
    py::register_exception<ConfigMismatch>(m, "ConfigMismatch");
    py::register_exception<DegenerateConstraint>(m, "DegenerateConstraint");
    py::register_exception<ProjectionFailed>(m, "ProjectionFailed");
    py::register_exception<UnreachableTarget>(m, "UnreachableTarget");
    py::register_exception<InnerSolveFailed>(m, "InnerSolveFailed");
    py::register_exception<BlowUp>(m, "BlowUp");

    py::class_<PeriodicGrid>(m, "PeriodicGrid")
        .def(py::init<std::vector<int>, std::vector<double>>(),
             py::arg("points_per_axis"), py::arg("box_half_lengths"))
        .def_property_readonly("dim", &PeriodicGrid::dim)
        .def_property_readonly("points_per_axis", &PeriodicGrid::points_per_axis)
        .def_property_readonly("box_half_lengths",
                               &PeriodicGrid::box_half_lengths)
        .def_property_readonly("node_count", &PeriodicGrid::node_count)
        .def_property_readonly("cell_volume", &PeriodicGrid::cell_volume)
        .def_property_readonly("total_volume", &PeriodicGrid::total_volume)
        .def("spacing", &PeriodicGrid::spacing, py::arg("axis"))
        .def("coordinate", &PeriodicGrid::coordinate, py::arg("axis"),
             py::arg("index"))
        .def("__eq__", &PeriodicGrid::operator==)
        .def("__repr__", [](const PeriodicGrid& g) {
            std::string s = "PeriodicGrid(points=[";
            for (int n : g.points_per_axis()) s += std::to_string(n) + ",";
            s += "])";
            return s;
        });

    py::class_<ScalarField>(m, "ScalarField", py::buffer_protocol())
        .def(py::init<PeriodicGrid, double>(), py::arg("grid"),
             py::arg("fill_value") = 0.0)
        .def_static("from_array", &field_from_array, py::arg("grid"),
                    py::arg("values"))
        .def_buffer([](ScalarField& f) {
            const auto shape = grid_shape(f.grid());
            std::vector<py::ssize_t> strides(shape.size());
            py::ssize_t s = static_cast<py::ssize_t>(sizeof(double));
            for (std::size_t a = shape.size(); a-- > 0;) {
                strides[a] = s;
                s *= shape[a];
            }
            return py::buffer_info(f.data(), sizeof(double),
                                   py::format_descriptor<double>::format(),
                                   static_cast<py::ssize_t>(shape.size()),
                                   shape, strides);
        })
        .def("to_numpy", &field_to_numpy)
        .def_property_readonly("grid", &ScalarField::grid)
        .def("__len__", &ScalarField::size);

    py::class_<ModelParams>(m, "ModelParams")
        .def(py::init<>())
        .def_readwrite("epsilon", &ModelParams::epsilon)
        .def_readwrite("omega", &ModelParams::omega)
        .def_readwrite("penalty_m", &ModelParams::penalty_m)
        .def_property(
            "gamma",
            [](const ModelParams& p) { return p.gamma; },
            [](ModelParams& p, std::array<std::array<double, 2>, 2> g) {
                p.gamma = g;
            })
        .def("validate", &ModelParams::validate);

    py::class_<EnergyBreakdown>(m, "EnergyBreakdown")
        .def_readonly("interfacial", &EnergyBreakdown::interfacial)
        .def_readonly("potential", &EnergyBreakdown::potential)
        .def_readonly("longrange", &EnergyBreakdown::longrange)
        .def_readonly("total", &EnergyBreakdown::total)
        .def("__repr__", [](const EnergyBreakdown& e) {
            return "EnergyBreakdown(total=" + format_double(e.total, 10) + ")";
        });

    py::class_<PhaseState>(m, "PhaseState")
        .def(py::init<ScalarField, ScalarField, ModelParams>(), py::arg("phi1"),
             py::arg("phi2"), py::arg("params"))
        .def_readwrite("phi1", &PhaseState::phi1)
        .def_readwrite("phi2", &PhaseState::phi2)
        .def_readwrite("params", &PhaseState::params)
        .def_property_readonly("grid", &PhaseState::grid);

    // Spectral operators and quadrature.
    m.def("mean", &mean, py::arg("field"));
    m.def("integral", &integral, py::arg("field"));
    m.def("inner", &inner, py::arg("a"), py::arg("b"));
    m.def("l2_norm", &l2_norm, py::arg("field"));
    m.def("l2_norm_sq", &l2_norm_sq, py::arg("field"));
    m.def("laplacian", &laplacian, py::arg("field"));
    m.def("inv_neg_laplacian", &inv_neg_laplacian, py::arg("field"));
    m.def("resolvent", &resolvent, py::arg("field"), py::arg("lam"));
    m.def("grad_norm_sq", &grad_norm_sq, py::arg("field"));
    m.def("grad_inner", &grad_inner, py::arg("a"), py::arg("b"));
    m.def("h1_norm_sq", &h1_norm_sq, py::arg("field"));
    m.def("gradient", &gradient, py::arg("field"));

    // Pointwise chemistry and constraint quantities.
    m.def("well", &well, py::arg("s"));
    m.def("well_deriv", &well_deriv, py::arg("s"));
    m.def("well_deriv2", &well_deriv2, py::arg("s"));
    m.def("triple_well", &triple_well, py::arg("p1"), py::arg("p2"));
    m.def("triple_well_partial", &triple_well_partial, py::arg("i"),
          py::arg("p1"), py::arg("p2"));
    m.def("indicator", &indicator, py::arg("s"));
    m.def("indicator_deriv", &indicator_deriv, py::arg("s"));
    m.def("indicator_deriv2", &indicator_deriv2, py::arg("s"));
    m.def("volume_residual", &volume_residual, py::arg("phi"), py::arg("omega"));
    m.def("indicator_deriv_norm_sq", &indicator_deriv_norm_sq, py::arg("phi"));

    // Energy and variational derivatives.
    m.def("energy", &energy, py::arg("state"));
    m.def("variational_derivative", &variational_derivative, py::arg("state"),
          py::arg("i"));

    // Constraint machinery.
    py::class_<MultiplierGuard>(m, "MultiplierGuard")
        .def(py::init<>())
        .def_readwrite("beta_min", &MultiplierGuard::beta_min);
    m.def("lagrange_multiplier", &lagrange_multiplier, py::arg("state"),
          py::arg("i"), py::arg("guard") = MultiplierGuard{});
    m.def("penalty_force", &penalty_force, py::arg("state"), py::arg("i"));
    m.def("penalty_coefficient", &penalty_coefficient, py::arg("state"),
          py::arg("i"));
    m.def("project_constraint", &project_constraint, py::arg("phi"),
          py::arg("omega"), py::arg("guard") = MultiplierGuard{},
          py::arg("tol") = 1e-12);

    // Dynamics.
    py::enum_<Scheme>(m, "Scheme")
        .value("Multiplier", Scheme::Multiplier)
        .value("Penalty", Scheme::Penalty)
        .value("MinimizingMovement", Scheme::MinimizingMovement);

    py::class_<StepConfig>(m, "StepConfig")
        .def(py::init<>())
        .def_readwrite("tau", &StepConfig::tau)
        .def_readwrite("scheme", &StepConfig::scheme)
        .def_readwrite("project_each_step", &StepConfig::project_each_step)
        .def_readwrite("inner_tol_grad", &StepConfig::inner_tol_grad)
        .def_readwrite("inner_tol_constraint", &StepConfig::inner_tol_constraint)
        .def_readwrite("inner_max_iters", &StepConfig::inner_max_iters)
        .def_readwrite("guard", &StepConfig::guard)
        .def("validate", &StepConfig::validate);

    py::class_<StepReport>(m, "StepReport")
        .def_readonly("energy_before", &StepReport::energy_before)
        .def_readonly("energy_after", &StepReport::energy_after)
        .def_readonly("breakdown_after", &StepReport::breakdown_after)
        .def_readonly("lambda_", &StepReport::lambda)
        .def_readonly("volume_residuals", &StepReport::volume_residuals)
        .def_readonly("increment_l2", &StepReport::increment_l2)
        .def_readonly("inner_iters", &StepReport::inner_iters)
        .def_readonly("mm_inequality_slack", &StepReport::mm_inequality_slack);

    py::class_<Trajectory>(m, "Trajectory")
        .def_readonly("times", &Trajectory::times)
        .def_readonly("reports", &Trajectory::reports)
        .def_readonly("snapshots", &Trajectory::snapshots)
        .def_readonly("final_state", &Trajectory::final_state);

    m.def("step_multiplier", &step_multiplier, py::arg("state"), py::arg("cfg"));
    m.def("step_penalty", &step_penalty, py::arg("state"), py::arg("cfg"));
    m.def("step_minimizing_movement", &step_minimizing_movement,
          py::arg("state"), py::arg("cfg"));
    m.def("step", &step, py::arg("state"), py::arg("cfg"));
    m.def("run", &run, py::arg("initial"), py::arg("cfg"), py::arg("horizon"),
          py::arg("snapshot_every") = 0);

    // Initial data.
    py::enum_<InitKind>(m, "InitKind")
        .value("RandomUniform", InitKind::RandomUniform)
        .value("Lamellar", InitKind::Lamellar)
        .value("Spots", InitKind::Spots)
        .value("ConstantSymmetric", InitKind::ConstantSymmetric);

    py::class_<InitSpec>(m, "InitSpec")
        .def(py::init<>())
        .def_readwrite("kind", &InitSpec::kind)
        .def_readwrite("seed", &InitSpec::seed)
        .def_readwrite("amplitude", &InitSpec::amplitude)
        .def_readwrite("base_levels", &InitSpec::base_levels)
        .def_readwrite("stripe_count", &InitSpec::stripe_count)
        .def_readwrite("spot_count", &InitSpec::spot_count)
        .def_readwrite("spot_radius", &InitSpec::spot_radius)
        .def("validate", &InitSpec::validate);

    m.def("indicator_inverse", &indicator_inverse, py::arg("omega"));
    m.def("generate", &generate, py::arg("spec"), py::arg("grid"),
          py::arg("params"));

    // Diagnostics.
    py::class_<H1BoundCheck>(m, "H1BoundCheck")
        .def_readonly("lhs", &H1BoundCheck::lhs)
        .def_readonly("rhs", &H1BoundCheck::rhs)
        .def_readonly("ok", &H1BoundCheck::ok);
    py::class_<DiagnosticsReport>(m, "DiagnosticsReport")
        .def_readonly("h1_checked", &DiagnosticsReport::h1_checked)
        .def_readonly("h1_bound_satisfied",
                      &DiagnosticsReport::h1_bound_satisfied)
        .def_readonly("min_fprime_mass", &DiagnosticsReport::min_fprime_mass)
        .def_readonly("energy_monotone", &DiagnosticsReport::energy_monotone)
        .def_readonly("max_volume_residual",
                      &DiagnosticsReport::max_volume_residual)
        .def_readonly("field_range", &DiagnosticsReport::field_range);
    m.def("check_h1_bound", &check_h1_bound, py::arg("state"));
    m.def("check_hls_identity", &check_hls_identity, py::arg("w"));
    m.def("dissipation_audit", &dissipation_audit, py::arg("trajectory"));
    m.def("summarize", &summarize, py::arg("trajectory"));

    // Snapshots and configs.
    py::class_<SnapshotData>(m, "SnapshotData")
        .def_readonly("phi1", &SnapshotData::phi1)
        .def_readonly("phi2", &SnapshotData::phi2)
        .def_property_readonly("grid", &SnapshotData::grid);
    m.def("write_snapshot",
          py::overload_cast<const std::string&, const PhaseState&>(
              &write_snapshot),
          py::arg("path"), py::arg("state"));
    m.def("read_snapshot", &read_snapshot, py::arg("path"));

    py::class_<RunConfig>(m, "RunConfig")
        .def(py::init<>())
        .def_readwrite("dim", &RunConfig::dim)
        .def_readwrite("points", &RunConfig::points)
        .def_readwrite("half_lengths", &RunConfig::half_lengths)
        .def_readwrite("model", &RunConfig::model)
        .def_readwrite("stepping", &RunConfig::stepping)
        .def_readwrite("horizon", &RunConfig::horizon)
        .def_readwrite("init", &RunConfig::init)
        .def_readwrite("log_path", &RunConfig::log_path)
        .def_readwrite("snapshot_dir", &RunConfig::snapshot_dir)
        .def_readwrite("snapshot_every", &RunConfig::snapshot_every)
        .def_readwrite("precision", &RunConfig::precision)
        .def("make_grid", &RunConfig::make_grid)
        .def("serialize", &RunConfig::serialize)
        .def_static("parse_string", &RunConfig::parse_string, py::arg("text"),
                    py::arg("name") = "<config>")
        .def_static("parse_file", &RunConfig::parse_file, py::arg("path"));
}
