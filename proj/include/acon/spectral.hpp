// spectral.hpp
// FFT-based operators on periodic fields: Laplacian, zero-mean inverse
// Laplacian, resolvent smoothing, gradients, quadrature and norms.
//
// Wavenumber convention: mode index m_j along axis j carries
// k_j = pi * m_j / X_j on the box [-X_j, X_j] (period 2 X_j).
// Quadratic forms (grad_norm_sq, grad_inner, h1_norm_sq) are evaluated by
// Parseval with the full |k|^2 symbol so they pair exactly with laplacian();
// the sampled gradient() drops the Nyquist sine component, which is
// invisible at the nodes (standard odd-derivative convention).

#ifndef ACON_SPECTRAL_HPP
#define ACON_SPECTRAL_HPP

#include <complex>
#include <memory>
#include <vector>

#include "acon/grid.hpp"

namespace acon {

namespace detail {
class SpectralWorkspace;
}

/// Handle to the cached FFT plans and wave tables for one grid layout.
/// Cheap to construct; safe to use from several threads at once.
class Transform {
public:
    explicit Transform(const PeriodicGrid& grid);

    /// Number of complex modes in the half-spectrum layout.
    std::size_t mode_count() const;

    /// |k|^2 per mode; entry 0 is the zero mode (exactly 0).
    const std::vector<double>& k_squared() const;

    /// Parseval multiplicity per mode (1 or 2) for the folded half-spectrum.
    const std::vector<double>& mode_weight() const;

    /// k along one axis per mode, with the Nyquist entry zeroed.
    const std::vector<double>& k_axis(int axis) const;

    /// Unnormalized forward transform (sum convention).
    void forward(const ScalarField& f, std::vector<std::complex<double>>& out) const;

    /// Inverse transform including the 1/N normalization.
    ScalarField inverse(const std::vector<std::complex<double>>& spec) const;

    const PeriodicGrid& grid() const;

private:
    std::shared_ptr<const detail::SpectralWorkspace> ws_;
};

/// Box average (1/|T|) int f.
double mean(const ScalarField& f);

/// int f over the box (cell volume times compensated sum).
double integral(const ScalarField& f);

/// L2 inner product int a b.
double inner(const ScalarField& a, const ScalarField& b);

double l2_norm_sq(const ScalarField& f);
double l2_norm(const ScalarField& f);

/// Spectral Laplacian (full |k|^2 symbol).
ScalarField laplacian(const ScalarField& f);

/// Zero-mean solve of -Lap(Psi) = f - mean(f); output has zero mean.
ScalarField inv_neg_laplacian(const ScalarField& f);

/// Resolvent smoothing (I - lambda Lap)^{-1}; an L2 contraction that
/// preserves the mean. Requires lambda > 0.
ScalarField resolvent(const ScalarField& f, double lambda);

/// int |grad f|^2 by Parseval.
double grad_norm_sq(const ScalarField& f);

/// int grad a . grad b by Parseval.
double grad_inner(const ScalarField& a, const ScalarField& b);

/// int f^2 + int |grad f|^2.
double h1_norm_sq(const ScalarField& f);

/// Sampled partial derivatives, one field per axis (Nyquist sine dropped).
std::vector<ScalarField> gradient(const ScalarField& f);

} // namespace acon

#endif
