// oracles.hpp
// Test-only reference implementations, kept independent of the library's
// FFT path: dense operator matrices assembled by direct mode summation,
// a Jacobi eigensolver for pseudo-inverses, and plain quadrature.

#ifndef ACON_TEST_ORACLES_HPP
#define ACON_TEST_ORACLES_HPP

#include <cmath>
#include <random>
#include <vector>

#include "acon/grid.hpp"

namespace acon::test {

/// Dense symmetric matrix stored row-major.
struct DenseMatrix {
    int n = 0;
    std::vector<double> a; // n*n

    double operator()(int i, int j) const { return a[static_cast<std::size_t>(i) * n + j]; }
    double& operator()(int i, int j) { return a[static_cast<std::size_t>(i) * n + j]; }

    std::vector<double> apply(const std::vector<double>& x) const {
        std::vector<double> y(static_cast<std::size_t>(n), 0.0);
        for (int i = 0; i < n; ++i) {
            double s = 0.0;
            for (int j = 0; j < n; ++j) s += (*this)(i, j) * x[j];
            y[static_cast<std::size_t>(i)] = s;
        }
        return y;
    }
};

/// All node coordinates of a grid, row-major, one vector per node.
inline std::vector<std::vector<double>> node_coordinates(const PeriodicGrid& g) {
    const int d = g.dim();
    const auto& n = g.points_per_axis();
    std::vector<std::vector<double>> out;
    out.reserve(static_cast<std::size_t>(g.node_count()));
    std::vector<int> idx(d, 0);
    for (std::int64_t flat = 0; flat < g.node_count(); ++flat) {
        std::vector<double> x(d);
        for (int a = 0; a < d; ++a) x[a] = g.coordinate(a, idx[a]);
        out.push_back(std::move(x));
        for (int a = d - 1; a >= 0; --a) {
            if (++idx[a] < n[a]) break;
            idx[a] = 0;
        }
    }
    return out;
}

/// Dense spectral Laplacian by direct summation over the full mode set:
/// L[a][b] = (1/N) sum_m (-|k(m)|^2) cos(k(m) . (x_a - x_b)),
/// with k_j = pi * m_j / X_j and m_j folded to the symmetric range.
inline DenseMatrix dense_laplacian(const PeriodicGrid& g) {
    const int d = g.dim();
    const auto& npts = g.points_per_axis();
    const auto coords = node_coordinates(g);
    const int n = static_cast<int>(g.node_count());

    // Enumerate all modes with their wavevectors.
    std::vector<std::vector<double>> waves;
    std::vector<int> idx(d, 0);
    for (std::int64_t flat = 0; flat < g.node_count(); ++flat) {
        std::vector<double> k(d);
        for (int a = 0; a < d; ++a) {
            const int m = (idx[a] <= npts[a] / 2) ? idx[a] : idx[a] - npts[a];
            k[a] = M_PI * m / g.box_half_lengths()[a];
        }
        waves.push_back(std::move(k));
        for (int a = d - 1; a >= 0; --a) {
            if (++idx[a] < npts[a]) break;
            idx[a] = 0;
        }
    }

    DenseMatrix L;
    L.n = n;
    L.a.assign(static_cast<std::size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            double s = 0.0;
            for (const auto& k : waves) {
                double k2 = 0.0, phase = 0.0;
                for (int a = 0; a < d; ++a) {
                    k2 += k[a] * k[a];
                    phase += k[a] * (coords[i][a] - coords[j][a]);
                }
                s += -k2 * std::cos(phase);
            }
            L(i, j) = s / n;
        }
    }
    return L;
}

/// Cyclic Jacobi eigendecomposition of a symmetric matrix.
/// Returns eigenvalues; V holds eigenvectors as columns (V[i][j] = component
/// i of eigenvector j), stored row-major in a DenseMatrix.
inline std::vector<double> jacobi_eigensymm(DenseMatrix a, DenseMatrix& v) {
    const int n = a.n;
    v.n = n;
    v.a.assign(static_cast<std::size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i) v(i, i) = 1.0;

    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) off += a(p, q) * a(p, q);
        if (off < 1e-26) break;

        for (int p = 0; p < n; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (std::abs(apq) < 1e-300) continue;
                const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
                const double t = (theta >= 0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (int i = 0; i < n; ++i) {
                    const double aip = a(i, p), aiq = a(i, q);
                    a(i, p) = c * aip - s * aiq;
                    a(i, q) = s * aip + c * aiq;
                }
                for (int i = 0; i < n; ++i) {
                    const double api = a(p, i), aqi = a(q, i);
                    a(p, i) = c * api - s * aqi;
                    a(q, i) = s * api + c * aqi;
                }
                for (int i = 0; i < n; ++i) {
                    const double vip = v(i, p), viq = v(i, q);
                    v(i, p) = c * vip - s * viq;
                    v(i, q) = s * vip + c * viq;
                }
            }
        }
    }
    std::vector<double> eig(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) eig[static_cast<std::size_t>(i)] = a(i, i);
    return eig;
}

/// Moore-Penrose pseudo-inverse applied through the eigendecomposition;
/// eigenvalues below rel_cut * max|eig| are treated as kernel directions.
struct DensePseudoInverse {
    DenseMatrix v;
    std::vector<double> inv_eig;

    explicit DensePseudoInverse(const DenseMatrix& m, double rel_cut = 1e-10) {
        auto eig = jacobi_eigensymm(m, v);
        double emax = 0.0;
        for (double e : eig) emax = std::max(emax, std::abs(e));
        inv_eig.resize(eig.size());
        for (std::size_t i = 0; i < eig.size(); ++i)
            inv_eig[i] = (std::abs(eig[i]) > rel_cut * emax) ? 1.0 / eig[i] : 0.0;
    }

    std::vector<double> apply(const std::vector<double>& x) const {
        const int n = v.n;
        std::vector<double> y(static_cast<std::size_t>(n), 0.0);
        for (int j = 0; j < n; ++j) {
            double proj = 0.0;
            for (int i = 0; i < n; ++i) proj += v(i, j) * x[static_cast<std::size_t>(i)];
            proj *= inv_eig[static_cast<std::size_t>(j)];
            for (int i = 0; i < n; ++i) y[static_cast<std::size_t>(i)] += v(i, j) * proj;
        }
        return y;
    }
};

/// f^T M g.
inline double quadratic_form(const DenseMatrix& m, const std::vector<double>& f,
                             const std::vector<double>& g) {
    double s = 0.0;
    const auto mg = m.apply(g);
    for (std::size_t i = 0; i < mg.size(); ++i) s += f[i] * mg[i];
    return s;
}

/// Deterministic uniform field for tests (independent of the library PRNG).
inline ScalarField random_field(const PeriodicGrid& g, std::mt19937_64& rng,
                                double lo = -1.0, double hi = 1.0) {
    ScalarField f(g);
    for (double& v : f.values()) {
        const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
        v = lo + (hi - lo) * u;
    }
    return f;
}

inline double rel_err(double got, double want) {
    return std::abs(got - want) / std::max(1e-300, std::abs(want));
}

} // namespace acon::test

#endif
