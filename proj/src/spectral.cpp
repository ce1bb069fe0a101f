// spectral.cpp
// FFTW-backed spectral operators. Plans are cached per grid layout and
// executed through the new-array interface, so all public functions stay
// pure and thread-safe.

#include "acon/spectral.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>

namespace acon {

namespace detail {

struct LayoutKey {
    std::vector<int> points;
    std::vector<double> half_lengths;
    bool operator<(const LayoutKey& o) const {
        if (points != o.points) return points < o.points;
        return half_lengths < o.half_lengths;
    }
};

class SpectralWorkspace {
public:
    explicit SpectralWorkspace(const PeriodicGrid& grid) : grid_(grid) {
        const int d = grid.dim();
        const auto& n = grid.points_per_axis();
        std::vector<int> mode_dims(n.begin(), n.end());
        mode_dims[d - 1] = n[d - 1] / 2 + 1;

        n_modes_ = 1;
        for (int a = 0; a < d; ++a) n_modes_ *= mode_dims[a];

        k_squared_.resize(n_modes_);
        mode_weight_.resize(n_modes_);
        k_axis_.assign(d, std::vector<double>(n_modes_));

        // Row-major walk over the half-spectrum; frequency index m is
        // folded to the symmetric range, Nyquist zeroed for derivatives.
        std::vector<int> idx(d, 0);
        for (std::size_t flat = 0; flat < n_modes_; ++flat) {
            double k2 = 0.0;
            for (int a = 0; a < d; ++a) {
                const int na = n[a];
                const int i = idx[a];
                const int m = (i <= na / 2) ? i : i - na;
                const double k = M_PI * m / grid.box_half_lengths()[a];
                k2 += k * k;
                const bool nyquist = (na % 2 == 0) && (i == na / 2);
                k_axis_[a][flat] = nyquist ? 0.0 : k;
            }
            k_squared_[flat] = k2;
            const int last = idx[d - 1];
            const bool self_conjugate = (last == 0) || (2 * last == n[d - 1]);
            mode_weight_[flat] = self_conjugate ? 1.0 : 2.0;
            for (int a = d - 1; a >= 0; --a) {
                if (++idx[a] < mode_dims[a]) break;
                idx[a] = 0;
            }
        }

        // Dummy buffers just for planning; execution uses new arrays.
        std::vector<double> rbuf(static_cast<std::size_t>(grid.node_count()));
        std::vector<fftw_complex> cbuf(n_modes_);
        const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
        plan_fwd_ = fftw_plan_dft_r2c(d, n.data(), rbuf.data(), cbuf.data(), flags);
        plan_bwd_ = fftw_plan_dft_c2r(d, n.data(), cbuf.data(), rbuf.data(), flags);
        if (!plan_fwd_ || !plan_bwd_)
            throw ConfigError("spectral: FFT planning failed for this grid");
    }

    ~SpectralWorkspace() {
        fftw_destroy_plan(plan_fwd_);
        fftw_destroy_plan(plan_bwd_);
    }

    SpectralWorkspace(const SpectralWorkspace&) = delete;
    SpectralWorkspace& operator=(const SpectralWorkspace&) = delete;

    void forward(const ScalarField& f, std::vector<std::complex<double>>& out) const {
        out.resize(n_modes_);
        // r2c out-of-place preserves its input.
        fftw_execute_dft_r2c(plan_fwd_, const_cast<double*>(f.data()),
                             reinterpret_cast<fftw_complex*>(out.data()));
    }

    ScalarField inverse(const std::vector<std::complex<double>>& spec) const {
        // Multi-dimensional c2r destroys its input; hand it a scratch copy.
        std::vector<std::complex<double>> scratch(spec);
        ScalarField out(grid_);
        fftw_execute_dft_c2r(plan_bwd_,
                             reinterpret_cast<fftw_complex*>(scratch.data()),
                             out.data());
        const double scale = 1.0 / static_cast<double>(grid_.node_count());
        for (double& v : out.values()) v *= scale;
        return out;
    }

    const PeriodicGrid grid_;
    std::size_t n_modes_ = 0;
    std::vector<double> k_squared_;
    std::vector<double> mode_weight_;
    std::vector<std::vector<double>> k_axis_;
    fftw_plan plan_fwd_ = nullptr;
    fftw_plan plan_bwd_ = nullptr;
};

namespace {

std::shared_ptr<const SpectralWorkspace> workspace_for(const PeriodicGrid& grid) {
    static std::mutex cache_mutex;
    static std::map<LayoutKey, std::shared_ptr<const SpectralWorkspace>> cache;

    LayoutKey key{grid.points_per_axis(), grid.box_half_lengths()};
    std::lock_guard<std::mutex> lock(cache_mutex);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    auto ws = std::make_shared<const SpectralWorkspace>(grid);
    cache.emplace(std::move(key), ws);
    return ws;
}

} // namespace

} // namespace detail

Transform::Transform(const PeriodicGrid& grid) : ws_(detail::workspace_for(grid)) {}

std::size_t Transform::mode_count() const { return ws_->n_modes_; }
const std::vector<double>& Transform::k_squared() const { return ws_->k_squared_; }
const std::vector<double>& Transform::mode_weight() const { return ws_->mode_weight_; }
const std::vector<double>& Transform::k_axis(int axis) const { return ws_->k_axis_[axis]; }
const PeriodicGrid& Transform::grid() const { return ws_->grid_; }

void Transform::forward(const ScalarField& f, std::vector<std::complex<double>>& out) const {
    if (!f.grid().same_layout(ws_->grid_))
        throw ConfigError("Transform: field grid does not match workspace");
    ws_->forward(f, out);
}

ScalarField Transform::inverse(const std::vector<std::complex<double>>& spec) const {
    if (spec.size() != ws_->n_modes_)
        throw ConfigError("Transform: mode count mismatch");
    return ws_->inverse(spec);
}

double integral(const ScalarField& f) {
    return f.grid().cell_volume() * compensated_sum(f.data(), f.size());
}

double mean(const ScalarField& f) {
    return f.grid().cell_volume() * compensated_sum(f.data(), f.size()) /
           f.grid().total_volume();
}

double inner(const ScalarField& a, const ScalarField& b) {
    if (!a.grid().same_layout(b.grid()))
        throw ConfigError("inner: fields on different grids");
    std::vector<double> prod(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) prod[i] = a[i] * b[i];
    return a.grid().cell_volume() * compensated_sum(prod.data(), prod.size());
}

double l2_norm_sq(const ScalarField& f) { return inner(f, f); }

double l2_norm(const ScalarField& f) { return std::sqrt(l2_norm_sq(f)); }

ScalarField laplacian(const ScalarField& f) {
    Transform t(f.grid());
    std::vector<std::complex<double>> spec;
    t.forward(f, spec);
    const auto& k2 = t.k_squared();
    for (std::size_t m = 0; m < spec.size(); ++m) spec[m] *= -k2[m];
    return t.inverse(spec);
}

ScalarField inv_neg_laplacian(const ScalarField& f) {
    Transform t(f.grid());
    std::vector<std::complex<double>> spec;
    t.forward(f, spec);
    const auto& k2 = t.k_squared();
    spec[0] = 0.0; // zero mode discarded: solve against f - mean(f)
    for (std::size_t m = 1; m < spec.size(); ++m) spec[m] /= k2[m];
    return t.inverse(spec);
}

ScalarField resolvent(const ScalarField& f, double lambda) {
    if (!(lambda > 0.0))
        throw ConfigError("resolvent: lambda must be positive");
    Transform t(f.grid());
    std::vector<std::complex<double>> spec;
    t.forward(f, spec);
    const auto& k2 = t.k_squared();
    for (std::size_t m = 0; m < spec.size(); ++m) spec[m] /= 1.0 + lambda * k2[m];
    return t.inverse(spec);
}

namespace {

double parseval_form(const Transform& t,
                     const std::vector<std::complex<double>>& a,
                     const std::vector<std::complex<double>>& b,
                     const std::vector<double>& symbol) {
    const auto& w = t.mode_weight();
    std::vector<double> terms(a.size());
    for (std::size_t m = 0; m < a.size(); ++m) {
        const double re = a[m].real() * b[m].real() + a[m].imag() * b[m].imag();
        terms[m] = w[m] * symbol[m] * re;
    }
    const double n = static_cast<double>(t.grid().node_count());
    return t.grid().cell_volume() / n * compensated_sum(terms.data(), terms.size());
}

} // namespace

double grad_inner(const ScalarField& a, const ScalarField& b) {
    if (!a.grid().same_layout(b.grid()))
        throw ConfigError("grad_inner: fields on different grids");
    Transform t(a.grid());
    std::vector<std::complex<double>> sa, sb;
    t.forward(a, sa);
    t.forward(b, sb);
    return parseval_form(t, sa, sb, t.k_squared());
}

double grad_norm_sq(const ScalarField& f) {
    Transform t(f.grid());
    std::vector<std::complex<double>> spec;
    t.forward(f, spec);
    return parseval_form(t, spec, spec, t.k_squared());
}

double h1_norm_sq(const ScalarField& f) {
    return l2_norm_sq(f) + grad_norm_sq(f);
}

std::vector<ScalarField> gradient(const ScalarField& f) {
    Transform t(f.grid());
    std::vector<std::complex<double>> spec, dspec;
    t.forward(f, spec);
    std::vector<ScalarField> out;
    out.reserve(f.grid().dim());
    for (int a = 0; a < f.grid().dim(); ++a) {
        const auto& k = t.k_axis(a);
        dspec.resize(spec.size());
        for (std::size_t m = 0; m < spec.size(); ++m) {
            // multiply by i k
            dspec[m] = std::complex<double>(-k[m] * spec[m].imag(),
                                            k[m] * spec[m].real());
        }
        out.push_back(t.inverse(dspec));
    }
    return out;
}

} // namespace acon
