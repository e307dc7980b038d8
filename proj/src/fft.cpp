#include "nls/fft.hpp"

#include <fftw3.h>

#include <cmath>
#include <cstring>
#include <map>
#include <mutex>
#include <sstream>

namespace nls {

bool all_finite(std::span<const cdouble> v) {
    for (const auto& z : v)
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    return true;
}

void require_finite(std::span<const cdouble> v, const char* what) {
    for (size_t i = 0; i < v.size(); ++i) {
        if (!std::isfinite(v[i].real()) || !std::isfinite(v[i].imag())) {
            std::ostringstream os;
            os << what << ": non-finite value at index " << i;
            throw std::invalid_argument(os.str());
        }
    }
}

double l2_norm(std::span<const cdouble> v, double weight) {
    double s = 0.0;
    for (const auto& z : v) s += std::norm(z);
    return std::sqrt(s * weight);
}

double max_abs(std::span<const cdouble> v) {
    double m = 0.0;
    for (const auto& z : v) m = std::max(m, std::abs(z));
    return m;
}

namespace {

// FFTW plan cache.  Planning is not thread-safe; execution with explicit
// arrays is.  Plans are created with FFTW_ESTIMATE so input arrays are not
// clobbered at plan time.
class PlanCache {
  public:
    static PlanCache& instance() {
        static PlanCache c;
        return c;
    }

    fftw_plan get1d(int n, int sign) {
        std::lock_guard<std::mutex> lock(mu_);
        auto key = std::make_pair(n, sign);
        auto it = plans1d_.find(key);
        if (it != plans1d_.end()) return it->second;
        std::vector<cdouble> tmp(n);
        fftw_plan p = fftw_plan_dft_1d(n, reinterpret_cast<fftw_complex*>(tmp.data()),
                                       reinterpret_cast<fftw_complex*>(tmp.data()), sign,
                                       FFTW_ESTIMATE | FFTW_UNALIGNED);
        plans1d_.emplace(key, p);
        return p;
    }

    fftw_plan get2d(int rows, int cols, int sign) {
        std::lock_guard<std::mutex> lock(mu_);
        auto key = std::make_tuple(rows, cols, sign);
        auto it = plans2d_.find(key);
        if (it != plans2d_.end()) return it->second;
        std::vector<cdouble> tmp(static_cast<size_t>(rows) * cols);
        fftw_plan p = fftw_plan_dft_2d(rows, cols, reinterpret_cast<fftw_complex*>(tmp.data()),
                                       reinterpret_cast<fftw_complex*>(tmp.data()), sign,
                                       FFTW_ESTIMATE | FFTW_UNALIGNED);
        plans2d_.emplace(key, p);
        return p;
    }

  private:
    std::mutex mu_;
    std::map<std::pair<int, int>, fftw_plan> plans1d_;
    std::map<std::tuple<int, int, int>, fftw_plan> plans2d_;
};

void run1d(int n, int sign, const cdouble* in, cdouble* out) {
    fftw_plan p = PlanCache::instance().get1d(n, sign);
    if (in != out) std::memcpy(out, in, sizeof(cdouble) * n);
    fftw_execute_dft(p, reinterpret_cast<fftw_complex*>(out), reinterpret_cast<fftw_complex*>(out));
}

}  // namespace

std::vector<cdouble> forward_transform(const ComplexField1D& f) {
    require_finite(f.values, "forward_transform");
    if (static_cast<int>(f.values.size()) != f.grid.n_points)
        throw std::invalid_argument("forward_transform: field/grid size mismatch");
    std::vector<cdouble> out(f.values.size());
    spectrum_of(f.grid, f.values, out);
    return out;
}

ComplexField1D inverse_transform(const SpatialGrid& grid, std::span<const cdouble> coeffs) {
    if (static_cast<int>(coeffs.size()) != grid.n_points)
        throw std::invalid_argument("inverse_transform: coefficient/grid size mismatch");
    ComplexField1D f = ComplexField1D::zeros(grid);
    field_of(grid, coeffs, f.values);
    return f;
}

void spectrum_of(const SpatialGrid& g, std::span<const cdouble> field, std::span<cdouble> spectrum) {
    const int n = g.n_points;
    run1d(n, FFTW_FORWARD, field.data(), spectrum.data());
    // dx scaling plus the phase e^{+i L xi_k} = (-1)^k from the grid offset.
    for (int k = 0; k < n; ++k) spectrum[k] *= (k % 2 == 0) ? g.dx : -g.dx;
}

void field_of(const SpatialGrid& g, std::span<const cdouble> spectrum, std::span<cdouble> field) {
    const int n = g.n_points;
    std::vector<cdouble> tmp(spectrum.begin(), spectrum.end());
    const double inv = 1.0 / (g.dx * n);
    for (int k = 0; k < n; ++k) tmp[k] *= (k % 2 == 0) ? inv : -inv;
    run1d(n, FFTW_BACKWARD, tmp.data(), field.data());
}

std::vector<cdouble> space_time_transform(const SpaceTimeField& u) {
    require_finite(u.values, "space_time_transform");
    const int rows = u.tgrid.n_nodes();
    const int cols = u.sgrid.n_points;
    if (u.values.size() != static_cast<size_t>(rows) * cols)
        throw std::invalid_argument("space_time_transform: field/grid shape mismatch");

    std::vector<cdouble> out(u.values.begin(), u.values.end());
    fftw_plan p = PlanCache::instance().get2d(rows, cols, FFTW_FORWARD);
    fftw_execute_dft(p, reinterpret_cast<fftw_complex*>(out.data()), reinterpret_cast<fftw_complex*>(out.data()));

    // Physical scaling dx*dt, spatial centering (-1)^k, and the time-origin
    // phase e^{-i tau_m t0}.
    const double scale = u.sgrid.dx * u.tgrid.dt;
    for (int m = 0; m < rows; ++m) {
        const cdouble tphase = std::polar(scale, -u.tgrid.tau(m) * u.tgrid.t0);
        cdouble* row = out.data() + static_cast<size_t>(m) * cols;
        for (int k = 0; k < cols; ++k) row[k] *= (k % 2 == 0) ? tphase : -tphase;
    }
    return out;
}

void cubic_dealiased(const SpatialGrid& g, std::span<const cdouble> u, std::span<cdouble> out) {
    const int n = g.n_points;
    const int np = 3 * n / 2;  // padded size (3/2 rule)
    std::vector<cdouble> spec(n), pad(np, cdouble(0.0));
    run1d(n, FFTW_FORWARD, u.data(), spec.data());
    // re-pack bins: [0, n/2) -> [0, n/2), [n/2, n) -> [np - n/2, np)
    for (int k = 0; k < n / 2; ++k) pad[k] = spec[k];
    for (int k = n / 2; k < n; ++k) pad[np - n + k] = spec[k];
    run1d(np, FFTW_BACKWARD, pad.data(), pad.data());
    const double s = 1.0 / n;  // unnormalized round trip carries n; products carry s^3 * n
    for (int j = 0; j < np; ++j) {
        cdouble z = pad[j] * s;
        pad[j] = z * z * std::conj(z);
    }
    run1d(np, FFTW_FORWARD, pad.data(), pad.data());
    std::vector<cdouble> spec2(n);
    for (int k = 0; k < n / 2; ++k) spec2[k] = pad[k];
    for (int k = n / 2; k < n; ++k) spec2[k] = pad[np - n + k];
    run1d(n, FFTW_BACKWARD, spec2.data(), out.data());
    const double s2 = 1.0 / np;
    for (int j = 0; j < n; ++j) out[j] *= s2;
}

}  // namespace nls
