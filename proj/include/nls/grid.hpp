#pragma once

#include <complex>
#include <span>
#include <stdexcept>
#include <vector>

namespace nls {

using cdouble = std::complex<double>;

inline constexpr double kPi = 3.141592653589793238462643383279502884;

/// Uniform grid on [-L, L) with an even number of points.  x = 0 is always a
/// node (index n_points/2), so half-line restrictions are exact.
struct SpatialGrid {
    double half_width = 0.0;  // L
    int n_points = 0;         // N, even
    double dx = 0.0;          // 2L/N

    static SpatialGrid make(double half_width, int n_points) {
        if (!(half_width > 0.0)) throw std::invalid_argument("SpatialGrid: half_width must be positive");
        if (n_points <= 0 || n_points % 2 != 0)
            throw std::invalid_argument("SpatialGrid: n_points must be a positive even integer");
        SpatialGrid g;
        g.half_width = half_width;
        g.n_points = n_points;
        g.dx = 2.0 * half_width / n_points;
        return g;
    }

    double x(int j) const { return -half_width + j * dx; }
    int zero_index() const { return n_points / 2; }

    /// Signed DFT frequency of bin k (dual grid of [-L, L), spacing pi/L).
    double xi(int k) const {
        int kk = (k < n_points / 2) ? k : k - n_points;
        return kPi * kk / half_width;
    }
    double dxi() const { return kPi / half_width; }
    double xi_max() const { return kPi / dx; }

    bool operator==(const SpatialGrid& o) const {
        return half_width == o.half_width && n_points == o.n_points;
    }
};

/// Uniform time grid t_m = t0 + m*dt, m = 0..n_steps.  Solver grids start at
/// t0 = 0 and cover [0, span]; probe grids may be centered (t0 < 0).
struct TimeGrid {
    double t0 = 0.0;
    int n_steps = 0;  // number of intervals; n_steps+1 nodes
    double dt = 0.0;

    static TimeGrid make(double t0, double span, int n_steps) {
        if (!(span > 0.0)) throw std::invalid_argument("TimeGrid: span must be positive");
        if (n_steps <= 0) throw std::invalid_argument("TimeGrid: n_steps must be positive");
        TimeGrid g;
        g.t0 = t0;
        g.n_steps = n_steps;
        g.dt = span / n_steps;
        return g;
    }

    int n_nodes() const { return n_steps + 1; }
    double t(int m) const { return t0 + m * dt; }
    double span() const { return n_steps * dt; }
    double t_end() const { return t0 + span(); }

    /// Dual frequency of row bin j for the (n_steps+1)-point DFT.
    double tau(int j) const {
        int n = n_nodes();
        int jj = (j < (n + 1) / 2) ? j : j - n;
        return 2.0 * kPi * jj / (n * dt);
    }
    double tau_max() const { return kPi / dt; }

    bool operator==(const TimeGrid& o) const {
        return t0 == o.t0 && n_steps == o.n_steps && dt == o.dt;
    }
};

/// Complex samples on a SpatialGrid.
struct ComplexField1D {
    SpatialGrid grid;
    std::vector<cdouble> values;

    static ComplexField1D zeros(const SpatialGrid& g) {
        return ComplexField1D{g, std::vector<cdouble>(g.n_points, cdouble(0.0))};
    }
    cdouble& operator[](int j) { return values[j]; }
    const cdouble& operator[](int j) const { return values[j]; }
};

/// Samples of a half-line function on the nonnegative nodes of a SpatialGrid:
/// values[i] = f(i*dx), i = 0 .. n_points/2 - 1.
struct HalfLineField {
    SpatialGrid grid;
    std::vector<cdouble> values;

    static HalfLineField zeros(const SpatialGrid& g) {
        return HalfLineField{g, std::vector<cdouble>(g.n_points / 2, cdouble(0.0))};
    }
    int n() const { return static_cast<int>(values.size()); }
};

/// Complex samples u(x_j, t_m) on a tensor grid, row-major in time:
/// values[m * n_points + j].
struct SpaceTimeField {
    SpatialGrid sgrid;
    TimeGrid tgrid;
    std::vector<cdouble> values;

    static SpaceTimeField zeros(const SpatialGrid& sg, const TimeGrid& tg) {
        return SpaceTimeField{sg, tg,
                              std::vector<cdouble>(static_cast<size_t>(tg.n_nodes()) * sg.n_points, cdouble(0.0))};
    }
    cdouble& at(int m, int j) { return values[static_cast<size_t>(m) * sgrid.n_points + j]; }
    const cdouble& at(int m, int j) const { return values[static_cast<size_t>(m) * sgrid.n_points + j]; }
    std::span<cdouble> row(int m) {
        return {values.data() + static_cast<size_t>(m) * sgrid.n_points, static_cast<size_t>(sgrid.n_points)};
    }
    std::span<const cdouble> row(int m) const {
        return {values.data() + static_cast<size_t>(m) * sgrid.n_points, static_cast<size_t>(sgrid.n_points)};
    }
};

/// A time series extracted at x = 0.
struct TraceSeries {
    TimeGrid tgrid;
    std::vector<cdouble> values;
};

bool all_finite(std::span<const cdouble> v);
void require_finite(std::span<const cdouble> v, const char* what);

double l2_norm(std::span<const cdouble> v, double weight);
double max_abs(std::span<const cdouble> v);

}  // namespace nls
