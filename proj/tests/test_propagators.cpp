#include <doctest.h>

#include <cmath>

#include "nls/bump.hpp"
#include "nls/fft.hpp"
#include "nls/propagators.hpp"
#include "nls/rng.hpp"

using namespace nls;

namespace {

ComplexField1D sample(const SpatialGrid& g, auto&& fn) {
    ComplexField1D f = ComplexField1D::zeros(g);
    for (int j = 0; j < g.n_points; ++j) f.values[j] = fn(g.x(j));
    return f;
}

HalfLineField sample_half(const SpatialGrid& g, auto&& fn) {
    HalfLineField f = HalfLineField::zeros(g);
    for (int i = 0; i < f.n(); ++i) f.values[i] = fn(i * g.dx);
    return f;
}

BoundarySeries sample_series(const TimeGrid& tg, auto&& fn) {
    BoundarySeries h = BoundarySeries::zeros(tg);
    for (int m = 0; m < tg.n_nodes(); ++m) h.values[m] = fn(tg.t(m));
    return h;
}

// smooth boundary pulse with h(0) = 0, h'(0) = 0 and fast decay
cdouble pulse(double t) { return cdouble(1.0, 0.4) * t * t * std::exp(-2.0 * t); }

// same class with zero mean: int h dt = 0, so the spectral representation's
// periodization images (~ hhat(0) / x^2 wrap-around) are negligible
cdouble pulse0(double t) {
    return cdouble(1.0, 0.4) * t * t * (1.0 - 2.0 * t / 3.0) * std::exp(-2.0 * t);
}

double rel_l2_halfline(const SpaceTimeField& a, const SpaceTimeField& b, int m) {
    const int j0 = a.sgrid.zero_index();
    double num = 0.0, den = 0.0;
    for (int j = j0; j < a.sgrid.n_points; ++j) {
        num += std::norm(a.at(m, j) - b.at(m, j));
        den += std::norm(b.at(m, j));
    }
    return std::sqrt(num / std::max(den, 1e-300));
}

}  // namespace

TEST_CASE("cutoff functions: plateau, support, monotonicity, smoothness") {
    CHECK(cutoff_eta(0.0) == 1.0);
    CHECK(cutoff_eta(1.0) == 1.0);
    CHECK(cutoff_eta(-1.0) == 1.0);
    CHECK(cutoff_eta(2.0) == 0.0);
    CHECK(cutoff_eta(-2.0) == 0.0);
    double prev = 1.0;
    for (double t = 1.0; t <= 2.0; t += 0.01) {
        const double v = cutoff_eta(t);
        CHECK(v <= prev + 1e-15);
        prev = v;
    }
    CHECK(cutoff_eta_scaled(0.49, 0.5) == 1.0);
    CHECK(cutoff_eta_scaled(1.01, 0.5) == 0.0);
    CHECK(cutoff_rho(0.0) == 1.0);
    CHECK(cutoff_rho(3.0) == 1.0);
    CHECK(cutoff_rho(-2.0) == 0.0);
    // discrete smoothness: centered 4th differences of eta stay bounded under
    // refinement (no hidden kink)
    for (double hstep : {1e-2, 5e-3, 2.5e-3}) {
        double worst = 0.0;
        for (double t = 0.9; t < 2.1; t += hstep) {
            const double d4 = cutoff_eta(t - 2 * hstep) - 4 * cutoff_eta(t - hstep) + 6 * cutoff_eta(t) -
                              4 * cutoff_eta(t + hstep) + cutoff_eta(t + 2 * hstep);
            worst = std::max(worst, std::fabs(d4) / (hstep * hstep * hstep * hstep));
        }
        CHECK(worst < 1e5);  // bounded 4th derivative scale
    }
}

TEST_CASE("free propagator: identity at t = 0 and exact unitarity") {
    auto g = SpatialGrid::make(20.0, 1 << 10);
    Rng rng(23);
    ComplexField1D f = ComplexField1D::zeros(g);
    for (int j = 0; j < g.n_points; ++j)
        f.values[j] = std::exp(-std::norm(g.x(j) - 1.0) / 4.0) * rng.unit_phase();

    auto id = free_propagator(f, 0.0);
    double err = 0.0;
    for (int j = 0; j < g.n_points; ++j) err = std::max(err, std::abs(id.values[j] - f.values[j]));
    CHECK(err < 1e-13);

    const double n0 = l2_norm(f.values, g.dx);
    for (double t : {0.37, -1.4, 12.0}) {
        auto u = free_propagator(f, t);
        CHECK(std::abs(l2_norm(u.values, g.dx) - n0) < 1e-12 * n0);
    }
}

TEST_CASE("free propagator Gaussian closed form at t = 0.5") {
    auto g = SpatialGrid::make(20.0, 1 << 12);
    auto f = sample(g, [](double x) { return std::exp(-x * x); });
    auto u = free_propagator(f, 0.5);
    const cdouble denom(1.0, 2.0);  // 1 + 4it at t = 1/2
    double err = 0.0;
    for (int j = 0; j < g.n_points; ++j) {
        const double x = g.x(j);
        const cdouble exact = std::exp(-x * x / denom) / std::sqrt(denom);
        err = std::max(err, std::abs(u.values[j] - exact));
    }
    CHECK(err < 1e-8);

    // independent oracle: direct quadrature of the inversion integral at grid
    // nodes
    auto fh = forward_transform(f);
    for (int j : {1024, 2048, 2345, 3000}) {
        const double x = g.x(j);
        cdouble direct(0.0);
        for (int k = 0; k < g.n_points; ++k) {
            const double xi = g.xi(k);
            direct += fh[k] * std::polar(1.0, x * xi - 0.5 * xi * xi);
        }
        direct *= g.dxi() / (2.0 * kPi);
        CHECK(std::abs(u.values[j] - direct) < 1e-10);
    }
}

TEST_CASE("boundary density is supported on beta >= 0 with finite weighted norm") {
    auto g = SpatialGrid::make(30.0, 1 << 10);
    auto tg = TimeGrid::make(0.0, 10.0, 640);
    auto h = sample_series(tg, pulse);
    for (int sign : {-1, +1}) {
        auto d = boundary_density(h, g, sign);
        for (int k = g.n_points / 2; k < g.n_points; ++k) CHECK(std::abs(d.values[k]) == 0.0);
        CHECK(std::isfinite(d.weighted_norm(1.0)));
        CHECK(d.weighted_norm(1.0) > 0.0);
    }
}

TEST_CASE("W1: zero data and interior free-equation residual") {
    auto sg = SpatialGrid::make(30.0, 1 << 13);
    auto hz = BoundarySeries::zeros(TimeGrid::make(0.0, 4.0, 256));
    auto uz = boundary_w1(hz, sg, TimeGrid::make(0.0, 1.0, 8));
    CHECK(max_abs(uz.values) == 0.0);

    auto htg = TimeGrid::make(0.0, 12.0, 1200);
    auto h = sample_series(htg, pulse);

    // interior finite-difference residual of i u_t + u_xx, centered stencils
    // on a fine local grid
    auto tg2 = TimeGrid::make(0.4, 0.004, 2);
    auto u3 = boundary_w1(h, sg, tg2);
    double resid = 0.0, scale = 0.0;
    const double dt = tg2.dt, dx = sg.dx;
    for (int j = 2; j < sg.n_points - 2; ++j) {
        const cdouble ut = (u3.at(2, j) - u3.at(0, j)) / (2.0 * dt);
        const cdouble uxx = (u3.at(1, j + 1) - 2.0 * u3.at(1, j) + u3.at(1, j - 1)) / (dx * dx);
        resid += std::norm(cdouble(0.0, 1.0) * ut + uxx);
        scale += std::norm(u3.at(1, j));
    }
    CHECK(std::sqrt(resid) < 1e-4 * std::sqrt(scale));
}

TEST_CASE("W1 matches the direct oscillatory quadrature of its integral form") {
    // the grid field is the periodized band-limited object, so the oracle sums
    // the direct quadrature over the wrap-around images; a zero-mean pulse
    // keeps the image tail beyond |n| <= 2 negligible
    auto sg = SpatialGrid::make(30.0, 1 << 10);
    auto htg = TimeGrid::make(0.0, 12.0, 1200);
    auto h = sample_series(htg, pulse0);

    auto tg = TimeGrid::make(0.0, 1.0, 16);
    auto u = boundary_w1(h, sg, tg);
    double sup = 0.0;
    for (const auto& z : u.values) sup = std::max(sup, std::abs(z));

    Rng rng(31);
    for (int i = 0; i < 20; ++i) {
        const int j = static_cast<int>(rng.uniform(0, sg.n_points));
        const int m = static_cast<int>(rng.uniform(0, tg.n_nodes()));
        const double x = sg.x(j), t = tg.t(m);
        cdouble oracle(0.0);
        for (int im = -2; im <= 2; ++im)
            oracle += boundary_w1_direct(h, x + 2.0 * im * sg.half_width, t, sg.xi_max());
        CHECK(std::abs(u.at(m, j) - oracle) < 1e-6 * sup);
    }
}

TEST_CASE("W2: zero data, t = 0 cancellation against W1, evanescent decay") {
    auto sg = SpatialGrid::make(40.0, 1 << 11);
    auto tg = TimeGrid::make(0.0, 1.0, 32);
    auto hz = BoundarySeries::zeros(TimeGrid::make(0.0, 4.0, 256));
    CHECK(max_abs(boundary_w2(hz, sg, tg).values) == 0.0);

    auto htg = TimeGrid::make(0.0, 12.0, 1200);
    auto h = sample_series(htg, pulse0);
    auto w1 = boundary_w1(h, sg, tg);
    auto w2 = boundary_w2(h, sg, tg);

    // initial condition of the boundary flow: the two parts cancel at t = 0 on
    // the half line
    double cancel = 0.0, hnorm = 0.0;
    for (int j = sg.zero_index(); j < sg.n_points; ++j) cancel += std::norm(w1.at(0, j) + w2.at(0, j));
    cancel = std::sqrt(cancel * sg.dx);
    for (const auto& z : h.values) hnorm = std::max(hnorm, std::abs(z));
    CHECK(cancel <= 1e-3 * hnorm);

    // evanescent envelope: far columns are tiny compared to the near field
    double sup = 0.0, far = 0.0;
    for (int m = 0; m < tg.n_nodes(); ++m) {
        for (int j = 0; j < sg.n_points; ++j) sup = std::max(sup, std::abs(w2.at(m, j)));
        for (int j = sg.n_points - 64; j < sg.n_points; ++j) far = std::max(far, std::abs(w2.at(m, j)));
    }
    CHECK(far < 1e-4 * sup);
}

TEST_CASE("linear IBVP with h = 0 equals the free flow of the odd extension") {
    auto sg = SpatialGrid::make(30.0, 1 << 11);
    auto tg = TimeGrid::make(0.0, 1.0, 32);
    auto ghalf = sample_half(sg, [](double x) { return x * std::exp(-(x - 2.0) * (x - 2.0)); });
    auto gdata = ExtendedInitialData::make(ghalf, ExtensionKind::odd);
    auto hz = BoundarySeries::zeros(TimeGrid::make(0.0, 4.0, 256));

    auto u = linear_ibvp(gdata, hz, sg, tg, 1.0);
    for (int m : {0, 8, 16, 32}) {
        auto freef = free_propagator(gdata.g_e, tg.t(m));
        double num = 0.0, den = 0.0;
        for (int j = sg.zero_index(); j < sg.n_points; ++j) {
            num += std::norm(u.at(m, j) - freef.values[j]);
            den += std::norm(freef.values[j]);
        }
        CHECK(std::sqrt(num / den) < 1e-6);
    }
}

TEST_CASE("linear IBVP with g = 0 reproduces the boundary datum at x = 0") {
    auto sg = SpatialGrid::make(40.0, 1 << 12);
    auto tg = TimeGrid::make(0.0, 1.0, 64);
    auto htg = TimeGrid::make(0.0, 12.0, 1536);
    auto h = sample_series(htg, pulse);
    auto g0 = ExtendedInitialData::make(HalfLineField::zeros(sg), ExtensionKind::zero);

    auto u = linear_ibvp(g0, h, sg, tg, 0.3);
    auto tr = trace_at_zero(u);
    double sup = 0.0, hmax = 0.0;
    for (const auto& z : h.values) hmax = std::max(hmax, std::abs(z));
    for (int m = 0; m < tg.n_nodes(); ++m) sup = std::max(sup, std::abs(tr.values[m] - pulse(tg.t(m))));
    CHECK(sup <= 1e-3 * hmax);

    // zero data gives the zero field
    auto uz = linear_ibvp(g0, BoundarySeries::zeros(htg), sg, tg, 0.3);
    CHECK(max_abs(uz.values) == 0.0);
}

TEST_CASE("linear IBVP rejects long horizons and incompatible data") {
    auto sg = SpatialGrid::make(20.0, 512);
    auto ghalf = sample_half(sg, [](double x) { return std::exp(-x * x); });  // g(0) = 1
    auto gdata = ExtendedInitialData::make(ghalf, ExtensionKind::even);
    auto htg = TimeGrid::make(0.0, 6.0, 384);
    auto hz = BoundarySeries::zeros(htg);

    CHECK_THROWS_AS((void)linear_ibvp(gdata, hz, sg, TimeGrid::make(0.0, 2.0, 64), 1.0),
                    std::invalid_argument);
    CHECK_THROWS_AS((void)linear_ibvp(gdata, hz, sg, TimeGrid::make(0.0, 1.0, 64), 1.0), ConfigError);
    // compatible at s < 1/2: no corner condition required
    CHECK_NOTHROW((void)linear_ibvp(ExtendedInitialData::make(ghalf, ExtensionKind::zero), hz, sg,
                                    TimeGrid::make(0.0, 0.5, 32), 0.3));
}

TEST_CASE("linearity of the linear IBVP") {
    auto sg = SpatialGrid::make(30.0, 1 << 10);
    auto tg = TimeGrid::make(0.0, 0.5, 16);
    auto htg = TimeGrid::make(0.0, 10.0, 800);
    auto ghalf = sample_half(sg, [](double x) { return x * std::exp(-(x - 1.5) * (x - 1.5)); });
    auto gd = ExtendedInitialData::make(ghalf, ExtensionKind::odd);
    auto h = sample_series(htg, pulse);
    auto g0 = ExtendedInitialData::make(HalfLineField::zeros(sg), ExtensionKind::zero);

    auto both = linear_ibvp(gd, h, sg, tg, 0.3);
    auto only_g = linear_ibvp(gd, BoundarySeries::zeros(htg), sg, tg, 0.3);
    auto only_h = linear_ibvp(g0, h, sg, tg, 0.3);
    double err = 0.0, scale = 1e-300;
    for (size_t i = 0; i < both.values.size(); ++i) {
        err = std::max(err, std::abs(both.values[i] - only_g.values[i] - only_h.values[i]));
        scale = std::max(scale, std::abs(both.values[i]));
    }
    CHECK(err < 1e-11 * scale);
}

TEST_CASE("extension independence of the linear solution on the half line") {
    auto sg = SpatialGrid::make(30.0, 1 << 11);
    auto tg = TimeGrid::make(0.0, 1.0, 16);
    auto htg = TimeGrid::make(0.0, 10.0, 1000);
    auto ghalf = sample_half(sg, [](double x) { return x * x * std::exp(-(x - 2.0) * (x - 2.0)); });
    auto h = sample_series(htg, pulse);

    auto u_odd = linear_ibvp(ExtendedInitialData::make(ghalf, ExtensionKind::odd), h, sg, tg, 0.3);
    auto u_zero = linear_ibvp(ExtendedInitialData::make(ghalf, ExtensionKind::zero), h, sg, tg, 0.3);
    for (int m = 0; m <= 16; m += 4) {
        double num = 0.0, den = 1e-300;
        const int j0 = sg.zero_index();
        for (int j = j0; j < sg.n_points; ++j) {
            num += std::norm(u_odd.at(m, j) - u_zero.at(m, j));
            den += std::norm(u_odd.at(m, j));
        }
        CHECK(std::sqrt(num / den) < 1e-4);
    }
}

TEST_CASE("trace at zero: separable field and error contract") {
    auto sg = SpatialGrid::make(10.0, 256);
    auto tg = TimeGrid::make(0.0, 1.0, 8);
    auto u = SpaceTimeField::zeros(sg, tg);
    for (int m = 0; m < tg.n_nodes(); ++m) {
        const cdouble w = std::polar(1.0, 0.3 * tg.t(m));
        for (int j = 0; j < sg.n_points; ++j) u.at(m, j) = std::exp(-sg.x(j) * sg.x(j)) * w;
    }
    auto tr = trace_at_zero(u);
    for (int m = 0; m < tg.n_nodes(); ++m)
        CHECK(std::abs(tr.values[m] - std::polar(1.0, 0.3 * tg.t(m))) < 1e-14);
}

TEST_CASE("Kato smoothing ratio is bounded and refinement-stable") {
    // || eta D0(W_R g) ||_{H^{(2s+1)/4}_t} / ||g||_{H^s} over randomized data
    auto run = [](int nx, int nt, double s, uint64_t seed) {
        auto sg = SpatialGrid::make(16.0, nx);
        auto tg = TimeGrid::make(-4.0, 8.0, nt);
        Rng rng(seed);
        double worst = 0.0;
        for (int i = 0; i < 12; ++i) {
            ComplexField1D f = ComplexField1D::zeros(sg);
            for (int c = 0; c < 4; ++c) {
                const double a = rng.uniform(0.3, 1.0), x0 = rng.uniform(-3.0, 3.0),
                             w = rng.uniform(0.6, 1.5), v = rng.uniform(-2.5, 2.5);
                const cdouble ph = rng.unit_phase();
                for (int j = 0; j < sg.n_points; ++j) {
                    const double x = sg.x(j);
                    f.values[j] += a * ph * std::exp(-std::norm((x - x0)) / (w * w)) * std::polar(1.0, v * x);
                }
            }
            auto fh = forward_transform(f);
            auto trace = windowed_free_trace(sg, fh, tg);
            const double num = hr_norm_series(tg, trace, (2.0 * s + 1.0) / 4.0);
            const double den = hs_norm_line(f, s);
            worst = std::max(worst, num / den);
        }
        return worst;
    };
    for (double s : {0.25, 1.0, 2.0}) {
        const double base = run(256, 255, s, 99);
        const double fine = run(512, 511, s, 99);
        CHECK(base < 20.0);
        CHECK(std::fabs(fine - base) <= 0.25 * base);
    }
}
