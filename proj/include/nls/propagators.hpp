#pragma once

#include "nls/errors.hpp"
#include "nls/sobolev.hpp"

namespace nls {

/// Half-line initial datum together with a chosen whole-line extension.
struct ExtendedInitialData {
    HalfLineField g_half;
    ComplexField1D g_e;
    ExtensionKind kind = ExtensionKind::zero;

    static ExtendedInitialData make(const HalfLineField& g, ExtensionKind kind, double odd_tol = 1e-8) {
        return ExtendedInitialData{g, extend(g, kind, odd_tol), kind};
    }
};

/// psi_hat(beta) = beta * hhat(sign * beta^2) for beta >= 0 (zero otherwise),
/// sampled on the spatial grid's dual frequencies.
struct BoundarySpectralDensity {
    int sign = -1;  // -1 feeds the oscillatory part, +1 the evanescent part
    SpatialGrid grid;
    std::vector<cdouble> values;

    /// ( int <beta>^{2s} |psi_hat|^2 dbeta )^{1/2} on the grid.
    double weighted_norm(double s) const;
};

/// Linear combination of prepared half-line Fourier transforms; lets the
/// boundary operators consume h - p - q without resampling any series.
struct SpectralSource {
    struct Term {
        cdouble coef;
        const HalfLineFourierTable* table;  // non-owning
    };
    std::vector<Term> terms;

    cdouble operator()(double xi) const {
        cdouble s(0.0);
        for (const auto& t : terms) s += t.coef * (*t.table)(xi);
        return s;
    }
    double variation_scale() const {
        double v = 1.0;
        for (const auto& t : terms) v = std::max(v, t.table->variation_scale());
        return v;
    }
    bool empty_data() const {
        for (const auto& t : terms)
            if (t.table->peak_abs() > 0.0 && std::abs(t.coef) > 0.0) return false;
        return true;
    }
    static SpectralSource of(const BoundarySeries& h) {
        SpectralSource s;
        if (!h.is_zero()) s.terms.push_back({cdouble(1.0), &h.transform()});
        return s;
    }
};

/// Free propagator e^{it Laplacian}: inverse transform of e^{-i t xi^2} ghat.
/// Exactly unitary on the discrete grid; t may be negative.
ComplexField1D free_propagator(const ComplexField1D& g, double t);

/// Multiply a spectrum by the free multiplier in place.
void free_multiplier(const SpatialGrid& g, std::span<cdouble> ghat, double t);

/// eta-windowed trace of the free flow at x = 0:  out[m] = eta(t_m) *
/// (1/2pi) * sum_k ghat(xi_k) e^{-i t_m xi_k^2} dxi.  Used for p(t).
std::vector<cdouble> windowed_free_trace(const SpatialGrid& g, std::span<const cdouble> ghat,
                                         const TimeGrid& tg);

BoundarySpectralDensity boundary_density(const BoundarySeries& h, const SpatialGrid& grid, int sign);

/// Oscillatory boundary part evaluated via the spectral density and the free
/// propagator; defined for all x and t (negative t allowed).
SpaceTimeField boundary_w1(const BoundarySeries& h, const SpatialGrid& sgrid, const TimeGrid& tgrid);
SpaceTimeField boundary_w1_source(const SpectralSource& src, const SpatialGrid& sgrid, const TimeGrid& tgrid);

/// Direct adaptive Gauss-Legendre quadrature of the oscillatory integral at a
/// single point; cross-check oracle for boundary_w1.
cdouble boundary_w1_direct(const BoundarySeries& h, double x, double t, double beta_cap);

struct W2Options {
    double amp_trunc = 1e-10;    // pointwise density truncation (relative)
    double tail_tol_rel = 1e-5;  // integrated-tail truncation relative to the source peak
    double phase_budget = 6.0;   // radians of e^{i beta^2 t} phase per panel
    int nodes_per_panel = 16;
    int max_refine = 4;
    double validate_tol = 1e-8;
    double x_decay_cut = 45.0;  // skip x with beta*x beyond this (e^{-45})
};

/// Evanescent boundary part W2 on the full grid (smooth rho cutoff for x < 0);
/// adaptive composite Gauss-Legendre in beta, shared rule across the grid.
SpaceTimeField boundary_w2(const BoundarySeries& h, const SpatialGrid& sgrid, const TimeGrid& tgrid,
                           const W2Options& opts = {});
SpaceTimeField boundary_w2_source(const SpectralSource& src, const SpatialGrid& sgrid, const TimeGrid& tgrid,
                                  const W2Options& opts = {});

/// W1 + W2 of the same source (the boundary flow with zero initial data),
/// valid for any horizon; internal building block.
SpaceTimeField boundary_flow(const SpectralSource& src, const SpatialGrid& sgrid, const TimeGrid& tgrid,
                             const W2Options& opts = {});

/// Solution of the linear problem with initial datum g and boundary datum h:
/// W_R(t) g_e + (W1 + W2)(h - p), p(t) = eta(t) [W_R(t) g_e](0).
/// The time horizon must not exceed 1 (patch longer runs via the solver);
/// the compatibility condition g(0) = h(0) is enforced for s > 1/2.
SpaceTimeField linear_ibvp(const ExtendedInitialData& g, const BoundarySeries& h, const SpatialGrid& sgrid,
                           const TimeGrid& tgrid, double s, double compat_tol = 1e-8);

/// The row of samples at x = 0 (x = 0 must be a grid node).
TraceSeries trace_at_zero(const SpaceTimeField& u);

}  // namespace nls
