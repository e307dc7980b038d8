#pragma once

#include "nls/grid.hpp"

namespace nls {

/// Oscillatory moments over a centered panel [-h, h] for the kernel
/// e^{i omega sigma}:  M_k = int sigma^k e^{i omega sigma} d sigma, k = 0,1,2,
/// and the left-half moments L_k over [-h, 0].  Closed forms with series
/// fallback for small |omega h| (at omega = 0 the full-panel weights reduce to
/// composite Simpson).
struct FilonMoments {
    cdouble m0, m1, m2;  // full panel
    cdouble l0, l1, l2;  // left half
};
FilonMoments filon_moments(double omega, double h);

/// int_{c-h}^{c+h} e^{i omega t} q(t) dt where q is the quadratic through
/// (c-h, f0), (c, f1), (c+h, f2).
cdouble filon_panel(double omega, double c, double h, cdouble f0, cdouble f1, cdouble f2);

/// Gauss-Legendre nodes/weights on [-1, 1] (Newton iteration on P_n).
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

/// Prepared evaluator of the half-line Fourier transform
///   fhat(xi) = int_0^infty e^{-i xi t} f(t) dt
/// from samples on a uniform grid starting at t = 0, via piecewise-quadratic
/// Filon quadrature plus an analytic exponential-tail correction beyond the
/// horizon.  Emits a warning on stderr when the data has not decayed at the
/// horizon and no stable tail model could be fit.
class HalfLineFourierTable {
  public:
    HalfLineFourierTable(const TimeGrid& tgrid, std::span<const cdouble> values,
                         double decay_tol = 1e-8, bool warn = true);

    cdouble operator()(double xi) const;

    double horizon() const { return horizon_; }
    bool has_tail() const { return tail_active_; }
    /// Scale on which fhat oscillates in xi (the effective support of f,
    /// measured as the 99.9% mass quantile); sizes quadrature panels
    /// downstream.
    double variation_scale() const { return var_scale_; }
    double peak_abs() const { return peak_; }

  private:
    struct Panel {
        double c, h;
        cdouble f0, f1, f2;
    };
    std::vector<Panel> panels_;
    // optional final linear piece when the node count is even
    bool has_linear_tail_panel_ = false;
    double lin_a_ = 0, lin_b_ = 0;
    cdouble lin_fa_, lin_fb_;

    bool tail_active_ = false;
    cdouble tail_value_;   // f(T)
    cdouble tail_alpha_;   // f(t) ~ f(T) e^{alpha (t-T)}, Re alpha < 0
    double horizon_ = 0.0;
    double peak_ = 0.0;
    double var_scale_ = 0.0;
};

/// Cumulative retarded integral used by the Duhamel machinery: given samples
/// a_m = a(t_m) on a uniform grid and a frequency omega, fills out[m] with
///   int_{t_0}^{t_m} e^{i omega t} a(t) dt
/// by cumulative Filon-Simpson (quadratic amplitude per node pair, kernel
/// integrated exactly).
void filon_cumulative(double omega, const TimeGrid& tgrid, std::span<const cdouble> a,
                      std::span<cdouble> out);

}  // namespace nls
