#pragma once

#include <memory>
#include <string>

#include "nls/filon.hpp"
#include "nls/grid.hpp"

namespace nls {

/// Exponent triple (s, b, a) with the admissibility constraints of the
/// half-line theory: 0 < s < 5/2 with s != 1/2, 3/2; 0 < b < 1/2;
/// 0 <= a < min(2s, 1/2, 5/2 - s).
struct SobolevParams {
    double s = 1.0;
    double b = 0.45;
    double a = 0.0;
    double b_eps() const { return 0.5 - b; }

    static double a_max(double s) { return std::min({2.0 * s, 0.5, 2.5 - s}); }

    /// Throws std::invalid_argument naming the violated constraint.
    static SobolevParams validated(double s, double b, double a);
};

enum class ExtensionKind { zero, even, odd };

const char* to_string(ExtensionKind k);

/// Samples of the boundary datum h on [0, T] plus its cached half-line
/// Fourier transform  hhat(xi) = int_0^infty e^{-i xi t} h(t) dt.
struct BoundarySeries {
    TimeGrid tgrid;
    std::vector<cdouble> values;

    BoundarySeries() = default;
    BoundarySeries(const TimeGrid& tg, std::vector<cdouble> v) : tgrid(tg), values(std::move(v)) {}

    static BoundarySeries zeros(const TimeGrid& tg) {
        return BoundarySeries(tg, std::vector<cdouble>(tg.n_nodes(), cdouble(0.0)));
    }
    bool is_zero() const {
        for (const auto& z : values)
            if (z != cdouble(0.0)) return false;
        return true;
    }
    cdouble value_at_origin() const { return values.empty() ? cdouble(0.0) : values.front(); }

    const HalfLineFourierTable& transform() const;

  private:
    mutable std::shared_ptr<HalfLineFourierTable> xform_;
};

/// hhat(xi) for the zero-extended series (composite Filon-Simpson quadrature
/// on the time grid plus analytic exponential tail correction).
cdouble half_line_fourier(const BoundarySeries& h, double xi);

/// Whole-line field agreeing with f on x >= 0.
///  zero: truncation by the indicator of (0, infinity);
///  even: f(|x|);  odd: sign(x) f(|x|).
/// For kind = odd the compatibility hypothesis f(0) = 0 is enforced to
/// `odd_tol` (relative to max |f|).
ComplexField1D extend(const HalfLineField& f, ExtensionKind kind, double odd_tol = 1e-8);

/// ( sum <xi_k>^{2s} |fhat(xi_k)|^2 dxi / (2 pi) )^{1/2}; the L^2 norm at s=0.
double hs_norm_line(const ComplexField1D& f, double s);
double hs_norm_line_spectrum(const SpatialGrid& g, std::span<const cdouble> fhat, double s);

/// Fixed-extension upper bound for the half-line H^s norm; `kind` must be
/// admissible for s (zero: s < 1/2; even: 1/2 < s < 3/2; odd: s < 5/2 with
/// f(0) = 0).  Returns the norm of the chosen extension.
double hs_norm_halfline(const HalfLineField& f, double s, ExtensionKind kind);

/// Admissibility of (s, kind) per the extension lemma ranges; `why` receives
/// the violated range on failure.
bool extension_admissible(double s, ExtensionKind kind, bool trace_vanishes, std::string* why = nullptr);

/// Sobolev norm of a compactly supported time series on its grid:
/// ( sum <tau>^{2r} |fhat(tau)|^2 dtau / (2 pi) )^{1/2}.  The series should
/// vanish near both grid ends (smoothly windowed).
double hr_norm_series(const TimeGrid& tg, std::span<const cdouble> values, double r);

/// Relative compatibility defect |g(0) - h(0)| / (1 + max(|g(0)|, |h(0)|)).
double compatibility_defect(cdouble g0, cdouble h0);

}  // namespace nls
