#include "nls/propagators.hpp"

#include <cmath>
#include <iostream>
#include <sstream>

#include "nls/bump.hpp"
#include "nls/fft.hpp"

namespace nls {

namespace {

const cdouble kI(0.0, 1.0);

// e^{-i t xi_k^2} over a uniform time grid via per-mode rotation, accumulating
// coef_k into out[m]; periodic exact refresh keeps the rotation drift at bay.
void accumulate_free_traces(const SpatialGrid& g, std::span<const cdouble> coefs, const TimeGrid& tg,
                            std::span<cdouble> out) {
    const int n = g.n_points, nt = tg.n_nodes();
    for (int k = 0; k < n; ++k) {
        const cdouble c = coefs[k];
        if (c == cdouble(0.0)) continue;
        const double xi2 = g.xi(k) * g.xi(k);
        cdouble phase = std::polar(1.0, -xi2 * tg.t0);
        const cdouble rot = std::polar(1.0, -xi2 * tg.dt);
        for (int m = 0; m < nt; ++m) {
            if (m % 512 == 511) phase = std::polar(1.0, -xi2 * tg.t(m));
            out[m] += c * phase;
            phase *= rot;
        }
    }
}

}  // namespace

double BoundarySpectralDensity::weighted_norm(double s) const {
    double sum = 0.0;
    for (int k = 0; k < grid.n_points; ++k) {
        const double b = grid.xi(k);
        if (b <= 0.0) continue;
        sum += std::pow(1.0 + b * b, s) * std::norm(values[k]);
    }
    return std::sqrt(sum * grid.dxi());
}

ComplexField1D free_propagator(const ComplexField1D& g, double t) {
    if (!std::isfinite(t)) throw std::invalid_argument("free_propagator: t must be finite");
    auto ghat = forward_transform(g);
    free_multiplier(g.grid, ghat, t);
    return inverse_transform(g.grid, ghat);
}

void free_multiplier(const SpatialGrid& g, std::span<cdouble> ghat, double t) {
    for (int k = 0; k < g.n_points; ++k) {
        const double xi = g.xi(k);
        ghat[k] *= std::polar(1.0, -t * xi * xi);
    }
}

std::vector<cdouble> windowed_free_trace(const SpatialGrid& g, std::span<const cdouble> ghat,
                                         const TimeGrid& tg) {
    std::vector<cdouble> out(tg.n_nodes(), cdouble(0.0));
    std::vector<cdouble> coefs(ghat.begin(), ghat.end());
    const double w = g.dxi() / (2.0 * kPi);
    for (auto& c : coefs) c *= w;
    accumulate_free_traces(g, coefs, tg, out);
    for (int m = 0; m < tg.n_nodes(); ++m) out[m] *= cutoff_eta(tg.t(m));
    return out;
}

BoundarySpectralDensity boundary_density(const BoundarySeries& h, const SpatialGrid& grid, int sign) {
    if (sign != 1 && sign != -1) throw std::invalid_argument("boundary_density: sign must be +1 or -1");
    BoundarySpectralDensity d{sign, grid, std::vector<cdouble>(grid.n_points, cdouble(0.0))};
    const auto& table = h.transform();
    for (int k = 0; k < grid.n_points; ++k) {
        const double b = grid.xi(k);
        if (b > 0.0) d.values[k] = b * table(sign * b * b);
    }
    return d;
}

namespace {

std::vector<cdouble> w1_density(const SpectralSource& src, const SpatialGrid& g) {
    std::vector<cdouble> psi(g.n_points, cdouble(0.0));
    if (src.empty_data()) return psi;
    double peak = 0.0;
    for (int k = 0; k < g.n_points; ++k) {
        const double b = g.xi(k);
        if (b > 0.0) {
            psi[k] = b * src(-b * b);
            peak = std::max(peak, std::abs(psi[k]));
        }
    }
    // resolution checks: density should have decayed at the top frequency and
    // be sampled finely enough for its oscillation scale
    const double b_top = g.xi(g.n_points / 2 - 1);
    const double top = std::abs(psi[g.n_points / 2 - 1]);
    if (peak > 0.0 && top > 1e-4 * peak) {
        std::cerr << "[nls] warning: boundary density not resolved by the spatial spectral grid "
                  << "(|psi(" << b_top << ")| / peak = " << top / peak
                  << "); consider larger n_points or smaller half_width\n";
    }
    // sampling-resolution check: beyond beta_ok the density oscillates faster
    // than the bin spacing resolves; only a problem where it is non-negligible
    const double beta_ok = kPi / (2.0 * src.variation_scale() * g.dxi());
    double unresolved = 0.0;
    for (int k = 0; k < g.n_points; ++k) {
        const double b = g.xi(k);
        if (b > beta_ok) unresolved = std::max(unresolved, std::abs(psi[k]));
    }
    if (peak > 0.0 && unresolved > 1e-4 * peak) {
        std::cerr << "[nls] warning: spectral grid too coarse to resolve the boundary density variation "
                  << "beyond beta = " << beta_ok << " (relative amplitude " << unresolved / peak
                  << " there); refine the grid\n";
    }
    return psi;
}

}  // namespace

SpaceTimeField boundary_w1_source(const SpectralSource& src, const SpatialGrid& sgrid, const TimeGrid& tgrid) {
    SpaceTimeField u = SpaceTimeField::zeros(sgrid, tgrid);
    if (src.empty_data()) return u;
    auto psi = w1_density(src, sgrid);
    // (1/pi) normalization against the (1/2pi) inversion: evolve 2 psi.
    for (auto& z : psi) z *= 2.0;
    std::vector<cdouble> spec(sgrid.n_points);
    for (int m = 0; m < tgrid.n_nodes(); ++m) {
        std::copy(psi.begin(), psi.end(), spec.begin());
        free_multiplier(sgrid, spec, tgrid.t(m));
        field_of(sgrid, spec, u.row(m));
    }
    return u;
}

SpaceTimeField boundary_w1(const BoundarySeries& h, const SpatialGrid& sgrid, const TimeGrid& tgrid) {
    return boundary_w1_source(SpectralSource::of(h), sgrid, tgrid);
}

cdouble boundary_w1_direct(const BoundarySeries& h, double x, double t, double beta_cap) {
    const auto& table = h.transform();
    static std::vector<double> gl_x, gl_w;
    if (gl_x.empty()) gauss_legendre(16, gl_x, gl_w);

    auto integrand = [&](double b) -> cdouble {
        return std::polar(1.0, -b * b * t + b * x) * b * table(-b * b);
    };
    auto panel = [&](double a, double b2) -> cdouble {
        const double c = 0.5 * (a + b2), hw = 0.5 * (b2 - a);
        cdouble s(0.0);
        for (size_t q = 0; q < gl_x.size(); ++q) s += gl_w[q] * integrand(c + hw * gl_x[q]);
        return s * hw;
    };
    // adaptive bisection with a fixed absolute floor from the density scale
    double scale = 0.0;
    for (int i = 1; i <= 32; ++i) scale = std::max(scale, std::abs(integrand(beta_cap * i / 32.0)));
    const double tol = 1e-12 * std::max(scale * beta_cap, 1e-300);
    struct Frame {
        double a, b;
        cdouble whole;
        int depth;
    };
    cdouble total(0.0);
    std::vector<Frame> stack{{0.0, beta_cap, panel(0.0, beta_cap), 0}};
    while (!stack.empty()) {
        Frame f = stack.back();
        stack.pop_back();
        const double mid = 0.5 * (f.a + f.b);
        const cdouble left = panel(f.a, mid), right = panel(mid, f.b);
        if (std::abs(left + right - f.whole) < std::max(tol, 1e-14 * std::abs(left + right)) ||
            f.depth >= 24) {
            total += left + right;
        } else {
            stack.push_back({f.a, mid, left, f.depth + 1});
            stack.push_back({mid, f.b, right, f.depth + 1});
        }
    }
    return total / kPi;
}

namespace {

struct BetaRule {
    std::vector<double> nodes;
    std::vector<cdouble> density;  // (1/pi) w_q beta_q src(beta_q^2)
    double cap = 0.0;
};

double scan_amplitude_cap(const SpectralSource& src, double xi_max, const W2Options& opts, bool* coarse) {
    const int ns = 1024;
    const double db = xi_max / ns;
    std::vector<double> amp(ns);
    double peak = 0.0, source_peak = 0.0;
    for (const auto& t : src.terms) source_peak = std::max(source_peak, std::abs(t.coef) * t.table->peak_abs());
    for (int i = 0; i < ns; ++i) {
        const double b = db * (i + 1.0);
        amp[i] = std::abs(b * src(b * b));
        peak = std::max(peak, amp[i]);
    }
    if (peak == 0.0) {
        *coarse = false;
        return 0.0;
    }
    // pointwise cut: last scan point with non-negligible density
    int last = ns - 1;
    while (last > 0 && amp[last] <= opts.amp_trunc * peak) --last;
    double cap_point = db * (last + 3.0);
    // integrated-tail cut: the dropped density mass (which bounds the field
    // truncation error up to 1/pi) stays below tail_tol_rel * source peak
    const double tol_abs = opts.tail_tol_rel * std::max(source_peak, 1e-300) * kPi;
    double acc = 0.0;
    int i_tail = ns - 1;
    for (int i = ns - 1; i >= 0; --i) {
        acc += amp[i] * db;
        if (acc > tol_abs) break;
        i_tail = i;
    }
    double cap_tail = db * (i_tail + 2.0);
    double cap = std::min({cap_point, cap_tail, xi_max});
    // unresolved-density warning only if significant mass sits at the grid cutoff
    *coarse = (cap >= xi_max - 2.0 * db) && (amp[ns - 1] > 1e-4 * peak);
    return cap;
}

BetaRule build_beta_rule(const SpectralSource& src, double cap, double t_scale, const W2Options& opts) {
    static std::vector<double> gl_x, gl_w;
    static int gl_n = 0;
    if (gl_n != opts.nodes_per_panel) {
        gauss_legendre(opts.nodes_per_panel, gl_x, gl_w);
        gl_n = opts.nodes_per_panel;
    }
    BetaRule rule;
    rule.cap = cap;
    if (cap <= 0.0) return rule;
    double b = 0.0;
    const double min_w = cap / 16384.0;
    while (b < cap) {
        double w = std::min(cap / 8.0, opts.phase_budget / (2.0 * std::max(b, 0.5) * t_scale));
        w = std::max(w, min_w);
        const double b2 = std::min(cap, b + w);
        const double c = 0.5 * (b + b2), hw = 0.5 * (b2 - b);
        for (int q = 0; q < opts.nodes_per_panel; ++q) {
            const double beta = c + hw * gl_x[q];
            rule.nodes.push_back(beta);
            rule.density.push_back(hw * gl_w[q] / kPi * beta * src(beta * beta));
        }
        b = b2;
    }
    return rule;
}

cdouble w2_point(const BetaRule& rule, double x, double t) {
    cdouble s(0.0);
    for (size_t q = 0; q < rule.nodes.size(); ++q) {
        const double b = rule.nodes[q], bx = b * x;
        if (bx > 45.0) continue;
        const double r = (bx >= 0.0) ? 1.0 : cutoff_rho(bx);
        if (r == 0.0) continue;
        s += rule.density[q] * (r * std::exp(-bx)) * std::polar(1.0, b * b * t);
    }
    return s;
}

void w2_accumulate_field(const BetaRule& rule, const SpatialGrid& sg, const TimeGrid& tg,
                         const W2Options& opts, SpaceTimeField& out) {
    const int n = sg.n_points, nt = tg.n_nodes(), j0 = sg.zero_index();
    std::vector<double> colw(n);
    for (size_t q = 0; q < rule.nodes.size(); ++q) {
        const double b = rule.nodes[q];
        // active column range: x >= 0 until beta*x exceeds the decay cut,
        // x < 0 until the rho cutoff kills the integrand (beta*x <= -2)
        int j_hi = j0 + static_cast<int>(std::floor(opts.x_decay_cut / (b * sg.dx)));
        j_hi = std::min(j_hi, n - 1);
        int j_lo = j0 - static_cast<int>(std::ceil(2.0 / (b * sg.dx)));
        j_lo = std::max(j_lo, 0);
        for (int j = j_lo; j <= j_hi; ++j) {
            const double bx = b * sg.x(j);
            const double r = (bx >= 0.0) ? 1.0 : cutoff_rho(bx);
            colw[j] = r == 0.0 ? 0.0 : r * std::exp(-bx);
        }
        const double b2 = b * b;
        cdouble phase = std::polar(1.0, b2 * tg.t0) * rule.density[q];
        const cdouble rot = std::polar(1.0, b2 * tg.dt);
        for (int m = 0; m < nt; ++m) {
            if (m % 512 == 511) phase = std::polar(1.0, b2 * tg.t(m)) * rule.density[q];
            cdouble* row = &out.at(m, 0);
            for (int j = j_lo; j <= j_hi; ++j) row[j] += phase * colw[j];
            phase *= rot;
        }
    }
}

}  // namespace

SpaceTimeField boundary_w2_source(const SpectralSource& src, const SpatialGrid& sgrid, const TimeGrid& tgrid,
                                  const W2Options& opts) {
    SpaceTimeField u = SpaceTimeField::zeros(sgrid, tgrid);
    if (src.empty_data()) return u;

    bool coarse = false;
    const double cap = scan_amplitude_cap(src, sgrid.xi_max(), opts, &coarse);
    if (coarse) {
        std::cerr << "[nls] warning: evanescent boundary density truncated at the spatial grid cutoff "
                  << sgrid.xi_max() << "; refine the grid to resolve it\n";
    }
    if (cap <= 0.0) return u;
    const double t_scale =
        std::max(std::fabs(tgrid.t0), std::fabs(tgrid.t_end())) + src.variation_scale();

    W2Options cur = opts;
    BetaRule rule = build_beta_rule(src, cap, t_scale, cur);
    // rule validation against a refined rule at probe points
    const double probe_x[] = {0.0, sgrid.dx, 0.5, -0.25, 0.25 * sgrid.half_width};
    const double probe_t[] = {tgrid.t0, tgrid.t0 + 0.5 * tgrid.span(), tgrid.t_end()};
    for (int attempt = 0;; ++attempt) {
        W2Options fine = cur;
        fine.phase_budget = 0.5 * cur.phase_budget;
        BetaRule ref = build_beta_rule(src, std::min(sgrid.xi_max(), cap * 1.1), t_scale, fine);
        double scale = 1e-300;
        for (double x : probe_x)
            for (double t : probe_t) scale = std::max(scale, std::abs(w2_point(ref, x, t)));
        double worst = 0.0;
        double bad_x = 0.0, bad_t = 0.0;
        for (double x : probe_x) {
            for (double t : probe_t) {
                const double d = std::abs(w2_point(rule, x, t) - w2_point(ref, x, t));
                if (d > worst) {
                    worst = d;
                    bad_x = x;
                    bad_t = t;
                }
            }
        }
        if (worst <= opts.validate_tol * scale) break;
        if (attempt >= opts.max_refine) {
            std::ostringstream os;
            os << "boundary_w2: quadrature did not converge (residual " << worst << " at x=" << bad_x
               << ", t=" << bad_t << " after " << attempt << " refinements)";
            throw NumericalError(os.str());
        }
        cur.phase_budget *= 0.5;
        rule = std::move(ref);
    }

    w2_accumulate_field(rule, sgrid, tgrid, opts, u);
    return u;
}

SpaceTimeField boundary_w2(const BoundarySeries& h, const SpatialGrid& sgrid, const TimeGrid& tgrid,
                           const W2Options& opts) {
    return boundary_w2_source(SpectralSource::of(h), sgrid, tgrid, opts);
}

SpaceTimeField boundary_flow(const SpectralSource& src, const SpatialGrid& sgrid, const TimeGrid& tgrid,
                             const W2Options& opts) {
    SpaceTimeField u = boundary_w2_source(src, sgrid, tgrid, opts);
    if (src.empty_data()) return u;
    SpaceTimeField w1 = boundary_w1_source(src, sgrid, tgrid);
    for (size_t i = 0; i < u.values.size(); ++i) u.values[i] += w1.values[i];
    return u;
}

SpaceTimeField linear_ibvp(const ExtendedInitialData& g, const BoundarySeries& h, const SpatialGrid& sgrid,
                           const TimeGrid& tgrid, double s, double compat_tol) {
    if (tgrid.t_end() > 1.0 + 1e-12)
        throw std::invalid_argument(
            "linear_ibvp: time horizon exceeds 1; patch longer evolutions through the solver");
    if (!(g.g_e.grid == sgrid)) throw std::invalid_argument("linear_ibvp: grid mismatch");
    if (s > 0.5) {
        const cdouble g0 = g.g_e.values[sgrid.zero_index()];
        const cdouble h0 = h.values.empty() ? cdouble(0.0) : h.values.front();
        const double defect = compatibility_defect(g0, h0);
        if (defect > compat_tol) {
            std::ostringstream os;
            os << "linear_ibvp: compatibility condition g(0) = h(0) required for s > 1/2 is violated "
               << "(relative defect " << defect << ")";
            throw ConfigError(os.str());
        }
    }

    auto ghat = forward_transform(g.g_e);

    // p(t) = eta(t) [W_R(t) g_e](0) sampled on [0, 2] (the support of eta)
    double dtp = std::min(tgrid.dt, 1.0 / 64.0);
    int np = static_cast<int>(std::ceil(2.0 / dtp));
    np += np % 2;
    TimeGrid pgrid = TimeGrid::make(0.0, 2.0, np);
    BoundarySeries p{pgrid, windowed_free_trace(sgrid, ghat, pgrid)};

    SpectralSource src;
    if (!h.is_zero()) src.terms.push_back({cdouble(1.0), &h.transform()});
    if (!p.is_zero()) src.terms.push_back({cdouble(-1.0), &p.transform()});

    SpaceTimeField u = boundary_flow(src, sgrid, tgrid);
    std::vector<cdouble> spec(sgrid.n_points);
    std::vector<cdouble> frow(sgrid.n_points);
    for (int m = 0; m < tgrid.n_nodes(); ++m) {
        std::copy(ghat.begin(), ghat.end(), spec.begin());
        free_multiplier(sgrid, spec, tgrid.t(m));
        field_of(sgrid, spec, frow);
        auto row = u.row(m);
        for (int j = 0; j < sgrid.n_points; ++j) row[j] += frow[j];
    }
    return u;
}

TraceSeries trace_at_zero(const SpaceTimeField& u) {
    const int j0 = u.sgrid.zero_index();
    if (std::fabs(u.sgrid.x(j0)) > 1e-12)
        throw std::invalid_argument("trace_at_zero: x = 0 is not a node of the spatial grid");
    TraceSeries tr{u.tgrid, std::vector<cdouble>(u.tgrid.n_nodes())};
    for (int m = 0; m < u.tgrid.n_nodes(); ++m) tr.values[m] = u.at(m, j0);
    return tr;
}

}  // namespace nls
