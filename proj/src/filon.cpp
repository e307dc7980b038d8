#include "nls/filon.hpp"

#include <cmath>
#include <iostream>

namespace nls {

namespace {

const cdouble kI(0.0, 1.0);

// series sum_{k>=0} (-i theta)^k / (k! (k+m)), m = 1,2,3
cdouble half_series(double theta, int m) {
    cdouble term(1.0, 0.0);
    cdouble sum = term / static_cast<double>(m);
    const cdouble z(0.0, -theta);
    for (int k = 1; k <= 40; ++k) {
        term *= z / static_cast<double>(k);
        cdouble add = term / static_cast<double>(k + m);
        sum += add;
        if (std::abs(add) < 1e-18 * std::abs(sum)) break;
    }
    return sum;
}

}  // namespace

FilonMoments filon_moments(double omega, double h) {
    FilonMoments fm;
    const double theta = omega * h;
    if (std::fabs(theta) < 0.5) {
        // series branch (stable near omega = 0; reduces to Simpson weights)
        const double t2 = theta * theta;
        double s0 = 0, s1 = 0, s2 = 0;
        {  // m0 = 2h * sum (-1)^k theta^{2k} / (2k+1)!
            double term = 1.0, sum = 1.0;
            for (int k = 1; k <= 12; ++k) {
                term *= -t2 / ((2.0 * k) * (2.0 * k + 1.0));
                sum += term;
            }
            s0 = sum;
        }
        {  // (sin t - t cos t)/t^3 = sum_k (-1)^k (2k+2)/(2k+3)! theta^{2k}
            double fact = 6.0;  // 3!
            double p = 1.0;
            double sum = 2.0 / fact;  // k=0: 1/3
            for (int k = 1; k <= 12; ++k) {
                fact *= (2.0 * k + 2.0) * (2.0 * k + 3.0);
                p *= -t2;
                sum += (2.0 * k + 2.0) / fact * p;
            }
            s1 = sum;
        }
        {  // m2/.. : 2h^3 * (1/3 - theta^2/10 + theta^4/168 - theta^6/6480 ...)
            // a_k = (-1)^k (2k+2)^2? derive from m2 = 2h^2 sin(t)/omega - 4(sin t - t cos t)/omega^3
            // sin t / t = sum (-1)^k t^{2k}/(2k+1)!; (sin t - t cos t)/t^3 = s1
            double sinc = s0;
            s2 = 2.0 * sinc - 4.0 * s1;  // coefficient of h^3 after factoring
        }
        fm.m0 = 2.0 * h * s0;
        fm.m1 = cdouble(0.0, 2.0 * h * h * theta * s1);
        fm.m2 = h * h * h * s2;
        fm.l0 = h * half_series(theta, 1);
        fm.l1 = -h * h * half_series(theta, 2);
        fm.l2 = h * h * h * half_series(theta, 3);
        return fm;
    }
    const double st = std::sin(theta), ct = std::cos(theta);
    const double w = omega, w2 = w * w, w3 = w2 * w;
    fm.m0 = 2.0 * st / w;
    fm.m1 = cdouble(0.0, 2.0 * (st - theta * ct) / w2);
    fm.m2 = 2.0 * h * h * st / w - 4.0 * (st - theta * ct) / w3;
    const cdouble em = std::polar(1.0, -theta);  // e^{-i theta}
    fm.l0 = (1.0 - em) / (kI * w);
    fm.l1 = (1.0 - em) / w2 - kI * h * em / w;
    fm.l2 = 2.0 * kI / w3 - em * (-kI * h * h / w - 2.0 * h / w2 + 2.0 * kI / w3);
    return fm;
}

cdouble filon_panel(double omega, double c, double h, cdouble f0, cdouble f1, cdouble f2) {
    FilonMoments fm = filon_moments(omega, h);
    const cdouble d1 = (f2 - f0) / (2.0 * h);
    const cdouble d2 = (f0 - 2.0 * f1 + f2) / (2.0 * h * h);
    return std::polar(1.0, omega * c) * (f1 * fm.m0 + d1 * fm.m1 + d2 * fm.m2);
}

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
    nodes.assign(n, 0.0);
    weights.assign(n, 0.0);
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        double z = std::cos(kPi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p1 = 1.0, p2 = 0.0;
            for (int j = 0; j < n; ++j) {
                double p3 = p2;
                p2 = p1;
                p1 = ((2.0 * j + 1.0) * z * p2 - j * p3) / (j + 1.0);
            }
            pp = n * (z * p1 - p2) / (z * z - 1.0);
            double z1 = z;
            z = z1 - p1 / pp;
            if (std::fabs(z - z1) < 1e-15) break;
        }
        nodes[i] = -z;
        nodes[n - 1 - i] = z;
        weights[i] = 2.0 / ((1.0 - z * z) * pp * pp);
        weights[n - 1 - i] = weights[i];
    }
}

HalfLineFourierTable::HalfLineFourierTable(const TimeGrid& tgrid, std::span<const cdouble> values,
                                           double decay_tol, bool warn) {
    if (std::fabs(tgrid.t0) > 1e-12)
        throw std::invalid_argument("HalfLineFourierTable: series must start at t = 0");
    if (static_cast<int>(values.size()) != tgrid.n_nodes())
        throw std::invalid_argument("HalfLineFourierTable: size mismatch");
    require_finite(values, "HalfLineFourierTable");

    const int M = tgrid.n_steps;
    const double dt = tgrid.dt;
    horizon_ = tgrid.t_end();
    for (const auto& z : values) peak_ = std::max(peak_, std::abs(z));

    // effective support: 99.9% quantile of the |f| mass
    double total = 0.0;
    for (const auto& z : values) total += std::abs(z);
    if (total > 0.0) {
        double acc = 0.0;
        int mq = M;
        for (int m = 0; m <= M; ++m) {
            acc += std::abs(values[m]);
            if (acc >= 0.999 * total) {
                mq = m;
                break;
            }
        }
        var_scale_ = std::max(tgrid.t(mq), 4.0 * dt);
    } else {
        var_scale_ = dt;
    }

    int pairs = M / 2;
    panels_.reserve(pairs);
    for (int j = 0; j < pairs; ++j) {
        Panel p;
        p.c = tgrid.t(2 * j + 1);
        p.h = dt;
        p.f0 = values[2 * j];
        p.f1 = values[2 * j + 1];
        p.f2 = values[2 * j + 2];
        panels_.push_back(p);
    }
    if (M % 2 == 1) {
        has_linear_tail_panel_ = true;
        lin_a_ = tgrid.t(M - 1);
        lin_b_ = tgrid.t(M);
        lin_fa_ = values[M - 1];
        lin_fb_ = values[M];
    }

    const cdouble f_end = values[M];
    if (std::abs(f_end) > 0.0) {
        const cdouble prev = values[M - 1];
        if (std::abs(prev) > 0.0) {
            cdouble alpha = std::log(f_end / prev) / dt;
            if (std::isfinite(alpha.real()) && std::isfinite(alpha.imag()) && alpha.real() < 0.0 &&
                std::abs(alpha) * dt < 3.0) {
                tail_active_ = true;
                tail_value_ = f_end;
                tail_alpha_ = alpha;
            }
        }
        if (!tail_active_ && std::abs(f_end) > decay_tol * std::max(peak_, 1e-300) && warn) {
            std::cerr << "[nls] warning: boundary series has not decayed at its horizon t=" << horizon_
                      << " (|f(T)| = " << std::abs(f_end)
                      << ", no stable tail model); transform truncation error up to ~" << std::abs(f_end)
                      << " per unit frequency band\n";
        }
    }
}

cdouble HalfLineFourierTable::operator()(double xi) const {
    const double omega = -xi;  // kernel e^{-i xi t} = e^{i omega t}
    cdouble sum(0.0, 0.0);
    if (!panels_.empty()) {
        const double h = panels_[0].h;
        const FilonMoments fm = filon_moments(omega, h);
        // phase recurrence over uniformly spaced panel centers
        cdouble phase = std::polar(1.0, omega * panels_[0].c);
        const cdouble rot = std::polar(1.0, omega * 2.0 * h);
        for (size_t j = 0; j < panels_.size(); ++j) {
            if (j % 256 == 255) phase = std::polar(1.0, omega * panels_[j].c);
            const Panel& p = panels_[j];
            const cdouble d1 = (p.f2 - p.f0) / (2.0 * h);
            const cdouble d2 = (p.f0 - 2.0 * p.f1 + p.f2) / (2.0 * h * h);
            sum += phase * (p.f1 * fm.m0 + d1 * fm.m1 + d2 * fm.m2);
            phase *= rot;
        }
    }
    if (has_linear_tail_panel_) {
        const double h = 0.5 * (lin_b_ - lin_a_);
        const double c = 0.5 * (lin_a_ + lin_b_);
        const FilonMoments fm = filon_moments(omega, h);
        const cdouble fm1 = 0.5 * (lin_fa_ + lin_fb_);
        const cdouble slope = (lin_fb_ - lin_fa_) / (2.0 * h);
        sum += std::polar(1.0, omega * c) * (fm1 * fm.m0 + slope * fm.m1);
    }
    if (tail_active_) {
        sum += tail_value_ * std::polar(1.0, -xi * horizon_) / (cdouble(0.0, xi) - tail_alpha_);
    }
    return sum;
}

void filon_cumulative(double omega, const TimeGrid& tgrid, std::span<const cdouble> a,
                      std::span<cdouble> out) {
    const int M = tgrid.n_steps;
    const double h = tgrid.dt;
    const FilonMoments fm = filon_moments(omega, h);
    out[0] = cdouble(0.0, 0.0);
    cdouble phase = std::polar(1.0, omega * tgrid.t(1));
    const cdouble rot = std::polar(1.0, omega * 2.0 * h);
    int pairs = M / 2;
    for (int j = 0; j < pairs; ++j) {
        if (j % 256 == 255) phase = std::polar(1.0, omega * tgrid.t(2 * j + 1));
        const cdouble f0 = a[2 * j], f1 = a[2 * j + 1], f2 = a[2 * j + 2];
        const cdouble d1 = (f2 - f0) / (2.0 * h);
        const cdouble d2 = (f0 - 2.0 * f1 + f2) / (2.0 * h * h);
        out[2 * j + 1] = out[2 * j] + phase * (f1 * fm.l0 + d1 * fm.l1 + d2 * fm.l2);
        out[2 * j + 2] = out[2 * j] + phase * (f1 * fm.m0 + d1 * fm.m1 + d2 * fm.m2);
        phase *= rot;
    }
    if (M % 2 == 1) {
        // final interval: right half of the quadratic through the last three nodes
        const cdouble f0 = a[M - 2], f1 = a[M - 1], f2 = a[M];
        const cdouble d1 = (f2 - f0) / (2.0 * h);
        const cdouble d2 = (f0 - 2.0 * f1 + f2) / (2.0 * h * h);
        const cdouble ph = std::polar(1.0, omega * tgrid.t(M - 1));
        const cdouble right0 = fm.m0 - fm.l0, right1 = fm.m1 - fm.l1, right2 = fm.m2 - fm.l2;
        out[M] = out[M - 1] + ph * (f1 * right0 + d1 * right1 + d2 * right2);
    }
}

}  // namespace nls
