#include "nls/bump.hpp"

#include <cmath>
#include <stdexcept>

namespace nls {

namespace {
inline double qexp(double y) { return y > 0.0 ? std::exp(-1.0 / y) : 0.0; }
}

double cutoff_eta(double t) {
    const double a = std::fabs(t);
    if (a <= 1.0) return 1.0;
    if (a >= 2.0) return 0.0;
    const double up = qexp(2.0 - a);
    return up / (up + qexp(a - 1.0));
}

double cutoff_eta_scaled(double t, double T) {
    if (!(T > 0.0)) throw std::invalid_argument("cutoff_eta_scaled: T must be positive");
    return cutoff_eta(t / T);
}

double cutoff_rho(double x) {
    if (x >= 0.0) return 1.0;
    if (x <= -2.0) return 0.0;
    const double up = qexp(x + 2.0);
    return up / (up + qexp(-x));
}

}  // namespace nls
