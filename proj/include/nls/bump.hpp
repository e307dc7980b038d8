#pragma once

namespace nls {

/// Smooth transition bump built from q(y) = e^{-1/y} (y > 0).
/// cutoff_eta: equal to 1 on [-1,1], supported on [-2,2], monotone in between.
double cutoff_eta(double t);

/// cutoff_eta(t/T); plateau [-T,T], support [-2T,2T].
double cutoff_eta_scaled(double t, double T);

/// Smooth function equal to 1 for x >= 0 and supported on (-2, infinity).
double cutoff_rho(double x);

}  // namespace nls
