#pragma once

#include "nls/grid.hpp"

namespace nls {

/// Trapezoid-consistent approximation of the continuum Fourier transform
/// ghat(xi) = int e^{-i x xi} g(x) dx on the grid's dual frequencies:
/// out[k] = dx * (-1)^k * DFT(f)[k], so out[k] ~ ghat(xi(k)).
std::vector<cdouble> forward_transform(const ComplexField1D& f);

/// Exact inverse of forward_transform (round trip is identity to roundoff).
ComplexField1D inverse_transform(const SpatialGrid& grid, std::span<const cdouble> coeffs);

/// Raw centered-space FFT helpers on a grid (no finiteness checks); used in
/// inner loops.  `spectrum` and `field` may alias.
void spectrum_of(const SpatialGrid& g, std::span<const cdouble> field, std::span<cdouble> spectrum);
void field_of(const SpatialGrid& g, std::span<const cdouble> spectrum, std::span<cdouble> field);

/// 2D transform with physical scaling (dx*dt):
/// out[m*N + k] ~ uhat(xi(k), tau(m)) = int int e^{-i(x xi + t tau)} u dx dt.
/// The caller must have applied a smooth time window if u is not
/// time-periodic on the grid.
std::vector<cdouble> space_time_transform(const SpaceTimeField& u);

/// Pointwise cubic |u|^2 u evaluated via zero-padded transforms (padding
/// factor 3/2) to suppress aliasing; in/out on the same grid.
void cubic_dealiased(const SpatialGrid& g, std::span<const cdouble> u, std::span<cdouble> out);

}  // namespace nls
