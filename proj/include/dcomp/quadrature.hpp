#pragma once

#include "dcomp/scene.hpp"
#include "dcomp/types.hpp"

namespace dcomp {

inline constexpr int kApertureQuadratureOrder = 8;
inline constexpr int kApertureTailOrder = 6;

/// Weights w_j with sum_j w_j f(theta_obs[j]) ~ int_{-alpha}^{alpha} f over the
/// L measured samples (the same weights serve the incidence aperture).
///
/// Full aperture: the periodic rectangle rule 2pi/M. Otherwise every grid cell
/// is integrated with the interpolant through the `order` nearest samples, and
/// the partial cell past the last sample up to +alpha with the interpolant
/// through the last `tail_order` samples. The tail cell is an extrapolation,
/// so its order is kept lower: large tail orders blow up the weights and with
/// them the noise.
RVector aperture_weights(const ApertureGrid& grid, int order = kApertureQuadratureOrder,
                         int tail_order = kApertureTailOrder);

}  // namespace dcomp
