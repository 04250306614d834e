#pragma once

#include <cmath>
#include <span>

#include "dcomp/types.hpp"

namespace dcomp {

/// Storage offset of Fourier order m in a vector of orders -J..J.
inline Eigen::Index mode_index(int m, int J) { return static_cast<Eigen::Index>(m + J); }

/// phi_m(theta) = e^{i m theta} / sqrt(2 pi)
inline Complex fourier_mode(int m, double theta) {
  return std::polar(1.0 / std::sqrt(kTwoPi), m * theta);
}

/// Matrix with entry (j, mode_index(m)) = phi_m(angles[j]).
CMatrix fourier_basis(std::span<const double> angles, int J);

}  // namespace dcomp
