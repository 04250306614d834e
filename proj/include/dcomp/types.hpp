#pragma once

#include <complex>
#include <numbers>

#include <Eigen/Core>

namespace dcomp {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using RMatrix = Eigen::MatrixXd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;
using Vec2 = Eigen::Vector2d;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
inline constexpr Complex kI{0.0, 1.0};

/// Unit direction (cos theta, sin theta).
inline Vec2 direction(double theta) { return {std::cos(theta), std::sin(theta)}; }

}  // namespace dcomp
